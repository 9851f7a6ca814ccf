import pytest

from nmdslab import analysis, codes, gf


@pytest.fixture(scope="session")
def f3():
    return gf.field_build(3, 1)


@pytest.fixture(scope="session")
def f27():
    return gf.field_build(3, 3)


@pytest.fixture(scope="session")
def pair27():
    return gf.extension_build(gf.field_build(3, 3))


@pytest.fixture(scope="session")
def u27(pair27):
    return gf.unity_subgroup(pair27)


@pytest.fixture(scope="session")
def code27(u27):
    c = codes.bch_build(q=27, n=28, delta=3, h=4, u=u27)
    return c


@pytest.fixture(scope="session")
def wd27(code27):
    wd = analysis.weight_distribution(code27, "via_dual")
    code27.d = wd.min_positive_weight()
    return wd
