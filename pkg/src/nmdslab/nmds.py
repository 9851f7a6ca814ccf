"""Near-MDS certification by two independent routes.

Route 1 (generic): an AMDS code's dual is AMDS iff every restricted subcode
on n-k+1 coordinates is a line, i.e. dim C(I) = |I| - rank(H_I) = 1 for all
(n-k+1)-subsets I.  :func:`certify_generic` sweeps every subset.

Route 2 (roots of unity): for the designed-distance-3, offset-4 code of
length q+1 the same condition reduces to a statement about the group U of
(q+1)-th roots of unity in GF(q^2): for distinct x, y in U \\ {1} there must
be exactly one z in U \\ {x, y, 1} making the 2x4 system with rows
(x^4, y^4, z^4, 1), (x^5, y^5, z^5, 1) solvable over GF(q).  Solvability is
equivalent (for odd m) to the vanishing of a 4x4 determinant whose rows are
the 4th, 5th, -5th and -4th powers, which factors through a 2x2 determinant
in the shifted variables X = x-1, Y = y-1, Z = z-1, which in turn is
equivalent to the cross-ratio-like quantity

    Delta = (y-1)(z-x) / ((x-1)(z-y))

equalling -1; solving Delta = -1 for z in characteristic 3 gives the closed
form z = -(x+y+xy)/(x+y+1).  :func:`certify_pairs` checks the closed form
(and optionally an exhaustive scan over all z) for every pair.

Operations asserting their own side conditions (Delta fixed by the q-power
map, the three equivalent zero-sum conditions, membership and exclusion of
the closed-form z) raise InternalCheckError when an assertion fails, since
that would mean the arithmetic itself is broken.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from math import comb

import numpy as np

from . import kernels, linalg
from .analysis import DEFAULT_SUBSET_BUDGET, min_distance
from .codes import CyclicCode, parity_check_matrix
from .errors import (InternalCheckError, ResourceLimitError,
                     UnsupportedParameterError)
from .gf import FieldElement, field_build, prime_power_decompose
from .linalg import MatrixGF

DEFAULT_DET_BUDGET = 10 ** 8
WITNESS_CAP = 100


@dataclass(frozen=True)
class SubsetCertReport:
    n: int
    k: int
    subsets_checked: int
    all_dim_one: bool
    failures: tuple  # ((i1, ..., i_{n-k+1}) 1-based, observed dim), capped


@dataclass(frozen=True)
class PairCertReport:
    q: int
    pairs_checked: int
    all_unique: bool
    mode: str  # formula_only | exhaustive_scan
    failures: tuple  # (x exponent, y exponent, tuple of offending z exponents)


# ---------------------------------------------------------------------------
# scalar operations on unity triples

def _base_size(x: FieldElement) -> int:
    f = x.field
    if f.m % 2:
        raise ValueError("element does not live in a quadratic extension")
    return f.p ** (f.m // 2)


def _in_unity(x: FieldElement, q: int) -> bool:
    return bool(x) and x ** (q + 1) == x.field.one()


class UTriple:
    """Three pairwise distinct (q+1)-th roots of unity x, y, z in GF(q^2)."""

    __slots__ = ("x", "y", "z", "q")

    def __init__(self, x: FieldElement, y: FieldElement, z: FieldElement):
        if not (x.field == y.field == z.field):
            raise ValueError("triple must live in one field")
        q = _base_size(x)
        for u in (x, y, z):
            if not _in_unity(u, q):
                raise ValueError("triple entries must be (q+1)-th roots of unity")
        if x == y or y == z or x == z:
            raise ValueError("triple entries must be pairwise distinct")
        self.x, self.y, self.z, self.q = x, y, z, q

    @classmethod
    def from_exponents(cls, u, i: int, j: int, t: int) -> "UTriple":
        return cls(u.element(i), u.element(j), u.element(t))

    @property
    def X(self) -> FieldElement:
        return self.x - self.x.field.one()

    @property
    def Y(self) -> FieldElement:
        return self.y - self.y.field.one()

    @property
    def Z(self) -> FieldElement:
        return self.z - self.z.field.one()

    def excludes_one(self) -> bool:
        one = self.x.field.one()
        return self.x != one and self.y != one and self.z != one

    def base_m(self) -> int:
        return self.x.field.m // 2

    def _require_not_one(self):
        if not self.excludes_one():
            raise ValueError("operation requires x, y, z != 1")


def det3(t: UTriple) -> FieldElement:
    """det of the 3x3 matrix with rows (x^4 y^4 z^4 / ^5 / ^-5); 1 allowed."""
    rows = []
    for e in (4, 5, -5):
        rows.append([t.x ** e, t.y ** e, t.z ** e])
    return linalg.det(MatrixGF.from_rows(t.x.field, rows))


def det4(t: UTriple) -> FieldElement:
    """det of the 4x4 with power rows (4, 5, -5, -4) and last column 1."""
    t._require_not_one()
    one = t.x.field.one()
    rows = []
    for e in (4, 5, -5, -4):
        rows.append([t.x ** e, t.y ** e, t.z ** e, one])
    return linalg.det(MatrixGF.from_rows(t.x.field, rows))


def _det2_shifted(t: UTriple) -> FieldElement:
    X, Y, Z = t.X, t.Y, t.Z
    return (Y ** 9 - X ** 9) * (Z ** 8 - X ** 8) \
        - (Y ** 8 - X ** 8) * (Z ** 9 - X ** 9)


def det4_factored(t: UTriple) -> FieldElement:
    """XYZ * ((X+1)(Y+1)(Z+1))^-5 times the shifted 2x2 determinant."""
    t._require_not_one()
    X, Y, Z = t.X, t.Y, t.Z
    pref = (X * Y * Z) * ((t.x * t.y * t.z) ** -5)
    if pref.is_zero():
        raise InternalCheckError("factored-form prefactor vanished")
    return pref * _det2_shifted(t)


def delta(t: UTriple) -> FieldElement:
    """(y-1)(z-x) / ((x-1)(z-y)); always fixed by the q-power map."""
    t._require_not_one()
    num = t.Y * (t.z - t.x)
    den = t.X * (t.z - t.y)
    if den.is_zero():
        raise ValueError("degenerate triple: zero denominator")
    d = num / den
    if d ** t.q != d:
        raise InternalCheckError("Delta is not fixed by the q-power map")
    return d


def condition_2x2(t: UTriple) -> bool:
    """Whether the shifted 2x2 determinant vanishes (odd m only).

    Checked on every call to coincide with Delta = -1; the equivalence only
    holds for odd m, so even m is refused.
    """
    if t.base_m() % 2 == 0:
        raise UnsupportedParameterError("equivalence requires odd m")
    t._require_not_one()
    vanishes = _det2_shifted(t).is_zero()
    minus_one = -t.x.field.one()
    if vanishes != (delta(t) == minus_one):
        raise InternalCheckError("2x2 determinant and Delta = -1 disagree")
    return vanishes


def special_sum_check(x: FieldElement, y: FieldElement) -> bool:
    """Whether x + y + xy = 0; agrees with x + y + 1 = 0 and with x = y = 1."""
    if x.field != y.field:
        raise ValueError("elements from different fields")
    q = _base_size(x)
    for u in (x, y):
        if not _in_unity(u, q):
            raise ValueError("arguments must be (q+1)-th roots of unity")
    one = x.field.one()
    s1 = (x + y + x * y).is_zero()
    s2 = (x + y + one).is_zero()
    s3 = (x == one and y == one)
    if not (s1 == s2 == s3):
        raise InternalCheckError("the three zero-sum conditions disagree")
    return s1


def unique_z(x: FieldElement, y: FieldElement) -> FieldElement:
    """-(x+y+xy)/(x+y+1): the only z that can complete a solvable triple.

    Verified on every call to be a (q+1)-th root of unity distinct from x,
    y and 1.
    """
    if x.field != y.field:
        raise ValueError("elements from different fields")
    q = _base_size(x)
    one = x.field.one()
    if x == y:
        raise ValueError("x and y must be distinct")
    if x == one or y == one:
        raise ValueError("x and y must differ from 1")
    for u in (x, y):
        if not _in_unity(u, q):
            raise ValueError("arguments must be (q+1)-th roots of unity")
    den = x + y + one
    num = x + y + x * y
    z = -(num / den)
    if not _in_unity(z, q):
        raise InternalCheckError("closed-form z escapes the unity subgroup")
    if z == x or z == y or z == one:
        raise InternalCheckError("closed-form z collides with {x, y, 1}")
    return z


def rational_solution_exists(t: UTriple) -> bool:
    """Whether the 2x4 power system has a nonzero GF(q)-rational solution.

    Decided through the determinant criterion (valid for odd m); the direct
    vector-scan oracle in the test suite validates this bridge.
    """
    if t.base_m() % 2 == 0:
        raise UnsupportedParameterError("criterion requires odd m")
    t._require_not_one()
    return det4(t).is_zero()


# ---------------------------------------------------------------------------
# generic subset certification

def restricted_dim(c: CyclicCode, I) -> int:
    """dim of the subcode supported inside I (1-based coordinate set)."""
    idx = sorted(set(int(i) for i in I))
    if len(idx) != len(list(I)):
        raise ValueError("index set contains duplicates")
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 1 or idx[-1] > c.n:
        raise ValueError("index out of range 1..n")
    H = parity_check_matrix(c)
    sub = H.column_select([i - 1 for i in idx])
    return len(idx) - linalg.rank(sub)


_GSTATE: dict = {}


def _generic_init(p: int, m: int, H_idx: np.ndarray):
    field = field_build(p, m)
    _GSTATE["tables"] = kernels.SmallFieldTables(field)
    _GSTATE["H"] = H_idx


def _generic_chunk(subs: np.ndarray):
    t = _GSTATE["tables"]
    H = _GSTATE["H"]
    mats = np.ascontiguousarray(H[:, subs].transpose(1, 0, 2))
    _, ranks = kernels.batched_rref(t, mats)
    dims = subs.shape[1] - ranks
    bad = np.nonzero(dims != 1)[0]
    return len(subs), [(tuple(int(x) + 1 for x in subs[b]), int(dims[b]))
                       for b in bad[:WITNESS_CAP]]


def certify_generic(c: CyclicCode, budget: int = DEFAULT_SUBSET_BUDGET,
                    jobs: int = 1, chunk: int = 1 << 14,
                    parity_check: MatrixGF | None = None) -> SubsetCertReport:
    """Sweep all (n-k+1)-subsets in lexicographic order; dim must be 1.

    ``parity_check`` substitutes a custom H (same row space expected); used
    by tests to certify deliberately corrupted checks.
    """
    n, k = c.n, c.k
    if min_distance(c) != n - k:
        raise ValueError("generic certification requires an AMDS code")
    r = n - k + 1
    total = comb(n, r)
    if total > budget:
        raise ResourceLimitError(f"{total} subsets exceed budget {budget}")
    H = parity_check if parity_check is not None else parity_check_matrix(c)
    H_idx = np.array([[H.entry(i, j).index for j in range(n)]
                      for i in range(H.rows)], dtype=np.int16)

    def chunks():
        it = itertools.combinations(range(n), r)
        while True:
            block = list(itertools.islice(it, chunk))
            if not block:
                return
            yield np.array(block, dtype=np.int16)

    checked = 0
    failures: list = []
    if jobs <= 1:
        _generic_init(c.field.p, c.field.m, H_idx)
        results = map(_generic_chunk, chunks())
        for cnt, bad in results:
            checked += cnt
            if len(failures) < WITNESS_CAP:
                failures.extend(bad[:WITNESS_CAP - len(failures)])
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_generic_init,
                                 initargs=(c.field.p, c.field.m, H_idx)) as ex:
            for cnt, bad in ex.map(_generic_chunk, chunks()):
                checked += cnt
                if len(failures) < WITNESS_CAP:
                    failures.extend(bad[:WITNESS_CAP - len(failures)])
    return SubsetCertReport(n=n, k=k, subsets_checked=checked,
                            all_dim_one=not failures,
                            failures=tuple(failures))


# ---------------------------------------------------------------------------
# pair certification over the unity subgroup

_E4 = (4, 5, -5, -4)
_MINOR_SIGN = (-1, 1, -1, 1)


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def _det4_terms():
    terms = []
    for ri in range(4):
        rows = [_E4[t] for t in range(4) if t != ri]
        for pi in permutations(range(3)):
            sign = _MINOR_SIGN[ri] * _perm_sign(pi)
            exps = [0, 0, 0]
            for i in range(3):
                exps[pi[i]] = rows[i]
            terms.append((sign, exps[0], exps[1], exps[2]))
    return tuple(terms)


_DET4_TERMS = _det4_terms()


def _det4_zero_batch(bext: kernels.BatchExt, q: int, ti: np.ndarray,
                     tj: np.ndarray, tz: np.ndarray) -> np.ndarray:
    """Vanishing mask of the 4x4 determinant at (beta^ti, beta^tj, beta^tz).

    Works purely on discrete logs: beta = gamma^(q-1), so the log of
    beta^(e*t) is ((e*t) mod (q+1)) * (q-1), and every matrix entry is a
    nonzero power of beta.  24 cofactor-expansion terms are accumulated as
    coefficient rows and reduced mod p at the end.
    """
    n1 = q + 1
    step = q - 1
    order = bext.order
    lp: dict[tuple[int, int], np.ndarray] = {}
    cols = {0: np.asarray(ti, dtype=np.int64),
            1: np.asarray(tj, dtype=np.int64),
            2: np.asarray(tz, dtype=np.int64)}
    for cidx, tarr in cols.items():
        for e in _E4:
            lp[(cidx, e)] = ((e * tarr) % n1) * step
    acc = np.zeros(cols[0].shape + (bext.d,), dtype=np.int16)
    for sign, ex, ey, ez in _DET4_TERMS:
        l = (lp[(0, ex)] + lp[(1, ey)] + lp[(2, ez)]) % order
        coeffs = bext.expc[l]
        if sign > 0:
            acc += coeffs
        else:
            acc -= coeffs
    return (acc % bext.p == 0).all(axis=-1)


def _pair_z_batch(bext: kernels.BatchExt, q: int, i_arr: np.ndarray,
                  j_arr: np.ndarray):
    """Closed-form z for pairs (beta^i, beta^j): exponent of z, or -1.

    Returns (t_z, ok_member_excl): t_z is the exponent of
    -(x+y+xy)/(x+y+1) when that value lands in the unity subgroup (else -1),
    and the mask additionally requires z not in {x, y, 1}.
    """
    step = q - 1
    order = bext.order
    i_arr = np.asarray(i_arr, dtype=np.int64)
    j_arr = np.asarray(j_arr, dtype=np.int64)
    x = bext.expc[(i_arr * step) % order]
    y = bext.expc[(j_arr * step) % order]
    xy = bext.expc[((i_arr + j_arr) * step) % order]
    s = bext.add(x, y)
    num = bext.neg(bext.add(s, xy))
    den = bext.add(s, bext.const(1, s.shape[:-1]))
    lnum = bext.log_of(num)
    lden = bext.log_of(den)
    if (lnum < 0).any() or (lden < 0).any():
        raise InternalCheckError("x+y+xy or x+y+1 vanished for a valid pair")
    lz = (lnum - lden) % order
    member = (lz % step) == 0
    t_z = np.where(member, lz // step, -1)
    ok = member & (t_z != 0) & (t_z != i_arr) & (t_z != j_arr)
    return t_z, ok


_PSTATE: dict = {}


def _pairs_init(q: int, mode: str):
    p, m = prime_power_decompose(q)
    ext = field_build(p, 2 * m)
    _PSTATE["bext"] = kernels.BatchExt(ext)
    _PSTATE["q"] = q
    _PSTATE["mode"] = mode


def _pairs_chunk(args):
    i_arr, j_arr = args
    bext = _PSTATE["bext"]
    q = _PSTATE["q"]
    mode = _PSTATE["mode"]
    t_z, ok = _pair_z_batch(bext, q, i_arr, j_arr)
    safe_tz = np.where(t_z >= 0, t_z, 0)
    det_zero = _det4_zero_batch(bext, q, i_arr, j_arr, safe_tz)
    passed = ok & det_zero
    failures = []
    if mode == "exhaustive_scan":
        n_pairs = len(i_arr)
        tgrid = np.arange(1, q + 1, dtype=np.int64)
        ti = np.repeat(i_arr, q)
        tj = np.repeat(j_arr, q)
        tz = np.tile(tgrid, n_pairs)
        valid = (tz != ti) & (tz != tj)
        zero = _det4_zero_batch(bext, q, ti, tj, tz) & valid
        zero2 = zero.reshape(n_pairs, q)
        counts = zero2.sum(axis=1)
        # column t of zero2 corresponds to z exponent t+1
        at_formula = np.zeros(n_pairs, dtype=bool)
        has = t_z >= 1
        at_formula[has] = zero2[np.nonzero(has)[0], (t_z[has] - 1)]
        passed = passed & (counts == 1) & at_formula
        for b in np.nonzero(~passed)[0][:WITNESS_CAP]:
            zs = tuple(int(t) + 1 for t in np.nonzero(zero2[b])[0])
            failures.append((int(i_arr[b]), int(j_arr[b]), zs))
    else:
        for b in np.nonzero(~passed)[0][:WITNESS_CAP]:
            zs = (int(t_z[b]),) if t_z[b] >= 0 else ()
            failures.append((int(i_arr[b]), int(j_arr[b]), zs))
    return len(i_arr), int(passed.sum()), failures


def certify_pairs(q: int, mode: str = "formula_only",
                  budget: int = DEFAULT_DET_BUDGET, jobs: int = 1,
                  chunk: int = 1 << 13) -> PairCertReport:
    """Certify unique solvable z for every pair {beta^i, beta^j}, 1<=i<j<=q.

    formula_only: the closed-form z must land in U \\ {x, y, 1} and make the
    4x4 determinant vanish.  exhaustive_scan: additionally every other z
    candidate must give a nonzero determinant, so the zero is unique.
    """
    if mode not in ("formula_only", "exhaustive_scan"):
        raise ValueError(f"unknown mode {mode!r}")
    p, m = prime_power_decompose(q)
    if p != 3:
        raise UnsupportedParameterError("pair certification is specific to q = 3^m")
    if m % 2 == 0:
        raise UnsupportedParameterError(
            "pair certification requires odd m (the determinant criterion "
            "is only equivalent for gcd(q-1, 8) = 2)")
    n_pairs = comb(q, 2)
    work = n_pairs * (q - 2) if mode == "exhaustive_scan" else n_pairs
    if work > budget:
        raise ResourceLimitError(
            f"{mode} needs {work} determinant evaluations; budget {budget}")

    ii, jj = np.triu_indices(q, k=1)
    i_arr = (ii + 1).astype(np.int64)
    j_arr = (jj + 1).astype(np.int64)
    chunks = [(i_arr[lo:lo + chunk], j_arr[lo:lo + chunk])
              for lo in range(0, n_pairs, chunk)]
    checked = passed = 0
    failures: list = []
    if jobs <= 1:
        _pairs_init(q, mode)
        results = map(_pairs_chunk, chunks)
        for cnt, ok, bad in results:
            checked += cnt
            passed += ok
            if len(failures) < WITNESS_CAP:
                failures.extend(bad[:WITNESS_CAP - len(failures)])
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_pairs_init,
                                 initargs=(q, mode)) as ex:
            for cnt, ok, bad in ex.map(_pairs_chunk, chunks):
                checked += cnt
                passed += ok
                if len(failures) < WITNESS_CAP:
                    failures.extend(bad[:WITNESS_CAP - len(failures)])
    return PairCertReport(q=q, pairs_checked=checked,
                          all_unique=(passed == checked),
                          mode=mode, failures=tuple(failures))
