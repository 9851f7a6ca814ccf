"""Command-line behaviour: outputs, file formats, exit codes, determinism."""

import json
import subprocess
import sys

from nmdslab import cli


def run(argv):
    return cli.main(argv)


def test_ff_gf27(capsys):
    assert run(["ff", "--p", "3", "--m", "3"]) == 0
    out = capsys.readouterr().out
    assert "x^3 + 2x + 1" in out
    assert "GF(27)" in out


def test_ff_prime_field(capsys):
    assert run(["ff", "--p", "3", "--m", "1"]) == 0
    assert "GF(3)" in capsys.readouterr().out


def test_ff_rejects_composite(capsys):
    assert run(["ff", "--p", "4", "--m", "1"]) == 2
    assert "not prime" in capsys.readouterr().err


def test_bch_writes_code_file(tmp_path, capsys):
    path = str(tmp_path / "c.json")
    assert run(["bch", "--m", "3", "--delta", "3", "--h", "4",
                "--out", path]) == 0
    data = json.load(open(path))
    assert data["n"] == 28 and data["k"] == 24
    assert data["p"] == 3 and data["m"] == 3
    assert len(data["generator"]) == 5


def test_bch_narrow_sense(tmp_path):
    path = str(tmp_path / "ns.json")
    assert run(["bch", "--m", "3", "--delta", "3", "--h", "1",
                "--out", path]) == 0
    assert json.load(open(path))["k"] == 24


def test_bch_m5(tmp_path):
    path = str(tmp_path / "c5.json")
    assert run(["bch", "--m", "5", "--out", path]) == 0
    data = json.load(open(path))
    assert data["n"] == 244 and data["k"] == 240


def test_analyze_classify_and_census(tmp_path, capsys):
    code = str(tmp_path / "c.json")
    report = str(tmp_path / "r.json")
    run(["bch", "--m", "3", "--out", code])
    assert run(["analyze", code, "--weights", "--classify", "--census",
                "--deterministic", "--out", report]) == 0
    data = json.load(open(report))
    assert data["params"] == [28, 24, 4]
    assert data["classification"] == "NMDS"
    assert data["identity_2_0"] is True
    assert data["census"] == {"e1": 819, "e2": 78624, "f1": 19656, "f2": 78624}
    assert data["weights"]["4"] == "21294"
    dual = {int(i): int(v) for i, v in data["dual_weights"].items()}
    assert all(dual[i] == 0 for i in range(1, 24))
    assert dual[24] > 0 and sum(dual.values()) == 27 ** 4
    assert "timestamp" not in data


def test_analyze_budget_exit(tmp_path, capsys):
    code = str(tmp_path / "c5.json")
    run(["bch", "--m", "5", "--out", code])
    assert run(["analyze", code, "--weights", "--out",
                str(tmp_path / "r5.json")]) == 2
    assert "budget" in capsys.readouterr().err


def test_analyze_plot_and_csv(tmp_path):
    code = str(tmp_path / "c.json")
    fig = str(tmp_path / "w.png")
    csv = str(tmp_path / "w.csv")
    run(["bch", "--m", "3", "--out", code])
    assert run(["analyze", code, "--weights", "--plot", fig,
                "--csv", csv, "--out", str(tmp_path / "r.json")]) == 0
    assert (tmp_path / "w.png").stat().st_size > 1000
    lines = open(csv).read().splitlines()
    assert lines[0] == "weight,count,dual_count"
    assert len(lines) == 30
    assert lines[5].startswith("4,21294,")


def test_certify_both_scan(tmp_path, capsys):
    cert = str(tmp_path / "cert.json")
    assert run(["certify", "--m", "3", "--mode", "both", "--scan",
                "--deterministic", "--out", cert]) == 0
    data = json.load(open(cert))
    assert data["pass"] is True
    assert data["alpha_exponent_convention"] == "beta = gamma^(q-1)"
    assert data["details"]["generic"]["subsets_checked"] == 98280
    assert data["details"]["pairs"]["pairs_checked"] == 351
    assert data["details"]["pairs"]["mode"] == "exhaustive_scan"
    assert data["witnesses"] == []


def test_certify_code_file(tmp_path):
    code = str(tmp_path / "c.json")
    run(["bch", "--m", "3", "--out", code])
    assert run(["certify", code, "--mode", "pairs",
                "--out", str(tmp_path / "p.json")]) == 0
    data = json.load(open(str(tmp_path / "p.json")))
    assert data["details"]["pairs"]["mode"] == "formula_only"


def test_certify_even_m_rejected(capsys):
    assert run(["certify", "--m", "2", "--mode", "pairs"]) == 2
    assert "odd m" in capsys.readouterr().err


def test_conjecture_m3(tmp_path, capsys):
    report = str(tmp_path / "conj.json")
    assert run(["conjecture", "--m", "3", "--deterministic",
                "--out", report]) == 0
    out = capsys.readouterr().out
    data = json.load(open(report))
    assert set(data["checks"].values()) == {"PASS"}
    assert data["skipped"] == {}
    assert data["params"] == [28, 24, 4]
    for name in ("primal_dimension", "primal_distance", "dual_parameters",
                 "near_mds", "weight_identity", "census_cross_check",
                 "subset_certification", "pair_certification",
                 "unity_check_agreement"):
        assert f"PASS: {name}" in out


def test_analyze_census_only(tmp_path):
    code = str(tmp_path / "c.json")
    report = str(tmp_path / "r.json")
    run(["bch", "--m", "3", "--out", code])
    assert run(["analyze", code, "--census", "--out", report]) == 0
    data = json.load(open(report))
    assert data["census"]["f1"] + data["census"]["f2"] == 98280
    assert data["params"] == [28, 24, 4]  # distance filled by the census gate


def test_conjecture_m5_default_budget(tmp_path):
    report = str(tmp_path / "c5.json")
    assert run(["conjecture", "--m", "5", "--deterministic",
                "--out", report]) == 0
    data = json.load(open(report))
    assert data["checks"]["primal_dimension"] == "PASS"
    assert data["checks"]["pair_certification"] == "PASS"
    assert data["pair_mode"] == "exhaustive_scan"
    assert data["pairs_checked"] == 29403
    assert "weight_enumeration" in data["skipped"]
    assert "subset_certification" in data["skipped"]
    assert data["params"] == [244, 240, None]


def test_conjecture_deterministic_bytes(tmp_path):
    a = str(tmp_path / "a.json")
    b = str(tmp_path / "b.json")
    run(["conjecture", "--m", "3", "--deterministic", "--out", a])
    run(["conjecture", "--m", "3", "--deterministic", "--out", b])
    assert open(a, "rb").read() == open(b, "rb").read()


def test_conjecture_even_m_refused(capsys):
    assert run(["conjecture", "--m", "4"]) == 2
    assert "odd m" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nmdslab.cli", "ff",
                           "--p", "3", "--m", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "GF(3)" in proc.stdout
