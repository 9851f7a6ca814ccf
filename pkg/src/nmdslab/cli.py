"""Command-line surface: field info, code construction, analysis, certification.

Subcommands
-----------
ff          print the canonical modulus / primitive element of GF(p^m)
bch         build a length-(q+1) code and write the code JSON file
analyze     weight distributions, classification, identity and census
certify     generic subset certification and/or unity pair certification
conjecture  end-to-end pipeline: build, analyze, certify, report PASS/FAIL

Exit codes: 0 all requested checks pass, 1 a mathematical check failed
(counterexample found), 2 usage or resource errors.

Reports are JSON.  Big counts are emitted as decimal strings.  Every report
embeds the field modulus, the exponent conventions, budgets and seed; with
--deterministic the volatile timestamp field is suppressed and repeated runs
produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from math import comb

from . import __version__, analysis, nmds
from .analysis import DEFAULT_SUBSET_BUDGET, DEFAULT_WORD_BUDGET
from .codes import (bch_build, code_to_dict, dual_code, read_code_json,
                    unity_parity_check, write_code_json)
from .errors import ResourceLimitError, UnsupportedParameterError
from .gf import (extension_build, field_build, primitive_element,
                 unity_subgroup, write_field_cache)
from .nmds import DEFAULT_DET_BUDGET

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_USAGE = 2


def format_poly(coeffs) -> str:
    """Human form of a coefficient vector, constant term first."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[i]) if not hasattr(coeffs[i], "index") else coeffs[i].index
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            xs = "x" if i == 1 else f"x^{i}"
            terms.append(xs if c == 1 else f"{c}{xs}")
    return " + ".join(terms) if terms else "0"


def _report_base(args, p: int, m: int) -> dict:
    field = field_build(p, m)
    base = {
        "tool_version": __version__,
        "p": p,
        "m": m,
        "q": field.element_count,
        "modulus": list(field.modulus),
        "conventions": {
            "element_order": "coefficient vector packed base-p, constant term least significant",
            "modulus_rule": "first irreducible monic polynomial in canonical order",
            "alpha_exponent_convention": "beta = gamma^(q-1)",
        },
        "seed": args.seed,
        "budgets": {
            "words": getattr(args, "budget", None),
            "subsets": getattr(args, "subset_budget", None),
            "determinants": getattr(args, "det_budget", None),
        },
    }
    if not args.deterministic:
        base["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    return base


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _weights_as_strings(wd) -> dict:
    return {str(i): str(wd.counts[i]) for i in range(wd.n + 1)}


# ---------------------------------------------------------------------------
# subcommands

def cmd_ff(args) -> int:
    field = field_build(args.p, args.m)
    g = primitive_element(field)
    report = _report_base(args, args.p, args.m)
    report["modulus_pretty"] = format_poly(field.modulus)
    report["primitive_element_index"] = g.index
    report["primitive_element_coeffs"] = list(g.coeffs)
    report["unity_generator_exponent"] = field.element_count - 1
    print(f"GF({args.p}^{args.m}) = GF({field.element_count})")
    print(f"modulus: {format_poly(field.modulus)}")
    print(f"primitive element: index {g.index}, coefficients {list(g.coeffs)}")
    print(f"(q+1)-th roots of unity: beta = gamma^{field.element_count - 1} "
          f"for gamma primitive in GF({args.p}^{2 * args.m})")
    if args.out:
        _emit(report, args.out)
    write_field_cache()
    return EXIT_OK


def cmd_bch(args) -> int:
    q = args.p ** args.m
    n = args.n if args.n is not None else q + 1
    code = bch_build(q=q, n=n, delta=args.delta, h=args.h_exp)
    print(f"built [{code.n}, {code.k}] code over GF({q}), "
          f"generator degree {code.g.degree}")
    print(f"g(x) coefficients (canonical indices, ascending): "
          f"{code.g.coeff_indices()}")
    if args.out:
        write_code_json(code, args.out)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(json.dumps(code_to_dict(code), indent=2, sort_keys=True) + "\n")
    write_field_cache()
    return EXIT_OK


def cmd_analyze(args) -> int:
    code = read_code_json(args.code)
    report = _report_base(args, code.field.p, code.field.m)
    report["code"] = code_to_dict(code)
    want_weights = args.weights or args.plot is not None or args.csv
    want_classify = args.classify or not (args.weights or args.census)
    n, k, q = code.n, code.k, code.q

    wd = None
    if want_weights or want_classify:
        wd = analysis.weight_distribution(code, "auto", args.budget, args.jobs)
        dual_wd = analysis.macwilliams_transform(wd, n, k, q)
        code.d = wd.min_positive_weight()
        report["weights"] = _weights_as_strings(wd)
        report["dual_weights"] = _weights_as_strings(dual_wd)
        report["distinct_nonzero_weights"] = len(wd.nonzero_weights())

    if want_classify:
        cls = analysis.classify(code, wd=wd)
        report["classification"] = cls.label
        report["dual_d"] = cls.dual_d
        print(f"[{n}, {k}, {cls.params[2]}] over GF({q}): {cls.label} "
              f"(dual minimum distance {cls.dual_d})")

    if wd is not None and code.d == n - k:
        report["identity_2_0"] = analysis.nmds_identity_check(code, wd=wd)
    else:
        report["identity_2_0"] = None

    if args.census:
        census = analysis.monic_census(code, args.subset_budget, args.jobs)
        report["census"] = {"e1": census.e1, "e2": census.e2,
                            "f1": census.f1, "f2": census.f2}
        print(f"census: e1={census.e1} e2={census.e2} f1={census.f1} "
              f"f2={census.f2} (f1+f2={census.f1 + census.f2}, "
              f"overlap={census.overlap})")
    report["params"] = [n, k, code.d]

    if args.plot is not None:
        from .plotting import plot_weight_distribution
        path = args.plot or (args.out or "weights") + ".png"
        plot_weight_distribution(wd, dual_wd, path,
                                 title=f"[{n},{k}] over GF({q})")
        report["figure"] = path
        print(f"wrote figure {path}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("weight,count,dual_count\n")
            for i in range(n + 1):
                fh.write(f"{i},{wd.counts[i]},{dual_wd.counts[i]}\n")
        report["csv"] = args.csv
        print(f"wrote table {args.csv}")

    _emit(report, args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.code:
        code = read_code_json(args.code)
        q = code.q
        p, m = code.field.p, code.field.m
    elif args.m:
        p, m = args.p, args.m
        q = p ** m
        code = None
    else:
        print("certify: need a code file or --m", file=sys.stderr)
        return EXIT_USAGE

    report = _report_base(args, p, m)
    details = {}
    checked = 0
    ok = True
    witnesses: list = []

    if args.mode in ("generic", "both"):
        if code is None:
            code = bch_build(q=q, n=q + 1, delta=3, h=4)
        analysis.min_distance(code, args.budget, args.jobs)
        rep = nmds.certify_generic(code, args.subset_budget, args.jobs)
        details["generic"] = {
            "subsets_checked": rep.subsets_checked,
            "pass": rep.all_dim_one,
            "witnesses": [[list(s), d] for s, d in rep.failures],
        }
        checked += rep.subsets_checked
        ok = ok and rep.all_dim_one
        witnesses.extend(details["generic"]["witnesses"])
        print(f"generic subset certification: {rep.subsets_checked} subsets, "
              f"{'PASS' if rep.all_dim_one else 'FAIL'}")

    if args.mode in ("pairs", "both"):
        mode = "exhaustive_scan" if args.scan else "formula_only"
        rep = nmds.certify_pairs(q, mode, args.det_budget, args.jobs)
        details["pairs"] = {
            "mode": rep.mode,
            "pairs_checked": rep.pairs_checked,
            "pass": rep.all_unique,
            "witnesses": [list(w) for w in rep.failures],
        }
        checked += rep.pairs_checked
        ok = ok and rep.all_unique
        witnesses.extend(details["pairs"]["witnesses"])
        print(f"pair certification ({rep.mode}): {rep.pairs_checked} pairs, "
              f"{'PASS' if rep.all_unique else 'FAIL'}")

    report.update({
        "mode": args.mode + ("+scan" if args.scan else ""),
        "checked": checked,
        "pass": ok,
        "witnesses": witnesses[:nmds.WITNESS_CAP],
        "alpha_exponent_convention": "beta = gamma^(q-1)",
        "details": details,
    })
    _emit(report, args.out)
    write_field_cache()
    return EXIT_OK if ok else EXIT_MATH_FAIL


def cmd_conjecture(args) -> int:
    p, m = args.p, args.m
    if m % 2 == 0 or m < 3:
        print(f"conjecture: m = {m} refused; the construction's guarantees "
              f"require odd m >= 3 (q - 1 = 2 mod 8 is what makes the "
              f"determinant criterion equivalent)", file=sys.stderr)
        return EXIT_USAGE
    q = p ** m
    n = q + 1
    report = _report_base(args, p, m)
    checks: dict[str, str] = {}
    skipped: dict[str, str] = {}
    rng = random.Random(args.seed)

    code = bch_build(q=q, n=n, delta=3, h=4)
    report["code"] = code_to_dict(code)
    params_ok = (code.n == q + 1 and code.k == q - 3)
    checks["primal_dimension"] = "PASS" if params_ok else "FAIL"
    print(f"[{code.n}, {code.k}] code over GF({q}); expecting "
          f"[{q + 1}, {q - 3}, 4] and dual [{q + 1}, 4, {q - 3}]")

    wd = dual_wd = None
    enum_size = q ** (n - code.k)
    if enum_size <= args.budget:
        dual_wd = analysis.weight_distribution(dual_code(code), "direct",
                                               args.budget, args.jobs)
        wd = analysis.macwilliams_transform(dual_wd, n, n - code.k, q)
        code.d = wd.min_positive_weight()
        d_ok = (code.d == 4 and all(wd.counts[i] == 0 for i in (1, 2, 3))
                and wd.counts[4] > 0)
        checks["primal_distance"] = "PASS" if d_ok else "FAIL"
        dual_d = dual_wd.min_positive_weight()
        dual_ok = (dual_d == q - 3
                   and all(dual_wd.counts[i] == 0 for i in range(1, q - 3))
                   and dual_wd.counts[q - 3] > 0)
        checks["dual_parameters"] = "PASS" if dual_ok else "FAIL"
        cls = analysis.classify(code, wd=wd)
        checks["near_mds"] = "PASS" if cls.label == "NMDS" else "FAIL"
        ident = analysis.nmds_identity_check(code, wd=wd)
        checks["weight_identity"] = "PASS" if ident else "FAIL"
        report["params"] = [n, code.k, code.d]
        report["dual_d"] = dual_d
        report["weights"] = _weights_as_strings(wd)
        report["dual_weights"] = _weights_as_strings(dual_wd)
        report["identity_2_0"] = ident
    else:
        skipped["weight_enumeration"] = (
            f"dual enumeration needs {enum_size} words > budget {args.budget}; "
            f"raise --budget to run it")
        report["params"] = [n, code.k, None]

    subsets = comb(n, n - code.k + 1)
    if wd is not None and subsets <= args.subset_budget:
        census = analysis.monic_census(code, args.subset_budget, args.jobs)
        qm1 = q - 1
        cen_ok = (census.e1 * qm1 == wd.counts[n - code.k]
                  and census.e2 * qm1 == wd.counts[n - code.k + 1]
                  and census.f1 == code.k * census.e1
                  and census.f2 == census.e2
                  and census.f1 + census.f2 == subsets
                  and census.overlap == 0)
        checks["census_cross_check"] = "PASS" if cen_ok else "FAIL"
        report["census"] = {"e1": census.e1, "e2": census.e2,
                            "f1": census.f1, "f2": census.f2}
    elif wd is None:
        skipped["census"] = "needs the weight enumeration (skipped above)"
    else:
        skipped["census"] = (f"{subsets} subsets > budget {args.subset_budget}")

    if wd is not None and subsets <= args.subset_budget:
        rep = nmds.certify_generic(code, args.subset_budget, args.jobs)
        checks["subset_certification"] = "PASS" if rep.all_dim_one else "FAIL"
        report["subsets_checked"] = rep.subsets_checked
    else:
        skipped["subset_certification"] = (
            f"{subsets} subsets > budget {args.subset_budget}" if wd is not None
            else "needs the minimum distance (weight enumeration skipped)")

    scan_work = comb(q, 2) * (q - 2)
    mode = "exhaustive_scan" if scan_work <= args.det_budget else "formula_only"
    prep = nmds.certify_pairs(q, mode, args.det_budget, args.jobs)
    checks["pair_certification"] = "PASS" if prep.all_unique else "FAIL"
    report["pairs_checked"] = prep.pairs_checked
    report["pair_mode"] = prep.mode

    if q <= 27:
        u = unity_subgroup(extension_build(code.field))
        upc = unity_parity_check(q, u)
        try:
            upc.validate_against(code, rng, trials=1000)
            checks["unity_check_agreement"] = "PASS"
        except AssertionError:
            checks["unity_check_agreement"] = "FAIL"

    report["checks"] = checks
    report["skipped"] = skipped
    failed = [name for name, v in checks.items() if v != "PASS"]
    for name, verdict in checks.items():
        print(f"{verdict}: {name}")
    for name, why in skipped.items():
        print(f"SKIP: {name} ({why})")

    if args.plot is not None and wd is not None:
        from .plotting import plot_weight_distribution
        path = args.plot or (args.out or "conjecture") + ".png"
        plot_weight_distribution(wd, dual_wd, path,
                                 title=f"[{n},{code.k}] over GF({q})")
        report["figure"] = path

    _emit(report, args.out)
    write_field_cache()
    return EXIT_OK if not failed else EXIT_MATH_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nmdslab",
        description="exact construction and near-MDS certification of "
                    "length-(q+1) ternary BCH codes")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, *, budgets=True):
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
        sp.add_argument("--deterministic", action="store_true",
                        help="suppress timestamps for byte-identical reports")
        sp.add_argument("--out", help="write the JSON report to this path")
        if budgets:
            sp.add_argument("--budget", type=int, default=DEFAULT_WORD_BUDGET,
                            help="max words for weight enumeration")
            sp.add_argument("--subset-budget", type=int,
                            default=DEFAULT_SUBSET_BUDGET,
                            help="max subsets for census/certification")
            sp.add_argument("--det-budget", type=int, default=DEFAULT_DET_BUDGET,
                            help="max determinant evaluations for pair scans")

    sp = sub.add_parser("ff", help="canonical field info")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--m", type=int, required=True)
    common(sp, budgets=False)
    sp.set_defaults(func=cmd_ff)

    sp = sub.add_parser("bch", help="build a code and write its JSON file")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=None, help="length (default q+1)")
    sp.add_argument("--delta", type=int, default=3, help="designed distance")
    sp.add_argument("--h", dest="h_exp", type=int, default=4,
                    help="starting exponent")
    common(sp, budgets=False)
    sp.set_defaults(func=cmd_bch)

    sp = sub.add_parser("analyze", help="weights / classification / census")
    sp.add_argument("code", help="code JSON file from 'bch'")
    sp.add_argument("--weights", action="store_true")
    sp.add_argument("--classify", action="store_true")
    sp.add_argument("--census", action="store_true")
    sp.add_argument("--plot", nargs="?", const="", default=None,
                    help="render the weight distributions to a PNG")
    sp.add_argument("--csv", help="write the weight table as CSV")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("certify", help="near-MDS certification")
    sp.add_argument("code", nargs="?", help="code JSON file (or use --m)")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--mode", choices=("generic", "pairs", "both"),
                    default="both")
    sp.add_argument("--scan", action="store_true",
                    help="exhaustive z scan instead of formula only")
    common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("conjecture", help="full build/analyze/certify pipeline")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--plot", nargs="?", const="", default=None)
    common(sp)
    sp.set_defaults(func=cmd_conjecture)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ResourceLimitError, UnsupportedParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
