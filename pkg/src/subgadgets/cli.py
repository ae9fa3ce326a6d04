"""Command-line interface.

Verbs: build, verify, soundness, report, tables, dictator-sim, export.
Exit codes are a stable contract: 0 success, 1 verification failure, 2 usage
error.  Machine-readable output goes to stdout; progress chatter goes to
stderr.  Relative --out paths are resolved against $SUBGADGETS_OUTDIR when it
is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import dictatorship, fixtures, lp, soundness
from .rational import decimal_str, format_rational, parse_rational
from .setfunctions import SetFunction

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2


def _out_path(path: str) -> Path:
    base = os.environ.get("SUBGADGETS_OUTDIR")
    p = Path(path)
    if base and not p.is_absolute():
        return Path(base) / p
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        target = _out_path(out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)
        print(f"wrote {target}", file=sys.stderr)
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr)


def _resolve_function(args) -> tuple[str, SetFunction]:
    """A gadget table either from a bundled fixture or from a fresh solve."""
    if getattr(args, "fixture", None):
        return args.fixture, fixtures.expand_fixture(args.fixture)
    _progress(f"solving {args.origin}-{args.l} ...")
    report = soundness.gadget_report(args.origin, args.l)
    return report.gadget_id, report.function


def _add_gadget_selector(sub, required=True):
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--fixture", choices=fixtures.FIXTURE_IDS,
                       help="bundled reference gadget")
    group.add_argument("--origin", choices=("asymmetric", "symmetric"),
                       help="solve this family instead of using a fixture")
    sub.add_argument("-l", type=int, help="family parameter (with --origin)")


def cmd_build(args) -> int:
    fam = soundness.build_support(args.origin, args.l)
    spec = lp.GadgetBuildSpec(fam, parse_rational(args.bias),
                              symmetric=args.origin == "symmetric",
                              reduction=args.reduction)
    built = lp.build_min_submodular_lp(spec)
    if args.lp_out:
        _emit(lp.lp_to_text(built.lp), args.lp_out)
    _progress(f"solving {args.origin}-{args.l} at bias {args.bias} "
              f"({built.lp.n_vars} vars, {len(built.lp.constraints)} rows) ...")
    sol = lp.solve_lp(built.lp)
    payload = sol.to_json_dict()
    if sol.status == "optimal" and built.partition is not None:
        f = lp.lift_solution(built.partition, sol)
        payload["function"] = f.to_json_dict()
    _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK if sol.status == "optimal" else EXIT_VERIFICATION


def cmd_verify(args) -> int:
    table = None
    if args.table:
        table = SetFunction.from_json(Path(args.table).read_text())
    audit = fixtures.audit_fixture(args.gadget, table)
    if args.format == "json":
        _emit(json.dumps(audit.to_json_dict(), indent=2), args.out)
    else:
        lines = [f"{args.gadget}: {'PASS' if audit.passed else 'FAIL'}"]
        for key, val in audit.to_json_dict().items():
            lines.append(f"  {key}: {val}")
        if not audit.submodular:
            from .setfunctions import check_submodular

            worst = check_submodular(table if table is not None
                                     else fixtures.expand_fixture(args.gadget))[0]
            lines.append(f"  first violating triple: S={worst.base} "
                         f"i={worst.i} j={worst.j} slack={worst.slack}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK if audit.passed else EXIT_VERIFICATION


def cmd_soundness(args) -> int:
    gadget_id, f = _resolve_function(args)
    cert = soundness.certify_soundness(f, parse_rational(args.tol))
    payload = {"gadget": gadget_id, **cert.to_json_dict()}
    _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    _progress(f"running pipeline for {args.origin}-{args.l} ...")
    report = soundness.gadget_report(args.origin, args.l,
                                     parse_rational(args.tol),
                                     cross_check=args.cross_check)
    if args.format == "json":
        _emit(json.dumps(report.to_json_dict(), indent=2), args.out)
    else:
        _emit(soundness.render_gadget_table([report]), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def cmd_tables(args) -> int:
    sym_reports = []
    for l in (3, 4, 5):
        _progress(f"symmetric l={l} ...")
        sym_reports.append(soundness.gadget_report("symmetric", l))
    asym_reports = []
    for l in (3, 4):
        _progress(f"asymmetric l={l} ...")
        asym_reports.append(soundness.gadget_report("asymmetric", l))
    ok = all(r.passed for r in sym_reports + asym_reports)
    if args.format == "json":
        payload = {"symmetric": [r.to_json_dict() for r in sym_reports],
                   "asymmetric": [r.to_json_dict() for r in asym_reports]}
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        text = ("symmetric family\n"
                + soundness.render_gadget_table(sym_reports)
                + "asymmetric family\n"
                + soundness.render_gadget_table(asym_reports))
        _emit(text, args.out)
    if not ok:
        for r in sym_reports + asym_reports:
            if not r.passed:
                _progress(f"FAILED verification: {r.gadget_id}")
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_dictator_sim(args) -> int:
    gadget_id, f = _resolve_function(args)
    fam = fixtures.fixture_family(gadget_id) if args.fixture \
        else soundness.build_support(args.origin, args.l)
    eps = parse_rational(args.eps)
    mu_prime = dictatorship.smooth_distribution(fam.mu, eps)

    if args.test_function == "dictator":
        F = dictatorship.dictator(args.n, args.coord)
    elif args.test_function == "constant":
        F = dictatorship.constant(args.n, parse_rational(args.value))
    elif args.test_function == "majority":
        F = dictatorship.majority(args.n)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown test function {args.test_function!r}")

    exact = dictatorship.exact_dictator_acceptance(f, mu_prime)
    c_mu = soundness.completeness(f, fam.mu)
    result = dictatorship.run_test(f, mu_prime, F, args.n, args.trials, args.seed)
    cert = soundness.certify_soundness(f)
    payload = {
        "gadget": gadget_id,
        "test_function": F.kind,
        "eps": format_rational(eps),
        "seed": result.seed,
        "exact_dictator_acceptance": format_rational(exact),
        "completeness": format_rational(c_mu),
        "monte_carlo": result.to_json_dict(),
        "certified_soundness_upper": format_rational(cert.s_upper),
        "estimate_minus_soundness_upper":
            decimal_str(result.acceptance - cert.s_upper),
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    gadget_id, f = _resolve_function(args)
    if args.what == "function":
        text = f.to_json() if args.format == "json" else f.to_csv()
    else:  # support family
        fam = fixtures.fixture_family(gadget_id) if args.fixture \
            else soundness.build_support(args.origin, args.l)
        text = fam.to_json()
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subgadgets",
        description="exact submodular-upper-bound gadgets: build, certify, simulate")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", help="build and solve one program")
    p.add_argument("--origin", choices=("asymmetric", "symmetric"), required=True)
    p.add_argument("-l", type=int, required=True)
    p.add_argument("--bias", default="1/2", help="rational bias p (default 1/2)")
    p.add_argument("--reduction", choices=("orbit", "none"), default="orbit")
    p.add_argument("--lp-out", help="also write the program in plain text")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("verify", help="audit a bundled gadget (or a table against it)")
    p.add_argument("gadget", choices=fixtures.FIXTURE_IDS)
    p.add_argument("--table", help="SetFunction JSON file to audit instead")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("soundness", help="certified soundness maximum")
    _add_gadget_selector(p)
    p.add_argument("--tol", default="1/1000000000", help="enclosure width bound")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_soundness)

    p = sub.add_parser("report", help="full pipeline report for one family")
    p.add_argument("--origin", choices=("asymmetric", "symmetric"), required=True)
    p.add_argument("-l", type=int, required=True)
    p.add_argument("--tol", default="1/1000000000")
    p.add_argument("--cross-check", action="store_true",
                   help="re-solve near the certified argmax and compare")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("tables", help="summary tables for both families")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("dictator-sim", help="simulate the k-query test")
    _add_gadget_selector(p)
    p.add_argument("--test-function", choices=("dictator", "constant", "majority"),
                   default="dictator")
    p.add_argument("--coord", type=int, default=0, help="dictator coordinate")
    p.add_argument("--value", default="1/2", help="constant test-function value")
    p.add_argument("-n", type=int, default=10)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", default="1/100")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_dictator_sim)

    p = sub.add_parser("export", help="serialize a gadget table or support family")
    _add_gadget_selector(p)
    p.add_argument("--what", choices=("function", "family"), default="function")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "origin", None) and getattr(args, "l", None) is None:
        parser.error("--origin requires -l")
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
