"""
ring_cli.py - command line entry point.

    python -m harness.ring_cli check "Triv(Z(4))" linear-armendariz --json
    python -m harness.ring_cli profile "Mat(Z(2), 2)" --degree 2
    python -m harness.ring_cli verify-paper --filter "ex-2.7-*" --out reports/run.json
    python -m harness.ring_cli search --family tnk --base "Z(4)" --n 3,4 --k 1..n-2 \\
        --property central-linear-armendariz --polarity fails
    python -m harness.ring_cli eval "PolyMod(Z(2), 3)"

Ring expressions:

    expr := "Z(" int ")" | "Prod(" expr ("," expr)+ ")" | "Mat(" expr "," int ")"
          | "UT(" expr "," int ")" | "Tnk(" expr "," int "," int ")"
          | "Triv(" expr ")" | "PolyMod(" expr "," int ")"

Exit codes: 0 holds or certified, 1 fails, 2 usage, parse or parameter
error, 3 budget exhausted, 4 contradiction in the implication audit.
verify-paper exits 0 iff every case passes.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import argparse
import json
import sys
from typing import Any, Dict, List, Optional

# Import functions from local modules
from dsl.dsl_elaborate import ring_from_text
from dsl.dsl_parser import ParseError
from harness.family_search import FAMILY_PARAMETERS, SearchSpec, search, search_frame
from harness.paper_suite import verify_paper
from harness.run_report import cached_check, emit_report, report_json, summary_frame, write_csv
from rings.errors import AxiomViolation, BudgetExhausted, ContradictionFound, OrderOverflow, RingError
from rings.properties import PROFILE_ORDER, PROPERTIES, PropertyReport, implication_audit
from rings.ring_core import center, check_axioms, idempotents, nilpotents
from rings.witnesses import jsonable
from utils.utils_cache import ResultCache
from utils.utils_config import RunConfig, get_cache_path, get_log_level
from utils.utils_logger import logger, set_console_level, set_file_level

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_CONTRADICTION = 4


def _print_json(data: Any) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


def _verdict_exit(report: PropertyReport) -> int:
    return {True: EXIT_OK, False: EXIT_FAILS, None: EXIT_BUDGET}[report.positive]


def _report_payload(report: PropertyReport, full_witness: bool) -> Dict[str, Any]:
    data = report.to_dict()
    witness = data.get("witness")
    if witness is not None:
        if full_witness:
            witness["recheck_ok"] = report.witness.holds()
        else:
            witness.pop("recheck", None)
    return data


#####################################
# Subcommands
#####################################


def cmd_check(args: argparse.Namespace, config: RunConfig, cache: Optional[ResultCache]) -> int:
    ring = ring_from_text(args.expr, config)
    report = cached_check(ring, args.property, config, cache, config.degree)
    if args.json:
        _print_json(_report_payload(report, args.witness))
    else:
        print(f"{report.property} on {report.ring}: {report.label} ({report.work} examined)")
        if report.witness is not None:
            for name, element in report.witness.elements.items():
                print(f"  {name} = {element.value!r}")
    return _verdict_exit(report)


def cmd_profile(args: argparse.Namespace, config: RunConfig, cache: Optional[ResultCache]) -> int:
    ring = ring_from_text(args.expr, config)
    reports = [cached_check(ring, name, config, cache, config.degree) for name in PROFILE_ORDER]
    payload: Dict[str, Any] = {
        "ring": ring.text,
        "order": ring.order,
        "degree": config.degree,
        "profile": [_report_payload(r, args.witness) for r in reports],
    }
    code = EXIT_BUDGET if any(r.positive is None for r in reports) else EXIT_OK
    try:
        payload["audit"] = implication_audit(reports).to_dict()
    except ContradictionFound as e:
        logger.error(f"Implication audit failed on {ring.text}: {e}")
        payload["audit"] = {"ring": ring.text, "consistent": False, "rule": e.rule,
                            "premise": e.premise, "conclusion": e.conclusion}
        code = EXIT_CONTRADICTION
    if args.json:
        _print_json(payload)
    else:
        print(f"{ring.text} ({ring.order} elements)")
        for r in reports:
            print(f"  {r.property:28s} {r.label}")
        print(f"  audit: {'consistent' if payload['audit']['consistent'] else 'CONTRADICTION'}")
    return code


def cmd_verify_paper(args: argparse.Namespace, config: RunConfig, cache: Optional[ResultCache]) -> int:
    report = verify_paper(args.filter, config, cache, args.suite)
    if args.out:
        emit_report(report, args.out)
    if args.csv:
        write_csv(summary_frame(report), args.csv)
    if args.json:
        sys.stdout.write(report_json(report))
    else:
        frame = summary_frame(report)
        print(frame[["id", "expected", "observed", "pass"]].to_string(index=False))
        print(f"{int(frame['pass'].sum()) if len(frame) else 0}/{len(frame)} cases pass")
    return EXIT_OK if report.passed else EXIT_FAILS


def cmd_search(args: argparse.Namespace, config: RunConfig, cache: Optional[ResultCache]) -> int:
    ranges = {name: getattr(args, name) for name in ("n", "k") if getattr(args, name) is not None}
    spec = SearchSpec(
        family=args.family,
        bases=tuple(args.base),
        property=args.property,
        ranges=ranges,
        polarity=args.polarity,
        degree=config.degree,
        stop_after=args.stop_after,
    )
    results = []
    for result in search(spec, config, cache):
        results.append(result)
        if not args.json:
            label = result.report.label if result.report else result.note
            print(f"{'HIT ' if result.hit else '    '}{result.ring}: {label}")
    if args.json:
        _print_json([r.to_dict() for r in results])
    if args.csv:
        write_csv(search_frame(results), args.csv)
    exhausted = any(r.report is not None and r.report.positive is None for r in results)
    return EXIT_BUDGET if exhausted else EXIT_OK


def cmd_eval(args: argparse.Namespace, config: RunConfig, cache: Optional[ResultCache]) -> int:
    ring = ring_from_text(args.expr, config)
    payload: Dict[str, Any] = {
        "ring": ring.text,
        "order": ring.order,
        "tabled": ring.tabled,
        "one": jsonable(ring.one.value),
        "additive_generators": [g.index for g in ring.additive_generators()],
        "center": len(center(ring)),
        "idempotents": [int(i) for i in idempotents(ring).array],
        "nilpotents": [int(i) for i in nilpotents(ring).array],
    }
    code = EXIT_OK
    try:
        check_axioms(ring, "auto", config.axiom_samples, config.seed, config.axiom_cap)
        payload["axioms"] = "ok"
    except AxiomViolation as e:
        payload["axioms"] = {"law": e.law, "triple": list(e.triple)}
        code = EXIT_FAILS
    if args.show is not None:
        payload["elements"] = {i: jsonable(ring.element(i).value) for i in args.show}
    if args.json:
        _print_json(payload)
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return code


#####################################
# Argument parsing
#####################################


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", type=int, help="degree bound for Armendariz checks")
    common.add_argument("--budget", type=int, help="maximum annihilating-pair candidates per sweep")
    common.add_argument("--time-ms", type=int, dest="time_ms", help="wall-clock cap per sweep in ms")
    common.add_argument("--threads", type=int, help="worker threads")
    common.add_argument("--cap", type=int, help="largest ring order any builder may produce")
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("--witness", action="store_true", help="include witness recipes and recheck them")
    common.add_argument("--cache", help="JSON-lines result cache path")
    common.add_argument("--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="ring_cli",
        description="Finite ring construction, property checking and claim verification.",
        epilog=__doc__.split("Ring expressions:", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[common], help="decide one property")
    check.add_argument("expr")
    check.add_argument("property", choices=list(PROPERTIES))
    check.set_defaults(handler=cmd_check)

    profile = sub.add_parser("profile", parents=[common], help="every property plus the implication audit")
    profile.add_argument("expr")
    profile.set_defaults(handler=cmd_profile)

    verify = sub.add_parser("verify-paper", parents=[common], help="run the curated suite")
    verify.add_argument("--filter", help="case-id glob, e.g. 'thm-2.9-*'")
    verify.add_argument("--suite", help="suite file (default data/paper_suite.json)")
    verify.add_argument("--out", help="write the JSON report here")
    verify.add_argument("--csv", help="write a CSV summary here")
    verify.set_defaults(handler=cmd_verify_paper)

    finder = sub.add_parser("search", parents=[common], help="sweep a ring family")
    finder.add_argument("--family", required=True, choices=list(FAMILY_PARAMETERS))
    finder.add_argument("--base", action="append", required=True, help="base ring expression (repeatable)")
    finder.add_argument("--n", help="range for n, e.g. '3,4' or '2..5'")
    finder.add_argument("--k", help="range for k, may use n, e.g. '1..n-2'")
    finder.add_argument("--property", required=True, choices=list(PROPERTIES))
    finder.add_argument("--polarity", choices=["holds", "fails"], default="holds")
    finder.add_argument("--stop-after", type=int, dest="stop_after")
    finder.add_argument("--csv", help="write results as CSV")
    finder.set_defaults(handler=cmd_search)

    evaluate = sub.add_parser("eval", parents=[common], help="build a ring and describe it")
    evaluate.add_argument("expr")
    evaluate.add_argument("--show", type=int, nargs="*", help="element indices to decode")
    evaluate.set_defaults(handler=cmd_eval)
    return parser


def _error_payload(e: Exception) -> Dict[str, Any]:
    if isinstance(e, ParseError):
        return e.to_dict()
    data: Dict[str, Any] = {"error": type(e).__name__, "message": str(e)}
    span = getattr(e, "span", None)
    if span is not None:
        data["span"] = list(span)
    return data


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_console_level("DEBUG" if args.verbose else "WARNING")
    set_file_level(get_log_level())
    config = RunConfig.from_env().with_overrides(
        degree=args.degree,
        pair_budget=args.budget,
        time_cap_ms=args.time_ms,
        threads=args.threads,
        enumeration_cap=args.cap,
    )
    cache_path = args.cache or get_cache_path()
    try:
        cache = ResultCache(cache_path) if cache_path else None
        return args.handler(args, config, cache)
    except BudgetExhausted as e:
        logger.error(f"Budget exhausted: {e}")
        if args.json:
            _print_json(_error_payload(e))
        return EXIT_BUDGET
    except ContradictionFound as e:
        logger.error(f"Contradiction: {e}")
        if args.json:
            _print_json(_error_payload(e))
        return EXIT_CONTRADICTION
    except (ParseError, OrderOverflow, RingError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        if args.json:
            _print_json(_error_payload(e))
        else:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_USAGE


#####################################
# Conditional Execution
#####################################

if __name__ == "__main__":
    sys.exit(main())
