"""Batch front end: validate, evaluate, relax, and run the analytics table.

Exit codes are a total function of the outcome class:
  0  success
  1  validation failure (document diagnostics, invalid case, schema errors)
  2  I/O failure (unreadable path, malformed text)
  3  evaluation succeeded but the feasible set is empty
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analytics, relaxation
from .engine import (
    Case,
    CaseValidationError,
    DEFAULT_WEIGHTS,
    WeightConfig,
    evaluate,
    render_score,
)
from .kb import ParseError, SchemaError, feature_coverage, load_kb, validate_kb
from .service import DssApp, serve_forever
from .store import CaseStore

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INFEASIBLE = 3


def _read_source(path: str):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _load_kb_arg(path: str):
    return load_kb(_read_source(path))


def _load_case_arg(path: str) -> Case:
    return Case.from_dict(json.loads(_read_source(path).decode("utf-8")))


def _print_diagnostics(diagnostics, out=None):
    out = out if out is not None else sys.stderr
    for d in diagnostics:
        print(f"{d.code}: {d.subject}: {d.message}", file=out)


# -- subcommands -------------------------------------------------------------


def cmd_kb_validate(args) -> int:
    raw = _read_source(args.kb)
    try:
        kb = load_kb(raw, strict=args.strict)
    except SchemaError as exc:
        if exc.diagnostics:
            _print_diagnostics(exc.diagnostics)
        else:
            print(str(exc), file=sys.stderr)
        return EXIT_VALIDATION
    diagnostics = validate_kb(kb)
    if diagnostics:
        _print_diagnostics(diagnostics)
        return EXIT_VALIDATION
    print(f"ok: {args.kb} ({len(kb.platforms)} platforms, "
          f"{len(kb.boolean_features)} Boolean + {len(kb.ordinal_features)} ordinal features)")
    return EXIT_OK


def cmd_kb_coverage(args) -> int:
    kb = _load_kb_arg(args.kb)
    if args.feature:
        rows = [(args.feature, feature_coverage(kb, args.feature))]
    else:
        rows = [(f.id, feature_coverage(kb, f.id)) for f in kb.boolean_features]
        rows.sort(key=lambda r: (r[1], r[0]))  # most vulnerable first
    width = max((len(fid) for fid, _ in rows), default=7)
    print(f"{'feature':<{width}}  coverage")
    for fid, pct in rows:
        print(f"{fid:<{width}}  {pct:7.1f}")
    return EXIT_OK


def _evaluation_table(kb, evaluation) -> str:
    lines = []
    lines.append(f"{'rank':>4}  {'platform':<16}  {'score':>6}")
    for rank, entry in enumerate(evaluation.feasible, start=1):
        lines.append(f"{rank:>4}  {entry.platform_id:<16}  {render_score(entry.score):>6.1f}")
    if not evaluation.feasible:
        lines.append("(no feasible platforms)")
    if evaluation.infeasible:
        lines.append("")
        lines.append("infeasible:")
        for pid in sorted(evaluation.infeasible):
            reasons = "; ".join(
                f"{v.kind.value}({v.requirement.feature_id})" for v in evaluation.infeasible[pid]
            )
            lines.append(f"  {pid}: {reasons}")
    return "\n".join(lines)


def cmd_evaluate(args) -> int:
    kb = _load_kb_arg(args.kb)
    case = _load_case_arg(args.case)
    evaluation = evaluate(kb, case)
    if args.format == "json":
        print(json.dumps(evaluation.to_dict(), indent=2, sort_keys=True))
    else:
        print(_evaluation_table(kb, evaluation))
    if not evaluation.feasible:
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_relax(args) -> int:
    kb = _load_kb_arg(args.kb)
    case = _load_case_arg(args.case)
    plan = relaxation.relax_until_feasible(kb, case)
    if args.format == "json":
        print(json.dumps(plan.to_dict(), indent=2, sort_keys=True))
    else:
        if not plan.steps:
            print("case is already feasible; nothing to relax")
        for i, step in enumerate(plan.steps, start=1):
            v = step.vulnerability
            print(
                f"step {i}: {step.requirement.feature_id} "
                f"{step.from_priority.value} -> {step.to_priority.value} "
                f"(admitted by {v.support_count} platforms, coverage {v.coverage_pct:.1f}%); "
                f"feasible after: {step.feasible_count_after}"
            )
        print(f"final feasible platforms: {len(plan.final_evaluation.feasible)}")
    if args.apply:
        out_path = args.out or args.case
        if out_path == "-":
            print("cannot apply back to stdin; pass --out", file=sys.stderr)
            return EXIT_IO
        text = json.dumps(plan.final_case.to_dict(), indent=2, sort_keys=True) + "\n"
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_analytics_coverage(args) -> int:
    studies = analytics.load_studies(_read_source(args.studies))
    width = max((len(s.study_id) for s in studies), default=5)
    print(f"{'study':<{width}}  {'computed':>8}  {'reported':>8}  flag")
    flagged = 0
    for study in studies:
        computed = analytics.round_half_up(analytics.study_coverage(study))
        reported = "-" if study.reported_coverage is None else f"{study.reported_coverage:g}"
        issues = analytics.consistency_check(study)
        flag = "MISMATCH" if issues else ""
        flagged += len(issues)
        print(f"{study.study_id:<{width}}  {computed:>8}  {reported:>8}  {flag}")
    aggregate = analytics.aggregate_coverage(studies)
    print(f"\nmean of computed coverages: {float(aggregate.computed_mean):.2f}")
    if aggregate.reported_mean is not None:
        print(f"mean of reported coverages: {float(aggregate.reported_mean):.2f}")
    if flagged:
        print(f"{flagged} row(s) disagree with the coverage formula")
    return EXIT_OK


def _parse_weights(text: str) -> WeightConfig:
    parts = text.split(",")
    if len(parts) != 2:
        raise SchemaError("--weights expects 'wShould,wCould'")
    return WeightConfig.from_dict({"wShould": parts[0].strip(), "wCould": parts[1].strip()})


def cmd_serve(args) -> int:
    weights = _parse_weights(args.weights) if args.weights else DEFAULT_WEIGHTS
    app = DssApp.from_paths(args.kb, args.store, weights)
    host, _, port = args.listen.rpartition(":")
    serve_forever(app, host or "127.0.0.1", int(port))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dss", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    kb = sub.add_parser("kb", help="knowledge-base tools")
    kb_sub = kb.add_subparsers(dest="kb_command", required=True)
    p = kb_sub.add_parser("validate", help="check a KB document against every invariant")
    p.add_argument("kb", help="path to the KB document ('-' for stdin)")
    p.add_argument("--strict", action="store_true", help="reject unknown top-level fields")
    p.set_defaults(func=cmd_kb_validate)
    p = kb_sub.add_parser("coverage", help="per-feature platform coverage, most vulnerable first")
    p.add_argument("kb")
    p.add_argument("--feature", help="show a single feature instead of the table")
    p.set_defaults(func=cmd_kb_coverage)

    p = sub.add_parser("evaluate", help="rank feasible platforms for a case")
    p.add_argument("--kb", required=True)
    p.add_argument("--case", required=True, help="case document ('-' for stdin)")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("relax", help="plan hard-constraint downgrades until feasible")
    p.add_argument("--kb", required=True)
    p.add_argument("--case", required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--apply", action="store_true", help="write the downgraded case document")
    p.add_argument("--out", help="target path for --apply (default: overwrite --case)")
    p.set_defaults(func=cmd_relax)

    an = sub.add_parser("analytics", help="literature-coverage analytics")
    an_sub = an.add_subparsers(dest="analytics_command", required=True)
    p = an_sub.add_parser("coverage", help="computed vs reported coverage per study row")
    p.add_argument("--studies", required=True)
    p.set_defaults(func=cmd_analytics_coverage)

    p = sub.add_parser("serve", help="run the HTTP JSON API")
    p.add_argument("--kb", default=os.environ.get("DSS_KB"), required="DSS_KB" not in os.environ)
    p.add_argument("--store", default=os.environ.get("DSS_STORE"),
                   required="DSS_STORE" not in os.environ)
    p.add_argument("--listen", default=os.environ.get("DSS_LISTEN", "127.0.0.1:8437"))
    p.add_argument("--weights", default=os.environ.get("DSS_WEIGHTS"),
                   help="default case weights as 'wShould,wCould'")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CaseValidationError as exc:
        _print_diagnostics(exc.diagnostics)
        return EXIT_VALIDATION
    except SchemaError as exc:
        if exc.diagnostics:
            _print_diagnostics(exc.diagnostics)
        else:
            print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except analytics.ZeroCriteria as exc:
        print(f"study with no criteria: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except KeyError as exc:
        print(f"unknown id: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
