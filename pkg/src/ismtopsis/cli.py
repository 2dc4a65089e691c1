"""Command-line entry point.

Exit codes: 0 success, 1 input error, 2 verification mismatch, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .concordance import kendalls_w
from .errors import IsmTopsisError, ParseError
from .io import parsers as p
from .io.report import ReportBundle, emit_reports
from .ism import ClosureMode, ExtractionMode, parse_mode
from .micmac import divergences
from .pipeline import StudyConfig, check_topsis_inputs, run_ism, run_study
from .topsis import SeparationMode, run_topsis

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _choices(enum_cls) -> list[str]:
    return [m.value for m in enum_cls]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ismtopsis", description="ISM, MICMAC and fuzzy TOPSIS decision analysis.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    ism = sub.add_parser("ism", help="reachability, transitivity, levels, conical matrix, digraph")
    ism.add_argument("--ssim", required=True)
    ism.add_argument("--closure", choices=_choices(ClosureMode), default=ClosureMode.SINGLE_PASS.value)
    ism.add_argument("--levels", choices=_choices(ExtractionMode), default=ExtractionMode.PAPER_COMPAT.value)
    ism.add_argument("--order", help="explicit conical-matrix order, comma separated")
    ism.add_argument("--categories", help="code,label file used for digraph labels")
    ism.add_argument("--out", required=True)

    mic = sub.add_parser("micmac", help="MICMAC clusters and quadrant scatter")
    mic.add_argument("--ssim", required=True)
    mic.add_argument("--closure", choices=_choices(ClosureMode), default=ClosureMode.SINGLE_PASS.value)
    mic.add_argument("--reference", help="JSON code -> cluster map to report divergences against")
    mic.add_argument("--out", required=True)

    top = sub.add_parser("topsis", help="fuzzy TOPSIS ranking")
    top.add_argument("--matrix", required=True)
    top.add_argument("--orientations", required=True)
    top.add_argument("--category-map", required=True)
    top.add_argument("--separation", choices=_choices(SeparationMode), default=SeparationMode.STANDARD.value)
    top.add_argument("--allow-unordered", action="store_true",
                     help="accept out-of-order triples (a > b or b > c) instead of rejecting them")
    top.add_argument("--out", required=True)

    ken = sub.add_parser("kendall", help="Kendall's coefficient of concordance")
    ken.add_argument("--ratings", required=True)
    ken.add_argument("--no-tie-correction", action="store_true")
    ken.add_argument("--transpose", action="store_true", help="rows are subjects, columns are raters")

    pipe = sub.add_parser("pipeline", help="run every stage from a study config")
    pipe.add_argument("--config", required=True)
    pipe.add_argument("--out", help="override the config's output directory")

    ver = sub.add_parser("verify-paper", help="reproduce the bundled published study")
    ver.add_argument("--strict", action="store_true", help="count documented errata as mismatches")
    ver.add_argument("--verbose", action="store_true", help="list every differing cell")
    return parser


def _read(path: str) -> tuple[str, str]:
    return p.read_text(path), path


def cmd_ism(args) -> int:
    ssim = p.parse_ssim(*_read(args.ssim))
    order = [c.strip() for c in args.order.split(",")] if args.order else None
    result = run_ism(ssim, parse_mode(ClosureMode, args.closure), parse_mode(ExtractionMode, args.levels), order)
    labels = {c.code: c.label for c in p.parse_categories(*_read(args.categories))} if args.categories else {}
    bundle = ReportBundle(title="ISM report", category_labels=labels,
                          modes={"closure": args.closure, "levels": args.levels},
                          reachability=result.reachability, closure=result.closure, powers=result.powers,
                          levels=result.levels, conical=result.conical, edges=result.edges)
    emit_reports(bundle, args.out)
    print(f"levels ({args.levels}): " + "; ".join(
        f"L{lv}={','.join(ms)}" for lv, ms in result.levels.as_dict().items()))
    return EXIT_OK


def cmd_micmac(args) -> int:
    ssim = p.parse_ssim(*_read(args.ssim))
    result = run_ism(ssim, parse_mode(ClosureMode, args.closure))
    bundle = ReportBundle(title="MICMAC report", modes={"closure": args.closure}, micmac=result.micmac)
    if args.reference:
        text, src = _read(args.reference)
        try:
            bundle.micmac_divergences = divergences(result.micmac, json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", src, exc.lineno, exc.colno) from None
    emit_reports(bundle, args.out)
    for code, cluster in zip(result.micmac.codes, result.micmac.clusters):
        print(f"{code}\t{cluster.value}")
    for d in bundle.micmac_divergences:
        print(f"divergence: {d.describe()}")
    return EXIT_OK


def cmd_topsis(args) -> int:
    decision, weights = p.parse_decision_matrix(*_read(args.matrix), allow_unordered=args.allow_unordered)
    orientations = p.parse_orientations(*_read(args.orientations))
    category_map = p.parse_category_map(*_read(args.category_map))
    check_topsis_inputs(decision.criteria, decision.alternatives, orientations, category_map)
    result = run_topsis(decision, weights, orientations, category_map, parse_mode(SeparationMode, args.separation))
    emit_reports(ReportBundle(title="Fuzzy TOPSIS report", modes={"separation": args.separation},
                              topsis=result), args.out)
    r = result.ranking
    for alt in r.order():
        cc, local, glob, cat = r.row(alt)
        print(f"{glob}\t{alt}\t{cc:.3f}\t{cat}\tlocal {local}")
    return EXIT_OK


def cmd_kendall(args) -> int:
    table = p.parse_rating_table(*_read(args.ratings), transpose=args.transpose)
    res = kendalls_w(table, tie_correction=not args.no_tie_correction)
    print(f"raters={table.scores.shape[0]} subjects={table.scores.shape[1]}")
    print(f"W={res.w:.6f} chi_squared={res.chi_squared:.6f} df={res.df}")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    cfg = StudyConfig.load(args.config)
    bundle = run_study(cfg)
    out = Path(args.out) if args.out else cfg.resolve(cfg.out)
    written = emit_reports(bundle, out)
    print(f"wrote {len(written)} file(s) to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .reference import verify

    checks = verify()
    for check in checks:
        print(check.summary(args.strict))
        details = check.mismatches + (check.errata if args.verbose or args.strict else [])
        for line in details:
            print(f"    {line}")
    failed = [c for c in checks if not c.ok(args.strict)]
    if failed:
        print(f"{len(failed)} of {len(checks)} table(s) differ")
        return EXIT_MISMATCH
    print(f"all {len(checks)} tables reproduced")
    return EXIT_OK


COMMANDS = {"ism": cmd_ism, "micmac": cmd_micmac, "topsis": cmd_topsis, "kendall": cmd_kendall,
            "pipeline": cmd_pipeline, "verify-paper": cmd_verify}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except IsmTopsisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
