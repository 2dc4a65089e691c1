"""Machine-precision CSV writers, DOT emission and human-readable rounding.

Floats are written with ``repr`` so every value parses back bit-identically;
decimals are always ``'.'``.
"""

from __future__ import annotations

import csv
import io
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from ..core import TFN
from ..ism import ConicalMatrix, Edge, LevelPartition, MarkedBinaryMatrix, PowerSummary, SsimMatrix
from ..micmac import MicmacClassification
from ..topsis import WEIGHTS, ClosenessRanking, CriterionWeights, FuzzyMatrix, IdealSolutions, SeparationMeasures


def round3(x: float) -> str:
    """Three decimals, half away from zero (the shortest repr decides the tie)."""
    return str(Decimal(repr(float(x))).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def num(x: float) -> str:
    return repr(float(x))


def tfn_cell(t: TFN) -> str:
    return ";".join(num(v) for v in t)


def _csv(rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def format_ssim(ssim: SsimMatrix) -> str:
    rows = [["code", *ssim.codes]]
    for i, code in enumerate(ssim.codes):
        rows.append([code] + [ssim.upper[(i, j)].value if j > i else "*" for j in range(ssim.n)])
    return _csv(rows)


def format_marked_matrix(m: MarkedBinaryMatrix, powers: PowerSummary | None = None) -> str:
    head = ["code", *m.codes]
    if powers is not None:
        head += ["driving", "driving_rank"]
    rows = [head]
    for i, code in enumerate(m.codes):
        row = [code] + [m.cell(i, j) for j in range(m.n)]
        if powers is not None:
            row += [powers.driving[i], powers.driving_rank[i]]
        rows.append(row)
    if powers is not None:
        rows.append(["dependence", *powers.dependence, powers.total, ""])
        rows.append(["dependence_rank", *powers.dependence_rank, "", ""])
    return _csv(rows)


def format_levels(p: LevelPartition) -> str:
    rows = [["iteration", "code", "reachability", "antecedent", "intersection", "level"]]
    for rec in p.trace:
        for r in rec.rows:
            rows.append([rec.iteration, r.code, " ".join(r.reachability), " ".join(r.antecedent),
                         " ".join(r.intersection), rec.level if r.extracted else ""])
    return _csv(rows)


def format_conical(c: ConicalMatrix) -> str:
    rows = [["code", *c.order, "level"]]
    for i, code in enumerate(c.order):
        rows.append([code, *(int(v) for v in c.values[i]), c.levels[i]])
    return _csv(rows)


def format_micmac(c: MicmacClassification) -> str:
    rows = [["dependence", "driving", "code", "cluster"]]
    for (dep, drv), code, cluster in zip(c.points, c.codes, c.clusters):
        rows.append([dep, drv, code, cluster.value])
    return _csv(rows)


def format_fuzzy_matrix(v: FuzzyMatrix, weights: CriterionWeights | None = None,
                        ideals: IdealSolutions | None = None) -> str:
    rows: list[list[object]] = [["alternative", *v.criteria]]
    if weights is not None:
        rows.append([WEIGHTS, *(tfn_cell(w) for w in weights.weights)])
    for alt, cells in zip(v.alternatives, v.cells):
        rows.append([alt, *(tfn_cell(t) for t in cells)])
    if ideals is not None:
        rows.append(["A+", *(tfn_cell(t) for t in ideals.fpis)])
        rows.append(["A-", *(tfn_cell(t) for t in ideals.fnis)])
    return _csv(rows)


def format_decision_matrix(d: FuzzyMatrix, w: CriterionWeights) -> str:
    return format_fuzzy_matrix(d, weights=w)


def format_separations(s: SeparationMeasures) -> str:
    head = ["alternative", *(f"d+_{c}" for c in s.criteria), "D+",
            *(f"d-_{c}" for c in s.criteria), "D-", "mode"]
    rows: list[list[object]] = [head]
    for k, alt in enumerate(s.alternatives):
        rows.append([alt, *map(num, s.to_positive[k]), num(s.d_plus[k]),
                     *map(num, s.to_negative[k]), num(s.d_minus[k]), s.mode.value])
    return _csv(rows)


def format_closeness(r: ClosenessRanking, labels: dict[str, str] | None = None) -> str:
    rows: list[list[object]] = [["alternative", "category", "label", "cc", "local_rank", "global_rank"]]
    for k, alt in enumerate(r.alternatives):
        rows.append([alt, r.category[k], (labels or {}).get(alt, ""), num(r.cc[k]),
                     r.local_rank[k], r.global_rank[k]])
    return _csv(rows)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def format_dot(p: LevelPartition, edges: Sequence[Edge], labels: dict[str, str] | None = None) -> str:
    """Digraph with one ``rank=same`` subgraph per level, level 1 drawn first (top)."""
    labels = labels or {}
    lines = ["digraph ism {", "  rankdir=TB;", "  node [shape=box];"]
    for level, members in p.as_dict().items():
        lines.append(f"  subgraph level_{level} {{")
        lines.append("    rank=same;")
        for code in members:
            text = f"{code}\n{labels[code]}" if code in labels else code
            lines.append(f"    {_quote(code)} [label={_quote(text)}];")
        lines.append("  }")
    for e in edges:
        lines.append(f"  {_quote(e.source)} -> {_quote(e.target)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
