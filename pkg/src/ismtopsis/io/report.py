"""Report bundle and deterministic emission of per-stage files."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..errors import OutputError
from ..ism import ConicalMatrix, Edge, LevelPartition, MarkedBinaryMatrix, PowerSummary
from ..micmac import Divergence, MicmacClassification
from ..topsis import TopsisResult
from . import writers as w


@dataclass
class ReportBundle:
    """Whatever stages were computed; absent stages are ``None`` and emit nothing."""

    title: str = "Study report"
    category_labels: dict[str, str] = field(default_factory=dict)
    alternative_labels: dict[str, str] = field(default_factory=dict)
    modes: dict[str, str] = field(default_factory=dict)
    reachability: MarkedBinaryMatrix | None = None
    closure: MarkedBinaryMatrix | None = None
    powers: PowerSummary | None = None
    levels: LevelPartition | None = None
    conical: ConicalMatrix | None = None
    edges: Sequence[Edge] | None = None
    micmac: MicmacClassification | None = None
    micmac_divergences: Sequence[Divergence] = ()
    topsis: TopsisResult | None = None
    notes: list[str] = field(default_factory=list)

    def files(self) -> dict[str, str]:
        """File name -> content, in a fixed order."""
        out: dict[str, str] = {}
        if self.reachability is not None:
            out["reachability.csv"] = w.format_marked_matrix(self.reachability)
        if self.closure is not None:
            out["closure.csv"] = w.format_marked_matrix(self.closure, self.powers)
        if self.levels is not None:
            out["levels.csv"] = w.format_levels(self.levels)
        if self.conical is not None:
            out["conical.csv"] = w.format_conical(self.conical)
        if self.levels is not None and self.edges is not None:
            out["digraph.dot"] = w.format_dot(self.levels, self.edges, self.category_labels)
        if self.micmac is not None:
            out["micmac.csv"] = w.format_micmac(self.micmac)
        if self.topsis is not None:
            t = self.topsis
            out["normalized.csv"] = w.format_fuzzy_matrix(t.normalized)
            out["weighted.csv"] = w.format_fuzzy_matrix(t.weighted, ideals=t.ideals)
            out["separations.csv"] = w.format_separations(t.separations)
            out["closeness.csv"] = w.format_closeness(t.ranking, self.alternative_labels)
        out["report.md"] = render_markdown(self)
        return out


def emit_reports(bundle: ReportBundle, directory: str | Path) -> list[Path]:
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create output directory: {exc.strerror}", str(directory)) from None
    written = []
    for name, content in bundle.files().items():
        path = directory / name
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(content)
        except OSError as exc:
            raise OutputError(f"cannot write: {exc.strerror}", str(path)) from None
        written.append(path)
    return written


# ---------------------------------------------------------------- markdown

def _table(head: Sequence[object], rows: Sequence[Sequence[object]]) -> list[str]:
    lines = ["| " + " | ".join(map(str, head)) + " |", "|" + "---|" * len(head)]
    lines += ["| " + " | ".join(map(str, r)) + " |" for r in rows]
    return lines + [""]


def _tfn3(t) -> str:
    return "(" + ", ".join(w.round3(v) for v in t) + ")"


def render_markdown(b: ReportBundle) -> str:
    out = [f"# {b.title}", ""]
    if b.modes:
        out += ["Modes: " + ", ".join(f"{k}={v}" for k, v in sorted(b.modes.items())), ""]
    sections = 0
    if b.reachability is not None:
        sections += 1
        m = b.reachability
        out += ["## Initial reachability matrix", ""]
        out += _table(["", *m.codes], [[c, *row] for c, row in zip(m.codes, m.marks())])
    if b.closure is not None:
        sections += 1
        m, p = b.closure, b.powers
        out += ["## Final reachability matrix (1* = derived by transitivity)", ""]
        head = ["", *m.codes] + (["driving", "rank"] if p else [])
        rows = []
        for i, (c, row) in enumerate(zip(m.codes, m.marks())):
            rows.append([c, *row] + ([p.driving[i], p.driving_rank[i]] if p else []))
        if p:
            rows.append(["dependence", *p.dependence, p.total, ""])
            rows.append(["rank", *p.dependence_rank, "", ""])
        out += _table(head, rows)
    if b.levels is not None:
        sections += 1
        out += [f"## Level partition ({b.levels.mode.value})", ""]
        out += _table(["level", "categories"],
                      [[lv, ", ".join(ms)] for lv, ms in b.levels.as_dict().items()])
        trace_rows = []
        for rec in b.levels.trace:
            for r in rec.rows:
                trace_rows.append([rec.iteration, r.code, " ".join(r.reachability), " ".join(r.antecedent),
                                   " ".join(r.intersection), f"level {rec.level}" if r.extracted else ""])
        out += _table(["iteration", "code", "reachability", "antecedent", "intersection", "extracted"], trace_rows)
    if b.conical is not None:
        sections += 1
        c = b.conical
        out += ["## Conical matrix", ""]
        out += _table(["", *c.order], [[code, *map(int, c.values[i])] for i, code in enumerate(c.order)])
    if b.edges is not None and b.levels is not None:
        out += [f"Digraph: {len(b.edges)} elicited edge(s) written to digraph.dot.", ""]
    if b.micmac is not None:
        sections += 1
        mc = b.micmac
        out += [f"## MICMAC classification (threshold {mc.threshold:g}, strictly above = strong)", ""]
        out += _table(["code", "driving", "dependence", "cluster"],
                      [[c, drv, dep, k.value] for c, (dep, drv), k in zip(mc.codes, mc.points, mc.clusters)])
        if b.micmac_divergences:
            out += ["### Divergences from the reference classification", ""]
            out += [f"- {d.describe()}" for d in b.micmac_divergences] + [""]
    if b.topsis is not None:
        sections += 1
        out += _topsis_sections(b)
    if b.notes:
        out += ["## Notes", ""] + [f"- {n}" for n in b.notes] + [""]
    if sections == 0:
        out += ["No stages were computed.", ""]
    return "\n".join(out).rstrip("\n") + "\n"


def _topsis_sections(b: ReportBundle) -> list[str]:
    t = b.topsis
    crit = list(t.decision.criteria)
    out = ["## Fuzzy TOPSIS", ""]
    out += ["### Weights", ""] + _table(crit, [[_tfn3(x) for x in t.weights.weights]])
    for title, mat in (("Normalized decision matrix", t.normalized), ("Weighted normalized matrix", t.weighted)):
        out += [f"### {title}", ""]
        out += _table(["", *crit], [[a, *map(_tfn3, row)] for a, row in zip(mat.alternatives, mat.cells)])
    out += ["### Ideal solutions", ""]
    out += _table(["", *crit], [["A+", *map(_tfn3, t.ideals.fpis)], ["A-", *map(_tfn3, t.ideals.fnis)]])
    s = t.separations
    out += [f"### Separation measures ({s.mode.value})", ""]
    out += _table(["alternative", "D+", "D-"],
                  [[a, w.round3(p), w.round3(m)] for a, p, m in zip(s.alternatives, s.d_plus, s.d_minus)])
    r = t.ranking
    out += ["### Closeness coefficients and ranks", ""]
    rows = []
    for alt in r.order():
        cc, local, glob, cat = r.row(alt)
        rows.append([glob, alt, b.alternative_labels.get(alt, ""), cat, w.round3(cc), local])
    out += _table(["global", "alternative", "label", "category", "cc", "local"], rows)
    return out
