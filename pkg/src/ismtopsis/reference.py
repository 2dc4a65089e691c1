"""Comparison of the bundled study's pipeline output against its published tables.

Published values live in ``data/study/published.json``. A few printed cells
contradict the other printed tables; those are listed in ``ERRATA`` with the
value the pipeline produces instead. Non-strict verification reports them as
documented errata, strict verification counts them as mismatches.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .ism import ClosureMode, ExtractionMode
from .io import parsers as p
from .micmac import MicmacCluster
from .pipeline import IsmResult, run_ism, study_dir
from .topsis import SeparationMode, TopsisResult, run_topsis

CELL_TOL = 0.001
SEPARATION_TOL = 0.01
CC_TOL = 0.005

# MICMAC clusters implied by the printed powers and the stated cluster definitions
EXPECTED_MICMAC = {
    "CA1": "Independent", "CA2": "Autonomous", "CA3": "Independent", "CA4": "Linkage",
    "CA5": "Linkage", "CA6": "Independent", "CA7": "Dependent", "CA8": "Dependent",
}

# Levels under the standard extraction rule, obtained by hand iteration
EXPECTED_STANDARD_LEVELS = {1: ("CA7", "CA8"), 2: ("CA2", "CA4", "CA5", "CA6"), 3: ("CA1", "CA3")}

# Local ranks recomputed from the printed cc values, for categories whose printed ranks
# are not a valid ordering. CA1 holds a duplicated "2" (M3 must be 3).
# CA3, CA4, CA6 and CA7 are likewise unorderable as printed.
LOCAL_RANK_ERRATA = {"M3": 3, "M19": 2, "M10": 2, "M7": 1, "M13": 2, "M4": 3}

# (alternative, criterion, component) -> recomputed value; printed 0.333 where the
# lower bound 0.1 / 3 = 0.0333 is what the weighted matrix (0.017) was built from.
NORMALIZED_ERRATA = {(m, "CA4", 0): 0.1 / 3 for m in ("M9", "M11", "M13", "M14", "M15", "M17")}

# derived cell printed without its 1* mark
MARK_ERRATA = {("CA5", "CA7"): "1*"}

ERRATA = {
    "closure_marks": MARK_ERRATA,
    "normalized": NORMALIZED_ERRATA,
    "local_ranks": LOCAL_RANK_ERRATA,
}


def load_published() -> dict:
    return json.loads((study_dir() / "published.json").read_text(encoding="utf-8"))


@dataclass
class TableCheck:
    name: str
    compared: int = 0
    mismatches: list[str] = field(default_factory=list)
    errata: list[str] = field(default_factory=list)

    def ok(self, strict: bool = False) -> bool:
        return not self.mismatches and not (strict and self.errata)

    def summary(self, strict: bool = False) -> str:
        status = "PASS" if self.ok(strict) else "FAIL"
        text = f"{status} {self.name}: {self.compared - len(self.mismatches) - len(self.errata)}/{self.compared} match"
        if self.errata:
            text += f", {len(self.errata)} documented errata"
        if self.mismatches:
            text += f", {len(self.mismatches)} mismatch(es)"
        return text


def _check(name: str, items, compare: Callable, errata: dict | None = None) -> TableCheck:
    """``items`` yields (key, published, computed); ``compare`` decides equality."""
    check = TableCheck(name)
    for key, published, computed in items:
        check.compared += 1
        if compare(published, computed):
            continue
        line = f"{key}: published {published}, computed {computed}"
        if errata is not None and key in errata and compare(errata[key], computed):
            check.errata.append(line)
        else:
            check.mismatches.append(line)
    return check


def _close(tol: float) -> Callable:
    return lambda a, b: abs(float(a) - float(b)) <= tol


def _exact(a, b) -> bool:
    return a == b


def reproduce() -> tuple[IsmResult, IsmResult, TopsisResult]:
    """The bundled study run in paper-compatible modes (plus standard levels)."""
    d = study_dir()
    ssim = p.parse_ssim((d / "ssim.csv").read_text(encoding="utf-8"), "ssim.csv")
    order = load_published()["conical"]["order"]
    paper_ism = run_ism(ssim, ClosureMode.SINGLE_PASS, ExtractionMode.PAPER_COMPAT, order)
    standard_ism = run_ism(ssim, ClosureMode.SINGLE_PASS, ExtractionMode.STANDARD)
    decision, weights = p.parse_decision_matrix(
        (d / "decision_matrix.csv").read_text(encoding="utf-8"), "decision_matrix.csv", allow_unordered=True)
    orientations = p.parse_orientations((d / "orientations.csv").read_text(encoding="utf-8"))
    category_map = p.parse_category_map((d / "category_map_ranking.csv").read_text(encoding="utf-8"))
    topsis = run_topsis(decision, weights, orientations, category_map, SeparationMode.PAPER_COMPAT)
    return paper_ism, standard_ism, topsis


def verify() -> list[TableCheck]:
    pub = load_published()
    ism, standard, t = reproduce()
    checks = []

    m = ism.reachability
    checks.append(_check("initial reachability", (
        ((r, c), pub["reachability"]["rows"][r][j], int(m.values[i, j]))
        for i, r in enumerate(m.codes) for j, c in enumerate(m.codes)), _exact))

    f = ism.closure
    closure_rows = pub["closure"]["rows"]
    checks.append(_check("final reachability (binary)", (
        ((r, c), closure_rows[r][j].rstrip("*"), "1" if f.values[i, j] else "0")
        for i, r in enumerate(f.codes) for j, c in enumerate(f.codes)), _exact))
    checks.append(_check("final reachability (1* marks)", (
        ((r, c), closure_rows[r][j], f.cell(i, j))
        for i, r in enumerate(f.codes) for j, c in enumerate(f.codes)), _exact, MARK_ERRATA))

    pw = ism.powers
    checks.append(_check("driving/dependence powers and ranks", (
        ((name, code), pub["closure"][name][i], getattr(pw, name)[i])
        for name in ("driving", "driving_rank", "dependence", "dependence_rank")
        for i, code in enumerate(pw.codes)), _exact))

    levels = {int(k): tuple(v) for k, v in pub["levels"]["paper-compat"].items()}
    checks.append(_check("level partition (paper-compat)", (
        ("levels", levels, ism.levels.as_dict()),), _exact))
    checks.append(_check("level partition (standard)", (
        ("levels", EXPECTED_STANDARD_LEVELS, standard.levels.as_dict()),), _exact))

    cn = ism.conical
    checks.append(_check("conical matrix", (
        ((r, c), pub["conical"]["rows"][r][j], int(cn.values[i, j]))
        for i, r in enumerate(cn.order) for j, c in enumerate(pub["conical"]["order"])), _exact))
    if list(cn.order) != pub["conical"]["order"]:
        checks[-1].mismatches.append(f"order: published {pub['conical']['order']}, computed {list(cn.order)}")

    checks.append(_check("MICMAC clusters (definition-derived)", (
        (code, EXPECTED_MICMAC[code], cl.value) for code, cl in zip(ism.micmac.codes, ism.micmac.clusters)), _exact))
    prose = TableCheck("MICMAC clusters (published prose)")
    for code, cl in zip(ism.micmac.codes, ism.micmac.clusters):
        prose.compared += 1
        ref = pub["micmac_prose"].get(code)
        if ref is None or MicmacCluster.parse(ref) is not cl:
            prose.errata.append(f"{code}: prose {ref}, classified {cl.value}")
    checks.append(prose)

    def tfn_items(table, matrix):
        for i, alt in enumerate(matrix.alternatives):
            for j, crit in enumerate(matrix.criteria):
                for k in range(3):
                    yield (alt, crit, k), table[alt][j][k], matrix.cells[i][j].as_tuple()[k]

    checks.append(_check("normalized decision matrix", tfn_items(pub["normalized"], t.normalized),
                         _close(CELL_TOL), NORMALIZED_ERRATA))
    checks.append(_check("weighted normalized matrix", tfn_items(pub["weighted"], t.weighted), _close(CELL_TOL)))
    checks.append(_check("ideal solutions", (
        ((name, crit, k), pub["ideals"][name][j][k], getattr(t.ideals, name)[j].as_tuple()[k])
        for name in ("fpis", "fnis") for j, crit in enumerate(t.ideals.criteria) for k in range(3)),
        _close(CELL_TOL)))

    s = t.separations
    idx = {a: i for i, a in enumerate(s.alternatives)}
    for label, key, dist in (("positive", "separations_plus", s.to_positive),
                             ("negative", "separations_minus", s.to_negative)):
        checks.append(_check(f"{label} ideal distances per criterion", (
            ((alt, crit), row["distances"][j], dist[idx[alt]][j])
            for alt, row in pub[key].items() for j, crit in enumerate(s.criteria)), _close(CELL_TOL)))
    checks.append(_check("positive separations D+", (
        (alt, row["total"], s.d_plus[idx[alt]]) for alt, row in pub["separations_plus"].items()),
        _close(SEPARATION_TOL)))
    checks.append(_check("negative separations D- (paper-compat)", (
        (alt, row["total"], s.d_minus[idx[alt]]) for alt, row in pub["separations_minus"].items()),
        _close(SEPARATION_TOL)))

    r = t.ranking
    ridx = {a: i for i, a in enumerate(r.alternatives)}
    cl = pub["closeness"]
    checks.append(_check("closeness coefficients", (
        (alt, row["cc"], r.cc[ridx[alt]]) for alt, row in cl.items()), _close(CC_TOL)))
    checks.append(_check("global ranks", (
        (alt, row["global_rank"], r.global_rank[ridx[alt]]) for alt, row in cl.items()), _exact))
    checks.append(_check("local ranks", (
        (alt, row["local_rank"], r.local_rank[ridx[alt]]) for alt, row in cl.items()), _exact,
        LOCAL_RANK_ERRATA))
    return checks
