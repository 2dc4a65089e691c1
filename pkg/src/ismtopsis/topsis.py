"""Fuzzy TOPSIS over triangular fuzzy numbers.

Stages: expert aggregation -> linear-scale normalization -> weighting ->
ideal solutions -> separation measures -> closeness coefficients -> ranks.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import TFN, CriterionOrientation, make_tfn, tfn_distance, tfn_multiply
from .errors import DegenerateAlternativeError, IncompleteInputError, NormalizationError

WEIGHTS = "WEIGHTS"


@dataclass(frozen=True)
class FuzzyMatrix:
    """Alternatives x criteria grid of TFNs (decision, normalized or weighted)."""

    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    cells: tuple[tuple[TFN, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        cells = tuple(tuple(row) for row in self.cells)
        if len(cells) != len(self.alternatives):
            raise IncompleteInputError(f"expected {len(self.alternatives)} rows, got {len(cells)}")
        for alt, row in zip(self.alternatives, cells):
            if len(row) != len(self.criteria):
                raise IncompleteInputError(f"row {alt} has {len(row)} cells, expected {len(self.criteria)}")
        object.__setattr__(self, "cells", cells)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.alternatives), len(self.criteria)

    def cell(self, alternative: str, criterion: str) -> TFN:
        return self.cells[self.alternatives.index(alternative)][self.criteria.index(criterion)]

    def column(self, j: int) -> list[TFN]:
        return [row[j] for row in self.cells]

    def to_array(self) -> np.ndarray:
        return np.array([[t.as_tuple() for t in row] for row in self.cells], dtype=float).reshape(
            len(self.alternatives), len(self.criteria), 3)


FuzzyDecisionMatrix = FuzzyMatrix


@dataclass(frozen=True)
class CriterionWeights:
    criteria: tuple[str, ...]
    weights: tuple[TFN, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.criteria) != len(self.weights):
            raise IncompleteInputError("one weight per criterion is required")

    def __getitem__(self, criterion: str) -> TFN:
        return self.weights[self.criteria.index(criterion)]


@dataclass(frozen=True)
class ExpertRating:
    expert: str
    alternative: str  # WEIGHTS for a criterion-weight judgment
    criterion: str
    rating: TFN


def _fold(values: Sequence[TFN]) -> TFN:
    a = min(v.a for v in values)
    b = sum(v.b for v in values) / len(values)
    c = max(v.c for v in values)
    return make_tfn(a, b, c, *values)


def aggregate_experts(ratings: Iterable[ExpertRating],
                      experts: int | None = None) -> tuple[FuzzyMatrix, CriterionWeights]:
    """Combine a panel: min of lower bounds, mean of modes, max of upper bounds.

    Criterion weights are the ratings whose ``alternative`` is ``WEIGHTS`` and
    are combined the same way. Every expert must rate every
    (alternative, criterion) pair and every criterion weight.
    """
    ratings = list(ratings)
    panel: list[str] = []
    alternatives: list[str] = []
    criteria: list[str] = []
    grid: dict[tuple[str, str], dict[str, TFN]] = defaultdict(dict)
    for r in ratings:
        for seq, item in ((panel, r.expert), (criteria, r.criterion)):
            if item not in seq:
                seq.append(item)
        if r.alternative != WEIGHTS and r.alternative not in alternatives:
            alternatives.append(r.alternative)
        slot = grid[(r.alternative, r.criterion)]
        if r.expert in slot:
            raise IncompleteInputError(
                f"duplicate rating by {r.expert} for ({r.alternative}, {r.criterion})")
        slot[r.expert] = r.rating
    if not panel:
        raise IncompleteInputError("no ratings supplied")
    if experts is not None and experts != len(panel):
        raise IncompleteInputError(f"expected {experts} experts, found {len(panel)}")

    def combined(alt: str, crit: str) -> TFN:
        slot = grid.get((alt, crit), {})
        missing = [e for e in panel if e not in slot]
        if missing:
            raise IncompleteInputError(f"missing rating for ({alt}, {crit}) from expert(s) {', '.join(missing)}")
        return _fold([slot[e] for e in panel])

    cells = [[combined(a, c) for c in criteria] for a in alternatives]
    weights = CriterionWeights(criteria, [combined(WEIGHTS, c) for c in criteria])
    return FuzzyMatrix(alternatives, criteria, cells), weights


def normalize(d: FuzzyMatrix, orientations: Mapping[str, CriterionOrientation]) -> FuzzyMatrix:
    """Linear-scale normalization.

    Benefit: ``(x/z+, y/z+, z/z+)`` with ``z+`` the column max of upper bounds.
    Cost: ``(x-/z, x-/y, x-/x)`` with ``x-`` the column min of lower bounds.
    """
    m, n = d.shape
    columns = []
    for j, crit in enumerate(d.criteria):
        if crit not in orientations:
            raise IncompleteInputError(f"no orientation given for criterion {crit}")
        col = d.column(j)
        if orientations[crit] is CriterionOrientation.BENEFIT:
            z_max = max(t.c for t in col)
            if z_max <= 0:
                raise NormalizationError(f"benefit criterion {crit}: column maximum of upper bounds is zero", crit)
            columns.append([make_tfn(t.a / z_max, t.b / z_max, t.c / z_max, t) for t in col])
        else:
            if any(min(t.a, t.b, t.c) <= 0 for t in col):
                raise NormalizationError(f"cost criterion {crit}: every component must be positive", crit)
            x_min = min(t.a for t in col)
            columns.append([make_tfn(x_min / t.c, x_min / t.b, x_min / t.a, t) for t in col])
    cells = [[columns[j][i] for j in range(n)] for i in range(m)]
    return FuzzyMatrix(d.alternatives, d.criteria, cells)


def apply_weights(r: FuzzyMatrix, w: CriterionWeights) -> FuzzyMatrix:
    if tuple(w.criteria) != r.criteria:
        raise IncompleteInputError(
            f"weights cover criteria {list(w.criteria)}, matrix has {list(r.criteria)}")
    cells = [[tfn_multiply(t, wj) for t, wj in zip(row, w.weights)] for row in r.cells]
    return FuzzyMatrix(r.alternatives, r.criteria, cells)


@dataclass(frozen=True)
class IdealSolutions:
    criteria: tuple[str, ...]
    fpis: tuple[TFN, ...]
    fnis: tuple[TFN, ...]


def ideal_solutions(v: FuzzyMatrix) -> IdealSolutions:
    """Component-wise column maximum (positive ideal) and minimum (negative ideal)."""
    if not v.alternatives:
        raise IncompleteInputError("cannot derive ideal solutions from an empty matrix")
    fpis, fnis = [], []
    for j in range(len(v.criteria)):
        col = v.column(j)
        fpis.append(make_tfn(max(t.a for t in col), max(t.b for t in col), max(t.c for t in col), *col))
        fnis.append(make_tfn(min(t.a for t in col), min(t.b for t in col), min(t.c for t in col), *col))
    return IdealSolutions(v.criteria, tuple(fpis), tuple(fnis))


class SeparationMode(Enum):
    STANDARD = "standard"
    PAPER_COMPAT = "paper-compat"


@dataclass(frozen=True)
class SeparationMeasures:
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    to_positive: tuple[tuple[float, ...], ...]  # per-criterion distances to the positive ideal
    to_negative: tuple[tuple[float, ...], ...]
    d_plus: tuple[float, ...]
    d_minus: tuple[float, ...]
    mode: SeparationMode


def separation_measures(v: FuzzyMatrix, ideals: IdealSolutions,
                        mode: SeparationMode = SeparationMode.STANDARD) -> SeparationMeasures:
    """Distances of every alternative from both ideals.

    ``D+`` is always the sum over criteria. ``D-`` is the sum in ``STANDARD``
    mode and the per-criterion maximum in ``PAPER_COMPAT`` mode, which is how
    the published negative separations were obtained.
    """
    if tuple(ideals.criteria) != v.criteria:
        raise IncompleteInputError("ideal solutions do not match the weighted matrix criteria")
    to_pos = tuple(tuple(tfn_distance(t, p) for t, p in zip(row, ideals.fpis)) for row in v.cells)
    to_neg = tuple(tuple(tfn_distance(t, q) for t, q in zip(row, ideals.fnis)) for row in v.cells)
    d_plus = tuple(float(sum(row)) for row in to_pos)
    if mode is SeparationMode.PAPER_COMPAT:
        d_minus = tuple(float(max(row)) for row in to_neg)
    else:
        d_minus = tuple(float(sum(row)) for row in to_neg)
    return SeparationMeasures(v.alternatives, v.criteria, to_pos, to_neg, d_plus, d_minus, mode)


def closeness(s: SeparationMeasures) -> tuple[float, ...]:
    """``CC = D- / (D+ + D-)`` per alternative."""
    out = []
    for alt, dp, dm in zip(s.alternatives, s.d_plus, s.d_minus):
        if dp + dm == 0:
            raise DegenerateAlternativeError(f"{alt}: both separation measures are zero")
        out.append(dm / (dp + dm))
    return tuple(out)


@dataclass(frozen=True)
class ClosenessRanking:
    alternatives: tuple[str, ...]
    cc: tuple[float, ...]
    global_rank: tuple[int, ...]
    local_rank: tuple[int, ...]
    category: tuple[str, ...]

    def order(self) -> list[str]:
        return sorted(self.alternatives, key=lambda a: self.global_rank[self.alternatives.index(a)])

    def row(self, alternative: str) -> tuple[float, int, int, str]:
        i = self.alternatives.index(alternative)
        return self.cc[i], self.local_rank[i], self.global_rank[i], self.category[i]


def _positions(indices: Sequence[int], cc: Sequence[float]) -> dict[int, int]:
    # Python's sort is stable, so equal cc keeps input order
    ordered = sorted(indices, key=lambda i: -cc[i])
    return {i: r for r, i in enumerate(ordered, start=1)}


def rank(alternatives: Sequence[str], cc: Sequence[float],
         category_map: Mapping[str, str]) -> ClosenessRanking:
    """Global and within-category ranks; higher cc ranks first, ties keep input order."""
    alternatives = tuple(alternatives)
    cc = tuple(float(x) for x in cc)
    if len(cc) != len(alternatives):
        raise IncompleteInputError("one closeness value per alternative is required")
    if not all(np.isfinite(cc)):
        raise ValueError("closeness coefficients must be finite")
    missing = [a for a in alternatives if a not in category_map]
    if missing:
        raise IncompleteInputError(f"category map has no entry for {', '.join(missing)}")
    glob = _positions(range(len(cc)), cc)
    groups: dict[str, list[int]] = defaultdict(list)
    for i, a in enumerate(alternatives):
        groups[category_map[a]].append(i)
    local: dict[int, int] = {}
    for members in groups.values():
        local.update(_positions(members, cc))
    n = len(alternatives)
    return ClosenessRanking(
        alternatives, cc,
        tuple(glob[i] for i in range(n)),
        tuple(local[i] for i in range(n)),
        tuple(category_map[a] for a in alternatives),
    )


@dataclass(frozen=True)
class TopsisResult:
    decision: FuzzyMatrix
    weights: CriterionWeights
    normalized: FuzzyMatrix
    weighted: FuzzyMatrix
    ideals: IdealSolutions
    separations: SeparationMeasures
    ranking: ClosenessRanking


def run_topsis(decision: FuzzyMatrix, weights: CriterionWeights,
               orientations: Mapping[str, CriterionOrientation],
               category_map: Mapping[str, str],
               mode: SeparationMode = SeparationMode.STANDARD) -> TopsisResult:
    normalized = normalize(decision, orientations)
    weighted = apply_weights(normalized, weights)
    ideals = ideal_solutions(weighted)
    seps = separation_measures(weighted, ideals, mode)
    ranking = rank(decision.alternatives, closeness(seps), category_map)
    return TopsisResult(decision, weights, normalized, weighted, ideals, seps, ranking)
