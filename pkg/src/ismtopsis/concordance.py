"""Kendall's coefficient of concordance (W) for m raters scoring n subjects."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .errors import IncompleteInputError, UndefinedConcordanceError


@dataclass(frozen=True)
class RatingTable:
    scores: np.ndarray  # raters x subjects
    raters: tuple[str, ...] = ()
    subjects: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        scores = np.asarray(self.scores, dtype=float)
        if scores.ndim != 2:
            raise IncompleteInputError("rating table must be two-dimensional")
        m, n = scores.shape
        if m < 2 or n < 2:
            raise IncompleteInputError(f"need at least 2 raters and 2 subjects, got {m}x{n}")
        if not np.isfinite(scores).all():
            raise IncompleteInputError("rating table has missing or non-finite scores")
        scores.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "raters", tuple(self.raters) or tuple(f"r{i + 1}" for i in range(m)))
        object.__setattr__(self, "subjects", tuple(self.subjects) or tuple(f"s{j + 1}" for j in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]], **kw) -> "RatingTable":
        return cls(np.asarray(rows, dtype=float), **kw)


@dataclass(frozen=True)
class ConcordanceResult:
    w: float
    chi_squared: float
    df: int


def kendalls_w(table: RatingTable, tie_correction: bool = True) -> ConcordanceResult:
    """``W = 12 S / (m^2 (n^3 - n) - m T)``; ties get mean ranks and ``T = sum(t^3 - t)``."""
    m, n = table.scores.shape
    ranks = np.vstack([rankdata(row, method="average") for row in table.scores])
    totals = ranks.sum(axis=0)
    s = float(((totals - totals.mean()) ** 2).sum())
    ties = 0.0
    if tie_correction:
        for row in table.scores:
            _, counts = np.unique(row, return_counts=True)
            ties += float((counts ** 3 - counts).sum())
    denom = m ** 2 * (n ** 3 - n) - m * ties
    if denom <= 0:
        raise UndefinedConcordanceError("every rater gave all subjects the same score; W is undefined")
    w = 12.0 * s / denom
    return ConcordanceResult(w, m * (n - 1) * w, n - 1)
