"""Interpretive structural modeling: SSIM conversion, transitivity, levels, conical matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .core import RelationSymbol
from .errors import IncompleteInputError, PartitionError, VocabularyError


def _frozen(array: np.ndarray, dtype=bool) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SsimMatrix:
    """Upper-triangular relation judgments; ``upper[(i, j)]`` with 0-based ``i < j``.

    Completeness is not enforced here so that incomplete judgments can be
    reported by the consumers; see :meth:`missing_pairs`.
    """

    codes: tuple[str, ...]
    upper: Mapping[tuple[int, int], RelationSymbol]

    def __post_init__(self) -> None:
        object.__setattr__(self, "codes", tuple(self.codes))
        n = len(self.codes)
        for (i, j) in self.upper:
            if not (0 <= i < j < n):
                raise IncompleteInputError(f"SSIM pair {(i, j)} is not an upper-triangular pair of {n} categories")

    @property
    def n(self) -> int:
        return len(self.codes)

    def missing_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if (i, j) not in self.upper]

    def relation(self, i: int, j: int) -> RelationSymbol:
        """Relation read from row ``i`` towards column ``j`` (either triangle)."""
        if i < j:
            return self.upper[(i, j)]
        return self.upper[(j, i)].reversed()


@dataclass(frozen=True)
class MarkedBinaryMatrix:
    """0/1 matrix where derived (transitive) entries carry the ``1*`` mark."""

    codes: tuple[str, ...]
    values: np.ndarray
    derived: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        n = len(self.codes)
        object.__setattr__(self, "codes", tuple(self.codes))
        values = _frozen(self.values)
        derived = _frozen(np.zeros_like(values) if self.derived is None else self.derived)
        if values.shape != (n, n) or derived.shape != (n, n):
            raise ValueError(f"matrix must be {n}x{n}, got {values.shape}")
        if not values.diagonal().all():
            raise ValueError("reachability matrix diagonal must be all 1")
        if derived.diagonal().any():
            raise ValueError("1* may not appear on the diagonal")
        if (derived & ~values).any():
            raise ValueError("every 1* cell must also be a 1 cell")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "derived", derived)

    @property
    def n(self) -> int:
        return len(self.codes)

    def cell(self, i: int, j: int) -> str:
        if not self.values[i, j]:
            return "0"
        return "1*" if self.derived[i, j] else "1"

    def marks(self) -> list[list[str]]:
        return [[self.cell(i, j) for j in range(self.n)] for i in range(self.n)]

    def derived_cells(self) -> list[tuple[str, str]]:
        return [(self.codes[i], self.codes[j]) for i, j in zip(*np.nonzero(self.derived))]

    def index(self, code: str) -> int:
        return self.codes.index(code)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkedBinaryMatrix):
            return NotImplemented
        return (self.codes == other.codes and np.array_equal(self.values, other.values)
                and np.array_equal(self.derived, other.derived))

    __hash__ = None  # type: ignore[assignment]


class ClosureMode(Enum):
    SINGLE_PASS = "single-pass"
    FIXED_POINT = "fixed-point"


class ExtractionMode(Enum):
    STANDARD = "standard"
    PAPER_COMPAT = "paper-compat"


def parse_mode(enum_cls, text):
    if isinstance(text, enum_cls):
        return text
    try:
        return enum_cls(str(text).strip().lower())
    except ValueError:
        choices = ", ".join(m.value for m in enum_cls)
        raise VocabularyError(f"unknown {enum_cls.__name__} {text!r}; expected one of {choices}") from None


def ssim_to_initial_reachability(ssim: SsimMatrix) -> MarkedBinaryMatrix:
    missing = ssim.missing_pairs()
    if missing:
        names = ", ".join(f"({ssim.codes[i]},{ssim.codes[j]})" for i, j in missing[:5])
        more = f" and {len(missing) - 5} more" if len(missing) > 5 else ""
        raise IncompleteInputError(f"SSIM is missing {len(missing)} pair(s): {names}{more}")
    n = ssim.n
    m = np.eye(n, dtype=bool)
    for (i, j), symbol in ssim.upper.items():
        m[i, j] = symbol in (RelationSymbol.V, RelationSymbol.X)
        m[j, i] = symbol in (RelationSymbol.A, RelationSymbol.X)
    return MarkedBinaryMatrix(ssim.codes, m)


def _compose(m: np.ndarray) -> np.ndarray:
    mi = m.astype(np.int64)
    return (mi @ mi) > 0


def transitive_fill(m: MarkedBinaryMatrix, mode: ClosureMode = ClosureMode.SINGLE_PASS) -> MarkedBinaryMatrix:
    """Add transitive entries, marking every newly reached cell as ``1*``.

    ``SINGLE_PASS`` composes the input with itself once (one-step paths
    through an intermediate); ``FIXED_POINT`` repeats until closure.
    """
    mode = parse_mode(ClosureMode, mode)
    current = m.values.copy()
    while True:
        nxt = current | _compose(current)
        if mode is ClosureMode.SINGLE_PASS or np.array_equal(nxt, current):
            current = nxt
            break
        current = nxt
    derived = m.derived | (current & ~m.values)
    return MarkedBinaryMatrix(m.codes, current, derived)


def dense_rank(values: Sequence[int]) -> tuple[int, ...]:
    """Dense ascending rank: ties share a rank, the next distinct value gets +1."""
    order = {v: r for r, v in enumerate(sorted(set(values)), start=1)}
    return tuple(order[v] for v in values)


@dataclass(frozen=True)
class PowerSummary:
    codes: tuple[str, ...]
    driving: tuple[int, ...]
    dependence: tuple[int, ...]
    driving_rank: tuple[int, ...]
    dependence_rank: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.driving)


def power_summary(m: MarkedBinaryMatrix) -> PowerSummary:
    driving = tuple(int(x) for x in m.values.sum(axis=1))
    dependence = tuple(int(x) for x in m.values.sum(axis=0))
    return PowerSummary(m.codes, driving, dependence, dense_rank(driving), dense_rank(dependence))


@dataclass(frozen=True)
class TraceRow:
    code: str
    reachability: tuple[str, ...]
    antecedent: tuple[str, ...]
    intersection: tuple[str, ...]
    qualifies: bool
    extracted: bool


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    level: int
    rows: tuple[TraceRow, ...]

    @property
    def extracted(self) -> tuple[str, ...]:
        return tuple(r.code for r in self.rows if r.extracted)


@dataclass(frozen=True)
class LevelPartition:
    codes: tuple[str, ...]
    level: tuple[int, ...]
    mode: ExtractionMode
    trace: tuple[IterationRecord, ...] = field(default=())

    @property
    def depth(self) -> int:
        return max(self.level, default=0)

    def members(self, level: int) -> tuple[str, ...]:
        return tuple(c for c, lv in zip(self.codes, self.level) if lv == level)

    def as_dict(self) -> dict[int, tuple[str, ...]]:
        return {lv: self.members(lv) for lv in range(1, self.depth + 1)}

    def level_of(self, code: str) -> int:
        return self.level[self.codes.index(code)]


def level_partition(m: MarkedBinaryMatrix, mode: ExtractionMode = ExtractionMode.PAPER_COMPAT) -> LevelPartition:
    """Iteratively extract categories whose reachability set equals its intersection set.

    ``STANDARD`` extracts every qualifier per iteration. ``PAPER_COMPAT``
    extracts only the qualifiers with the smallest reachability set, which
    splits one standard level into several when qualifiers differ in size.
    """
    mode = parse_mode(ExtractionMode, mode)
    codes = m.codes
    remaining = list(range(m.n))
    level = [0] * m.n
    trace = []
    iteration = 0
    while remaining:
        iteration += 1
        sets = {}
        for i in remaining:
            reach = [j for j in remaining if m.values[i, j]]
            ante = [j for j in remaining if m.values[j, i]]
            inter = [j for j in reach if j in ante]
            sets[i] = (reach, ante, inter, reach == inter)
        qualifiers = [i for i in remaining if sets[i][3]]
        if not qualifiers:
            left = ", ".join(codes[i] for i in remaining)
            raise PartitionError(f"iteration {iteration}: no category qualifies for extraction among {left}")
        if mode is ExtractionMode.PAPER_COMPAT:
            smallest = min(len(sets[i][0]) for i in qualifiers)
            chosen = [i for i in qualifiers if len(sets[i][0]) == smallest]
        else:
            chosen = qualifiers
        names = lambda idx: tuple(codes[j] for j in idx)  # noqa: E731
        rows = tuple(
            TraceRow(codes[i], names(sets[i][0]), names(sets[i][1]), names(sets[i][2]),
                     sets[i][3], i in chosen)
            for i in remaining
        )
        trace.append(IterationRecord(iteration, iteration, rows))
        for i in chosen:
            level[i] = iteration
        remaining = [i for i in remaining if i not in chosen]
    return LevelPartition(codes, tuple(level), mode, tuple(trace))


@dataclass(frozen=True)
class ConicalMatrix:
    order: tuple[str, ...]
    levels: tuple[int, ...]
    values: np.ndarray


def conical_matrix(m: MarkedBinaryMatrix, p: LevelPartition,
                   order: Sequence[str] | None = None) -> ConicalMatrix:
    """Permute rows and columns into ascending level order.

    Within a level, categories follow study order unless ``order`` lists the
    full sequence explicitly; an explicit order must still be level-sorted.
    """
    if p.codes != m.codes:
        raise ValueError("partition and matrix describe different categories")
    if order is None:
        idx = sorted(range(m.n), key=lambda i: (p.level[i], i))
    else:
        order = list(order)
        if sorted(order) != sorted(m.codes):
            raise ValueError(f"explicit order must list every category exactly once, got {order}")
        idx = [m.index(c) for c in order]
        lv = [p.level[i] for i in idx]
        if lv != sorted(lv):
            raise ValueError(f"explicit order {order} is not sorted by level")
    values = m.values[np.ix_(idx, idx)].astype(np.int8)
    values.setflags(write=False)
    return ConicalMatrix(tuple(m.codes[i] for i in idx), tuple(p.level[i] for i in idx), values)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    source_level: int
    target_level: int


def digraph_edges(m: MarkedBinaryMatrix, p: LevelPartition) -> list[Edge]:
    """Directed edges for every elicited (non-derived, off-diagonal) 1 cell."""
    edges = []
    for i in range(m.n):
        for j in range(m.n):
            if i != j and m.values[i, j] and not m.derived[i, j]:
                edges.append(Edge(m.codes[i], m.codes[j], p.level[i], p.level[j]))
    return edges
