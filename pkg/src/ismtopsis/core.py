"""Domain types and triangular fuzzy number algebra."""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from enum import Enum
from typing import Iterator

from .errors import DomainError, VocabularyError


@dataclass(frozen=True)
class CategoryId:
    index: int
    label: str
    code: str


@dataclass(frozen=True)
class MotivatorId:
    index: int
    label: str
    code: str
    category: CategoryId


class RelationSymbol(Enum):
    """Contextual relation between the row factor m and the column factor n."""

    V = "V"  # m reaches n
    A = "A"  # n reaches m
    X = "X"  # both directions
    O = "O"  # unrelated

    @classmethod
    def parse(cls, text: str) -> "RelationSymbol":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise VocabularyError(f"unknown relation symbol {text!r}; expected V, A, X or O") from None

    def reversed(self) -> "RelationSymbol":
        """The same judgment read from the other factor's side."""
        return {RelationSymbol.V: RelationSymbol.A, RelationSymbol.A: RelationSymbol.V}.get(self, self)


class CriterionOrientation(Enum):
    BENEFIT = "benefit"
    COST = "cost"

    @classmethod
    def parse(cls, text: str) -> "CriterionOrientation":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise VocabularyError(f"unknown criterion orientation {text!r}; expected benefit or cost") from None


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Triangular fuzzy number ``(a, b, c)`` with support ``[a, c]`` and mode ``b``.

    Components must be finite and non-negative. Ordering ``a <= b <= c`` is
    enforced unless ``check_order=False`` is passed, which exists only so that
    published data containing an out-of-order triple can be carried through
    the pipeline unchanged.
    """

    a: float
    b: float
    c: float
    check_order: InitVar[bool] = True

    def __post_init__(self, check_order: bool) -> None:
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"TFN component {name}={value!r} is not finite")
            if value < 0:
                raise DomainError(f"TFN component {name}={value!r} is negative")
            object.__setattr__(self, name, value)
        if check_order and not self.is_ordered:
            raise DomainError(f"TFN ({self.a}, {self.b}, {self.c}) violates a <= b <= c")

    @property
    def is_ordered(self) -> bool:
        return self.a <= self.b <= self.c

    def __iter__(self) -> Iterator[float]:
        return iter((self.a, self.b, self.c))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @classmethod
    def crisp(cls, value: float) -> "TriangularFuzzyNumber":
        return cls(value, value, value)


TFN = TriangularFuzzyNumber


def make_tfn(a: float, b: float, c: float, *sources: TFN) -> TFN:
    """Build a derived TFN; order is only enforced if every source was ordered."""
    return TFN(a, b, c, check_order=all(s.is_ordered for s in sources))


class LinguisticTerm(Enum):
    JE = "JE"      # just equal
    EI = "EI"      # equally important
    WI = "WI"      # weakly important
    SMI = "SMI"    # strongly more important
    VSMI = "VSMI"  # very strongly more important
    AMI = "AMI"    # absolutely more important

    @classmethod
    def parse(cls, text: str) -> "LinguisticTerm":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise VocabularyError(
                f"unknown linguistic term {text!r}; expected one of "
                + ", ".join(t.value for t in cls)
            ) from None


LINGUISTIC_SCALE: dict[LinguisticTerm, TFN] = {
    LinguisticTerm.JE: TFN(1, 1, 1),
    LinguisticTerm.EI: TFN(0.5, 1, 1.5),
    LinguisticTerm.WI: TFN(1, 1.5, 2),
    LinguisticTerm.SMI: TFN(1.5, 2, 2.5),
    LinguisticTerm.VSMI: TFN(2, 2.5, 3),
    LinguisticTerm.AMI: TFN(2.5, 3, 3.5),
}


def linguistic_to_tfn(term: LinguisticTerm | str) -> TFN:
    if not isinstance(term, LinguisticTerm):
        term = LinguisticTerm.parse(str(term))
    return LINGUISTIC_SCALE[term]


def tfn_multiply(p: TFN, q: TFN) -> TFN:
    """Component-wise product ``(p.a*q.a, p.b*q.b, p.c*q.c)``."""
    for t in (p, q):
        if min(t.a, t.b, t.c) < 0:
            raise DomainError(f"tfn_multiply is defined for non-negative TFNs, got {t}")
    return make_tfn(p.a * q.a, p.b * q.b, p.c * q.c, p, q)


def tfn_distance(p: TFN, q: TFN) -> float:
    """Vertex distance ``sqrt(((pa-qa)^2 + (pb-qb)^2 + (pc-qc)^2) / 3)``."""
    return math.sqrt(((p.a - q.a) ** 2 + (p.b - q.b) ** 2 + (p.c - q.c) ** 2) / 3.0)
