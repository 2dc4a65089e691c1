"""MICMAC classification of categories by driving and dependence power."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import DomainError, VocabularyError
from .ism import PowerSummary


class MicmacCluster(Enum):
    AUTONOMOUS = "Autonomous"
    DEPENDENT = "Dependent"
    LINKAGE = "Linkage"
    INDEPENDENT = "Independent"

    @classmethod
    def parse(cls, text: str) -> "MicmacCluster":
        for member in cls:
            if member.value.lower() == str(text).strip().lower():
                return member
        raise VocabularyError(f"unknown MICMAC cluster {text!r}")


@dataclass(frozen=True)
class MicmacClassification:
    codes: tuple[str, ...]
    clusters: tuple[MicmacCluster, ...]
    threshold: float
    points: tuple[tuple[int, int], ...]  # (dependence, driving)

    def cluster_of(self, code: str) -> MicmacCluster:
        return self.clusters[self.codes.index(code)]

    def members(self, cluster: MicmacCluster) -> tuple[str, ...]:
        return tuple(c for c, k in zip(self.codes, self.clusters) if k is cluster)


def cluster_for(driving: int, dependence: int, threshold: float) -> MicmacCluster:
    # values equal to the threshold count as low
    strong_drive = driving > threshold
    strong_dep = dependence > threshold
    if strong_drive and strong_dep:
        return MicmacCluster.LINKAGE
    if strong_drive:
        return MicmacCluster.INDEPENDENT
    if strong_dep:
        return MicmacCluster.DEPENDENT
    return MicmacCluster.AUTONOMOUS


def classify(powers: PowerSummary, n: int | None = None) -> MicmacClassification:
    """Quadrant classification against the midpoint ``n / 2``."""
    n = len(powers.codes) if n is None else n
    for code, drv, dep in zip(powers.codes, powers.driving, powers.dependence):
        for name, value in (("driving", drv), ("dependence", dep)):
            if not 1 <= value <= n:
                raise DomainError(f"{code}: {name} power {value} outside [1, {n}]")
    threshold = n / 2
    clusters = tuple(cluster_for(d, e, threshold) for d, e in zip(powers.driving, powers.dependence))
    points = tuple(zip(powers.dependence, powers.driving))
    return MicmacClassification(powers.codes, clusters, threshold, points)


@dataclass(frozen=True)
class Divergence:
    code: str
    computed: MicmacCluster
    reference: MicmacCluster | None

    def describe(self) -> str:
        if self.reference is None:
            return f"{self.code}: classified {self.computed.value}; the reference assigns no cluster"
        return f"{self.code}: classified {self.computed.value}; the reference states {self.reference.value}"


def divergences(result: MicmacClassification,
                reference: Mapping[str, MicmacCluster | str | None]) -> list[Divergence]:
    """Categories whose computed cluster differs from a reference assignment.

    Codes missing from ``reference`` are not compared; a code mapped to
    ``None`` (mentioned but never assigned) always counts as a divergence.
    """
    out = []
    for code, cluster in zip(result.codes, result.clusters):
        if code not in reference:
            continue
        ref = reference[code]
        if ref is not None and not isinstance(ref, MicmacCluster):
            ref = MicmacCluster.parse(ref)
        if ref is not cluster:
            out.append(Divergence(code, cluster, ref))
    return out
