"""Study configuration and end-to-end pipeline assembly."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

from .core import CriterionOrientation
from .errors import IncompleteInputError, ParseError
from .io import parsers as p
from .io.report import ReportBundle
from .ism import (
    ClosureMode,
    ConicalMatrix,
    Edge,
    ExtractionMode,
    LevelPartition,
    MarkedBinaryMatrix,
    PowerSummary,
    SsimMatrix,
    conical_matrix,
    digraph_edges,
    level_partition,
    parse_mode,
    power_summary,
    ssim_to_initial_reachability,
    transitive_fill,
)
from .micmac import MicmacClassification, classify, divergences
from .topsis import SeparationMode, TopsisResult, aggregate_experts, run_topsis


def study_dir() -> Path:
    """Directory of the bundled reference study fixtures."""
    return Path(str(resources.files("ismtopsis") / "data" / "study"))


@dataclass(frozen=True)
class IsmResult:
    reachability: MarkedBinaryMatrix
    closure: MarkedBinaryMatrix
    powers: PowerSummary
    levels: LevelPartition
    conical: ConicalMatrix
    edges: list[Edge]
    micmac: MicmacClassification


def run_ism(ssim: SsimMatrix, closure: ClosureMode = ClosureMode.SINGLE_PASS,
            levels: ExtractionMode = ExtractionMode.PAPER_COMPAT,
            order: Sequence[str] | None = None) -> IsmResult:
    initial = ssim_to_initial_reachability(ssim)
    final = transitive_fill(initial, closure)
    powers = power_summary(final)
    partition = level_partition(final, levels)
    conical = conical_matrix(final, partition, order)
    return IsmResult(initial, final, powers, partition, conical,
                     digraph_edges(final, partition), classify(powers, final.n))


@dataclass
class StudyConfig:
    """Paths are resolved against ``base`` (the config file's directory)."""

    base: Path
    title: str = "Study report"
    categories: str | None = None
    motivators: str | None = None
    category_map: str | None = None
    ssim: str | None = None
    matrix: str | None = None
    expert_ratings: str | None = None
    orientations: str | None = None
    micmac_reference: str | None = None
    closure: ClosureMode = ClosureMode.SINGLE_PASS
    levels: ExtractionMode = ExtractionMode.PAPER_COMPAT
    separation: SeparationMode = SeparationMode.STANDARD
    conical_order: list[str] | None = None
    allow_unordered: bool = False
    out: str = "report"
    source: str = "<config>"

    _KEYS = ("title", "categories", "motivators", "category_map", "ssim", "matrix", "expert_ratings",
             "orientations", "micmac_reference", "closure", "levels", "separation", "conical_order",
             "allow_unordered", "out")

    @classmethod
    def load(cls, path: str | Path) -> "StudyConfig":
        path = Path(path)
        text = p.read_text(path)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", str(path), exc.lineno, exc.colno) from None
        return cls.from_dict(data, path.parent, str(path))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], base: Path, source: str = "<config>") -> "StudyConfig":
        if not isinstance(data, Mapping):
            raise ParseError("config must be a JSON object", source)
        unknown = sorted(set(data) - set(cls._KEYS))
        if unknown:
            raise ParseError(f"unknown config key(s): {', '.join(unknown)}", source)
        kw: dict[str, Any] = dict(data)
        try:
            for key, enum_cls in (("closure", ClosureMode), ("levels", ExtractionMode), ("separation", SeparationMode)):
                if key in kw:
                    kw[key] = parse_mode(enum_cls, kw[key])
        except ValueError as exc:
            raise ParseError(str(exc), source) from None
        if kw.get("matrix") and kw.get("expert_ratings"):
            raise ParseError("give either 'matrix' or 'expert_ratings', not both", source)
        cfg = cls(base=Path(base), source=source, **kw)
        for key in ("categories", "motivators", "category_map", "ssim", "matrix", "expert_ratings",
                    "orientations", "micmac_reference"):
            value = getattr(cfg, key)
            if value is not None and not cfg.resolve(value).is_file():
                raise ParseError(f"'{key}' file not found: {cfg.resolve(value)}", source)
        return cfg

    def resolve(self, name: str) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self.base / path

    def read(self, key: str) -> tuple[str, str]:
        path = self.resolve(getattr(self, key))
        return p.read_text(path), str(path)


def run_study(cfg: StudyConfig) -> ReportBundle:
    bundle = ReportBundle(title=cfg.title)
    bundle.modes = {"closure": cfg.closure.value, "levels": cfg.levels.value,
                    "separation": cfg.separation.value}
    categories = []
    if cfg.categories:
        categories = p.parse_categories(*cfg.read("categories"))
        bundle.category_labels = {c.code: c.label for c in categories}
    if cfg.motivators:
        if not categories:
            raise ParseError("'motivators' requires 'categories'", cfg.source)
        text, src = cfg.read("motivators")
        motivators = p.parse_motivators(text, categories, src)
        bundle.alternative_labels = {m.code: m.label for m in motivators}

    if cfg.ssim:
        ssim = p.parse_ssim(*cfg.read("ssim"))
        ism = run_ism(ssim, cfg.closure, cfg.levels, cfg.conical_order)
        bundle.reachability = ism.reachability
        bundle.closure = ism.closure
        bundle.powers = ism.powers
        bundle.levels = ism.levels
        bundle.conical = ism.conical
        bundle.edges = ism.edges
        bundle.micmac = ism.micmac
        if cfg.micmac_reference:
            text, src = cfg.read("micmac_reference")
            try:
                reference = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", src, exc.lineno, exc.colno) from None
            bundle.micmac_divergences = divergences(ism.micmac, reference)

    if cfg.matrix or cfg.expert_ratings:
        for key in ("orientations", "category_map"):
            if not getattr(cfg, key):
                raise ParseError(f"TOPSIS needs '{key}'", cfg.source)
        bundle.topsis = _run_topsis_from_config(cfg, bundle)
    return bundle


def _run_topsis_from_config(cfg: StudyConfig, bundle: ReportBundle) -> TopsisResult:
    if cfg.matrix:
        text, src = cfg.read("matrix")
        decision, weights = p.parse_decision_matrix(text, src, cfg.allow_unordered)
    else:
        text, src = cfg.read("expert_ratings")
        decision, weights = aggregate_experts(p.parse_expert_ratings(text, src, cfg.allow_unordered))
    orientations = p.parse_orientations(*cfg.read("orientations"))
    category_map = p.parse_category_map(*cfg.read("category_map"))
    check_topsis_inputs(decision.criteria, decision.alternatives, orientations, category_map)
    unordered = [(a, c) for a, row in zip(decision.alternatives, decision.cells)
                 for c, t in zip(decision.criteria, row) if not t.is_ordered]
    for a, c in unordered:
        bundle.notes.append(f"accepted out-of-order triple at ({a}, {c}) in {Path(src).name}")
    return run_topsis(decision, weights, orientations, category_map, cfg.separation)


def check_topsis_inputs(criteria: Sequence[str], alternatives: Sequence[str],
                        orientations: Mapping[str, CriterionOrientation],
                        category_map: Mapping[str, str]) -> None:
    missing = [c for c in criteria if c not in orientations]
    if missing:
        raise IncompleteInputError(f"no orientation for criterion {', '.join(missing)}")
    unmapped = [a for a in alternatives if a not in category_map]
    if unmapped:
        raise IncompleteInputError(f"category map has no entry for {', '.join(unmapped)}")
