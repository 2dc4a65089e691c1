"""Interpretive structural modeling, MICMAC and fuzzy TOPSIS for decision studies."""

from .concordance import ConcordanceResult, RatingTable, kendalls_w
from .core import (
    TFN,
    CategoryId,
    CriterionOrientation,
    LinguisticTerm,
    MotivatorId,
    RelationSymbol,
    TriangularFuzzyNumber,
    linguistic_to_tfn,
    tfn_distance,
    tfn_multiply,
)
from .errors import IsmTopsisError, ParseError
from .ism import (
    ClosureMode,
    ExtractionMode,
    LevelPartition,
    MarkedBinaryMatrix,
    PowerSummary,
    SsimMatrix,
    conical_matrix,
    digraph_edges,
    level_partition,
    power_summary,
    ssim_to_initial_reachability,
    transitive_fill,
)
from .micmac import MicmacClassification, MicmacCluster, classify
from .topsis import (
    ClosenessRanking,
    CriterionWeights,
    ExpertRating,
    FuzzyDecisionMatrix,
    FuzzyMatrix,
    IdealSolutions,
    SeparationMeasures,
    SeparationMode,
    aggregate_experts,
    apply_weights,
    closeness,
    ideal_solutions,
    normalize,
    rank,
    run_topsis,
    separation_measures,
)

__version__ = "0.1.0"
