"""Belief updating with belief functions, possibility measures and ranking functions."""

from .documents import KnowledgeDocument, dumps, load, loads, save
from .errors import (
    ConditioningOnNull,
    ConditioningUndefined,
    DegenerateComplement,
    EmptySet,
    FrameMismatch,
    FrameTooLarge,
    GeneratorConstraintUnsatisfiable,
    KindMismatch,
    NoFeasibleSelection,
    NotOnRankGrid,
    ParseError,
    TotalConflict,
    UnknownElement,
    UnknownRule,
    UnnormalizedResult,
    UpdateError,
    ValidationError,
    WeightNormalization,
    ZeroPossibility,
)
from .evidence import (
    ConditioningRule,
    CredalOracle,
    IntervalValuation,
    MassFunction,
    bel_conditional,
    belief,
    condition,
    credal_oracle,
    dempster_combine,
    dempster_condition,
    geometric_condition,
    jeffrey_ds_update,
    plausibility,
)
from .frame import (
    Frame,
    Subset,
    complement,
    enumerate_subsets,
    intersect,
    is_empty,
    is_subset,
    subset_of,
    union,
)
from .ocf import (
    Ocf,
    compare_rules,
    ocf_a_part,
    ocf_conditionalize,
    ocf_rank,
    ocf_to_possibility,
    possibility_to_ocf,
    spohn_observation,
    spohn_partition_update,
)
from .pipeline import PipelineDocument, load_pipeline, run_pipeline
from .possibility import (
    ConjunctionOp,
    LevelCut,
    PossibilityDistribution,
    WeightedSource,
    level_cut,
    necessity_of,
    poss_combine,
    poss_condition,
    poss_jeffrey_update,
    poss_jeffrey_update_sup,
    poss_update_crisp_with_doubt,
    possibility_of,
    weighted_max_aggregate,
)
from .probability import (
    EPS,
    ProbabilityMeasure,
    WeightedPartition,
    bayes_condition,
    jeffrey_update,
)

__version__ = "0.1.0"

__all__ = [
    "bayes_condition",
    "bel_conditional",
    "belief",
    "compare_rules",
    "complement",
    "condition",
    "ConditioningOnNull",
    "ConditioningRule",
    "ConditioningUndefined",
    "ConjunctionOp",
    "credal_oracle",
    "CredalOracle",
    "DegenerateComplement",
    "dempster_combine",
    "dempster_condition",
    "dumps",
    "EmptySet",
    "enumerate_subsets",
    "EPS",
    "Frame",
    "FrameMismatch",
    "FrameTooLarge",
    "GeneratorConstraintUnsatisfiable",
    "geometric_condition",
    "intersect",
    "IntervalValuation",
    "is_empty",
    "is_subset",
    "jeffrey_ds_update",
    "jeffrey_update",
    "KindMismatch",
    "KnowledgeDocument",
    "level_cut",
    "LevelCut",
    "load",
    "load_pipeline",
    "loads",
    "MassFunction",
    "necessity_of",
    "NoFeasibleSelection",
    "NotOnRankGrid",
    "Ocf",
    "ocf_a_part",
    "ocf_conditionalize",
    "ocf_rank",
    "ocf_to_possibility",
    "ParseError",
    "PipelineDocument",
    "plausibility",
    "poss_combine",
    "poss_condition",
    "poss_jeffrey_update",
    "poss_jeffrey_update_sup",
    "poss_update_crisp_with_doubt",
    "possibility_of",
    "possibility_to_ocf",
    "PossibilityDistribution",
    "ProbabilityMeasure",
    "run_pipeline",
    "save",
    "spohn_observation",
    "spohn_partition_update",
    "Subset",
    "subset_of",
    "TotalConflict",
    "union",
    "UnknownElement",
    "UnknownRule",
    "UnnormalizedResult",
    "UpdateError",
    "ValidationError",
    "weighted_max_aggregate",
    "WeightedPartition",
    "WeightedSource",
    "WeightNormalization",
    "ZeroPossibility",
]
