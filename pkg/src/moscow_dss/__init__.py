"""MoSCoW-prioritized decision support over a curated knowledge base.

Core flow: load a knowledge base, describe a case as prioritized feature
requirements, then ``evaluate`` to get a ranked feasible set with per-quality
score explanations. When nothing is feasible, the relaxation advisor plans
the greedy sequence of hard-constraint downgrades that restores feasibility.
"""

from .analytics import (
    CoverageAggregate,
    EmptyList,
    StudyCriteria,
    ZeroCriteria,
    aggregate_coverage,
    consistency_check,
    load_studies,
    study_coverage,
)
from .engine import (
    Case,
    CaseValidationError,
    DEFAULT_WEIGHTS,
    Evaluation,
    FeasibleEntry,
    NotFeasible,
    Priority,
    Requirement,
    Violation,
    ViolationKind,
    WeightConfig,
    evaluate,
    filter_feasible,
    quality_breakdown,
    render_score,
    satisfies,
    score_platform,
    validate_case,
)
from .kb import (
    BooleanFeature,
    Diagnostic,
    KbSummary,
    KnowledgeBase,
    Level,
    OrdinalFeature,
    ParseError,
    Platform,
    QualityAttribute,
    SchemaError,
    UnknownFeature,
    UnknownPlatform,
    feature_coverage,
    kb_summary,
    load_kb,
    save_kb,
    validate_kb,
)
from .relaxation import (
    EmptyKnowledgeBase,
    RelaxationPlan,
    RelaxationStep,
    Vulnerability,
    rank_vulnerabilities,
    relax_until_feasible,
    suggest_only,
)
from .store import CaseNotFound, CaseStore, RevisionConflict

__version__ = "0.1.0"
