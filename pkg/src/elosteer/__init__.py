"""elosteer: an Elo-based exercise recommender with learner-steerable difficulty.

The package bundles the adaptive engine (ratings, series recommendation,
bounded steering), a three-arm study orchestrator with an append-only
event log, questionnaire scoring with the group-comparison statistics
pipeline, a deterministic learner simulator, and an HTTP/JSON service.
"""

from .elo import (
    EloConfig,
    ProbabilityModel,
    expected_probability,
    target_rating_gap,
    update_ratings,
)
from .errors import (
    AlreadyInitializedError,
    DegenerateSampleError,
    DuplicateIdError,
    ElosteerError,
    FlowViolationError,
    ForbiddenControlError,
    IncompleteQuestionnaireError,
    InsufficientPoolError,
    InvalidAnswerError,
    InvalidRatingError,
    MalformedEntryError,
    MissingGroupsError,
    NotFoundError,
    NotInitializedError,
    OutOfRangeError,
)
from .recommender import (
    AttemptRecord,
    Catalog,
    Exercise,
    RecommenderConfig,
    SeriesRecommendation,
    compose_series,
    ingest_catalog,
    load_catalog,
    record_attempt,
)
from .steering import (
    DREYFUS_LEVELS,
    Group,
    EventKind,
    HistoryPoint,
    LearnerProfile,
    MasteryEvent,
    apply_steering,
    dreyfus_label,
    dreyfus_to_rating,
    initialize_mastery,
    mastery_history,
)
from .analytics import (
    ConstructScores,
    Report,
    TestResult,
    build_report,
    correlation_matrix,
    f_test_equal_variance,
    mann_whitney_u_one_sided,
    one_way_anova,
    render_report_text,
    report_records,
    reverse_score,
    score_constructs,
    t_test_one_sided,
)
from .study import (
    FlowEvent,
    FlowState,
    Phase,
    QuestionnaireResponse,
    StudyConfig,
    StudyOrchestrator,
    advance_state,
    explanation_screens,
)
from .simulate import (
    AmbitiousPolicy,
    ConvergenceResult,
    NeverPolicy,
    RandomPolicy,
    TrialConfig,
    TrialResult,
    convergence_experiment,
    run_trial,
    simulate_answer,
)

__version__ = "0.1.0"

__all__ = [
    "EloConfig",
    "ProbabilityModel",
    "expected_probability",
    "update_ratings",
    "target_rating_gap",
    "ElosteerError",
    "InvalidRatingError",
    "OutOfRangeError",
    "NotFoundError",
    "InsufficientPoolError",
    "DuplicateIdError",
    "MalformedEntryError",
    "InvalidAnswerError",
    "AlreadyInitializedError",
    "NotInitializedError",
    "ForbiddenControlError",
    "FlowViolationError",
    "IncompleteQuestionnaireError",
    "MissingGroupsError",
    "DegenerateSampleError",
    "Exercise",
    "Catalog",
    "RecommenderConfig",
    "SeriesRecommendation",
    "AttemptRecord",
    "compose_series",
    "record_attempt",
    "ingest_catalog",
    "load_catalog",
    "Group",
    "EventKind",
    "MasteryEvent",
    "LearnerProfile",
    "HistoryPoint",
    "DREYFUS_LEVELS",
    "initialize_mastery",
    "apply_steering",
    "mastery_history",
    "dreyfus_label",
    "dreyfus_to_rating",
    "ConstructScores",
    "TestResult",
    "Report",
    "reverse_score",
    "score_constructs",
    "one_way_anova",
    "t_test_one_sided",
    "mann_whitney_u_one_sided",
    "f_test_equal_variance",
    "build_report",
    "report_records",
    "render_report_text",
    "correlation_matrix",
    "Phase",
    "FlowEvent",
    "FlowState",
    "StudyConfig",
    "QuestionnaireResponse",
    "StudyOrchestrator",
    "advance_state",
    "explanation_screens",
    "NeverPolicy",
    "AmbitiousPolicy",
    "RandomPolicy",
    "TrialConfig",
    "TrialResult",
    "run_trial",
    "simulate_answer",
    "convergence_experiment",
    "ConvergenceResult",
    "__version__",
]
