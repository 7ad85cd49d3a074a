"""Deterministic synthetic study runs.

Each simulated learner has a latent ability on the rating scale and
answers correctly with the same probability model the engine itself uses,
so the rating is a well-posed estimator of the latent value and
convergence can be measured against ground truth.

Determinism contract: one ``random.Random`` stream per learner, seeded
with ``f"{seed}:learner-{index:03d}"`` (string seeding hashes via
SHA-512, so it is stable across processes and platforms), plus a logical
clock for timestamps.  Identical configs therefore produce byte-identical
event logs.  Streams are keyed by the learner's index within its group,
not by its id, so the three arms are paired: under a do-nothing policy
they see identical draws and any group difference is steering alone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Union

from .elo import EloConfig, ProbabilityModel, expected_probability
from .errors import InsufficientPoolError, OutOfRangeError
from .recommender import (
    Catalog,
    Exercise,
    RecommenderConfig,
    compose_series,
    record_attempt,
)
from .steering import (
    MAX_STEER_STEP,
    EventKind,
    Group,
    LearnerProfile,
    MasteryEvent,
)
from .study import Phase, StudyConfig, StudyOrchestrator

__all__ = [
    "NeverPolicy",
    "AmbitiousPolicy",
    "RandomPolicy",
    "SteeringPolicy",
    "parse_policy",
    "SimLearner",
    "simulate_answer",
    "TrialConfig",
    "GroupSummary",
    "TrialResult",
    "run_trial",
    "render_trial_summary",
    "ConvergenceResult",
    "convergence_experiment",
    "LogicalClock",
]


# --------------------------------------------------------------------------
# Steering policies

@dataclass(frozen=True)
class NeverPolicy:
    """Always keeps the slider at zero."""

    def decide(self, series_correct: list[bool], rng: random.Random) -> int:
        return 0


@dataclass(frozen=True)
class AmbitiousPolicy:
    """Steer up after a fully-correct series, down after a fully-wrong one.

    Mixed series leave the slider untouched, mimicking the observed pattern
    that learners rarely boost their level after an unsuccessful series.
    """

    up_step: int = MAX_STEER_STEP
    down_step: int = -MAX_STEER_STEP

    def __post_init__(self) -> None:
        for name, step in (("up_step", self.up_step), ("down_step", self.down_step)):
            if not isinstance(step, int) or abs(step) > MAX_STEER_STEP:
                raise OutOfRangeError(f"{name} must be an integer in [-10, 10]")
        if self.up_step < 0 or self.down_step > 0:
            raise OutOfRangeError("up_step must be >= 0 and down_step <= 0")

    def decide(self, series_correct: list[bool], rng: random.Random) -> int:
        if series_correct and all(series_correct):
            return self.up_step
        if series_correct and not any(series_correct):
            return self.down_step
        return 0


@dataclass(frozen=True)
class RandomPolicy:
    """Steer to an extreme at random: up with probability ``p_up``, else down."""

    p_up: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_up <= 1.0:
            raise OutOfRangeError(f"p_up must lie in [0, 1], got {self.p_up!r}")

    def decide(self, series_correct: list[bool], rng: random.Random) -> int:
        return MAX_STEER_STEP if rng.random() < self.p_up else -MAX_STEER_STEP


SteeringPolicy = Union[NeverPolicy, AmbitiousPolicy, RandomPolicy]


def parse_policy(spec: str | dict | SteeringPolicy) -> SteeringPolicy:
    """Parse ``never`` / ``ambitious[:up:down]`` / ``random[:p_up]`` forms."""
    if isinstance(spec, (NeverPolicy, AmbitiousPolicy, RandomPolicy)):
        return spec
    if isinstance(spec, dict):
        kind = spec.get("kind")
        args = {k: v for k, v in spec.items() if k != "kind"}
        if kind == "never":
            return NeverPolicy(**args)
        if kind == "ambitious":
            return AmbitiousPolicy(**args)
        if kind == "random":
            return RandomPolicy(**args)
        raise OutOfRangeError(f"unknown policy kind {kind!r}")
    parts = str(spec).split(":")
    name = parts[0].strip().lower()
    try:
        if name == "never" and len(parts) == 1:
            return NeverPolicy()
        if name == "ambitious" and len(parts) in (1, 3):
            if len(parts) == 1:
                return AmbitiousPolicy()
            return AmbitiousPolicy(up_step=int(parts[1]), down_step=int(parts[2]))
        if name == "random" and len(parts) in (1, 2):
            return RandomPolicy() if len(parts) == 1 else RandomPolicy(p_up=float(parts[1]))
    except ValueError:
        pass
    raise OutOfRangeError(f"cannot parse policy {spec!r}")


# --------------------------------------------------------------------------
# Answer model

#: Simulated learners always answer under the chess-variant curve.
_ANSWER_MODEL = EloConfig(model=ProbabilityModel.CHESS)


@dataclass
class SimLearner:
    id: str
    latent_theta: float
    start_rating: float
    policy: SteeringPolicy
    rng: random.Random = field(repr=False, default_factory=random.Random)

    def __post_init__(self) -> None:
        if not math.isfinite(self.latent_theta):
            raise OutOfRangeError("latent_theta must be finite")


def simulate_answer(sim: SimLearner, exercise: Exercise) -> bool:
    """Draw one correct/incorrect outcome from the learner's own stream."""
    p = expected_probability(sim.latent_theta, exercise.rating, _ANSWER_MODEL)
    return sim.rng.random() < p


def _answer_index(exercise: Exercise, correct: bool) -> int:
    if correct:
        return exercise.correct_index
    return (exercise.correct_index + 1) % len(exercise.choices)


class LogicalClock:
    """Monotone counter standing in for wall time; keeps logs reproducible."""

    def __init__(self, start: float = 0.0, step: float = 1.0):
        self._t = float(start)
        self._step = float(step)

    def __call__(self) -> float:
        t = self._t
        self._t += self._step
        return t


# --------------------------------------------------------------------------
# Full trials

@dataclass(frozen=True)
class TrialConfig:
    learners_per_group: int = 25
    series_count: int = 3
    series_size: int = 2
    k: float = 160.0
    seed: int = 0
    policy: SteeringPolicy = AmbitiousPolicy()
    topic: str = "arithmetic"
    catalog_size: int = 41
    catalog_low: float = 1000.0
    catalog_high: float = 2000.0
    theta_low: float = 1200.0
    theta_high: float = 1800.0
    start_slider: float = 0.5
    freeze_exercise_ratings: bool = True

    def __post_init__(self) -> None:
        if not isinstance(self.learners_per_group, int) or self.learners_per_group < 0:
            raise OutOfRangeError("learners_per_group must be a non-negative integer")
        if self.series_count < 1 or self.series_size < 1:
            raise OutOfRangeError("series_count and series_size must be >= 1")
        if self.catalog_size < max(2, self.series_size):
            raise OutOfRangeError("catalog_size too small for the series size")
        if not (self.catalog_low < self.catalog_high):
            raise OutOfRangeError("catalog_low must be below catalog_high")
        if not (self.theta_low <= self.theta_high):
            raise OutOfRangeError("theta_low must not exceed theta_high")
        if not (0.0 <= self.start_slider <= 1.0):
            raise OutOfRangeError("start_slider must lie in [0, 1]")
        if not (math.isfinite(self.k) and self.k >= 0):
            raise OutOfRangeError("k must be finite and non-negative")

    @classmethod
    def from_mapping(cls, raw: dict) -> "TrialConfig":
        data = dict(raw)
        if "policy" in data:
            data["policy"] = parse_policy(data["policy"])
        return cls(**data)


def build_synthetic_catalog(config: TrialConfig) -> list[Exercise]:
    """Evenly spaced difficulty grid over [catalog_low, catalog_high]."""
    n = config.catalog_size
    step = (config.catalog_high - config.catalog_low) / (n - 1)
    return [
        Exercise(
            id=f"{config.topic}-{i:03d}",
            topic=config.topic,
            statement=f"synthetic item {i}",
            choices=("a", "b", "c", "d"),
            correct_index=0,
            rating=config.catalog_low + i * step,
        )
        for i in range(n)
    ]


@dataclass(frozen=True)
class GroupSummary:
    n: int
    mean_start: float
    mean_final: float
    mean_total_change: float
    mean_attempt_change: float
    mean_steer_change: float
    final_ratings: tuple[float, ...]
    total_changes: tuple[float, ...]


@dataclass
class TrialResult:
    config: TrialConfig
    orchestrator: StudyOrchestrator
    per_group: dict[Group, GroupSummary]

    @property
    def log_text(self) -> str:
        return self.orchestrator.log_text()


_GROUP_ORDER = (Group.NONE, Group.CONTROL, Group.CONTROL_IMPACT)


def run_trial(config: TrialConfig) -> TrialResult:
    """Run the full orchestrated flow for every simulated learner.

    Learners are processed one at a time in a fixed order; with frozen
    exercise ratings (the default) their trajectories are independent, so
    the order only fixes the log layout, not the outcomes.
    """
    clock = LogicalClock()
    orch = StudyOrchestrator(
        Catalog(),
        study=StudyConfig(series_count=config.series_count, seed=config.seed),
        recommender=RecommenderConfig(
            series_size=config.series_size,
            freeze_exercise_ratings=config.freeze_exercise_ratings,
        ),
        elo=EloConfig(k=config.k, model=ProbabilityModel.CHESS),
        clock=clock,
    )
    total = config.learners_per_group * len(_GROUP_ORDER)
    if total > 0:
        orch.ingest(build_synthetic_catalog(config))

    stats: dict[Group, list[LearnerProfile]] = {g: [] for g in _GROUP_ORDER}
    for group in _GROUP_ORDER:
        for i in range(config.learners_per_group):
            learner_id = f"{group.value}-{i + 1:03d}"
            # Streams are keyed by learner index, not group, so the arms are
            # paired (common random numbers): under a do-nothing policy the
            # groups produce identical trajectories and any group difference
            # is attributable to steering alone.
            sim = SimLearner(
                id=learner_id,
                latent_theta=0.0,
                start_rating=0.0,
                policy=config.policy,
                rng=random.Random(f"{config.seed}:learner-{i + 1:03d}"),
            )
            sim.latent_theta = sim.rng.uniform(config.theta_low, config.theta_high)
            profile = orch.register(learner_id, group=group)
            orch.set_mastery(learner_id, config.start_slider)
            sim.start_rating = profile.rating
            orch.ack_explanation(learner_id)
            _drive_learner(orch, sim, config)
            stats[group].append(profile)

    per_group = {g: _summarize(profiles) for g, profiles in stats.items()}
    return TrialResult(config=config, orchestrator=orch, per_group=per_group)


def _drive_learner(orch: StudyOrchestrator, sim: SimLearner, config: TrialConfig) -> None:
    """Advance one learner from EXPLAINED to QUESTIONNAIRE."""
    while True:
        state = orch.state(sim.id)
        if state.phase is Phase.QUESTIONNAIRE:
            return
        if state.phase is Phase.PRACTISING and not state.series_active:
            orch.request_series(sim.id, config.topic)
        elif state.phase is Phase.PRACTISING:
            pending = orch.pending_exercise_ids(sim.id)  # unanswered, in order
            exercise = orch.catalog.get(pending[0])
            correct = simulate_answer(sim, exercise)
            orch.submit_answer(sim.id, exercise.id, _answer_index(exercise, correct))
        elif state.phase is Phase.AWAIT_STEER:
            attempts = orch.current_series_attempts(sim.id)
            step = sim.policy.decide([a.correct for a in attempts], sim.rng)
            orch.steer(sim.id, step)
        elif state.phase is Phase.AWAIT_IMPACT_ACK:
            orch.ack_impact(sim.id)
        else:  # EXPLAINED: first series not requested yet
            orch.request_series(sim.id, config.topic)


def _summarize(profiles: list[LearnerProfile]) -> GroupSummary:
    finals, totals, attempt_deltas, steer_deltas, starts = [], [], [], [], []
    for profile in profiles:
        start = profile.timeline[0].post_rating
        starts.append(start)
        finals.append(profile.rating)
        totals.append(profile.rating - start)
        attempt_deltas.append(
            sum(e.delta for e in profile.timeline if e.kind is EventKind.ATTEMPT)
        )
        steer_deltas.append(
            sum(e.delta for e in profile.timeline if e.kind is EventKind.STEER)
        )
    n = len(profiles)

    def mean(xs: list[float]) -> float:
        return sum(xs) / n if n else math.nan

    return GroupSummary(
        n=n,
        mean_start=mean(starts),
        mean_final=mean(finals),
        mean_total_change=mean(totals),
        mean_attempt_change=mean(attempt_deltas),
        mean_steer_change=mean(steer_deltas),
        final_ratings=tuple(finals),
        total_changes=tuple(totals),
    )


def render_trial_summary(result: TrialResult) -> str:
    """Per-group summary table for terminal output."""
    header = f"{'group':<16}{'n':>4}{'start':>9}{'final':>9}{'change':>9}{'attempts':>10}{'steering':>10}"
    lines = [header, "-" * len(header)]
    for group in _GROUP_ORDER:
        s = result.per_group[group]
        lines.append(
            f"{group.value:<16}{s.n:>4}{s.mean_start:>9.1f}{s.mean_final:>9.1f}"
            f"{s.mean_total_change:>+9.1f}{s.mean_attempt_change:>+10.1f}"
            f"{s.mean_steer_change:>+10.1f}"
        )
    return "\n".join(lines)


# --------------------------------------------------------------------------
# Convergence against ground truth

@dataclass(frozen=True)
class ConvergenceResult:
    ratings: tuple[float, ...]  # rating after each attempt
    terminal_mean: float
    abs_error: float
    narrow_catalog: bool


def convergence_experiment(
    latent_theta: float,
    start_rating: float,
    catalog: Catalog,
    attempts: int,
    seed: int,
    *,
    k: float = 160.0,
    window: int = 50,
    target_p: float = 0.7,
) -> ConvergenceResult:
    """Single-learner estimation run against a frozen catalog.

    Repeatedly recommends one exercise at a time and updates only the
    learner rating; the terminal window mean is compared with the known
    latent ability.  ``narrow_catalog`` flags a catalog with no exercise
    within 400 of the latent value, where convergence cannot be expected.
    """
    if attempts < 1:
        raise OutOfRangeError("attempts must be >= 1")
    if len(catalog) == 0:
        raise InsufficientPoolError("catalog is empty")
    if not math.isfinite(latent_theta) or not math.isfinite(start_rating):
        raise OutOfRangeError("latent_theta and start_rating must be finite")

    elo = EloConfig(k=k, model=ProbabilityModel.CHESS)
    rec = RecommenderConfig(
        target_p=target_p, series_size=1, freeze_exercise_ratings=True
    )
    topics = catalog.topics
    if len(topics) != 1:
        raise InsufficientPoolError(
            f"convergence needs a single-topic catalog, found {len(topics)} topics"
        )
    topic = topics[0]
    narrow = min(abs(e.rating - latent_theta) for e in catalog) > 400.0

    profile = LearnerProfile(id="convergence", group=Group.NONE)
    clock = LogicalClock()
    # Direct INIT: convergence runs may start outside the slider's range.
    profile.append_event(
        MasteryEvent(
            kind=EventKind.INIT,
            pre_rating=float(start_rating),
            post_rating=float(start_rating),
            detail={"start_rating": float(start_rating)},
            timestamp=clock(),
        )
    )

    sim = SimLearner(
        id="convergence",
        latent_theta=latent_theta,
        start_rating=float(start_rating),
        policy=NeverPolicy(),
        rng=random.Random(f"{seed}:convergence"),
    )
    ratings: list[float] = []
    for _ in range(attempts):
        series = compose_series(
            profile.rating, topic, catalog, rec, elo, learner_id=sim.id
        )
        exercise = series.exercises[0]
        correct = simulate_answer(sim, exercise)
        record_attempt(
            profile,
            exercise.id,
            _answer_index(exercise, correct),
            catalog,
            rec,
            elo,
            clock=clock,
        )
        ratings.append(profile.rating)

    tail = ratings[-min(window, len(ratings)):]
    terminal_mean = sum(tail) / len(tail)
    return ConvergenceResult(
        ratings=tuple(ratings),
        terminal_mean=terminal_mean,
        abs_error=abs(terminal_mean - latent_theta),
        narrow_catalog=narrow,
    )
