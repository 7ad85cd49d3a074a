"""Three-arm study orchestration: group assignment, flow control, capture.

The learner journey is a small state machine.  After registering and
placing the initial mastery slider, a learner works through a fixed number
of exercise series.  What happens between series depends on the research
arm: the NONE group rolls straight into the next series, CONTROL gets a
steering stop, CONTROL_IMPACT gets steering plus an impact screen that
must be acknowledged.  After the last series comes the questionnaire, then
free use of the platform.

Every state has exactly one legal event until free use, which makes the
flow trivially model-checkable: the set of accepted event sequences is the
set of prefixes of one canonical sequence per group.

All mutations append records to an event log (see ``eventlog``); replaying
that log reconstructs the orchestrator bit-for-bit, which is how the
service survives restarts.
"""

from __future__ import annotations

import io
import random
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import IO, Callable, Iterable, Mapping

from .analytics import ConstructScores, score_constructs, validate_answers
from .elo import EloConfig
from .errors import (
    DuplicateIdError,
    FlowViolationError,
    ForbiddenControlError,
    IncompleteQuestionnaireError,
    MalformedEntryError,
    NotFoundError,
    OutOfRangeError,
)
from .eventlog import CATALOG_STREAM, EventLogWriter, read_records
from .recommender import (
    AttemptRecord,
    Catalog,
    Exercise,
    RecommenderConfig,
    SeriesRecommendation,
    compose_series,
    record_attempt,
)
from .steering import (
    EventKind,
    Group,
    LearnerProfile,
    MasteryEvent,
    apply_steering,
    initialize_mastery,
)

__all__ = [
    "Phase",
    "FlowEvent",
    "FlowState",
    "StudyConfig",
    "QuestionnaireResponse",
    "StudyOrchestrator",
    "advance_state",
    "explanation_screens",
    "GLOBAL_SCREEN",
    "CONTROL_SCREEN",
    "PRACTICE_EXPLAINER",
    "TRUST_FREE_TEXT_KEY",
]


class Phase(Enum):
    REGISTERED = "REGISTERED"
    MASTERY_SET = "MASTERY_SET"
    EXPLAINED = "EXPLAINED"
    PRACTISING = "PRACTISING"
    AWAIT_STEER = "AWAIT_STEER"
    AWAIT_IMPACT_ACK = "AWAIT_IMPACT_ACK"
    QUESTIONNAIRE = "QUESTIONNAIRE"
    FREE_USE = "FREE_USE"


class FlowEvent(Enum):
    SET_MASTERY = "set-mastery"
    ACK_EXPLANATION = "ack-explanation"
    REQUEST_SERIES = "request-series"
    SUBMIT_ANSWER = "submit-answer"
    STEER = "steer"
    ACK_IMPACT = "ack-impact"
    SUBMIT_QUESTIONNAIRE = "submit-questionnaire"


@dataclass(frozen=True)
class FlowState:
    """Where a learner is in the journey.

    ``series_index`` and ``exercise_index`` are 1-based and meaningful only
    in PRACTISING / AWAIT_* phases.  ``series_active`` distinguishes "ready
    to request series s" from "series s requested, answering" — both render
    as PRACTISING(s, 1), matching the journey diagram, but only the former
    accepts a series request.
    """

    phase: Phase
    series_index: int = 0
    exercise_index: int = 0
    series_active: bool = False

    def __str__(self) -> str:
        if self.phase is Phase.PRACTISING:
            return f"PRACTISING({self.series_index},{self.exercise_index})"
        if self.phase in (Phase.AWAIT_STEER, Phase.AWAIT_IMPACT_ACK):
            return f"{self.phase.value}({self.series_index})"
        return self.phase.value


INITIAL_STATE = FlowState(Phase.REGISTERED)


@dataclass(frozen=True)
class StudyConfig:
    series_count: int = 3
    group_weights: tuple[float, float, float] = (1.0, 1.0, 1.0)
    seed: int = 0

    def __post_init__(self) -> None:
        if not (isinstance(self.series_count, int) and self.series_count >= 1):
            raise OutOfRangeError(f"series_count must be >= 1, got {self.series_count!r}")
        weights = tuple(float(w) for w in self.group_weights)
        if len(weights) != 3 or any(w < 0 for w in weights) or sum(weights) <= 0:
            raise OutOfRangeError(
                "group_weights must be three non-negative reals, not all zero"
            )
        object.__setattr__(self, "group_weights", weights)


#: Free-text field that must be filled for a questionnaire to count.
TRUST_FREE_TEXT_KEY = "trust"


@dataclass(frozen=True)
class QuestionnaireResponse:
    """A validated, complete questionnaire.  Invalid ones cannot be built."""

    answers: Mapping[str, int]
    free_text: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        validate_answers(self.answers)
        object.__setattr__(self, "answers", dict(self.answers))
        object.__setattr__(self, "free_text", dict(self.free_text))
        trust = self.free_text.get(TRUST_FREE_TEXT_KEY, "")
        if not isinstance(trust, str) or not trust.strip():
            raise IncompleteQuestionnaireError(
                f"free-text field {TRUST_FREE_TEXT_KEY!r} is mandatory"
            )


def _reject(state: FlowState, event: FlowEvent) -> FlowViolationError:
    return FlowViolationError(state=str(state), event=event.value)


def advance_state(
    state: FlowState,
    event: FlowEvent,
    group: Group,
    *,
    series_count: int,
    series_size: int,
) -> FlowState:
    """Pure transition function; raises on any event illegal in ``state``."""

    def next_series_or_questionnaire(s: int) -> FlowState:
        if s < series_count:
            return FlowState(Phase.PRACTISING, s + 1, 1, series_active=False)
        return FlowState(Phase.QUESTIONNAIRE)

    phase = state.phase
    if phase is Phase.REGISTERED and event is FlowEvent.SET_MASTERY:
        return FlowState(Phase.MASTERY_SET)
    if phase is Phase.MASTERY_SET and event is FlowEvent.ACK_EXPLANATION:
        return FlowState(Phase.EXPLAINED)
    if phase is Phase.EXPLAINED and event is FlowEvent.REQUEST_SERIES:
        return FlowState(Phase.PRACTISING, 1, 1, series_active=True)
    if phase is Phase.PRACTISING:
        if event is FlowEvent.REQUEST_SERIES and not state.series_active:
            return replace(state, series_active=True)
        if event is FlowEvent.SUBMIT_ANSWER and state.series_active:
            if state.exercise_index < series_size:
                return replace(state, exercise_index=state.exercise_index + 1)
            if group is Group.NONE:
                return next_series_or_questionnaire(state.series_index)
            return FlowState(Phase.AWAIT_STEER, state.series_index)
        raise _reject(state, event)
    if phase is Phase.AWAIT_STEER and event is FlowEvent.STEER:
        if group is Group.CONTROL_IMPACT:
            return FlowState(Phase.AWAIT_IMPACT_ACK, state.series_index)
        return next_series_or_questionnaire(state.series_index)
    if phase is Phase.AWAIT_IMPACT_ACK and event is FlowEvent.ACK_IMPACT:
        return next_series_or_questionnaire(state.series_index)
    if phase is Phase.QUESTIONNAIRE and event is FlowEvent.SUBMIT_QUESTIONNAIRE:
        return FlowState(Phase.FREE_USE)
    if phase is Phase.FREE_USE:
        # Post-study practice loop: series may still be requested and
        # answered; attempts are flagged and excluded from analytics.
        if event is FlowEvent.REQUEST_SERIES and not state.series_active:
            return FlowState(Phase.FREE_USE, 0, 1, series_active=True)
        if event is FlowEvent.SUBMIT_ANSWER and state.series_active:
            if state.exercise_index < series_size:
                return replace(state, exercise_index=state.exercise_index + 1)
            return FlowState(Phase.FREE_USE)
        raise _reject(state, event)
    raise _reject(state, event)


GLOBAL_SCREEN = "global-intro"
CONTROL_SCREEN = "control-explainer"

#: Fixed sentence shown on every practice page.
PRACTICE_EXPLAINER = (
    "The system automatically picks the exercises that best match your "
    "current mastery level."
)


def explanation_screens(group: Group) -> tuple[str, ...]:
    """Ordered onboarding screens for a research arm."""
    if group is Group.NONE:
        return (GLOBAL_SCREEN,)
    return (GLOBAL_SCREEN, CONTROL_SCREEN)


@dataclass
class _Runtime:
    """Mutable per-learner bookkeeping around the immutable FlowState."""

    profile: LearnerProfile
    state: FlowState = INITIAL_STATE
    topic: str | None = None
    series: SeriesRecommendation | None = None
    pending: list[str] = field(default_factory=list)  # unanswered exercise ids
    series_attempts: list[AttemptRecord] = field(default_factory=list)
    last_steer: MasteryEvent | None = None
    questionnaire: QuestionnaireResponse | None = None


_GROUPS = (Group.NONE, Group.CONTROL, Group.CONTROL_IMPACT)


class StudyOrchestrator:
    """Owns profiles, the catalog, the flow machine, and the event log.

    One instance per deployment; learners are independent streams.  Methods
    validate the flow transition first, then run the domain operation, then
    commit the new state and append the log record, so a failing call never
    leaves partial state behind.
    """

    def __init__(
        self,
        catalog: Catalog | None = None,
        *,
        study: StudyConfig = StudyConfig(),
        recommender: RecommenderConfig = RecommenderConfig(),
        elo: EloConfig = EloConfig(),
        log_sink: IO[str] | None = None,
        clock: Callable[[], float] = time.time,
        _writer: EventLogWriter | None = None,
    ):
        self.catalog = catalog if catalog is not None else Catalog()
        self.study = study
        self.recommender = recommender
        self.elo = elo
        self.clock = clock
        self._sink = log_sink if log_sink is not None else io.StringIO()
        self._writer = _writer if _writer is not None else EventLogWriter(self._sink)
        self._rng = random.Random(study.seed)
        self._runtimes: dict[str, _Runtime] = {}
        self._quarantine: list[dict] = []
        # a pre-populated catalog is logged up front so the log alone replays
        for exercise in self.catalog:
            self._log_catalog_entry(exercise)

    # -- accessors ---------------------------------------------------------

    def learner_ids(self) -> list[str]:
        return list(self._runtimes)

    def profile(self, learner_id: str) -> LearnerProfile:
        return self._runtime(learner_id).profile

    def state(self, learner_id: str) -> FlowState:
        return self._runtime(learner_id).state

    def questionnaire(self, learner_id: str) -> QuestionnaireResponse | None:
        return self._runtime(learner_id).questionnaire

    def pending_exercise_ids(self, learner_id: str) -> list[str]:
        """Unanswered ids of the current series, next first."""
        return list(self._runtime(learner_id).pending)

    def current_series(self, learner_id: str) -> SeriesRecommendation | None:
        """The last composed series, answered or not."""
        return self._runtime(learner_id).series

    def current_series_attempts(self, learner_id: str) -> list[AttemptRecord]:
        """Attempts recorded since the last series request."""
        return list(self._runtime(learner_id).series_attempts)

    def last_steer(self, learner_id: str) -> MasteryEvent | None:
        return self._runtime(learner_id).last_steer

    @property
    def quarantine(self) -> list[dict]:
        return list(self._quarantine)

    def log_text(self) -> str:
        """The accumulated log, when writing to the default in-memory sink."""
        if isinstance(self._sink, io.StringIO):
            return self._sink.getvalue()
        raise MalformedEntryError("orchestrator writes to an external sink")

    def attach_sink(self, sink: IO[str]) -> None:
        """Redirect future records to ``sink``, keeping sequence counters."""
        self._sink = sink
        self._writer = EventLogWriter(sink, self._writer.seq_state)

    def _runtime(self, learner_id: str) -> _Runtime:
        try:
            return self._runtimes[learner_id]
        except KeyError:
            raise NotFoundError("learner", learner_id) from None

    def _advance(self, runtime: _Runtime, event: FlowEvent) -> FlowState:
        return advance_state(
            runtime.state,
            event,
            runtime.profile.group,
            series_count=self.study.series_count,
            series_size=self.recommender.series_size,
        )

    def _log(self, learner: str, kind: str, data: dict, ts: float | None = None) -> dict:
        record = self._writer.append(
            learner, kind, data, self.clock() if ts is None else ts
        )
        self._writer.flush()
        return record

    # -- catalog administration -------------------------------------------

    def add_exercise(self, exercise: Exercise) -> None:
        self.catalog.add(exercise)
        self._log_catalog_entry(exercise)

    def _log_catalog_entry(self, exercise: Exercise) -> None:
        self._log(
            CATALOG_STREAM,
            "catalog-add",
            {
                "id": exercise.id,
                "topic": exercise.topic,
                "statement": exercise.statement,
                "choices": list(exercise.choices),
                "correct_index": exercise.correct_index,
                "rating": exercise.rating,
            },
        )

    def ingest(self, exercises: Iterable[Exercise]) -> int:
        count = 0
        for exercise in exercises:
            self.add_exercise(exercise)
            count += 1
        return count

    # -- learner lifecycle --------------------------------------------------

    def register(
        self, learner_id: str | None = None, *, group: Group | None = None
    ) -> LearnerProfile:
        """Create a learner and assign a research arm from the seeded stream.

        Passing ``group`` overrides the weighted draw; simulated trials use
        it for exactly balanced arms.  The override never touches the
        assignment stream, so mixing both styles stays deterministic.
        """
        if learner_id is None:
            learner_id = f"L{len(self._runtimes) + 1:04d}"
        if learner_id in self._runtimes:
            raise DuplicateIdError(f"learner id {learner_id!r} already registered")
        if not learner_id or learner_id.startswith("_"):
            raise OutOfRangeError(
                f"learner id must be non-empty and not start with '_': {learner_id!r}"
            )
        if group is None:
            group = self._rng.choices(_GROUPS, weights=self.study.group_weights, k=1)[0]
        profile = LearnerProfile(id=learner_id, group=group)
        self._runtimes[learner_id] = _Runtime(profile=profile)
        self._log(learner_id, "register", {"group": group.value})
        return profile

    def set_mastery(self, learner_id: str, slider_position: float) -> MasteryEvent:
        runtime = self._runtime(learner_id)
        new_state = self._advance(runtime, FlowEvent.SET_MASTERY)
        ts = self.clock()
        event = initialize_mastery(runtime.profile, slider_position, clock=lambda: ts)
        runtime.state = new_state
        self._log(
            learner_id,
            "mastery",
            {
                "slider_position": float(slider_position),
                "rating": event.post_rating,
            },
            ts,
        )
        return event

    def ack_explanation(self, learner_id: str) -> FlowState:
        runtime = self._runtime(learner_id)
        runtime.state = self._advance(runtime, FlowEvent.ACK_EXPLANATION)
        self._log(learner_id, "explain-ack", {})
        return runtime.state

    def request_series(
        self, learner_id: str, topic: str | None = None
    ) -> SeriesRecommendation:
        """Compose the next series; the topic defaults to the previous choice."""
        runtime = self._runtime(learner_id)
        new_state = self._advance(runtime, FlowEvent.REQUEST_SERIES)
        if topic is None:
            topic = runtime.topic
        if topic is None:
            topics = self.catalog.topics
            if len(topics) == 1:
                topic = topics[0]
            else:
                raise OutOfRangeError(
                    "topic required: learner has no previous topic and the "
                    f"catalog offers {len(topics)}"
                )
        history = [
            e.detail["exercise_id"]
            for e in runtime.profile.timeline
            if e.kind is EventKind.ATTEMPT
        ]
        series = compose_series(
            runtime.profile.rating,
            topic,
            self.catalog,
            self.recommender,
            self.elo,
            history=history,
            learner_id=learner_id,
        )
        runtime.state = new_state
        runtime.topic = topic
        runtime.series = series
        runtime.pending = [e.id for e in series.exercises]
        runtime.series_attempts = []
        self._log(
            learner_id,
            "series",
            {
                "topic": topic,
                "exercise_ids": list(runtime.pending),
                "learner_rating": runtime.profile.rating,
                "expected_p": list(series.expected_probabilities),
                "post_study": runtime.state.phase is Phase.FREE_USE,
            },
        )
        return series

    def submit_answer(
        self, learner_id: str, exercise_id: str, answer_index: int
    ) -> AttemptRecord:
        runtime = self._runtime(learner_id)
        new_state = self._advance(runtime, FlowEvent.SUBMIT_ANSWER)
        if not runtime.pending:
            raise _reject(runtime.state, FlowEvent.SUBMIT_ANSWER)
        expected_id = runtime.pending[0]
        if exercise_id != expected_id:
            raise FlowViolationError(
                state=str(runtime.state),
                event=f"answer for {exercise_id!r} (series expects {expected_id!r})",
            )
        post_study = runtime.state.phase is Phase.FREE_USE
        ts = self.clock()
        record = record_attempt(
            runtime.profile,
            exercise_id,
            answer_index,
            self.catalog,
            self.recommender,
            self.elo,
            clock=lambda: ts,
        )
        if post_study:
            runtime.profile.timeline[-1].detail["post_study"] = True
        runtime.state = new_state
        runtime.pending.pop(0)
        runtime.series_attempts.append(record)
        self._log(
            learner_id,
            "attempt",
            {
                "exercise_id": record.exercise_id,
                "answer_index": record.answer_index,
                "correct": record.correct,
                "expected_p": record.expected_p,
                "learner_pre": record.learner_pre,
                "learner_post": record.learner_post,
                "exercise_pre": record.exercise_pre,
                "exercise_post": record.exercise_post,
                "delta": record.delta,
                "frozen": self.recommender.freeze_exercise_ratings,
                "post_study": post_study,
            },
            ts,
        )
        return record

    def steer(self, learner_id: str, step: int) -> MasteryEvent:
        """Apply a steering detent at a steering stop.

        Group gating outranks flow position: a NONE-group learner gets the
        forbidden-control error whatever state they are in.
        """
        runtime = self._runtime(learner_id)
        if runtime.profile.group is Group.NONE:
            raise ForbiddenControlError(
                f"learner {learner_id} is in group {Group.NONE.value} and cannot steer"
            )
        new_state = self._advance(runtime, FlowEvent.STEER)
        ts = self.clock()
        event = apply_steering(runtime.profile, step, clock=lambda: ts)
        runtime.state = new_state
        runtime.last_steer = event
        self._log(
            learner_id,
            "steer",
            {"step": step, "pre": event.pre_rating, "post": event.post_rating},
            ts,
        )
        return event

    def ack_impact(self, learner_id: str) -> FlowState:
        runtime = self._runtime(learner_id)
        runtime.state = self._advance(runtime, FlowEvent.ACK_IMPACT)
        self._log(learner_id, "impact-ack", {})
        return runtime.state

    def submit_questionnaire(
        self,
        learner_id: str,
        answers: Mapping[str, int] | QuestionnaireResponse,
        free_text: Mapping[str, str] | None = None,
    ) -> QuestionnaireResponse:
        """Store a complete questionnaire; incomplete ones are quarantined.

        Rejection is all-or-nothing: a quarantined submission leaves the
        learner in QUESTIONNAIRE and never reaches the analytics dataset.
        """
        runtime = self._runtime(learner_id)
        new_state = self._advance(runtime, FlowEvent.SUBMIT_QUESTIONNAIRE)
        if isinstance(answers, QuestionnaireResponse):
            answers, free_text = answers.answers, answers.free_text
        try:
            response = QuestionnaireResponse(dict(answers), dict(free_text or {}))
        except IncompleteQuestionnaireError as exc:
            data = {
                "answers": dict(answers),
                "free_text": dict(free_text or {}),
                "reason": str(exc),
            }
            self._quarantine.append({"learner": learner_id, **data})
            self._log(learner_id, "quarantine", data)
            raise
        runtime.state = new_state
        runtime.questionnaire = response
        self._log(
            learner_id,
            "questionnaire",
            {"answers": response.answers, "free_text": response.free_text},
        )
        return response

    # -- dataset export ------------------------------------------------------

    def export_dataset(self, include_post_study: bool = False) -> list[dict]:
        """Shared-dataset rows: one per rating change, one per questionnaire."""
        rows: list[dict] = []
        for learner_id, runtime in self._runtimes.items():
            group = runtime.profile.group.value
            for event in runtime.profile.timeline:
                if event.detail.get("post_study") and not include_post_study:
                    continue
                rows.append(
                    {
                        "row": "elo-change",
                        "learner": learner_id,
                        "group": group,
                        "kind": event.kind.value,
                        "pre": event.pre_rating,
                        "post": event.post_rating,
                        "delta": event.delta,
                        "detail": dict(event.detail),
                        "ts": event.timestamp,
                    }
                )
            if runtime.questionnaire is not None:
                scores = score_constructs(runtime.questionnaire.answers)
                rows.append(
                    {
                        "row": "questionnaire",
                        "learner": learner_id,
                        "group": group,
                        "answers": dict(runtime.questionnaire.answers),
                        "free_text": dict(runtime.questionnaire.free_text),
                        "constructs": scores.as_dict(),
                        "ts": None,
                    }
                )
        return rows

    def analytics_dataset(self) -> list[tuple[Group, ConstructScores]]:
        """(group, scores) pairs for completed questionnaires only."""
        pairs = []
        for runtime in self._runtimes.values():
            if runtime.questionnaire is not None:
                pairs.append(
                    (
                        runtime.profile.group,
                        score_constructs(runtime.questionnaire.answers),
                    )
                )
        return pairs

    # -- replay ---------------------------------------------------------------

    @classmethod
    def replay(
        cls,
        source: IO[str] | Iterable[str],
        *,
        study: StudyConfig = StudyConfig(),
        recommender: RecommenderConfig = RecommenderConfig(),
        elo: EloConfig = EloConfig(),
        log_sink: IO[str] | None = None,
        seq_state: dict[str, int] | None = None,
        clock: Callable[[], float] = time.time,
    ) -> "StudyOrchestrator":
        """Rebuild an orchestrator from its own log.

        Stored ratings are applied verbatim (never recomputed), so replayed
        profiles are bit-identical to the originals.  The configs must match
        the ones the log was produced under; flow state is re-derived through
        the same transition function.
        """
        orch = cls(
            Catalog(),
            study=study,
            recommender=recommender,
            elo=elo,
            log_sink=log_sink,
            clock=clock,
        )
        seqs: dict[str, int] = dict(seq_state or {})
        for record in read_records(source):
            orch._apply(record)
            seqs[record["learner"]] = record["seq"] + 1
        orch._writer = EventLogWriter(orch._sink, seqs)
        return orch

    def _apply(self, record: dict) -> None:
        """Apply one stored record without re-running domain computations."""
        kind = record["kind"]
        learner = record["learner"]
        data = record["data"]
        ts = record["ts"]
        if kind == "catalog-add":
            self.catalog.add(
                Exercise(
                    id=data["id"],
                    topic=data["topic"],
                    statement=data["statement"],
                    choices=tuple(data["choices"]),
                    correct_index=data["correct_index"],
                    rating=data["rating"],
                )
            )
            return
        if kind == "register":
            if learner in self._runtimes:
                raise DuplicateIdError(f"duplicate register for {learner!r}")
            profile = LearnerProfile(id=learner, group=Group(data["group"]))
            self._runtimes[learner] = _Runtime(profile=profile)
            return
        runtime = self._runtime(learner)
        if kind == "mastery":
            runtime.state = self._advance(runtime, FlowEvent.SET_MASTERY)
            runtime.profile.append_event(
                MasteryEvent(
                    kind=EventKind.INIT,
                    pre_rating=data["rating"],
                    post_rating=data["rating"],
                    detail={"slider_position": data["slider_position"]},
                    timestamp=ts,
                )
            )
        elif kind == "explain-ack":
            runtime.state = self._advance(runtime, FlowEvent.ACK_EXPLANATION)
        elif kind == "series":
            runtime.state = self._advance(runtime, FlowEvent.REQUEST_SERIES)
            runtime.topic = data["topic"]
            runtime.series = SeriesRecommendation(
                learner_id=learner,
                topic=data["topic"],
                exercises=tuple(self.catalog.get(eid) for eid in data["exercise_ids"]),
                expected_probabilities=tuple(data["expected_p"]),
            )
            runtime.pending = list(data["exercise_ids"])
            runtime.series_attempts = []
        elif kind == "attempt":
            runtime.state = self._advance(runtime, FlowEvent.SUBMIT_ANSWER)
            if not runtime.pending or runtime.pending[0] != data["exercise_id"]:
                raise MalformedEntryError(
                    f"attempt out of series order for learner {learner!r}"
                )
            runtime.pending.pop(0)
            detail = {
                "exercise_id": data["exercise_id"],
                "answer_index": data["answer_index"],
                "correct": data["correct"],
                "expected_p": data["expected_p"],
                "delta": data["delta"],
            }
            if data.get("post_study"):
                detail["post_study"] = True
            runtime.profile.append_event(
                MasteryEvent(
                    kind=EventKind.ATTEMPT,
                    pre_rating=data["learner_pre"],
                    post_rating=data["learner_post"],
                    detail=detail,
                    timestamp=ts,
                )
            )
            if not data["frozen"]:
                self.catalog.set_rating(data["exercise_id"], data["exercise_post"])
        elif kind == "steer":
            runtime.state = self._advance(runtime, FlowEvent.STEER)
            event = MasteryEvent(
                kind=EventKind.STEER,
                pre_rating=data["pre"],
                post_rating=data["post"],
                detail={"step": data["step"]},
                timestamp=ts,
            )
            runtime.profile.append_event(event)
            runtime.last_steer = event
        elif kind == "impact-ack":
            runtime.state = self._advance(runtime, FlowEvent.ACK_IMPACT)
        elif kind == "quarantine":
            self._quarantine.append({"learner": learner, **data})
        elif kind == "questionnaire":
            runtime.state = self._advance(runtime, FlowEvent.SUBMIT_QUESTIONNAIRE)
            runtime.questionnaire = QuestionnaireResponse(
                data["answers"], data["free_text"]
            )
        else:
            raise MalformedEntryError(f"unknown record kind {kind!r}")
