"""Exercise catalog and series composition targeting ~70% success probability.

A series is a short ordered batch of exercises for one topic. Exercises
are ranked by how close their predicted success probability is to the
configured target (0.7 by default); ties fall back to the rating
distance from the ideal difficulty, then to the exercise id, so
composition is fully deterministic.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .elo import EloConfig, expected_probability, target_rating_gap, update_ratings
from .errors import (
    DuplicateIdError,
    InsufficientPoolError,
    InvalidAnswerError,
    InvalidRatingError,
    MalformedEntryError,
    NotFoundError,
    NotInitializedError,
    OutOfRangeError,
)
from .steering import EventKind, LearnerProfile, MasteryEvent, dreyfus_to_rating

__all__ = [
    "Exercise",
    "SeriesRecommendation",
    "RecommenderConfig",
    "AttemptRecord",
    "Catalog",
    "ingest_catalog",
    "compose_series",
    "record_attempt",
]


@dataclass
class Exercise:
    """One multiple-choice item with a difficulty rating on the Elo scale."""

    id: str
    topic: str
    statement: str
    choices: tuple[str, ...]
    correct_index: int
    rating: float

    def __post_init__(self) -> None:
        self.choices = tuple(self.choices)
        if len(self.choices) < 2:
            raise MalformedEntryError(f"exercise {self.id!r} needs at least 2 choices")
        if not (0 <= self.correct_index < len(self.choices)):
            raise MalformedEntryError(
                f"exercise {self.id!r} has correct_index {self.correct_index} "
                f"outside its {len(self.choices)} choices"
            )
        if not (isinstance(self.rating, (int, float)) and math.isfinite(self.rating)):
            raise InvalidRatingError(f"exercise {self.id!r} rating must be finite")
        self.rating = float(self.rating)


@dataclass(frozen=True)
class SeriesRecommendation:
    learner_id: str
    topic: str
    exercises: tuple[Exercise, ...]
    expected_probabilities: tuple[float, ...]


@dataclass(frozen=True)
class RecommenderConfig:
    target_p: float = 0.7
    series_size: int = 2
    no_repeat_window: int = 0
    freeze_exercise_ratings: bool = False

    def __post_init__(self) -> None:
        if not (0.0 < self.target_p < 1.0):
            raise OutOfRangeError(f"target_p must lie in (0, 1), got {self.target_p!r}")
        if self.series_size < 1:
            raise OutOfRangeError(f"series_size must be >= 1, got {self.series_size!r}")
        if self.no_repeat_window < 0:
            raise OutOfRangeError("no_repeat_window must be >= 0")


@dataclass(frozen=True)
class AttemptRecord:
    """Everything logged for one learner-exercise interaction."""

    learner_id: str
    exercise_id: str
    answer_index: int
    correct: bool
    expected_p: float
    learner_pre: float
    learner_post: float
    exercise_pre: float
    exercise_post: float
    delta: float
    timestamp: float


class Catalog:
    """In-memory exercise store, keyed by id and grouped by topic."""

    def __init__(self, exercises: Iterable[Exercise] = ()):
        self._by_id: dict[str, Exercise] = {}
        self._topics: dict[str, list[str]] = {}
        for exercise in exercises:
            self.add(exercise)

    def add(self, exercise: Exercise) -> None:
        if exercise.id in self._by_id:
            raise DuplicateIdError(f"duplicate exercise id: {exercise.id!r}")
        self._by_id[exercise.id] = exercise
        self._topics.setdefault(exercise.topic, []).append(exercise.id)

    def get(self, exercise_id: str) -> Exercise:
        try:
            return self._by_id[exercise_id]
        except KeyError:
            raise NotFoundError("exercise", exercise_id) from None

    def topic_pool(self, topic: str) -> list[Exercise]:
        if topic not in self._topics:
            raise NotFoundError("topic", topic)
        return [self._by_id[eid] for eid in self._topics[topic]]

    @property
    def topics(self) -> list[str]:
        return sorted(self._topics)

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self):
        return iter(self._by_id.values())

    def __contains__(self, exercise_id: str) -> bool:
        return exercise_id in self._by_id

    def set_rating(self, exercise_id: str, rating: float) -> None:
        exercise = self.get(exercise_id)
        self._by_id[exercise_id] = replace(exercise, rating=rating)

    def dump(self, sink) -> int:
        count = 0
        for exercise in self._by_id.values():
            record = {
                "id": exercise.id,
                "topic": exercise.topic,
                "statement": exercise.statement,
                "choices": list(exercise.choices),
                "correct_index": exercise.correct_index,
                "rating": exercise.rating,
            }
            sink.write(json.dumps(record, sort_keys=True) + "\n")
            count += 1
        return count


def _entry_to_exercise(entry: dict) -> Exercise:
    try:
        raw_rating = entry["rating"]
        for field in ("id", "topic", "statement"):
            if not isinstance(entry[field], str) or not entry[field]:
                raise TypeError(f"{field} must be a non-empty string")
        exercise = Exercise(
            id=entry["id"],
            topic=entry["topic"],
            statement=entry["statement"],
            choices=tuple(str(c) for c in entry["choices"]),
            correct_index=int(entry["correct_index"]),
            rating=(
                dreyfus_to_rating(raw_rating)
                if isinstance(raw_rating, str)
                else float(raw_rating)
            ),
        )
    except (KeyError, TypeError, ValueError, OutOfRangeError) as exc:
        raise MalformedEntryError(f"bad catalog entry {entry!r}: {exc}") from exc
    return exercise


def ingest_catalog(entries: Iterable[dict]) -> Catalog:
    """Build a catalog from record dicts.

    Each record carries ``id, topic, statement, choices, correct_index,
    rating`` where ``rating`` is either a number or one of the five skill
    labels (mapped to 1000/1250/1500/1750/2000). Duplicate ids are rejected.
    """
    catalog = Catalog()
    for entry in entries:
        catalog.add(_entry_to_exercise(entry))
    return catalog


def load_catalog(path) -> Catalog:
    """Read a line-delimited JSON catalog file."""
    with open(path, "r", encoding="utf-8") as handle:
        entries = [json.loads(line) for line in handle if line.strip()]
    return ingest_catalog(entries)


def _selection_key(
    exercise: Exercise, learner_rating: float, ideal_rating: float, target_p: float, elo: EloConfig
) -> tuple[float, float, str]:
    p = expected_probability(learner_rating, exercise.rating, elo)
    return (abs(p - target_p), abs(exercise.rating - ideal_rating), exercise.id)


def compose_series(
    learner_rating: float,
    topic: str,
    catalog: Catalog,
    config: RecommenderConfig = RecommenderConfig(),
    elo: EloConfig = EloConfig(),
    history: Sequence[str] = (),
    learner_id: str = "",
) -> SeriesRecommendation:
    """Pick the ``series_size`` topic exercises whose success probability is
    closest to the target.

    ``history`` is the learner's past exercise ids, most recent last; with a
    non-zero ``no_repeat_window`` the last ``w`` of them are excluded unless
    that would leave too few exercises, in which case the filter is dropped.
    """
    pool = catalog.topic_pool(topic)
    if len(pool) < config.series_size:
        raise InsufficientPoolError(
            f"topic {topic!r} holds {len(pool)} exercises, "
            f"need {config.series_size}"
        )
    if config.no_repeat_window > 0 and history:
        recent = set(history[-config.no_repeat_window:])
        filtered = [e for e in pool if e.id not in recent]
        if len(filtered) >= config.series_size:
            pool = filtered
    ideal = learner_rating - target_rating_gap(config.target_p, elo)
    ranked = sorted(
        pool,
        key=lambda e: _selection_key(e, learner_rating, ideal, config.target_p, elo),
    )
    chosen = tuple(ranked[: config.series_size])
    return SeriesRecommendation(
        learner_id=learner_id,
        topic=topic,
        exercises=chosen,
        expected_probabilities=tuple(
            expected_probability(learner_rating, e.rating, elo) for e in chosen
        ),
    )


def record_attempt(
    profile: LearnerProfile,
    exercise_id: str,
    answer_index: int,
    catalog: Catalog,
    config: RecommenderConfig = RecommenderConfig(),
    elo: EloConfig = EloConfig(),
    clock: Callable[[], float] = time.time,
) -> AttemptRecord:
    """Grade one answer and apply the rating update.

    The learner rating always moves; the exercise rating moves unless
    ``freeze_exercise_ratings`` is set. Appends an ATTEMPT event to the
    learner's timeline and returns the full record.
    """
    exercise = catalog.get(exercise_id)
    if not profile.initialized:
        raise NotInitializedError(f"learner {profile.id} has no mastery rating yet")
    if isinstance(answer_index, bool) or not isinstance(answer_index, int):
        raise InvalidAnswerError(f"answer index must be an integer, got {answer_index!r}")
    if not (0 <= answer_index < len(exercise.choices)):
        raise InvalidAnswerError(
            f"answer index {answer_index} outside the {len(exercise.choices)} "
            f"choices of exercise {exercise.id!r}"
        )
    correct = answer_index == exercise.correct_index
    learner_pre = profile.rating
    exercise_pre = exercise.rating
    p = expected_probability(learner_pre, exercise_pre, elo)
    learner_post, exercise_post, delta = update_ratings(
        learner_pre, exercise_pre, int(correct), elo
    )
    if config.freeze_exercise_ratings:
        exercise_post = exercise_pre
    else:
        catalog.set_rating(exercise.id, exercise_post)
    timestamp = clock()
    profile.append_event(
        MasteryEvent(
            kind=EventKind.ATTEMPT,
            pre_rating=learner_pre,
            post_rating=learner_post,
            detail={
                "exercise_id": exercise.id,
                "answer_index": answer_index,
                "correct": correct,
                "expected_p": p,
                "delta": delta,
            },
            timestamp=timestamp,
        )
    )
    return AttemptRecord(
        learner_id=profile.id,
        exercise_id=exercise.id,
        answer_index=answer_index,
        correct=correct,
        expected_p=p,
        learner_pre=learner_pre,
        learner_post=learner_post,
        exercise_pre=exercise_pre,
        exercise_post=exercise_post,
        delta=delta,
        timestamp=timestamp,
    )
