"""Mastery initialization, the bounded control slider, and the mastery timeline.

A learner's rating history is an append-only list of ``MasteryEvent``s:
one INIT when the learner places the initial slider, one ATTEMPT per
answered exercise, and one STEER per use of the control slider. The
timeline is the data behind the impact line chart, so events store both
the pre and post rating; replaying the stored deltas reproduces the
current rating without recomputing anything.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, IO, Iterable

from .errors import (
    AlreadyInitializedError,
    ForbiddenControlError,
    InvalidRatingError,
    NotInitializedError,
    OutOfRangeError,
)

__all__ = [
    "Group",
    "EventKind",
    "MasteryEvent",
    "LearnerProfile",
    "HistoryPoint",
    "DREYFUS_LEVELS",
    "SLIDER_MIN_RATING",
    "SLIDER_MAX_RATING",
    "MAX_STEER_STEP",
    "initialize_mastery",
    "apply_steering",
    "mastery_history",
    "dreyfus_label",
    "dreyfus_to_rating",
    "export_timeline",
]

SLIDER_MIN_RATING = 1000.0
SLIDER_MAX_RATING = 2000.0

# Steering slider: 21 integer detents, -10 .. +10 percent.
MAX_STEER_STEP = 10

# Five skill bands, evenly spaced over the slider range. The label of a
# rating is the highest band whose threshold it reaches.
DREYFUS_LEVELS: tuple[tuple[str, float], ...] = (
    ("novice", 1000.0),
    ("advanced beginner", 1250.0),
    ("competent", 1500.0),
    ("proficient", 1750.0),
    ("expert", 2000.0),
)

_LEVEL_RATING = {name: threshold for name, threshold in DREYFUS_LEVELS}


class Group(Enum):
    """Research arm: what the learner is allowed to see and do."""

    NONE = "none"
    CONTROL = "control"
    CONTROL_IMPACT = "control+impact"


class EventKind(Enum):
    INIT = "init"
    ATTEMPT = "attempt"
    STEER = "steer"


@dataclass(frozen=True)
class MasteryEvent:
    kind: EventKind
    pre_rating: float
    post_rating: float
    detail: dict
    timestamp: float

    def __post_init__(self) -> None:
        if self.kind is EventKind.INIT and self.pre_rating != self.post_rating:
            raise InvalidRatingError("INIT events must not change the rating")
        if self.kind is EventKind.STEER:
            bound = 0.10 * abs(self.pre_rating) + 1e-9
            if abs(self.post_rating - self.pre_rating) > bound:
                raise OutOfRangeError(
                    f"steering moved the rating by more than 10%: "
                    f"{self.pre_rating} -> {self.post_rating}"
                )

    @property
    def delta(self) -> float:
        return self.post_rating - self.pre_rating


@dataclass
class LearnerProfile:
    id: str
    group: Group
    rating: float | None = None
    timeline: list[MasteryEvent] = field(default_factory=list)

    @property
    def initialized(self) -> bool:
        return bool(self.timeline) and self.timeline[0].kind is EventKind.INIT

    def append_event(self, event: MasteryEvent) -> MasteryEvent:
        self.timeline.append(event)
        self.rating = event.post_rating
        return event


@dataclass(frozen=True)
class HistoryPoint:
    """One timeline node, ready for chart rendering."""

    kind: str
    pre_rating: float
    post_rating: float
    level: str
    detail: dict
    timestamp: float


def _now() -> float:
    return time.time()


def initialize_mastery(
    profile: LearnerProfile,
    slider_position: float,
    clock: Callable[[], float] = _now,
) -> MasteryEvent:
    """Set the initial rating from the continuous [0, 1] slider.

    The slider maps linearly onto [1000, 2000]. May be called once.
    """
    if profile.initialized:
        raise AlreadyInitializedError(f"learner {profile.id} already initialized")
    if not (isinstance(slider_position, (int, float)) and 0.0 <= slider_position <= 1.0):
        raise OutOfRangeError(
            f"slider position must lie in [0, 1], got {slider_position!r}"
        )
    rating = SLIDER_MIN_RATING + (SLIDER_MAX_RATING - SLIDER_MIN_RATING) * float(
        slider_position
    )
    event = MasteryEvent(
        kind=EventKind.INIT,
        pre_rating=rating,
        post_rating=rating,
        detail={"slider_position": float(slider_position)},
        timestamp=clock(),
    )
    return profile.append_event(event)


def apply_steering(
    profile: LearnerProfile,
    step: int,
    clock: Callable[[], float] = _now,
) -> MasteryEvent:
    """Apply one slider detent: ``post = pre * (1 + step/100)``.

    ``step`` is an integer percent in [-10, +10]; 0 is an explicit "keep"
    and still records an event. Learners in the NONE group are rejected
    before any state changes.
    """
    if profile.group is Group.NONE:
        raise ForbiddenControlError(
            f"learner {profile.id} is in group {profile.group.value} and cannot steer"
        )
    if isinstance(step, bool) or not isinstance(step, int):
        raise OutOfRangeError(f"steering step must be an integer, got {step!r}")
    if abs(step) > MAX_STEER_STEP:
        raise OutOfRangeError(f"steering step must lie in [-10, 10], got {step}")
    if not profile.initialized:
        raise NotInitializedError(f"learner {profile.id} has no mastery rating yet")
    pre = profile.rating
    post = pre * (1.0 + step / 100.0)
    event = MasteryEvent(
        kind=EventKind.STEER,
        pre_rating=pre,
        post_rating=post,
        detail={"step": step},
        timestamp=clock(),
    )
    return profile.append_event(event)


def mastery_history(profile: LearnerProfile) -> list[HistoryPoint]:
    """The full timeline in order, one point per event, labelled for display."""
    if not profile.initialized:
        raise NotInitializedError(f"learner {profile.id} has no mastery rating yet")
    return [
        HistoryPoint(
            kind=event.kind.value,
            pre_rating=event.pre_rating,
            post_rating=event.post_rating,
            level=dreyfus_label(event.post_rating),
            detail=event.detail,
            timestamp=event.timestamp,
        )
        for event in profile.timeline
    ]


def dreyfus_label(rating: float) -> str:
    """Skill band for a rating; bands are half-open, lower-inclusive."""
    if not (isinstance(rating, (int, float)) and math.isfinite(rating)):
        raise InvalidRatingError(f"rating must be finite, got {rating!r}")
    label = DREYFUS_LEVELS[0][0]
    for name, threshold in DREYFUS_LEVELS:
        if rating >= threshold:
            label = name
    return label


def dreyfus_to_rating(label: str) -> float:
    """Initial rating for a teacher-assigned difficulty label."""
    try:
        return _LEVEL_RATING[label.strip().lower()]
    except (KeyError, AttributeError):
        raise OutOfRangeError(f"unknown skill label: {label!r}") from None


def export_timeline(profile: LearnerProfile, sink: IO[str]) -> int:
    """Write the timeline as line-delimited JSON records; returns the row count."""
    count = 0
    for event in profile.timeline:
        record = {
            "kind": event.kind.value,
            "pre": event.pre_rating,
            "post": event.post_rating,
            "detail": event.detail,
            "timestamp": event.timestamp,
        }
        sink.write(json.dumps(record, sort_keys=True) + "\n")
        count += 1
    return count


def timeline_from_records(
    profile: LearnerProfile, records: Iterable[dict]
) -> LearnerProfile:
    """Rebuild a timeline from exported records, trusting stored ratings."""
    for record in records:
        event = MasteryEvent(
            kind=EventKind(record["kind"]),
            pre_rating=record["pre"],
            post_rating=record["post"],
            detail=record["detail"],
            timestamp=record["timestamp"],
        )
        profile.append_event(event)
    return profile
