"""Rating arithmetic: success-probability models and the symmetric update rule.

Ratings are plain floats on an interval scale (roughly 1000 = beginner,
2000 = expert). Learners and exercises share the scale; every attempt
moves the two ratings by the same amount in opposite directions, so the
pair sum is conserved.

Two probability models are supported:

* ``CHESS`` (production default): ``P = 1 / (1 + 10**((e - l) / 400))``
* ``LOGISTIC``: ``P = 1 / (1 + exp(e - l))``

The chess scaling is the one that behaves sensibly for rating gaps of
hundreds of points; the raw logistic saturates almost immediately at
that scale and is kept for completeness and testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidRatingError, OutOfRangeError

__all__ = [
    "ProbabilityModel",
    "EloConfig",
    "expected_probability",
    "update_ratings",
    "target_rating_gap",
]

# Results are clamped into the open unit interval so extreme gaps cannot
# round to exactly 0.0 or 1.0.
_P_FLOOR = 5e-324
_P_CEIL = 1.0 - 2.0**-53


class ProbabilityModel(Enum):
    LOGISTIC = "logistic"
    CHESS = "chess"


@dataclass(frozen=True)
class EloConfig:
    """Learning rate ``k`` and the probability model used for expectations."""

    k: float = 160.0
    model: ProbabilityModel = ProbabilityModel.CHESS

    def __post_init__(self) -> None:
        if not (isinstance(self.k, (int, float)) and math.isfinite(self.k) and self.k >= 0):
            raise OutOfRangeError(f"k must be a finite non-negative number, got {self.k!r}")
        if not isinstance(self.model, ProbabilityModel):
            raise OutOfRangeError(f"model must be a ProbabilityModel, got {self.model!r}")


def _check_rating(value: float, name: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise InvalidRatingError(f"{name} rating is not a number: {value!r}") from exc
    if not math.isfinite(value):
        raise InvalidRatingError(f"{name} rating must be finite, got {value!r}")
    return value


def _sigmoid(x: float) -> float:
    # Numerically stable logistic; never overflows for finite x.
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


def expected_probability(
    learner: float, exercise: float, config: EloConfig = EloConfig()
) -> float:
    """Probability that a learner at ``learner`` answers ``exercise`` correctly.

    Strictly inside (0, 1), strictly increasing in the learner rating and
    strictly decreasing in the exercise rating (up to float resolution).
    """
    learner = _check_rating(learner, "learner")
    exercise = _check_rating(exercise, "exercise")
    gap = learner - exercise
    if config.model is ProbabilityModel.CHESS:
        p = _sigmoid(gap * (math.log(10.0) / 400.0))
    else:
        p = _sigmoid(gap)
    return min(max(p, _P_FLOOR), _P_CEIL)


def update_ratings(
    learner: float,
    exercise: float,
    correct: int,
    config: EloConfig = EloConfig(),
) -> tuple[float, float, float]:
    """Apply one attempt outcome; returns ``(new_learner, new_exercise, delta)``.

    ``delta = k * (correct - P)`` is added to the learner and subtracted
    from the exercise, so the pair sum is exactly conserved.
    """
    if correct not in (0, 1):
        raise OutOfRangeError(f"outcome must be 0 or 1, got {correct!r}")
    p = expected_probability(learner, exercise, config)
    delta = config.k * (float(correct) - p)
    return learner + delta, exercise - delta, delta


def target_rating_gap(target_p: float, config: EloConfig = EloConfig()) -> float:
    """Rating gap ``learner - exercise`` at which the model predicts ``target_p``.

    Inverse of :func:`expected_probability` in the gap argument:
    ``expected_probability(r, r - target_rating_gap(p)) == p``.
    """
    if not (isinstance(target_p, (int, float)) and 0.0 < target_p < 1.0):
        raise OutOfRangeError(f"target probability must lie in (0, 1), got {target_p!r}")
    odds = target_p / (1.0 - target_p)
    if config.model is ProbabilityModel.CHESS:
        return 400.0 * math.log10(odds)
    return math.log(odds)
