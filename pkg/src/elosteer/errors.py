"""Exception hierarchy shared across the package.

Every error carries a stable ``code`` string so the HTTP layer can map
domain failures onto structured error bodies without string matching.
"""

from __future__ import annotations


class ElosteerError(Exception):
    """Base class for all domain errors."""

    code = "internal"


class InvalidRatingError(ElosteerError, ValueError):
    """A rating was NaN or infinite."""

    code = "invalid-rating"


class OutOfRangeError(ElosteerError, ValueError):
    """A numeric argument fell outside its documented domain."""

    code = "out-of-range"


class NotFoundError(ElosteerError, LookupError):
    """Unknown topic, exercise, or learner."""

    code = "not-found"

    def __init__(self, kind: str, key: object):
        super().__init__(f"unknown {kind}: {key!r}")
        self.kind = kind
        self.key = key


class InsufficientPoolError(ElosteerError):
    """A topic does not hold enough exercises to fill a series."""

    code = "insufficient-pool"


class DuplicateIdError(ElosteerError, ValueError):
    code = "duplicate-id"


class MalformedEntryError(ElosteerError, ValueError):
    code = "malformed-entry"


class InvalidAnswerError(ElosteerError, ValueError):
    """Answer index outside the exercise's choice list."""

    code = "invalid-answer"


class AlreadyInitializedError(ElosteerError):
    """Mastery was initialized twice for the same learner."""

    code = "already-initialized"


class NotInitializedError(ElosteerError):
    code = "not-initialized"


class ForbiddenControlError(ElosteerError):
    """Steering attempted by a learner whose group has no control."""

    code = "forbidden-control"


class FlowViolationError(ElosteerError):
    """An event arrived that is illegal in the learner's current flow state."""

    code = "flow-violation"

    def __init__(self, state: str, event: str):
        super().__init__(f"event {event} is illegal in state {state}")
        self.state = state
        self.event = event


class IncompleteQuestionnaireError(ElosteerError, ValueError):
    """Questionnaire missing items, out-of-range answers, or missing mandatory text."""

    code = "incomplete-questionnaire"


class MissingGroupsError(ElosteerError):
    """Dataset lacks one of the three research groups (or has too few rows)."""

    code = "missing-groups"


class DegenerateSampleError(ElosteerError, ValueError):
    """A statistical routine received a sample it cannot work with."""

    code = "degenerate-sample"
