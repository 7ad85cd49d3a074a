"""Shared fixtures and the acceptance-summary terminal hook."""

from __future__ import annotations

import io

import pytest

from elosteer import (
    Catalog,
    EloConfig,
    Exercise,
    Group,
    RecommenderConfig,
    StudyConfig,
    StudyOrchestrator,
)

# Populated by tests/test_acceptance.py; printed after the run so every
# criterion gets one visible pass/fail line even under output capture.
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] {name}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


def make_exercise(eid: str, rating: float, topic: str = "algebra") -> Exercise:
    return Exercise(
        id=eid,
        topic=topic,
        statement=f"statement for {eid}",
        choices=("a", "b", "c", "d"),
        correct_index=0,
        rating=rating,
    )


def make_catalog(ratings, topic: str = "algebra", prefix: str = "ex") -> Catalog:
    catalog = Catalog()
    for i, rating in enumerate(ratings):
        catalog.add(make_exercise(f"{prefix}-{i:03d}", rating, topic))
    return catalog


def complete_answers(base: int = 4) -> dict[str, int]:
    return {f"Q{i}": base for i in range(1, 32)}


def patterned_answers(respondent: int, bump_items=(), bump: int = 0) -> dict[str, int]:
    """Varied-but-bounded answers so group fixtures keep nonzero within-variance."""
    answers = {f"Q{q}": 3 + (respondent + q) % 3 for q in range(1, 32)}
    for item in bump_items:
        answers[item] = min(7, max(1, answers[item] + bump))
    return answers


@pytest.fixture
def catalog() -> Catalog:
    return make_catalog([1200, 1300, 1400, 1500, 1600, 1700, 1800])


def build_orchestrator(
    catalog: Catalog | None = None,
    *,
    seed: int = 0,
    series_count: int = 3,
    series_size: int = 2,
    group_weights=(1.0, 1.0, 1.0),
    sink: io.StringIO | None = None,
    clock=None,
) -> StudyOrchestrator:
    if catalog is None:
        catalog = make_catalog([1200, 1300, 1400, 1500, 1600, 1700, 1800])
    kwargs = {}
    if clock is not None:
        kwargs["clock"] = clock
    return StudyOrchestrator(
        catalog,
        study=StudyConfig(series_count=series_count, group_weights=group_weights, seed=seed),
        recommender=RecommenderConfig(series_size=series_size),
        elo=EloConfig(),
        log_sink=sink if sink is not None else io.StringIO(),
        **kwargs,
    )


def drive_to_questionnaire(orch: StudyOrchestrator, learner_id: str, topic: str = "algebra"):
    """Push one learner through every series using the single legal event each time."""
    from elosteer.study import Phase

    profile = orch.profile(learner_id)
    if orch.state(learner_id).phase is Phase.REGISTERED:
        orch.set_mastery(learner_id, 0.5)
    if orch.state(learner_id).phase is Phase.MASTERY_SET:
        orch.ack_explanation(learner_id)
    while orch.state(learner_id).phase is not Phase.QUESTIONNAIRE:
        state = orch.state(learner_id)
        if state.phase is Phase.EXPLAINED:
            orch.request_series(learner_id, topic)
        elif state.phase is Phase.PRACTISING and not state.series_active:
            orch.request_series(learner_id, topic)
        elif state.phase is Phase.PRACTISING:
            exercise_id = orch.pending_exercise_ids(learner_id)[0]
            orch.submit_answer(learner_id, exercise_id, 0)
        elif state.phase is Phase.AWAIT_STEER:
            orch.steer(learner_id, 0)
        elif state.phase is Phase.AWAIT_IMPACT_ACK:
            orch.ack_impact(learner_id)
        else:
            raise AssertionError(f"unexpected phase {state}")
    return profile
