"""Catalog ingestion and series composition against an exhaustive oracle."""

from __future__ import annotations

import io
import json
import math
import random

import pytest

from elosteer import (
    Catalog,
    InvalidRatingError,
    DuplicateIdError,
    EloConfig,
    Exercise,
    Group,
    InsufficientPoolError,
    InvalidAnswerError,
    LearnerProfile,
    MalformedEntryError,
    NotFoundError,
    OutOfRangeError,
    RecommenderConfig,
    compose_series,
    expected_probability,
    ingest_catalog,
    initialize_mastery,
    load_catalog,
    record_attempt,
    target_rating_gap,
)

from conftest import make_catalog, make_exercise

ELO = EloConfig()


def chess_p(learner: float, exercise: float) -> float:
    # independent formula, no engine call
    return 1.0 / (1.0 + 10.0 ** ((exercise - learner) / 400.0))


def oracle_series(learner: float, pool, target_p: float, size: int):
    """Exhaustive argmin with the documented tie-break, reimplemented from scratch."""
    ideal = learner - 400.0 * math.log10(target_p / (1.0 - target_p))
    ranked = sorted(
        pool,
        key=lambda ex: (abs(chess_p(learner, ex.rating) - target_p), abs(ex.rating - ideal), ex.id),
    )
    return [ex.id for ex in ranked[:size]]


class TestExercise:
    def test_validation(self):
        with pytest.raises(MalformedEntryError):
            Exercise(id="x", topic="t", statement="s", choices=("only",), correct_index=0, rating=1500)
        with pytest.raises(MalformedEntryError):
            Exercise(id="x", topic="t", statement="s", choices=("a", "b"), correct_index=2, rating=1500)
        with pytest.raises(InvalidRatingError):
            Exercise(id="x", topic="t", statement="s", choices=("a", "b"), correct_index=0, rating=float("nan"))

    def test_rating_coerced_to_float(self):
        ex = Exercise(id="x", topic="t", statement="s", choices=("a", "b"), correct_index=1, rating=1500)
        assert isinstance(ex.rating, float)


class TestCatalog:
    def test_add_get_len_iter(self):
        catalog = make_catalog([1100, 1200])
        assert len(catalog) == 2
        assert catalog.get("ex-000").rating == 1100.0
        assert {ex.id for ex in catalog} == {"ex-000", "ex-001"}
        assert "ex-001" in catalog

    def test_duplicate_id(self):
        catalog = make_catalog([1100])
        with pytest.raises(DuplicateIdError):
            catalog.add(make_exercise("ex-000", 1300))

    def test_unknown_lookups(self):
        catalog = make_catalog([1100])
        with pytest.raises(NotFoundError):
            catalog.get("nope")
        with pytest.raises(NotFoundError):
            catalog.topic_pool("geometry")

    def test_topics_sorted(self):
        catalog = Catalog()
        catalog.add(make_exercise("b", 1100, topic="zeta"))
        catalog.add(make_exercise("a", 1100, topic="alpha"))
        assert catalog.topics == ["alpha", "zeta"]

    def test_set_rating_replaces_immutably(self):
        catalog = make_catalog([1100])
        before = catalog.get("ex-000")
        catalog.set_rating("ex-000", 1400.0)
        assert catalog.get("ex-000").rating == 1400.0
        assert before.rating == 1100.0  # old snapshot untouched


class TestIngest:
    def entry(self, **overrides):
        base = {
            "id": "q1",
            "topic": "fractions",
            "statement": "1/2 + 1/4 = ?",
            "choices": ["3/4", "2/6", "1/8", "2/4"],
            "correct_index": 0,
            "rating": 1500,
        }
        base.update(overrides)
        return base

    def test_numeric_rating(self):
        catalog = ingest_catalog([self.entry()])
        assert catalog.get("q1").rating == 1500.0

    def test_label_ratings(self):
        # the rating field carries either a number or a skill label
        catalog = ingest_catalog(
            [self.entry(id="a", rating="competent"), self.entry(id="b", rating="novice")]
        )
        assert catalog.get("a").rating == 1500.0
        assert catalog.get("b").rating == 1000.0

    def test_duplicate_ids(self):
        with pytest.raises(DuplicateIdError):
            ingest_catalog([self.entry(), self.entry()])

    def test_unknown_label(self):
        with pytest.raises(MalformedEntryError):
            ingest_catalog([self.entry(rating="wizard")])

    @pytest.mark.parametrize(
        "mangle",
        [
            {"id": None},
            {"choices": ["one"]},
            {"correct_index": 9},
            {"rating": None},
            {"statement": None},
        ],
    )
    def test_malformed_entries(self, mangle):
        with pytest.raises(MalformedEntryError):
            ingest_catalog([self.entry(**mangle)])

    def test_file_round_trip(self, tmp_path):
        catalog = ingest_catalog([self.entry(), self.entry(id="q2", rating=1710.5)])
        dump_path = tmp_path / "catalog.jsonl"
        with open(dump_path, "w") as sink:
            count = catalog.dump(sink)
        assert count == 2
        loaded = load_catalog(dump_path)
        assert {ex.id for ex in loaded} == {"q1", "q2"}
        assert loaded.get("q2").rating == 1710.5

    def test_load_accepts_labels(self, tmp_path):
        path = tmp_path / "catalog.jsonl"
        path.write_text(json.dumps(self.entry(rating="proficient")) + "\n")
        assert load_catalog(path).get("q1").rating == 1750.0


class TestComposeSeries:
    def test_documented_three_pool_example(self):
        # learner 1500, pool {1352.75, 1000, 1700}: the 1352.75 item sits at the
        # ideal gap (P ~= 0.700); between 1700 (P ~= 0.240) and 1000 (P ~= 0.947)
        # the latter is closer to the 0.7 target.
        catalog = Catalog()
        catalog.add(make_exercise("near", 1352.75))
        catalog.add(make_exercise("low", 1000.0))
        catalog.add(make_exercise("high", 1700.0))
        series = compose_series(1500.0, "algebra", catalog, RecommenderConfig(), ELO)
        assert [ex.id for ex in series.exercises] == ["near", "low"]
        assert series.expected_probabilities[0] == pytest.approx(0.7, abs=1e-3)

    def test_pool_of_exactly_series_size(self):
        catalog = make_catalog([900.0, 2100.0])
        series = compose_series(1500.0, "algebra", catalog, RecommenderConfig(), ELO)
        assert {ex.id for ex in series.exercises} == {"ex-000", "ex-001"}

    def test_insufficient_pool(self):
        catalog = make_catalog([1500.0])
        with pytest.raises(InsufficientPoolError):
            compose_series(1500.0, "algebra", catalog, RecommenderConfig(), ELO)

    def test_unknown_topic(self):
        catalog = make_catalog([1500.0, 1600.0])
        with pytest.raises(NotFoundError):
            compose_series(1500.0, "geometry", catalog, RecommenderConfig(), ELO)

    def test_tie_breaks_on_rating_distance_then_id(self):
        # two ratings with equal |P - target| but unequal distance to the ideal rating
        config = RecommenderConfig(target_p=0.7, series_size=1)
        ideal = 1500.0 - target_rating_gap(0.7, ELO)
        above = 1500.0 - target_rating_gap(0.75, ELO)
        below = 1500.0 - target_rating_gap(0.65, ELO)
        assert abs(chess_p(1500.0, above) - 0.7) == pytest.approx(
            abs(chess_p(1500.0, below) - 0.7), abs=1e-12
        )
        assert abs(below - ideal) < abs(above - ideal)
        catalog = Catalog()
        catalog.add(make_exercise("a-above", above))
        catalog.add(make_exercise("b-below", below))
        series = compose_series(1500.0, "algebra", catalog, config, ELO)
        assert series.exercises[0].id == "b-below"

        # exact rating tie: falls through to the id
        catalog = Catalog()
        catalog.add(make_exercise("zz", ideal))
        catalog.add(make_exercise("aa", ideal))
        series = compose_series(1500.0, "algebra", catalog, config, ELO)
        assert series.exercises[0].id == "aa"

    def test_determinism(self):
        catalog = make_catalog([1000, 1100, 1200, 1300, 1400, 1500])
        first = compose_series(1500.0, "algebra", catalog, RecommenderConfig(), ELO)
        second = compose_series(1500.0, "algebra", catalog, RecommenderConfig(), ELO)
        assert [ex.id for ex in first.exercises] == [ex.id for ex in second.exercises]
        assert first.expected_probabilities == second.expected_probabilities

    def test_series_fields(self):
        catalog = make_catalog([1400.0, 1500.0, 1600.0])
        series = compose_series(
            1500.0, "algebra", catalog, RecommenderConfig(), ELO, learner_id="L9"
        )
        assert series.learner_id == "L9"
        assert series.topic == "algebra"
        assert len(series.exercises) == len(series.expected_probabilities) == 2
        assert len({ex.id for ex in series.exercises}) == 2
        for ex, p in zip(series.exercises, series.expected_probabilities):
            assert 0.0 < p < 1.0
            assert p == pytest.approx(expected_probability(1500.0, ex.rating, ELO), abs=1e-12)

    def test_oracle_equivalence_1000_seeded_pools(self):
        rng = random.Random(2024)
        config_pool = [
            RecommenderConfig(target_p=0.7, series_size=2),
            RecommenderConfig(target_p=0.5, series_size=3),
            RecommenderConfig(target_p=0.85, series_size=1),
        ]
        for trial in range(1000):
            n = rng.randint(1, 50)
            config = config_pool[trial % len(config_pool)]
            if n < config.series_size:
                continue
            catalog = Catalog()
            for i in range(n):
                # duplicated ratings on purpose: exercises tied on both keys
                rating = rng.choice([rng.uniform(800, 2200), float(rng.randrange(1000, 2000, 50))])
                catalog.add(make_exercise(f"e{rng.randrange(10**6):06d}-{i}", rating))
            learner = rng.uniform(900, 2100)
            series = compose_series(learner, "algebra", catalog, config, ELO)
            want = oracle_series(learner, list(catalog), config.target_p, config.series_size)
            assert [ex.id for ex in series.exercises] == want

    def test_repeat_window_filters_recent(self):
        catalog = make_catalog([1400.0, 1450.0, 1500.0, 1550.0])
        config = RecommenderConfig(series_size=2, no_repeat_window=4)
        history = ("ex-002", "ex-003")
        series = compose_series(1500.0, "algebra", catalog, config, ELO, history=history)
        assert {ex.id for ex in series.exercises} == {"ex-000", "ex-001"}

    def test_repeat_window_relaxed_when_pool_too_small(self):
        catalog = make_catalog([1400.0, 1500.0])
        config = RecommenderConfig(series_size=2, no_repeat_window=2)
        series = compose_series(
            1500.0, "algebra", catalog, config, ELO, history=("ex-000", "ex-001")
        )
        assert {ex.id for ex in series.exercises} == {"ex-000", "ex-001"}

    def test_repeat_window_only_counts_last_w(self):
        # history is most-recent-last; w=1 shields only ex-001, so the closest
        # item ex-000 stays eligible despite appearing earlier in the history
        catalog = make_catalog([1400.0, 1450.0, 1500.0])
        history = ("ex-000", "ex-001")
        series = compose_series(
            1500.0,
            "algebra",
            catalog,
            RecommenderConfig(series_size=1, no_repeat_window=1),
            ELO,
            history=history,
        )
        assert series.exercises[0].id == "ex-000"
        series = compose_series(
            1500.0,
            "algebra",
            catalog,
            RecommenderConfig(series_size=1, no_repeat_window=2),
            ELO,
            history=history,
        )
        assert series.exercises[0].id == "ex-002"


class TestRecordAttempt:
    def profile(self, group=Group.CONTROL):
        profile = LearnerProfile(id="L1", group=group)
        initialize_mastery(profile, 0.5)
        return profile

    def test_correct_answer_updates_both(self):
        catalog = make_catalog([1500.0])
        profile = self.profile()
        record = record_attempt(profile, "ex-000", 0, catalog, RecommenderConfig(), ELO)
        assert record.correct is True
        assert record.learner_post == 1580.0
        assert catalog.get("ex-000").rating == 1420.0
        assert profile.rating == 1580.0
        assert record.delta == 80.0

    def test_freeze_keeps_exercise_rating(self):
        catalog = make_catalog([1500.0])
        profile = self.profile()
        config = RecommenderConfig(freeze_exercise_ratings=True)
        record = record_attempt(profile, "ex-000", 0, catalog, config, ELO)
        assert record.learner_post == 1580.0
        assert catalog.get("ex-000").rating == 1500.0
        assert record.exercise_post == 1500.0

    def test_wrong_answer_decreases(self):
        catalog = make_catalog([1500.0])
        profile = self.profile()
        record = record_attempt(profile, "ex-000", 2, catalog, RecommenderConfig(), ELO)
        assert record.correct is False
        assert record.learner_post == 1420.0
        assert record.delta == -80.0

    def test_invalid_answer_index(self):
        catalog = make_catalog([1500.0])
        profile = self.profile()
        with pytest.raises(InvalidAnswerError):
            record_attempt(profile, "ex-000", 7, catalog, RecommenderConfig(), ELO)
        with pytest.raises(InvalidAnswerError):
            record_attempt(profile, "ex-000", -1, catalog, RecommenderConfig(), ELO)
        assert profile.rating == 1500.0

    def test_unknown_exercise(self):
        catalog = make_catalog([1500.0])
        with pytest.raises(NotFoundError):
            record_attempt(self.profile(), "missing", 0, catalog, RecommenderConfig(), ELO)

    def test_timeline_event_appended(self):
        catalog = make_catalog([1500.0])
        profile = self.profile()
        record_attempt(profile, "ex-000", 0, catalog, RecommenderConfig(), ELO)
        event = profile.timeline[-1]
        assert event.kind.value == "attempt"
        assert event.detail["exercise_id"] == "ex-000"
        assert event.detail["correct"] is True
        assert event.post_rating == 1580.0

    def test_expected_p_recorded_from_pre_ratings(self):
        catalog = make_catalog([1700.0])
        profile = self.profile()
        record = record_attempt(profile, "ex-000", 0, catalog, RecommenderConfig(), ELO)
        assert record.expected_p == pytest.approx(chess_p(1500.0, 1700.0), abs=1e-12)


class TestRecommenderConfig:
    def test_defaults(self):
        config = RecommenderConfig()
        assert config.target_p == 0.7
        assert config.series_size == 2
        assert config.no_repeat_window == 0
        assert config.freeze_exercise_ratings is False

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"target_p": 0.0},
            {"target_p": 1.0},
            {"series_size": 0},
            {"no_repeat_window": -1},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(OutOfRangeError):
            RecommenderConfig(**kwargs)
