"""Timing pilot for the acceptance-suite runtime budgets.

Measures the expensive acceptance checks on this machine before their
budgets are frozen into tests/test_acceptance.py.  Run from the repo root:

    python3 scripts/pilot_acceptance_budget.py
"""

from __future__ import annotations

import itertools
import math
import random
import time

from elosteer.analytics import mann_whitney_u_one_sided, one_way_anova, t_test_one_sided
from elosteer.elo import EloConfig, update_ratings
from elosteer.simulate import (
    AmbitiousPolicy,
    NeverPolicy,
    TrialConfig,
    convergence_experiment,
    run_trial,
)
from elosteer.recommender import Catalog, Exercise, RecommenderConfig, compose_series


def time_conservation() -> None:
    rng = random.Random(20240817)
    config = EloConfig()
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100_000):
        learner = rng.uniform(-1000.0, 4000.0)
        exercise = rng.uniform(-1000.0, 4000.0)
        outcome = rng.random() < 0.5
        k = rng.uniform(0.0, 400.0)
        cfg = EloConfig(k=k)
        new_l, new_e, delta = update_ratings(learner, exercise, outcome, cfg)
        worst = max(worst, abs((new_l + new_e) - (learner + exercise)))
        assert abs(delta) <= k + 1e-9
    elapsed = time.perf_counter() - start
    print(f"conservation: 1e5 cases in {elapsed:.3f}s, worst drift {worst:.3e}")


def time_recommender_oracle() -> None:
    rng = random.Random(99)
    elo = EloConfig()
    start = time.perf_counter()
    for trial in range(1000):
        n = rng.randint(1, 50)
        size = rng.choice((1, 2, 3))
        if n < size:
            continue
        catalog = Catalog()
        for i in range(n):
            catalog.add(
                Exercise(
                    id=f"e-{i:03d}",
                    topic="t",
                    statement="s",
                    choices=("a", "b"),
                    correct_index=0,
                    rating=rng.uniform(900.0, 2100.0),
                )
            )
        compose_series(
            rng.uniform(1000.0, 2000.0),
            "t",
            catalog,
            RecommenderConfig(series_size=size),
            elo,
            learner_id="x",
        )
    print(f"recommender: 1000 pools in {time.perf_counter() - start:.3f}s")


def u_statistic(a, b) -> float:
    u = 0.0
    for x in a:
        for y in b:
            if x > y:
                u += 1.0
            elif x == y:
                u += 0.5
    return u


def u_null_counts(na: int, nb: int) -> list[int]:
    """Distribution of U over all C(na+nb, na) relabelings, by DP recurrence."""
    # f[a][u] after processing some b's; standard two-group recurrence
    table = {(0, 0): [1]}

    def counts(a: int, b: int) -> list[int]:
        if (a, b) in table:
            return table[(a, b)]
        if a == 0 or b == 0:
            result = [1]
        else:
            # u counts wins of group a over group b
            with_a = counts(a - 1, b)  # largest element in a: beats all b
            with_b = counts(a, b - 1)  # largest element in b: beats none of a
            size = a * b + 1
            result = [0] * size
            for u, c in enumerate(with_a):
                result[u + b] += c
            for u, c in enumerate(with_b):
                result[u] += c
        table[(a, b)] = result
        return result

    return counts(na, nb)


def time_mw_enumeration() -> None:
    start = time.perf_counter()
    checked = 0
    for n in range(2, 13):
        pool = [float(i) for i in range(1, n + 1)]
        for na in range(1, n):
            nb = n - na
            null = u_null_counts(na, nb)
            total = math.comb(n, na)
            assert sum(null) == total
            seen: set[float] = set()
            for chosen in itertools.combinations(range(n), na):
                ga = [pool[i] for i in chosen]
                gb = [pool[i] for i in range(n) if i not in chosen]
                u = u_statistic(ga, gb)
                if u in seen:
                    continue  # p depends on the split only through u
                seen.add(u)
                res = mann_whitney_u_one_sided(ga, gb)
                assert res.exact
                expected = sum(null[: int(u) + 1]) / total
                assert res.p_value == expected, (na, nb, u, res.p_value, expected)
                checked += 1
    print(f"mw enumeration: {checked} distinct-U checks in {time.perf_counter() - start:.3f}s")


def time_simulation() -> None:
    start = time.perf_counter()
    ordering = 0
    for seed in range(100):
        result = run_trial(TrialConfig(seed=seed, policy=AmbitiousPolicy()))
        groups = result.per_group
        from elosteer import Group

        if groups[Group.NONE].mean_final < groups[Group.CONTROL].mean_final:
            ordering += 1
    ambitious_elapsed = time.perf_counter() - start

    start = time.perf_counter()
    screens = 0
    for seed in range(100):
        result = run_trial(TrialConfig(seed=seed, policy=NeverPolicy()))
        from elosteer import Group

        finals = [result.per_group[g].final_ratings for g in Group]
        anova = one_way_anova(finals)
        if anova.screen_pass:
            screens += 1
    never_elapsed = time.perf_counter() - start
    print(
        f"simulation: ordering {ordering}/100 in {ambitious_elapsed:.2f}s, "
        f"never screens {screens}/100 in {never_elapsed:.2f}s"
    )


def time_convergence() -> None:
    catalog = Catalog()
    for i in range(41):
        catalog.add(
            Exercise(
                id=f"c-{i:03d}",
                topic="t",
                statement="s",
                choices=("a", "b"),
                correct_index=0,
                rating=1000.0 + 25.0 * i,
            )
        )
    start = time.perf_counter()
    hits = 0
    for seed in range(100):
        result = convergence_experiment(
            latent_theta=1600.0,
            start_rating=1200.0,
            catalog=catalog,
            attempts=200,
            seed=seed,
        )
        if result.abs_error <= 100.0:
            hits += 1
    print(f"convergence: {hits}/100 within 100 in {time.perf_counter() - start:.2f}s")


def print_frozen_oracles() -> None:
    anova = one_way_anova([(1.0, 2.0), (3.0, 4.0), (5.0, 6.0)])
    t = t_test_one_sided((1.0, 2.0, 3.0), (2.0, 3.0, 4.0))
    print(f"anova fixture: F={anova.statistic!r} p={anova.p_value!r}")
    print(f"t fixture: t={t.statistic!r} p={t.p_value!r} sqrt(1.5)={math.sqrt(1.5)!r}")
    gap = 400.0 * math.log10(7.0 / 3.0)
    print(f"gap(0.7) = {gap!r}; |gap-147.25|/147.25 = {abs(gap - 147.25) / 147.25:.6f}")


if __name__ == "__main__":
    print_frozen_oracles()
    time_conservation()
    time_recommender_oracle()
    time_mw_enumeration()
    time_simulation()
    time_convergence()
