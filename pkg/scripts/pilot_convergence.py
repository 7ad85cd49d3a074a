"""Calibration pilot for the convergence acceptance threshold.

Runs the frozen-catalog estimation experiment (theta 1600, start 1200,
200 attempts, k=160, last-50 window) over seeds 0..99 and reports how many
land within 100 Elo of the latent value.  The measured success count is
frozen into tests/test_acceptance.py; re-run this script after any change
to the recommender, the update rule, or the simulator's rng layout.

Measured on commit: 93/100 at the production target probability 0.7.
For context the same experiment at target 0.5 (maximum information per
attempt) measures 96/100; the acceptance run uses the production target.
The stationary rating fluctuation around theta has sigma ~124 Elo at
k=160 and the 50-attempt window averages ~5 effective independent samples,
so ~93% is the expected rate, not a defect.
"""

from __future__ import annotations

import sys
import time

from elosteer.recommender import Catalog, Exercise
from elosteer.simulate import convergence_experiment


def dense_catalog() -> Catalog:
    return Catalog(
        Exercise(
            id=f"g-{i:03d}",
            topic="grid",
            statement=f"pilot item {i}",
            choices=("a", "b", "c", "d"),
            correct_index=0,
            rating=1000.0 + i * 25.0,
        )
        for i in range(41)
    )


def main() -> int:
    catalog = dense_catalog()
    t0 = time.time()
    errors = []
    for seed in range(100):
        result = convergence_experiment(1600.0, 1200.0, catalog, 200, seed, k=160.0)
        errors.append(result.abs_error)
    hits = sum(e <= 100.0 for e in errors)
    errors.sort()
    print(f"seeds: 100   within 100 Elo: {hits}")
    print(f"median abs error: {errors[50]:.1f}   p90: {errors[90]:.1f}   max: {errors[-1]:.1f}")
    print(f"elapsed: {time.time() - t0:.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
