"""
Rating arithmetic from the command line
=======================================

Walks the core primitives: expected success probability, a single
rating update, the gap behind the recommendation target, and the
steering slider.

Run from the repository root:

    python3 demos/rating_basics.py
"""

from elosteer import (
    EloConfig,
    Group,
    apply_steering,
    dreyfus_label,
    expected_probability,
    initialize_mastery,
    target_rating_gap,
    update_ratings,
)
from elosteer.steering import LearnerProfile

config = EloConfig()  # k=160, chess-variant probability curve

# --- expected probability ---------------------------------------------------
# The probability is a function of the rating gap alone.
for gap in (-400, -200, 0, 200, 400):
    p = expected_probability(1500 + gap, 1500, config)
    print(f"learner ahead by {gap:+5d}: P(correct) = {p:.4f}")

# --- one update --------------------------------------------------------------
# A correct answer moves the learner up and the exercise down by the
# same amount: the rating mass is conserved.
learner, exercise = 1400.0, 1000.0
new_learner, new_exercise, delta = update_ratings(learner, exercise, True, config)
print(f"\ncorrect answer at {learner:.0f} vs {exercise:.0f}:")
print(f"  learner  {learner:.3f} -> {new_learner:.3f}  (delta {delta:+.3f})")
print(f"  exercise {exercise:.3f} -> {new_exercise:.3f}")
print(f"  sum before {learner + exercise:.3f}, after {new_learner + new_exercise:.3f}")

# --- the recommendation gap ---------------------------------------------------
# Exercises are picked so the learner succeeds ~70% of the time; that
# corresponds to a fixed rating handicap.
gap = target_rating_gap(0.7, config)
print(f"\na 70% success target means exercises sit {gap:.1f} points below the learner")

# --- steering ------------------------------------------------------------------
# Learners in the steering groups nudge their own mastery level by
# whole percent steps, at most ten percent per nudge.
profile = LearnerProfile(id="demo", group=Group.CONTROL)
initialize_mastery(profile, 0.5)  # slider midpoint -> 1500
print(f"\nstart:   rating {profile.rating:.0f} ({dreyfus_label(profile.rating)})")
for step in (8, 10, -3):
    event = apply_steering(profile, step)
    print(
        f"steer {step:+3d}%: rating {event.post_rating:.0f}"
        f" ({dreyfus_label(event.post_rating)})"
    )
