"""
Questionnaire analytics on a constructed dataset
================================================

Builds eighteen synthetic questionnaire responses, lifts the three
transparency items by one point for the arm that sees steering impact,
and prints the group-comparison report.  The shifted construct is the
only one the screening ANOVA lets through.

Run from the repository root:

    python3 demos/group_report.py
"""

import random

from elosteer import Group
from elosteer.analytics import (
    build_report,
    correlation_matrix,
    render_report_text,
    score_constructs,
)

ALL_ITEMS = [f"Q{i}" for i in range(1, 32)]
TRANSPARENCY_ITEMS = ("Q15", "Q16", "Q17")


def answers_for(respondent: int, lifted: bool) -> dict[str, int]:
    rng = random.Random(100 + respondent)
    answers = {item: rng.randint(3, 5) for item in ALL_ITEMS}
    if lifted:
        for item in TRANSPARENCY_ITEMS:
            answers[item] = min(7, answers[item] + 1)
    return answers


dataset = []
for i in range(18):
    group = list(Group)[i % 3]
    lifted = group is Group.CONTROL_IMPACT
    dataset.append((group, score_constructs(answers_for(i, lifted))))

report = build_report(dataset)
print(render_report_text(report))

# The construct scores also carry an inter-correlation matrix, useful
# for spotting constructs that move together.
names, matrix = correlation_matrix([scores for _, scores in dataset])
print("\nstrongest correlation with one-item trust:")
trust_index = names.index("one_dim_trust")
paired = sorted(
    ((abs(matrix[trust_index][j]), names[j]) for j in range(len(names)) if j != trust_index),
    reverse=True,
)
for strength, name in paired[:3]:
    print(f"  {name}: |r| = {strength:.2f}")
