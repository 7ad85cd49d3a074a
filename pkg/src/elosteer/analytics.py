"""Questionnaire scoring and the group-comparison statistics pipeline.

The questionnaire has 31 seven-point Likert items (Q1..Q31).  Items Q19, Q20
and Q25 are phrased negatively and are reverse-scored before any aggregation.
Construct scores are plain means of their items; two composites stack on top:

* ``trusting_beliefs``  - mean of the competence / benevolence / integrity
  subscale means (not the mean of the 11 raw items),
* ``multidim_trust``    - mean of trusting_beliefs, intention_to_return and
  transparency.

The comparison pipeline mirrors a three-arm between-subjects design: a
one-way ANOVA screen per construct (alpha 0.10), then one-sided pairwise
tests in a fixed column order.  ``one_dim_trust`` is a single ordinal item
and is compared with Mann-Whitney U; everything else uses a pooled t-test.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .distributions import f_cdf, f_sf, normal_cdf, student_t_sf
from .errors import (
    DegenerateSampleError,
    IncompleteQuestionnaireError,
    MissingGroupsError,
)
from .steering import Group

# --------------------------------------------------------------------------
# Questionnaire definition

LIKERT_MIN = 1
LIKERT_MAX = 7

ALL_ITEMS: tuple[str, ...] = tuple(f"Q{i}" for i in range(1, 32))

#: Negatively phrased items; scored as (8 - answer).
REVERSE_ITEMS: frozenset[str] = frozenset({"Q19", "Q20", "Q25"})

#: Item groups for the nine first-order constructs, in report order.
CONSTRUCT_ITEMS: dict[str, tuple[str, ...]] = {
    "competence": ("Q1", "Q2", "Q3", "Q4", "Q5"),
    "benevolence": ("Q6", "Q7", "Q8"),
    "integrity": ("Q9", "Q10", "Q11"),
    "one_dim_trust": ("Q12",),
    "intention_to_return": ("Q13", "Q14"),
    "transparency": ("Q15", "Q16", "Q17"),
    "control": ("Q18", "Q19", "Q20", "Q21"),
    "preference_elicitation": ("Q22", "Q23", "Q24", "Q25"),
    "preference_revision": ("Q26", "Q27", "Q28", "Q29", "Q30", "Q31"),
}

#: Full construct order used by reports and correlation matrices.
CONSTRUCT_ORDER: tuple[str, ...] = (
    "competence",
    "benevolence",
    "integrity",
    "trusting_beliefs",
    "one_dim_trust",
    "intention_to_return",
    "transparency",
    "multidim_trust",
    "control",
    "preference_elicitation",
    "preference_revision",
)

_TRUST_SUBSCALES = ("competence", "benevolence", "integrity")


def validate_answers(answers: Mapping[str, int]) -> None:
    """Reject questionnaires that are not exactly Q1..Q31 with answers in 1..7."""
    missing = [item for item in ALL_ITEMS if item not in answers]
    if missing:
        raise IncompleteQuestionnaireError(f"missing items: {', '.join(missing)}")
    extra = sorted(set(answers) - set(ALL_ITEMS))
    if extra:
        raise IncompleteQuestionnaireError(f"unknown items: {', '.join(extra)}")
    for item in ALL_ITEMS:
        value = answers[item]
        # bool is an int subclass; a True/False answer is a caller bug.
        if isinstance(value, bool) or not isinstance(value, int):
            raise IncompleteQuestionnaireError(f"{item}: answer must be an integer")
        if not LIKERT_MIN <= value <= LIKERT_MAX:
            raise IncompleteQuestionnaireError(
                f"{item}: answer {value} outside {LIKERT_MIN}..{LIKERT_MAX}"
            )


def reverse_score(item: str, answer: int) -> int:
    """Apply the 7-point reversal (8 - x) where the item calls for it."""
    return 8 - answer if item in REVERSE_ITEMS else answer


@dataclass(frozen=True)
class ConstructScores:
    """Per-respondent construct means on the 1..7 scale."""

    competence: float
    benevolence: float
    integrity: float
    trusting_beliefs: float
    one_dim_trust: float
    intention_to_return: float
    transparency: float
    multidim_trust: float
    control: float
    preference_elicitation: float
    preference_revision: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in CONSTRUCT_ORDER}


def score_constructs(answers) -> ConstructScores:
    """Score a complete questionnaire into the eleven construct values.

    Accepts either a plain ``{"Q1": int, ...}`` mapping or any object with
    an ``answers`` mapping attribute (e.g. a submitted questionnaire).
    """
    if not isinstance(answers, Mapping):
        answers = answers.answers
    validate_answers(answers)
    values: dict[str, float] = {}
    for construct, items in CONSTRUCT_ITEMS.items():
        scored = [reverse_score(item, answers[item]) for item in items]
        values[construct] = sum(scored) / len(scored)
    values["trusting_beliefs"] = sum(values[s] for s in _TRUST_SUBSCALES) / 3.0
    values["multidim_trust"] = (
        values["trusting_beliefs"]
        + values["intention_to_return"]
        + values["transparency"]
    ) / 3.0
    return ConstructScores(**{name: values[name] for name in CONSTRUCT_ORDER})


# --------------------------------------------------------------------------
# Statistical tests

ANOVA_SCREEN_ALPHA = 0.10
SIGNIFICANCE_ALPHA = 0.05
STAR_ONE = 0.01
STAR_TWO = 0.001


class TestMethod(Enum):
    ANOVA = "anova"
    T_TEST = "t"
    WELCH_T = "welch-t"
    MANN_WHITNEY = "mann-whitney-u"
    F_VARIANCE = "f-variance"


@dataclass(frozen=True)
class TestResult:
    """Outcome of a single hypothesis test.

    ``degenerate`` marks results produced by a guarded edge case (for example
    zero within-group variance) instead of the regular sampling distribution.
    """

    method: TestMethod
    statistic: float
    p_value: float
    df: tuple[float, ...] = ()
    effect_size: float | None = None
    degenerate: bool = False
    exact: bool | None = None

    def __post_init__(self) -> None:
        if not -1e-12 <= self.p_value <= 1.0 + 1e-12:
            raise DegenerateSampleError(f"p-value {self.p_value} outside [0, 1]")
        # normalize numpy scalars so downstream JSON encoding never chokes
        object.__setattr__(self, "statistic", float(self.statistic))
        object.__setattr__(self, "p_value", float(self.p_value))
        object.__setattr__(self, "df", tuple(float(d) for d in self.df))
        if self.effect_size is not None:
            object.__setattr__(self, "effect_size", float(self.effect_size))
        object.__setattr__(self, "degenerate", bool(self.degenerate))

    @property
    def screen_pass(self) -> bool:
        """True when an ANOVA screen admits pairwise follow-up tests."""
        return self.p_value < ANOVA_SCREEN_ALPHA

    @property
    def significant(self) -> bool:
        return self.p_value < SIGNIFICANCE_ALPHA

    @property
    def stars(self) -> str:
        if self.p_value < STAR_TWO:
            return "**"
        if self.p_value < STAR_ONE:
            return "*"
        return ""


def _as_array(sample: Sequence[float], *, name: str, minimum: int) -> np.ndarray:
    arr = np.asarray(list(sample), dtype=float)
    if arr.ndim != 1 or arr.size < minimum:
        raise DegenerateSampleError(f"{name}: need at least {minimum} values")
    if not np.all(np.isfinite(arr)):
        raise DegenerateSampleError(f"{name}: values must be finite")
    return arr


def one_way_anova(samples: Sequence[Sequence[float]]) -> TestResult:
    """One-way fixed-effects ANOVA over two or more independent groups.

    With zero within-group variance the F ratio has a zero denominator; the
    result is reported as p=0 (or p=1 when the means also coincide) with the
    ``degenerate`` flag set rather than raising.
    """
    if len(samples) < 2:
        raise DegenerateSampleError("anova: need at least two groups")
    groups = [_as_array(s, name=f"group {i}", minimum=2) for i, s in enumerate(samples)]
    k = len(groups)
    n_total = sum(g.size for g in groups)
    grand = sum(g.sum() for g in groups) / n_total

    ss_between = sum(g.size * (g.mean() - grand) ** 2 for g in groups)
    ss_within = sum(float(((g - g.mean()) ** 2).sum()) for g in groups)
    df_between = float(k - 1)
    df_within = float(n_total - k)

    if ss_within <= 0.0:
        if ss_between <= 0.0:
            # All observations identical: no evidence either way.
            return TestResult(
                TestMethod.ANOVA, 0.0, 1.0, (df_between, df_within), degenerate=True
            )
        return TestResult(
            TestMethod.ANOVA, math.inf, 0.0, (df_between, df_within), degenerate=True
        )

    f_stat = (ss_between / df_between) / (ss_within / df_within)
    p = f_sf(f_stat, df_between, df_within)
    return TestResult(TestMethod.ANOVA, f_stat, p, (df_between, df_within))


def t_test_one_sided(
    a: Sequence[float], b: Sequence[float], *, welch: bool = False
) -> TestResult:
    """One-sided two-sample t-test of H1: mean(b) > mean(a).

    Pooled variance by default to match the reporting convention for equal-n
    arms; ``welch=True`` switches to the Welch-Satterthwaite form.
    """
    xa = _as_array(a, name="a", minimum=2)
    xb = _as_array(b, name="b", minimum=2)
    na, nb = xa.size, xb.size
    ma, mb = float(xa.mean()), float(xb.mean())
    va, vb = float(xa.var(ddof=1)), float(xb.var(ddof=1))
    effect = mb - ma

    if welch:
        sa2, sb2 = va / na, vb / nb
        se = math.sqrt(sa2 + sb2)
        if se > 0.0:
            df = (sa2 + sb2) ** 2 / (sa2**2 / (na - 1) + sb2**2 / (nb - 1))
        else:
            df = float(na + nb - 2)
        method = TestMethod.WELCH_T
    else:
        pooled = ((na - 1) * va + (nb - 1) * vb) / (na + nb - 2)
        se = math.sqrt(pooled * (1.0 / na + 1.0 / nb))
        df = float(na + nb - 2)
        method = TestMethod.T_TEST

    if se == 0.0:
        # Both samples constant.  Identical means carry no evidence; any
        # difference is infinitely many standard errors away.
        if effect == 0.0:
            return TestResult(method, 0.0, 0.5, (df,), effect, degenerate=True)
        stat = math.inf if effect > 0 else -math.inf
        p = 0.0 if effect > 0 else 1.0
        return TestResult(method, stat, p, (df,), effect, degenerate=True)

    stat = effect / se
    p = student_t_sf(stat, df)
    return TestResult(method, stat, p, (df,), effect)


def _u_statistic(a: Sequence[float], b: Sequence[float]) -> float:
    """Mann-Whitney U for sample ``a`` (ties count one half)."""
    u = 0.0
    for x in a:
        for y in b:
            if x > y:
                u += 1.0
            elif x == y:
                u += 0.5
    return u


_EXACT_LIMIT = 12


def mann_whitney_u_one_sided(
    a: Sequence[float], b: Sequence[float], *, method: str = "auto"
) -> TestResult:
    """One-sided Mann-Whitney U test of H1: b tends to exceed a.

    Small samples (combined n <= 12) without cross-group ties are evaluated
    by exact enumeration of all group relabellings; otherwise the normal
    approximation with tie and continuity corrections applies.  A zero
    variance under ties collapses to p = 0.5.
    """
    if method not in ("auto", "exact", "approx"):
        raise DegenerateSampleError(f"unknown mann-whitney method: {method}")
    xa = _as_array(a, name="a", minimum=1)
    xb = _as_array(b, name="b", minimum=1)
    na, nb = xa.size, xb.size
    u_obs = _u_statistic(xa, xb)
    effect = float(xb.mean() - xa.mean())

    cross_ties = bool(set(xa.tolist()) & set(xb.tolist()))
    if method == "exact" or (
        method == "auto" and na + nb <= _EXACT_LIMIT and not cross_ties
    ):
        combined = np.concatenate([xa, xb])
        total = 0
        at_most = 0
        indices = range(na + nb)
        for chosen in itertools.combinations(indices, na):
            chosen_set = set(chosen)
            ga = combined[list(chosen)]
            gb = combined[[i for i in indices if i not in chosen_set]]
            total += 1
            if _u_statistic(ga, gb) <= u_obs + 1e-9:
                at_most += 1
        p = at_most / total
        return TestResult(
            TestMethod.MANN_WHITNEY, u_obs, p, (float(na), float(nb)), effect, exact=True
        )

    n = na + nb
    mu = na * nb / 2.0
    counts = Counter(np.concatenate([xa, xb]).tolist()).values()
    tie_term = sum(t**3 - t for t in counts)
    sigma_sq = na * nb / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if sigma_sq <= 0.0:
        # Every observation tied: the ordering carries no information.
        return TestResult(
            TestMethod.MANN_WHITNEY,
            u_obs,
            0.5,
            (float(na), float(nb)),
            effect,
            degenerate=True,
            exact=False,
        )
    z = (u_obs - mu + 0.5) / math.sqrt(sigma_sq)
    p = min(1.0, max(0.0, normal_cdf(z)))
    return TestResult(
        TestMethod.MANN_WHITNEY, u_obs, p, (float(na), float(nb)), effect, exact=False
    )


def f_test_equal_variance(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """Two-sided F test of equal variances (ratio var(a)/var(b))."""
    xa = _as_array(a, name="a", minimum=2)
    xb = _as_array(b, name="b", minimum=2)
    va, vb = float(xa.var(ddof=1)), float(xb.var(ddof=1))
    dfa, dfb = float(xa.size - 1), float(xb.size - 1)
    if va == 0.0 and vb == 0.0:
        return TestResult(TestMethod.F_VARIANCE, 1.0, 1.0, (dfa, dfb), degenerate=True)
    if vb == 0.0:
        return TestResult(
            TestMethod.F_VARIANCE, math.inf, 0.0, (dfa, dfb), degenerate=True
        )
    if va == 0.0:
        return TestResult(TestMethod.F_VARIANCE, 0.0, 0.0, (dfa, dfb), degenerate=True)
    ratio = va / vb
    tail = min(f_cdf(ratio, dfa, dfb), f_sf(ratio, dfa, dfb))
    return TestResult(TestMethod.F_VARIANCE, ratio, min(1.0, 2.0 * tail), (dfa, dfb))


# --------------------------------------------------------------------------
# Report assembly

#: Pairwise columns in reporting order; effects read second minus first.
PAIR_ORDER: tuple[tuple[Group, Group], ...] = (
    (Group.NONE, Group.CONTROL),
    (Group.NONE, Group.CONTROL_IMPACT),
    (Group.CONTROL, Group.CONTROL_IMPACT),
)


@dataclass(frozen=True)
class PairwiseCell:
    first: Group
    second: Group
    result: TestResult


@dataclass(frozen=True)
class ConstructRow:
    construct: str
    group_means: dict[Group, float]
    anova: TestResult
    cells: tuple[PairwiseCell, ...]  # empty when the screen fails


@dataclass(frozen=True)
class Report:
    group_sizes: dict[Group, int]
    rows: tuple[ConstructRow, ...]

    def row(self, construct: str) -> ConstructRow:
        for r in self.rows:
            if r.construct == construct:
                return r
        raise KeyError(construct)


def _coerce_group(value: Group | str) -> Group:
    return value if isinstance(value, Group) else Group(value)


def build_report(
    dataset: Iterable[tuple[Group | str, ConstructScores]],
) -> Report:
    """Run the full screen-then-pairwise pipeline over scored respondents.

    ``dataset`` yields (group, scores) pairs.  All three groups must be
    present with at least two respondents each.
    """
    by_group: dict[Group, list[ConstructScores]] = {g: [] for g in Group}
    for raw_group, scores in dataset:
        by_group[_coerce_group(raw_group)].append(scores)

    lacking = [g.value for g in Group if len(by_group[g]) < 2]
    if lacking:
        raise MissingGroupsError(
            "need >=2 respondents in every group; short: " + ", ".join(lacking)
        )

    rows: list[ConstructRow] = []
    for construct in CONSTRUCT_ORDER:
        values = {
            g: [getattr(s, construct) for s in by_group[g]] for g in Group
        }
        anova = one_way_anova([values[g] for g in Group])
        cells: list[PairwiseCell] = []
        if anova.screen_pass:
            for first, second in PAIR_ORDER:
                if construct == "one_dim_trust":
                    result = mann_whitney_u_one_sided(values[first], values[second])
                else:
                    result = t_test_one_sided(values[first], values[second])
                cells.append(PairwiseCell(first, second, result))
        rows.append(
            ConstructRow(
                construct,
                {g: float(np.mean(values[g])) for g in Group},
                anova,
                tuple(cells),
            )
        )

    return Report(
        group_sizes={g: len(by_group[g]) for g in Group}, rows=tuple(rows)
    )


def report_records(report: Report) -> list[dict]:
    """Flatten a report into JSON-serialisable records, one per construct."""
    records = []
    for row in report.rows:
        record: dict = {
            "construct": row.construct,
            "means": {g.value: row.group_means[g] for g in Group},
            "anova": {
                "f": row.anova.statistic,
                "p": row.anova.p_value,
                "screen_pass": row.anova.screen_pass,
                "degenerate": row.anova.degenerate,
            },
            "pairwise": None,
        }
        if row.cells:
            record["pairwise"] = [
                {
                    "pair": [cell.first.value, cell.second.value],
                    "method": cell.result.method.value,
                    "statistic": cell.result.statistic,
                    "p": cell.result.p_value,
                    "effect": cell.result.effect_size,
                    "significant": cell.result.significant,
                    "stars": cell.result.stars,
                }
                for cell in row.cells
            ]
        records.append(record)
    return records


def _format_cell(cell: PairwiseCell) -> str:
    result = cell.result
    body = f"{result.effect_size:+.2f} (p={result.p_value:.3f}){result.stars}"
    # Brackets mark cells that fail the 0.05 significance threshold.
    return body if result.significant else f"[{body}]"


def render_report_text(report: Report) -> str:
    """Fixed-width text table of the full report."""
    headers = ["construct"] + [g.value for g in Group] + ["anova p"]
    headers += [f"{a.value} vs {b.value}" for a, b in PAIR_ORDER]
    table: list[list[str]] = [headers]
    for row in report.rows:
        line = [row.construct]
        line += [f"{row.group_means[g]:.2f}" for g in Group]
        line.append(f"{row.anova.p_value:.3f}")
        if row.cells:
            line += [_format_cell(cell) for cell in row.cells]
        else:
            line += ["-", "-", "-"]
        table.append(line)

    widths = [max(len(r[i]) for r in table) for i in range(len(headers))]
    out = []
    for i, r in enumerate(table):
        out.append("  ".join(cell.ljust(widths[j]) for j, cell in enumerate(r)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    sizes = ", ".join(f"{g.value}={report.group_sizes[g]}" for g in Group)
    out.append("")
    out.append(f"group sizes: {sizes}; one-sided tests, second group minus first")
    out.append("significance [brackets] p>=0.05; * p<0.01; ** p<0.001")
    return "\n".join(out)


def correlation_matrix(
    scores: Sequence[ConstructScores],
) -> tuple[tuple[str, ...], np.ndarray]:
    """Pearson correlations between constructs across respondents.

    Constant columns produce NaN rows rather than raising, matching the
    behaviour of ``numpy.corrcoef``.
    """
    if len(scores) < 2:
        raise DegenerateSampleError("need at least two respondents")
    data = np.array([[getattr(s, name) for name in CONSTRUCT_ORDER] for s in scores])
    with np.errstate(invalid="ignore", divide="ignore"):
        matrix = np.corrcoef(data, rowvar=False)
    return CONSTRUCT_ORDER, matrix
