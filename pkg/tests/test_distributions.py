"""Hand-rolled distribution tails against scipy and published table values."""

from __future__ import annotations

import math

import pytest
import scipy.special
import scipy.stats

from elosteer.distributions import (
    f_cdf,
    f_sf,
    normal_cdf,
    normal_sf,
    regularized_incomplete_beta,
    student_t_sf,
)

AB_GRID = [0.5, 1.0, 1.5, 2.0, 5.0, 10.0, 50.0, 200.0]
X_GRID = [0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999]


class TestIncompleteBeta:
    def test_endpoints(self):
        assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
        assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0

    def test_against_scipy_grid(self):
        for a in AB_GRID:
            for b in AB_GRID:
                for x in X_GRID:
                    want = scipy.special.betainc(a, b, x)
                    got = regularized_incomplete_beta(a, b, x)
                    assert got == pytest.approx(want, abs=1e-8), (a, b, x)

    def test_symmetry(self):
        for a in (0.5, 2.0, 7.5):
            for b in (1.0, 3.0, 20.0):
                for x in X_GRID:
                    left = regularized_incomplete_beta(a, b, x)
                    right = 1.0 - regularized_incomplete_beta(b, a, 1.0 - x)
                    assert left == pytest.approx(right, abs=1e-10)

    def test_uniform_special_case(self):
        # a = b = 1 reduces to the identity
        for x in X_GRID:
            assert regularized_incomplete_beta(1.0, 1.0, x) == pytest.approx(x, abs=1e-12)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            regularized_incomplete_beta(0.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.0, -2.0, 0.5)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.0, 1.0, 1.5)


class TestStudentT:
    def test_against_scipy(self):
        for df in (1, 2, 3, 4, 5, 10, 30, 120):
            for t in (-5.0, -2.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.96, 2.5, 5.0):
                want = scipy.stats.t.sf(t, df)
                assert student_t_sf(t, df) == pytest.approx(want, abs=1e-8), (t, df)

    def test_symmetry_at_zero(self):
        assert student_t_sf(0.0, 7) == pytest.approx(0.5, abs=1e-12)

    def test_table_values(self):
        # critical values from standard t tables
        assert student_t_sf(2.776, 4) == pytest.approx(0.025, abs=5e-4)
        assert student_t_sf(1.812, 10) == pytest.approx(0.05, abs=5e-4)
        assert student_t_sf(2.576, 1000) == pytest.approx(0.005, abs=5e-4)

    def test_fixture_value(self):
        # one-sided tail used by the group-comparison fixture
        assert student_t_sf(math.sqrt(1.5), 4) == pytest.approx(0.1438, abs=1e-3)


class TestFDistribution:
    def test_against_scipy(self):
        for df1 in (1, 2, 3, 5, 10, 40):
            for df2 in (1, 2, 3, 5, 10, 40):
                for f in (0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 16.0):
                    assert f_sf(f, df1, df2) == pytest.approx(
                        scipy.stats.f.sf(f, df1, df2), abs=1e-8
                    ), (f, df1, df2)
                    assert f_cdf(f, df1, df2) == pytest.approx(
                        scipy.stats.f.cdf(f, df1, df2), abs=1e-8
                    )

    def test_cdf_sf_complement(self):
        for f in (0.2, 1.0, 3.7):
            assert f_cdf(f, 4, 9) + f_sf(f, 4, 9) == pytest.approx(1.0, abs=1e-12)

    def test_zero_and_negative(self):
        assert f_cdf(0.0, 3, 3) == 0.0
        assert f_sf(0.0, 3, 3) == 1.0

    def test_fixture_value(self):
        # F tail behind the three-group screening fixture
        assert f_sf(16.0, 2, 3) == pytest.approx(0.025094573304390872, abs=1e-10)
        assert f_sf(16.0, 2, 3) == pytest.approx(scipy.stats.f.sf(16.0, 2, 3), abs=1e-10)


class TestNormal:
    def test_against_scipy(self):
        for z in (-6.0, -3.0, -1.96, -1.0, 0.0, 0.5, 1.0, 1.6448536269514722, 3.0, 6.0):
            assert normal_cdf(z) == pytest.approx(scipy.stats.norm.cdf(z), abs=1e-10)
            assert normal_sf(z) == pytest.approx(scipy.stats.norm.sf(z), abs=1e-10)

    def test_table_values(self):
        assert normal_cdf(1.96) == pytest.approx(0.9750021048517795, abs=1e-12)
        assert normal_cdf(0.0) == 0.5

    def test_complement(self):
        for z in (-2.2, 0.3, 4.1):
            assert normal_cdf(z) + normal_sf(z) == pytest.approx(1.0, abs=1e-12)
