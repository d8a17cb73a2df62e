import math
import random
from fractions import Fraction

import pytest

from qzeta.bernoulli import (BernoulliTable, bernoulli_number,
                             bernoulli_poly_coeffs,
                             bernoulli_number_minus, bernoulli_poly,
                             fourier_partial_sum, periodic_bernoulli)


class TestNumbers:
    def test_first_values(self):
        expected = {0: Fraction(1), 1: Fraction(1, 2), 2: Fraction(1, 6),
                    3: Fraction(0), 4: Fraction(-1, 30), 5: Fraction(0),
                    6: Fraction(1, 42), 7: Fraction(0)}
        for k, v in expected.items():
            assert bernoulli_number(k) == v

    def test_odd_indices_exactly_zero(self):
        for k in range(3, 64, 2):
            assert bernoulli_number(k) == 0

    def test_conventions_differ_only_at_one(self):
        for k in range(0, 40):
            plus, minus = bernoulli_number(k), bernoulli_number_minus(k)
            if k == 1:
                assert plus == -minus == Fraction(1, 2)
            else:
                assert plus == minus

    def test_capacity_errors(self):
        with pytest.raises(ValueError):
            bernoulli_number(65)
        small = BernoulliTable(capacity=8)
        assert small.number(8) == bernoulli_number(8)
        with pytest.raises(ValueError):
            small.number(9)


class TestPolynomials:
    def test_listed_forms(self):
        assert bernoulli_poly(1, 0.5) == pytest.approx(0.0, abs=1e-16)
        for x in (0.0, 0.3, 1.7, -2.0):
            assert bernoulli_poly(2, x).real == pytest.approx(
                x * x - x + 1.0 / 6.0, rel=1e-14, abs=1e-15)
        assert bernoulli_poly(3, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_boundary_value_is_number(self):
        # the odd-k zeros at x=1 come from cancellation of huge
        # coefficients, so the absolute tolerance scales with their size
        for k in range(33):
            coeff_scale = sum(abs(float(c)) for c in bernoulli_poly_coeffs(k))
            assert bernoulli_poly(k, 1.0).real == pytest.approx(
                float(bernoulli_number(k)), rel=1e-13,
                abs=coeff_scale * 1e-14)

    def test_difference_property(self):
        rng = random.Random(3)
        for k in range(1, 13):
            for _ in range(100):
                x = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
                lhs = bernoulli_poly(k, x + 1) - bernoulli_poly(k, x)
                rhs = k * x ** (k - 1)
                assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


class TestPeriodic:
    def test_values(self):
        assert periodic_bernoulli(2, 1.25) == pytest.approx(-1.0 / 48.0)
        for n in (0, 1, 5, -3):
            assert periodic_bernoulli(2, float(n)) == pytest.approx(1.0 / 6.0)
        assert periodic_bernoulli(3, 7.0) == pytest.approx(0.0, abs=1e-16)

    def test_requires_k_at_least_two(self):
        with pytest.raises(ValueError):
            periodic_bernoulli(1, 0.3)


class TestFourier:
    def test_k2_at_zero(self):
        assert fourier_partial_sum(2, 0.0, 2000) == pytest.approx(
            1.0 / 6.0, abs=1e-4)

    def test_single_pair_closed_form(self):
        # n = +-1 pair at k=2, x=1/2 collapses to -1/pi^2
        assert fourier_partial_sum(2, 0.5, 1) == pytest.approx(
            -1.0 / math.pi ** 2, rel=1e-14)

    def test_k4_at_zero(self):
        assert fourier_partial_sum(4, 0.0, 500) == pytest.approx(
            -1.0 / 30.0, abs=1e-6)

    def test_sup_error_bound(self):
        # partial sums converge uniformly at rate (2 pi N)^(1-k); at k=5
        # that analytic bound (6e-19) sits below the binary64 noise of a
        # 10^4-term sum, so the effective bound gets a 1e-15 floor
        n_sum = 10_000
        for k in (2, 3, 4, 5):
            bound = max(10.0 * (2.0 * math.pi * n_sum) ** (1 - k), 1e-15)
            worst = 0.0
            for i in range(1000):
                x = 3.0 * i / 1000.0
                diff = abs(fourier_partial_sum(k, x, n_sum)
                           - periodic_bernoulli(k, x))
                worst = max(worst, diff)
            assert worst < bound
