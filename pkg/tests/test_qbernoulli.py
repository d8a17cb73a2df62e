import math

import pytest

from qzeta import QParam, zeta_q_nonpositive
from qzeta.bernoulli import bernoulli_number
from qzeta.kernel import richardson_extrapolate
from qzeta.qbernoulli import (TruncatedPowerSeries, functional_equation_residual,
                              generating_series, q_bernoulli,
                              recursion_residual)

# independent 35-digit oracle values
B1_05 = 0.55730495911103659
B2_05 = 0.21872341511126015
B3_09 = -0.0058248343944587478
B0_05 = 0.72134752044448170


class TestValues:
    def test_b0_is_residue_shape(self):
        q = 0.5
        assert q_bernoulli(0, QParam(q)) == pytest.approx(B0_05, rel=1e-15)
        assert q_bernoulli(0, QParam(q)) == pytest.approx(
            (q - 1.0) / math.log(q), rel=1e-14)

    def test_b1_is_minus_zeta_at_zero(self):
        assert q_bernoulli(1, QParam(0.5)) == pytest.approx(B1_05, rel=1e-14)
        assert q_bernoulli(1, QParam(0.5)) == pytest.approx(
            -zeta_q_nonpositive(0, QParam(0.5)), rel=1e-14)

    def test_oracle_spots(self):
        assert q_bernoulli(2, QParam(0.5)) == pytest.approx(B2_05, rel=1e-14)
        assert q_bernoulli(3, QParam(0.9)) == pytest.approx(B3_09, rel=1e-13)

    def test_definition_consistency(self):
        for qv in (0.3, 0.5, 0.9):
            qp = QParam(qv)
            for m in range(1, 13):
                lhs = q_bernoulli(m, qp)
                rhs = -m * zeta_q_nonpositive(m - 1, qp)
                assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-18)

    def test_limit_is_bernoulli(self):
        hs = [0.1 * 2.0 ** -k for k in range(5)]
        for m in range(9):
            samples = [(h, complex(q_bernoulli(m, QParam(1.0 - h))))
                       for h in hs]
            ext = richardson_extrapolate(samples, 4)
            target = float(bernoulli_number(m))
            assert abs(ext.limit.real - target) < 1e-6


class TestRecursion:
    def test_index_zero_exact(self):
        assert recursion_residual(0, QParam(0.37)) == 0.0

    def test_stated_identity(self):
        assert recursion_residual(1, QParam(0.5)) < 1e-12
        assert recursion_residual(12, QParam(0.9)) < 1e-9

    def test_across_bases(self):
        for qv in (0.3, 0.5, 0.9, 0.99):
            qp = QParam(qv)
            for n in range(13):
                scale = max(1.0, abs(q_bernoulli(n, qp)))
                assert recursion_residual(n, qp) < 1e-9 * scale

    def test_bounds(self):
        with pytest.raises(ValueError):
            recursion_residual(31, QParam(0.5))


class TestGeneratingSeries:
    def test_coefficients(self):
        ts = generating_series(QParam(0.5), 6)
        assert ts.order == 6 and len(ts.coeffs) == 7
        assert ts.coeffs[0] == pytest.approx(B0_05, rel=1e-15)
        assert ts.coeffs[1] == pytest.approx(q_bernoulli(1, QParam(0.5)))

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            TruncatedPowerSeries(coeffs=(1.0, 2.0), order=3)
        with pytest.raises(ValueError):
            generating_series(QParam(0.5), 31)


class TestFunctionalEquation:
    def test_degree_zero_trivial(self):
        res = functional_equation_residual(QParam(0.73), 0)
        assert res[0] < 1e-13

    def test_order_12(self):
        assert max(functional_equation_residual(QParam(0.5), 12)) < 1e-10
        assert max(functional_equation_residual(QParam(0.99), 12)) < 1e-8
