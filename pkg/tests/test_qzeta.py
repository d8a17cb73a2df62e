"""Core q-zeta family tests.

Frozen reference values were computed with an independent 35-digit
mpmath implementation of the defining series / closed formulas (and are
annotated inline); identities are checked by evaluating both sides
through separate code paths.
"""

import cmath
import math
import random

import pytest

from qzeta import (EvalPolicy, NonConvergenceError, PoleProximityError,
                   QParam, f_q_continued, f_q_direct, hurwitz_zeta_q,
                   hurwitz_zeta_q_nonpositive, jackson_integral_form,
                   lattice_delta, pole_set, residue_at_one, tilde_zeta_q,
                   zeta_q, zeta_q_nonpositive)
from qzeta.kernel import richardson_extrapolate

Q5 = QParam(0.5)
TIGHT = EvalPolicy(tol=1e-13)

# independent mpmath oracle values (35 digits, truncated to binary64)
FQ_2_1_05 = 0.68600847218987209       # f_q(2, 1; 0.5), converged
FQ_1_1_05 = 0.80334757620764588       # f_q(1, 1; 0.5), Lambert-type
FQ_1_2_03 = 0.096806084287391495      # f_q(1, 2; 0.3)
ZQ0_05 = -0.55730495911103659         # 1/(q-1) - 1/log q at q=0.5
RES_05 = 0.72134752044448170          # (q-1)/log q at q=0.5
ZQM1_09 = -0.087686852517936183       # zeta_q(-1) at q=0.9
ZQM2_05 = 0.018831483090046448        # zeta_q(-2) at q=0.5
PI2_12 = 0.82246703342411322          # pi^2/12


class TestFqDirect:
    def test_geometric_at_s_zero(self):
        res = f_q_direct(0.0, 1.0, Q5, TIGHT)
        assert res.value.real == pytest.approx(1.0, abs=1e-13)
        assert res.converged

    def test_oracle_values(self):
        assert f_q_direct(2, 1, Q5, TIGHT).value.real == pytest.approx(
            FQ_2_1_05, abs=1e-12)
        assert f_q_direct(1, 1, Q5, TIGHT).value.real == pytest.approx(
            FQ_1_1_05, abs=1e-12)

    def test_requires_positive_re_t(self):
        with pytest.raises(ValueError):
            f_q_direct(2.0, -0.5, Q5)

    def test_error_estimate_honest(self):
        res = f_q_direct(2, 1, Q5, EvalPolicy(tol=1e-10))
        assert abs(res.value.real - FQ_2_1_05) <= max(res.err_estimate, 1e-13)


class TestFqContinued:
    def test_single_term_survives_at_s_zero(self):
        res = f_q_continued(0.0, 1.0, Q5, TIGHT)
        assert res.value.real == pytest.approx(1.0, abs=1e-14)

    def test_agrees_with_direct(self):
        d = f_q_direct(2, 1, Q5, TIGHT)
        c = f_q_continued(2, 1, Q5, TIGHT)
        assert abs(d.value - c.value) <= d.err_estimate + c.err_estimate

    def test_paper_partial_sum_exact_terms(self):
        res = f_q_continued(0.5, -0.5, QParam(0.999),
                            EvalPolicy(accumulator="double-double"),
                            n_terms=10 ** 5)
        assert res.value.real == pytest.approx(-1.46014527395, abs=5e-11)
        assert res.terms_used == 10 ** 5

    def test_continuation_consistency_random(self):
        rng = random.Random(101)
        for qv in (0.3, 0.7, 0.95):
            qp = QParam(qv)
            for _ in range(17):
                s = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
                t = complex(rng.uniform(0.2, 3.0), rng.uniform(-3.0, 3.0))
                d = f_q_direct(s, t, qp, TIGHT)
                c = f_q_continued(s, t, qp, TIGHT)
                assert abs(d.value - c.value) <= \
                    d.err_estimate + c.err_estimate

    def test_pole_refusal(self):
        with pytest.raises(PoleProximityError) as exc:
            f_q_continued(2.0, 0.0, Q5)
        assert exc.value.pole.a == 0 and exc.value.pole.b == 0

    def test_exact_term_standard_vs_dd(self):
        s = complex(0.5, 14.1347)
        std = zeta_q(s, QParam(0.9999), EvalPolicy(), n_terms=100_001).value
        ddv = zeta_q(s, QParam(0.9999),
                     EvalPolicy(accumulator="double-double"),
                     n_terms=100_001).value
        # dd pins the independently computed digits; binary64 drifts but
        # stays within a relative 1e-9 of them at this length
        assert ddv == pytest.approx(complex(10835.55215796031,
                                            10270.785642926781), rel=1e-13)
        assert std == pytest.approx(ddv, rel=1e-9)


class TestZetaQ:
    def test_value_at_zero(self):
        assert zeta_q(0.0, Q5).value.real == pytest.approx(ZQ0_05, abs=1e-14)

    def test_positive_even_matches_lambert_sum(self):
        # zeta_q(2) = (1-q)^2 sum n q^n/(1-q^n) = f_q(2, 1)
        assert zeta_q(2.0, Q5, TIGHT).value.real == pytest.approx(
            FQ_2_1_05, abs=1e-12)

    def test_pole_at_one(self):
        with pytest.raises(PoleProximityError) as exc:
            zeta_q(1.0, Q5)
        pole = exc.value.pole
        assert pole.kind == "s-lattice" and pole.a == 1 and pole.b == 0

    def test_pole_on_imaginary_row(self):
        s = 1.0 + lattice_delta(Q5)
        with pytest.raises(PoleProximityError) as exc:
            zeta_q(s, Q5)
        assert exc.value.pole.b == 1

    def test_reroutes_at_nonpositive_integers(self):
        for m in (0, 1, 4):
            res = zeta_q(complex(-m), Q5)
            assert res.value.real == pytest.approx(
                zeta_q_nonpositive(m, Q5), rel=1e-14)
            assert res.converged

    def test_removable_singularity_consistency(self):
        for qv in (0.5, 0.9):
            qp = QParam(qv)
            for m in range(7):
                closed = zeta_q_nonpositive(m, qp)
                for eps in (1e-5, -1e-5):
                    near = zeta_q(complex(-m + eps), qp, TIGHT).value
                    assert abs(near.real - closed) < 1e-3


class TestZetaQNonpositive:
    def test_closed_forms(self):
        q = 0.5
        expected0 = 1.0 / (q - 1.0) - 1.0 / math.log(q)
        assert zeta_q_nonpositive(0, Q5) == pytest.approx(expected0, rel=1e-15)
        q = 0.9
        expected1 = (1 / (q ** 2 - 1) - 1 / (q - 1) + 1 / (2 * math.log(q))) \
            / (1 - q)
        assert zeta_q_nonpositive(1, QParam(q)) == pytest.approx(
            expected1, rel=1e-12)
        assert zeta_q_nonpositive(1, QParam(q)) == pytest.approx(
            ZQM1_09, rel=1e-14)
        assert zeta_q_nonpositive(2, Q5) == pytest.approx(ZQM2_05, rel=1e-14)

    def test_deep_cancellation_stays_clean(self):
        # at q = 1 - 2^-7/10 and m = 8 the braces cancel ~28 orders; check
        # against an independent 60-digit evaluation of the same formula
        import mpmath as mp

        qp = QParam(1.0 - 2.0 ** -7 / 10.0)
        closed = zeta_q_nonpositive(8, qp)
        with mp.workdps(60):
            qm = mp.mpf(qp.q)
            acc = mp.mpf(0)
            for r in range(9):
                acc += (-1) ** r * math.comb(8, r) / (qm ** (9 - r) - 1)
            acc += mp.mpf(-1) / (9 * mp.log(qm))
            oracle = float(acc * (1 - qm) ** -8)
        assert closed == pytest.approx(oracle, rel=1e-10)


class TestResidue:
    def test_value(self):
        assert residue_at_one(Q5) == pytest.approx(RES_05, rel=1e-15)

    def test_probe_near_pole(self):
        for qv in (0.5, 0.9):
            qp = QParam(qv)
            probe = 1e-4 * zeta_q(1.0 + 1e-4, qp, TIGHT).value
            assert abs(probe.real - residue_at_one(qp)) < 1e-3

    def test_probe_error_shrinks_linearly(self):
        qp = QParam(0.7)
        errs = []
        for eps in (1e-2, 1e-3, 1e-4):
            probe = eps * zeta_q(1.0 + eps, qp, TIGHT).value
            errs.append(abs(probe.real - residue_at_one(qp)))
        assert errs[1] < 0.2 * errs[0] and errs[2] < 0.2 * errs[1]


class TestPoleSet:
    def test_window_around_one(self):
        poles = pole_set(Q5, (-0.5, 1.5, -0.1, 0.1))
        assert len(poles) == 1
        assert poles[0].a == 1 and poles[0].b == 0

    def test_origin_not_a_pole(self):
        assert pole_set(Q5, (-0.2, 0.2, -0.2, 0.2)) == []

    def test_imaginary_column(self):
        height = 2 * abs(lattice_delta(Q5).imag)
        poles = pole_set(Q5, (0.5, 1.5, -height, 0.0))
        assert [(p.a, p.b) for p in poles] == [(1, 0), (1, 1), (1, 2)]

    def test_negative_a_requires_nonzero_b(self):
        im_d = lattice_delta(Q5).imag
        poles = pole_set(Q5, (-2.5, 1.5, -abs(im_d) - 0.1, abs(im_d) + 0.1))
        spots = {(p.a, p.b) for p in poles}
        assert (0, 0) not in spots and (-1, 0) not in spots and (-2, 0) not in spots
        assert (0, 1) in spots and (-2, -1) in spots and (1, 0) in spots


class TestTildeZetaQ:
    def test_alternating_geometric_at_zero(self):
        for qv in (0.3, 0.8):
            res = tilde_zeta_q(0.0, QParam(qv), TIGHT)
            assert res.value.real == pytest.approx(1.0 / (1.0 + qv), abs=1e-13)

    def test_identity_with_base_change(self):
        rng = random.Random(55)
        for _ in range(20):
            qv = rng.choice((0.3, 0.5, 0.7, 0.9))
            s = complex(rng.uniform(-2.5, 3.5), rng.uniform(-3, 3))
            if abs(s - round(s.real)) < 0.2 or abs(s - 1) < 0.2:
                continue
            qp = QParam(qv)
            lhs = tilde_zeta_q(s, qp, TIGHT).value
            rhs = zeta_q(s, qp, TIGHT).value \
                - 2.0 * (1 + qv) ** -s * zeta_q(s, QParam(qv * qv), TIGHT).value
            assert abs(lhs - rhs) < 1e-11

    def test_limit_is_eta_two(self):
        # tilde zeta_q(2) -> (1 - 2^(1-2)) zeta(2) = pi^2/12
        samples = [(h, tilde_zeta_q(2.0, QParam(1 - h), TIGHT).value)
                   for h in (0.1, 0.05, 0.025, 0.0125, 0.00625)]
        ext = richardson_extrapolate(samples, 4)
        assert abs(ext.limit.real - PI2_12) < 1e-6

    def test_half_lattice_pole(self):
        s = 1.0 + 0.5 * lattice_delta(Q5)
        with pytest.raises(PoleProximityError):
            tilde_zeta_q(s, Q5)


class TestJackson:
    def test_geometric_at_zero(self):
        assert jackson_integral_form(0.0, 1.0, Q5, TIGHT).real \
            == pytest.approx(1.0, abs=1e-13)

    def test_relation_to_f_q(self):
        for (s, t, qv) in ((2.0, 1.0, 0.5), (1.0, 2.0, 0.3),
                           (complex(1.5, 1.0), complex(0.8, -0.4), 0.7)):
            qp = QParam(qv)
            lhs = jackson_integral_form(s, t, qp, TIGHT)
            rhs = cmath.exp(-complex(t) * qp.log_q) \
                * (1 - qv) ** (1 - complex(s)) * f_q_direct(s, t, qp, TIGHT).value
            assert abs(lhs - rhs) < 1e-11 * max(1.0, abs(lhs))

    def test_oracle_value(self):
        got = jackson_integral_form(1.0, 2.0, QParam(0.3), TIGHT)
        expected = 0.3 ** -2 * (1 - 0.3) ** 0 * FQ_1_2_03
        assert got.real == pytest.approx(expected, rel=1e-12)


class TestHurwitz:
    def test_reduces_to_riemann_bitwise(self):
        rng = random.Random(77)
        for _ in range(20):
            qv = rng.choice((0.3, 0.6, 0.9))
            s = complex(rng.uniform(-2.5, 3.5), rng.uniform(-3, 3))
            if abs(s - round(s.real)) < 0.2 or abs(s - 1) < 0.2:
                continue
            qp = QParam(qv)
            h = hurwitz_zeta_q(s, 1.0, qp, TIGHT).value
            z = zeta_q(s, qp, TIGHT).value
            assert abs(h - z) <= 1e-13 * max(1.0, abs(z))

    def test_offset_two_drops_first_summand(self):
        # offset a=2 reindexes to n >= 2, removing the n=1 term q^(s-1)
        s = 2.0
        h = hurwitz_zeta_q(s, 2.0, Q5, TIGHT).value
        z = zeta_q(s, Q5, TIGHT).value
        assert h.real == pytest.approx(z.real - 0.5 ** (s - 1), abs=1e-12)

    def test_nonpositive_limit_formula(self):
        # q->1 limits reproduce -B_{m+1}(1/2)/(m+1): 0, 1/24, 0
        targets = {0: 0.0, 1: 1.0 / 24.0, 2: 0.0}
        for m, target in targets.items():
            samples = [(h, complex(hurwitz_zeta_q_nonpositive(m, 0.5, QParam(1 - h))))
                       for h in (0.1, 0.05, 0.025, 0.0125, 0.00625)]
            ext = richardson_extrapolate(samples, 4)
            assert abs(ext.limit.real - target) < 1e-5

    def test_nonpositive_reroute_matches_series(self):
        qp = QParam(0.8)
        closed = hurwitz_zeta_q(-1.0, 0.5, qp).value
        near = hurwitz_zeta_q(-1.0 + 1e-5, 0.5, qp, TIGHT).value
        assert abs(closed - near) < 1e-3

    def test_rejects_nonpositive_offset(self):
        with pytest.raises(ValueError):
            hurwitz_zeta_q(2.0, 0.0, Q5)


class TestEvalPolicy:
    def test_validation(self):
        with pytest.raises(ValueError):
            EvalPolicy(tol=1e-16)
        with pytest.raises(ValueError):
            EvalPolicy(pole_guard=1e-13)
        with pytest.raises(ValueError):
            EvalPolicy(accumulator="quad")
        with pytest.raises(ValueError):
            EvalPolicy(max_terms=0)

    def test_nonconvergence_error(self):
        with pytest.raises(NonConvergenceError):
            f_q_continued(2.0, 1.0, QParam(0.9999),
                          EvalPolicy(tol=1e-15, max_terms=50))
