"""Double-double primitives checked against exact rational arithmetic."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from qzeta import ddarith as dd

RNG = random.Random(42)


def rand_float():
    return RNG.uniform(-1.0, 1.0) * 10.0 ** RNG.randint(-8, 8)


def as_frac(hi, lo):
    return Fraction(hi) + Fraction(lo)


class TestErrorFreeTransforms:
    def test_two_sum_exact(self):
        for _ in range(500):
            a, b = rand_float(), rand_float()
            s, e = dd.two_sum(a, b)
            assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)

    def test_two_prod_exact(self):
        for _ in range(500):
            a, b = rand_float(), rand_float()
            p, e = dd.two_prod(a, b)
            assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)

    def test_vectorized_matches_scalar(self):
        a = np.array([rand_float() for _ in range(64)])
        b = np.array([rand_float() for _ in range(64)])
        sv, ev = dd.two_sum(a, b)
        pv, qv = dd.two_prod(a, b)
        for i in range(64):
            ss, ee = dd.two_sum(float(a[i]), float(b[i]))
            pp, qq = dd.two_prod(float(a[i]), float(b[i]))
            assert (sv[i], ev[i]) == (ss, ee)
            assert (pv[i], qv[i]) == (pp, qq)


class TestDDOps:
    def test_add_mul_div_accuracy(self):
        for _ in range(200):
            a = dd.two_sum(rand_float(), rand_float() * 1e-17)
            b = dd.two_sum(rand_float(), rand_float() * 1e-17)
            fa, fb = as_frac(*a), as_frac(*b)
            s = dd.dd_add(a[0], a[1], b[0], b[1])
            assert abs(as_frac(*s) - (fa + fb)) <= abs(fa + fb) * Fraction(1, 10 ** 30) + Fraction(1, 10 ** 320)
            p = dd.dd_mul(a[0], a[1], b[0], b[1])
            assert abs(as_frac(*p) - fa * fb) <= abs(fa * fb) * Fraction(1, 10 ** 29)
            if fb != 0:
                q = dd.dd_div(a[0], a[1], b[0], b[1])
                assert abs(as_frac(*q) - fa / fb) <= abs(fa / fb) * Fraction(1, 10 ** 29)

    def test_pow_int(self):
        h, l = dd.dd_pow_int(0.9, 0.0, 37)
        exact = Fraction(0.9) ** 37
        assert abs(as_frac(h, l) - exact) <= exact * Fraction(1, 10 ** 28)
        h, l = dd.dd_pow_int(0.9, 0.0, -5)
        exact = Fraction(0.9) ** -5
        assert abs(as_frac(h, l) - exact) <= exact * Fraction(1, 10 ** 28)


class TestScansAndReductions:
    def test_prefix_prod_matches_exact(self):
        n = 37
        vals = [Fraction(RNG.uniform(0.5, 1.5)) for _ in range(n)]
        hi = np.array([float(v) for v in vals])
        lo = np.zeros(n)
        dd.prefix_prod_dd(hi, lo)
        acc = Fraction(1)
        for i, v in enumerate(vals):
            acc *= v
            got = as_frac(float(hi[i]), float(lo[i]))
            assert abs(got - acc) <= abs(acc) * Fraction(1, 10 ** 26)

    def test_prefix_prod_complex(self):
        n = 21
        re = [RNG.uniform(-1.2, 1.2) for _ in range(n)]
        im = [RNG.uniform(-1.2, 1.2) for _ in range(n)]
        rh = np.array(re)
        rl = np.zeros(n)
        ih = np.array(im)
        il = np.zeros(n)
        dd.prefix_prod_cdd(rh, rl, ih, il)
        acc = complex(1.0)
        for i in range(n):
            acc *= complex(re[i], im[i])
            got = complex(rh[i] + rl[i], ih[i] + il[i])
            assert got == pytest.approx(acc, rel=1e-13)

    def test_pairwise_sum_exact(self):
        vals = [rand_float() for _ in range(100)]
        hi, lo = dd.pairwise_sum_dd(np.array(vals), np.zeros(100))
        exact = sum(Fraction(v) for v in vals)
        assert abs(as_frac(hi, lo) - exact) <= abs(exact) * Fraction(1, 10 ** 25) + Fraction(1, 10 ** 300)

    def test_pairwise_sum_odd_length(self):
        vals = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        hi, lo = dd.pairwise_sum_dd(vals, np.zeros(5))
        assert hi + lo == 15.0


class TestNeumaier:
    def test_catastrophic_case(self):
        assert dd.neumaier_sum([1e16, 1.0, -1e16]) == 1.0

    def test_overflow_raises(self):
        with pytest.raises(OverflowError):
            dd.neumaier_sum([1e308, 1e308])


class TestMpSplit:
    def test_round_trip(self):
        import mpmath as mp

        with mp.workdps(40):
            x = mp.log(mp.mpf('0.7'))
            hi, lo = dd.dd_from_mp(x)
            assert abs(Fraction(hi) + Fraction(lo)
                       - Fraction(str(mp.nstr(x, 35)))) < Fraction(1, 10 ** 31)
