"""Vectorized double-double (DD) arithmetic.

A DD number is an unevaluated pair ``(hi, lo)`` of binary64 values with
``hi + lo`` exact and ``|lo| <= 0.5 ulp(hi)``, giving roughly 32 significant
decimal digits.  Everything here is branch-free and works elementwise on
plain Python floats or numpy arrays of matching shape, so the same code
serves both scalar formulas and the block-vectorized series engine.

Products use the Dekker split rather than FMA so results do not depend on
platform FMA availability.

Complex DD values are 4-tuples ``(re_hi, re_lo, im_hi, im_lo)``.
"""

from __future__ import annotations

import math

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    """Error-free sum: s + e == a + b exactly (Knuth, no magnitude assumption)."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def quick_two_sum(a, b):
    """Error-free sum assuming |a| >= |b| (or a == 0)."""
    s = a + b
    e = b - (s - a)
    return s, e


def split(a):
    """Dekker split into high/low 26-bit halves with hi + lo == a."""
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    """Error-free product: p + e == a * b exactly, without FMA."""
    p = a * b
    ahi, alo = split(a)
    bhi, blo = split(b)
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


# ---------------------------------------------------------------------------
# real DD
# ---------------------------------------------------------------------------

def dd_add(ahi, alo, bhi, blo):
    s, e = two_sum(ahi, bhi)
    t, f = two_sum(alo, blo)
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def dd_neg(ahi, alo):
    return -ahi, -alo


def dd_mul(ahi, alo, bhi, blo):
    p, e = two_prod(ahi, bhi)
    e = e + (ahi * blo + alo * bhi)
    return quick_two_sum(p, e)


def dd_mul_d(ahi, alo, b):
    """DD times plain double."""
    p, e = two_prod(ahi, b)
    e = e + alo * b
    return quick_two_sum(p, e)


def dd_div(ahi, alo, bhi, blo):
    """Long division with two refinement steps; full DD accuracy."""
    q1 = ahi / bhi
    phi, plo = dd_mul_d(bhi, blo, q1)
    rhi, rlo = dd_add(ahi, alo, -phi, -plo)
    q2 = rhi / bhi
    phi, plo = dd_mul_d(bhi, blo, q2)
    rhi, rlo = dd_add(rhi, rlo, -phi, -plo)
    q3 = rhi / bhi
    s, e = quick_two_sum(q1, q2)
    return quick_two_sum(s, e + q3)


def dd_to_float(hi, lo):
    return hi + lo


# ---------------------------------------------------------------------------
# complex DD  (re_hi, re_lo, im_hi, im_lo)
# ---------------------------------------------------------------------------

def cdd_add(a, b):
    rh, rl = dd_add(a[0], a[1], b[0], b[1])
    ih, il = dd_add(a[2], a[3], b[2], b[3])
    return rh, rl, ih, il


def cdd_neg(a):
    return -a[0], -a[1], -a[2], -a[3]


def cdd_mul(a, b):
    p1 = dd_mul(a[0], a[1], b[0], b[1])
    p2 = dd_mul(a[2], a[3], b[2], b[3])
    p3 = dd_mul(a[0], a[1], b[2], b[3])
    p4 = dd_mul(a[2], a[3], b[0], b[1])
    rh, rl = dd_add(p1[0], p1[1], -p2[0], -p2[1])
    ih, il = dd_add(p3[0], p3[1], p4[0], p4[1])
    return rh, rl, ih, il


def cdd_mul_rdd(a, bhi, blo):
    """Complex DD times real DD."""
    rh, rl = dd_mul(a[0], a[1], bhi, blo)
    ih, il = dd_mul(a[2], a[3], bhi, blo)
    return rh, rl, ih, il


def cdd_div(a, b):
    """a / b via conjugate; components then divided by |b|^2 in DD."""
    n1 = dd_mul(b[0], b[1], b[0], b[1])
    n2 = dd_mul(b[2], b[3], b[2], b[3])
    dh, dl = dd_add(n1[0], n1[1], n2[0], n2[1])
    num = cdd_mul(a, (b[0], b[1], -b[2], -b[3]))
    rh, rl = dd_div(num[0], num[1], dh, dl)
    ih, il = dd_div(num[2], num[3], dh, dl)
    return rh, rl, ih, il


def cdd_to_complex(a):
    return complex(a[0] + a[1], a[2] + a[3])


# ---------------------------------------------------------------------------
# array scans and reductions
# ---------------------------------------------------------------------------

def prefix_prod_dd(hi, lo):
    """In-place inclusive prefix product of a real DD array (doubling scan)."""
    n = hi.shape[0]
    shift = 1
    while shift < n:
        oh, ol = dd_mul(hi[shift:], lo[shift:], hi[:-shift], lo[:-shift])
        hi[shift:] = oh
        lo[shift:] = ol
        shift <<= 1
    return hi, lo


def prefix_prod_cdd(rh, rl, ih, il):
    """In-place inclusive prefix product of a complex DD array."""
    n = rh.shape[0]
    shift = 1
    while shift < n:
        out = cdd_mul((rh[shift:], rl[shift:], ih[shift:], il[shift:]),
                      (rh[:-shift], rl[:-shift], ih[:-shift], il[:-shift]))
        rh[shift:], rl[shift:], ih[shift:], il[shift:] = out
        shift <<= 1
    return rh, rl, ih, il


def _padded(hi, lo):
    n = hi.shape[0]
    m = 1 << max(0, (n - 1).bit_length())
    if m == n:
        return hi.copy(), lo.copy(), m
    ph = np.zeros(m)
    pl = np.zeros(m)
    ph[:n] = hi
    pl[:n] = lo
    return ph, pl, m


def pairwise_sum_dd(hi, lo):
    """Pairwise (tree) reduction of a real DD array; returns a scalar DD."""
    ph, pl, m = _padded(hi, lo)
    while m > 1:
        h = m // 2
        sh, sl = dd_add(ph[:h], pl[:h], ph[h:m], pl[h:m])
        ph[:h] = sh
        pl[:h] = sl
        m = h
    return float(ph[0]), float(pl[0])


def pairwise_sum_cdd(a):
    rh, rl = pairwise_sum_dd(a[0], a[1])
    ih, il = pairwise_sum_dd(a[2], a[3])
    return rh, rl, ih, il


def dd_pow_int(hi, lo, n: int):
    """Integer power of a real DD scalar by binary exponentiation."""
    if n < 0:
        rh, rl = dd_pow_int(hi, lo, -n)
        return dd_div(1.0, 0.0, rh, rl)
    rh, rl = 1.0, 0.0
    bh, bl = hi, lo
    while n:
        if n & 1:
            rh, rl = dd_mul(rh, rl, bh, bl)
        bh, bl = dd_mul(bh, bl, bh, bl)
        n >>= 1
    return rh, rl


def dd_from_mp(x) -> tuple[float, float]:
    """Split an mpmath real into a DD pair (exact residual split)."""
    hi = float(x)
    lo = float(x - hi)
    return hi, lo


def cdd_from_mp(z) -> tuple[float, float, float, float]:
    """Split an mpmath complex into a complex DD 4-tuple."""
    import mpmath as mp

    re, im = mp.re(z), mp.im(z)
    return (*dd_from_mp(re), *dd_from_mp(im))


def neumaier_sum(values) -> float:
    """Compensated sum of an iterable of floats (Neumaier's variant)."""
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    result = total + comp
    if not math.isfinite(result):
        raise OverflowError("compensated sum overflowed the binary64 range")
    return result
