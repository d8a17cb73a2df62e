"""Exact Bernoulli numbers, Bernoulli polynomials, their periodic extension,
and Fourier partial sums.

Two sign conventions coexist in the literature and both are needed here.
The *number* convention used throughout this package is the one generated
by t e^t/(e^t - 1), for which B_1 = +1/2.  The *polynomial* expansion
B_k(x) = sum_j C(k,j) b_j x^(k-j) uses the t/(e^t - 1) numbers b_j
(b_1 = -1/2), which is what makes B_1(x) = x - 1/2 and B_k(1) equal the
package-convention B_k.  Only index 1 differs between the two families.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

DEFAULT_CAPACITY = 64


class BernoulliTable:
    """One-time table of exact Bernoulli numbers up to a fixed index."""

    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        if capacity < 2:
            raise ValueError("capacity must be >= 2")
        self.capacity = capacity
        # b_k of t/(e^t - 1) via the binomial recurrence
        # sum_{j=0}^{m} C(m+1, j) b_j = 0  (m >= 1), b_0 = 1.
        b = [Fraction(1)]
        for m in range(1, capacity + 1):
            acc = Fraction(0)
            for j in range(m):
                acc += math.comb(m + 1, j) * b[j]
            b.append(-acc / (m + 1))
        self.minus = tuple(b)                       # b_1 = -1/2
        plus = list(b)
        plus[1] = -plus[1]                          # B_1 = +1/2
        self.values = tuple(plus)

    def number(self, k: int) -> Fraction:
        if not 0 <= k <= self.capacity:
            raise ValueError(f"Bernoulli index {k} beyond table capacity {self.capacity}")
        return self.values[k]

    def number_minus(self, k: int) -> Fraction:
        if not 0 <= k <= self.capacity:
            raise ValueError(f"Bernoulli index {k} beyond table capacity {self.capacity}")
        return self.minus[k]


_TABLE = BernoulliTable()


def bernoulli_number(k: int) -> Fraction:
    """B_k in the t e^t/(e^t-1) convention (B_1 = +1/2), exact."""
    return _TABLE.number(k)


def bernoulli_number_minus(k: int) -> Fraction:
    """b_k in the t/(e^t-1) convention (b_1 = -1/2), exact."""
    return _TABLE.number_minus(k)


@lru_cache(maxsize=None)
def bernoulli_poly_coeffs(k: int) -> tuple[Fraction, ...]:
    """Exact coefficients of B_k(x), highest degree first."""
    return tuple(math.comb(k, j) * _TABLE.number_minus(j) for j in range(k + 1))


@lru_cache(maxsize=None)
def _poly_coeffs_float(k: int) -> tuple[float, ...]:
    return tuple(float(c) for c in bernoulli_poly_coeffs(k))


def bernoulli_poly(k: int, x) -> complex:
    """Bernoulli polynomial B_k(x) for complex x (Horner on exact coefficients)."""
    acc = complex(0.0)
    x = complex(x)
    for c in _poly_coeffs_float(k):
        acc = acc * x + c
    return acc


def periodic_bernoulli(k: int, x: float) -> float:
    """B_k(x - floor(x)), continuous for k >= 2."""
    if k < 2:
        raise ValueError("periodic_bernoulli requires k >= 2")
    frac = x - math.floor(x)
    acc = 0.0
    for c in _poly_coeffs_float(k):
        acc = acc * frac + c
    return acc


def periodic_bernoulli_array(k: int, frac: np.ndarray) -> np.ndarray:
    """Vectorized B_k on fractional parts already reduced to [0, 1)."""
    acc = np.zeros_like(frac)
    for c in _poly_coeffs_float(k):
        acc = acc * frac + c
    return acc


def fourier_partial_sum(k: int, x: float, n_max: int) -> float:
    """Partial Fourier sum of the periodic Bernoulli polynomial.

    -k! * sum_{0 < |n| <= N} e^(2 pi i n x) / (2 pi i n)^k, with the +-n
    pair combined into 2 cos(2 pi n x - pi k / 2) / (2 pi n)^k so the
    arithmetic stays real.
    """
    if k < 2:
        raise ValueError("fourier_partial_sum requires k >= 2")
    n = np.arange(1, n_max + 1, dtype=np.float64)
    terms = 2.0 * np.cos(2.0 * math.pi * n * x - math.pi * k / 2.0) \
        / (2.0 * math.pi * n) ** k
    return -math.factorial(k) * float(np.sum(terms))
