"""Reference-quality classical zeta(s) and Hurwitz zeta(s; a) through the
Euler-Maclaurin summation formula, plus the generic finite summation
identity itself.

The continuation formula implemented by ``zeta_em`` is

    zeta(s) = 1/(s-1) + 1/2 + sum_{k=1}^M B_{k+1}/(k+1)! (s)_k
              - (s)_{M+1}/(M+1)! Integral_1^inf Btilde_{M+1}(x) x^(-s-M-1) dx,

analytic for Re(s) > -M.  The remainder integral is evaluated by composite
Gauss-Legendre quadrature on unit intervals (the periodic Bernoulli weight
is smooth inside each one), with intervals near x = 1 subdivided when
|Im s| makes the power factor oscillate, and the far tail x > X0 resummed
by repeated integration by parts: each pass trades one power of decay for
a Bernoulli-number boundary term, which is exactly the Euler-Maclaurin
recursion applied to its own remainder.  The resulting boundary series is
asymptotic and is truncated at its smallest term (or below cutoff_tol).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bernoulli import (DEFAULT_CAPACITY, bernoulli_number,
                        bernoulli_number_minus, periodic_bernoulli_array)


@dataclass(frozen=True)
class EMConfig:
    """Euler-Maclaurin evaluation parameters.

    M is the number of Bernoulli correction terms; quad_points the Gauss
    nodes per unit interval; cutoff_tol the tail-resummation target.
    """

    M: int = 10
    quad_points: int = 16
    cutoff_tol: float = 1e-16

    def __post_init__(self):
        if not 1 <= self.M <= DEFAULT_CAPACITY - 1:
            raise ValueError(f"M must be in 1..{DEFAULT_CAPACITY - 1}")
        if self.quad_points < 2:
            raise ValueError("quad_points must be >= 2")
        if self.cutoff_tol <= 0:
            raise ValueError("cutoff_tol must be positive")


DEFAULT_EM = EMConfig()


@lru_cache(maxsize=32)
def _gauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0     # mapped to [0, 1]


def _remainder_integral(power_base, s: complex, M: int, X0: int,
                        quad_points: int, cutoff_tol: float) -> complex:
    """Integral_1^inf Btilde_{M+1}(x) (x + power_base)^(-s-M-1) dx.

    power_base = 0 gives the Riemann case; power_base = a - 1 the Hurwitz
    one.  Quadrature to X0, integration-by-parts resummation beyond.
    """
    u01, w01 = _gauss(quad_points)
    expo = -s - (M + 1)
    im = abs(s.imag)
    total = 0.0 + 0.0j
    for j in range(1, X0):
        nsub = max(1, math.ceil(im / (4.0 * (j + power_base))))
        for k in range(nsub):
            frac = (k + u01) / nsub
            xs = j + frac + power_base
            bv = periodic_bernoulli_array(M + 1, frac)
            total += np.dot(w01, bv * np.exp(expo * np.log(xs))) / nsub

    # tail: -sum_i b_{M+1+i} prod_{l<i}(s+M+l) / prod_{l<=i}(M+1+l) X^(-s-M-i)
    X = X0 + power_base
    lX = math.log(X)
    tail = 0.0 + 0.0j
    pref = 1.0 + 0.0j
    denom = 1.0
    prev = math.inf
    for i in range(1, DEFAULT_CAPACITY - M - 1):
        denom *= M + 1 + i
        b = float(bernoulli_number_minus(M + 1 + i))
        term = -b * pref / denom * cmath.exp((-s - M - i) * lX)
        mag = abs(term)
        if mag != 0.0:
            if mag > prev:          # asymptotic series started diverging
                break
            tail += term
            prev = mag
            if mag < cutoff_tol:
                break
        pref *= s + M + i
    return total + tail


def _bern_sum(s: complex, M: int):
    """1/2-line correction sum and the Pochhammer (s)_{M+1}."""
    acc = 0.0 + 0.0j
    poch = s
    for k in range(1, M + 1):
        acc += float(bernoulli_number(k + 1)) / math.factorial(k + 1) * poch
        poch *= s + k
    return acc, poch


def zeta_em(s, config: EMConfig = DEFAULT_EM) -> complex:
    """Analytic continuation of zeta(s) for Re(s) > -M, s away from 1."""
    s = complex(s)
    if abs(s - 1.0) <= 1e-10:
        raise ValueError("zeta_em refuses s within 1e-10 of the pole at 1")
    if s.real <= -config.M:
        raise ValueError(f"zeta_em requires Re(s) > -M = {-config.M}")
    corr, poch = _bern_sum(s, config.M)
    X0 = max(20, 2 * config.M, int(0.75 * abs(s.imag)) + 10)
    R = _remainder_integral(0.0, s, config.M, X0,
                            config.quad_points, config.cutoff_tol)
    return 1.0 / (s - 1.0) + 0.5 + corr \
        - poch / math.factorial(config.M + 1) * R


def hurwitz_em(s, a: float, config: EMConfig = DEFAULT_EM) -> complex:
    """Hurwitz zeta(s; a) = sum_{n>=0} (n+a)^(-s) by the same machinery
    applied to f(x) = (x + a - 1)^(-s), so that the n-th summand is
    (n + a - 1)^(-s) for n >= 1.

    Offsets below 1 are laddered up through zeta(s; a) = a^(-s) +
    zeta(s; a+1) first: otherwise the power factor is near-singular on
    the first quadrature interval."""
    s = complex(s)
    a = float(a)
    if a <= 0.0:
        raise ValueError("offset a must be positive")
    if abs(s - 1.0) <= 1e-10:
        raise ValueError("hurwitz_em refuses s within 1e-10 of the pole at 1")
    if s.real <= -config.M:
        raise ValueError(f"hurwitz_em requires Re(s) > -M = {-config.M}")
    ladder = 0.0 + 0.0j
    while a < 1.0:
        ladder += cmath.exp(-s * math.log(a))
        a += 1.0
    la = math.log(a)
    acc = cmath.exp((1.0 - s) * la) / (s - 1.0) + cmath.exp(-s * la) / 2.0
    poch = s
    for k in range(1, config.M + 1):
        acc += float(bernoulli_number(k + 1)) / math.factorial(k + 1) \
            * poch * cmath.exp((-s - k) * la)
        poch *= s + k
    X0 = max(20, 2 * config.M, int(0.75 * abs(s.imag)) + 10)
    R = _remainder_integral(a - 1.0, s, config.M, X0,
                            config.quad_points, config.cutoff_tol)
    return ladder + acc - poch / math.factorial(config.M + 1) * R


def euler_maclaurin_sum(f_derivs, N: int, config: EMConfig = DEFAULT_EM) -> complex:
    """Finite Euler-Maclaurin identity: reconstructs sum_{n=1}^N f(n) from

        Integral_1^N f + (f(1)+f(N))/2
        + sum_{k=1}^M B_{k+1}/(k+1)! (f^(k)(N) - f^(k)(1))
        - (-1)^(M+1)/(M+1)! Integral_1^N Btilde_{M+1}(x) f^(M+1)(x) dx.

    ``f_derivs[k]`` must evaluate the k-th derivative (vectorized over
    numpy arrays) for k = 0 .. M+1.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    M = config.M
    if len(f_derivs) < M + 2:
        raise ValueError(f"need derivative handles up to order M+1 = {M + 1}")
    f = f_derivs[0]
    u01, w01 = _gauss(config.quad_points)
    integral = 0.0 + 0.0j
    remainder = 0.0 + 0.0j
    fM1 = f_derivs[M + 1]
    for j in range(1, N):
        xs = j + u01
        integral += np.dot(w01, np.asarray(f(xs), dtype=complex))
        bv = periodic_bernoulli_array(M + 1, u01)
        remainder += np.dot(w01, bv * np.asarray(fM1(xs), dtype=complex))
    total = integral + (complex(f(1.0)) + complex(f(N * 1.0))) / 2.0
    for k in range(1, M + 1):
        total += float(bernoulli_number(k + 1)) / math.factorial(k + 1) \
            * (complex(f_derivs[k](N * 1.0)) - complex(f_derivs[k](1.0)))
    total -= (-1.0) ** (M + 1) / math.factorial(M + 1) * remainder
    return total
