"""q-Bernoulli numbers B_m(q) = -m zeta_q(1-m), via the closed formula

    B_m(q) = (q-1)^(-m+1) sum_{r=0}^m (-1)^r C(m,r) r/(q^r - 1)   (m >= 1),

with the r = 0 term read as 1/log q (its limiting value) and
B_0(q) = (q-1)/log q.  As with the zeta values at non-positive integers,
the binomial sum cancels to O((q-1)^(m-1)) near q = 1, so the rational
part is exact and only the log term carries floating error.

Also provides the truncated generating function F_q(t) = sum B_m(q) t^m/m!
and numerical residuals for the recursion

    sum_{m=0}^n (-1)^m C(n,m) q^m B_m(q) = (-1)^n B_n(q) + delta_{1n}

and the functional equation F_q(qt) = e^t F_q(t) - t e^t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import ddarith as dd
from .kernel import QParam
from .qzeta import _cancellation_dps, _log_q_dd, _log_q_fraction


@dataclass(frozen=True)
class TruncatedPowerSeries:
    """Coefficients c_m of t^m/m!, m = 0..order."""

    coeffs: tuple[float, ...]
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must equal order + 1")


def q_bernoulli(m: int, q: QParam) -> float:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        lh, ll = _log_q_dd(q)
        rh, rl = dd.dd_div(q.q - 1.0, 0.0, lh, ll)
        return rh + rl
    qf = Fraction(q.q)
    acc = Fraction(0)
    for r in range(1, m + 1):
        acc += (-1) ** r * Fraction(math.comb(m, r)) * r / (qf ** r - 1)
    logq = _log_q_fraction(q, _cancellation_dps(m, q))
    total = acc + 1 / logq                    # r = 0 term read as 1/log q
    return float(total * (qf - 1) ** (-m + 1))


def recursion_residual(n: int, q: QParam) -> float:
    """Deviation of the stated recursion from zero at index n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 30:
        raise ValueError("recursion_residual supports n <= 30")
    bq = [q_bernoulli(m, q) for m in range(n + 1)]
    terms = [(-1) ** m * math.comb(n, m) * q.q ** m * bq[m] for m in range(n + 1)]
    lhs = math.fsum(terms)
    rhs = (-1) ** n * bq[n] + (1.0 if n == 1 else 0.0)
    return abs(lhs - rhs)


def generating_series(q: QParam, order: int) -> TruncatedPowerSeries:
    if not 0 <= order <= 30:
        raise ValueError("order must be in 0..30")
    return TruncatedPowerSeries(
        coeffs=tuple(q_bernoulli(m, q) for m in range(order + 1)),
        order=order)


def functional_equation_residual(q: QParam, order: int) -> list[float]:
    """Per-degree residuals of F_q(qt) - e^t F_q(t) + t e^t.

    In the t^m/m! basis: F_q(qt) has coefficient q^m B_m(q); the product
    e^t F_q(t) has coefficient sum_j C(m,j) B_j(q) (binomial convolution
    with exact integer weights); t e^t has coefficient m.
    """
    if not 0 <= order <= 30:
        raise ValueError("order must be in 0..30")
    bq = [q_bernoulli(m, q) for m in range(order + 1)]
    out = []
    for m in range(order + 1):
        conv = math.fsum(math.comb(m, j) * bq[j] for j in range(m + 1))
        out.append(abs(q.q ** m * bq[m] - conv + m))
    return out
