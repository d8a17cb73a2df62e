"""Shared numeric primitives: q-integers, complex Pochhammer symbols and
generalized binomial coefficients, compensated summation, and Richardson
extrapolation toward q -> 1.

All scalars are binary64 (Python ``complex``/``float``).  Values are
immutable; every operation is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .ddarith import neumaier_sum


@dataclass(frozen=True)
class QParam:
    """Validated deformation base q in (0, 1) with cached natural log."""

    q: float
    log_q: float = field(init=False)

    def __post_init__(self):
        q = float(self.q)
        if not (0.0 < q < 1.0) or not math.isfinite(q):
            raise ValueError(f"q must lie in (0, 1), got {self.q!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "log_q", math.log(q))


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of a truncated series evaluation.

    ``converged`` implies ``err_estimate <= `` the tolerance that was
    requested for the evaluation.
    """

    value: complex
    err_estimate: float
    terms_used: int
    converged: bool


@dataclass(frozen=True)
class ExtrapolationResult:
    """Polynomial limit estimate at h = 0.

    ``samples`` are stored strictly decreasing in h; ``residual`` is the
    disagreement between the two highest-order extrapolants and serves as
    an a-posteriori error indicator.
    """

    limit: complex
    samples: tuple[tuple[float, complex], ...]
    order: int
    residual: float


def q_integer(n, q: QParam) -> complex:
    """[n]_q = (1 - q^n)/(1 - q); n may be real or complex."""
    n = complex(n)
    return one_minus_qpow(n, q.log_q) / (1.0 - q.q)


def pochhammer(s, k: int) -> complex:
    """Rising factorial s(s+1)...(s+k-1); empty product is 1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    p = complex(1.0)
    s = complex(s)
    for i in range(k):
        p *= s + i
    return p


def binom_series_coeff(s, r: int) -> complex:
    """Generalized binomial coefficient C(s+r-1, r) = (s)_r / r!.

    Built as an incremental product of (s+i)/(i+1) factors so that large r
    never overflows through an intermediate factorial.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    c = complex(1.0)
    s = complex(s)
    for i in range(r):
        c *= (s + i) / (i + 1)
    return c


def compensated_sum(terms) -> complex:
    """Sum of a finite complex sequence with error-carrying accumulation.

    Real and imaginary parts carry independent Neumaier compensation; the
    result does not depend on FMA availability.  Overflow to infinity
    raises ``OverflowError``.
    """
    terms = [complex(t) for t in terms]
    for t in terms:
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise ValueError("compensated_sum requires finite terms")
    return complex(neumaier_sum(t.real for t in terms),
                   neumaier_sum(t.imag for t in terms))


def richardson_extrapolate(samples, order: int) -> ExtrapolationResult:
    """Neville polynomial extrapolation of (h, value) samples to h = 0.

    Requires at least ``order + 1`` samples with distinct positive h.  The
    limit is the deepest entry of the order-th Neville column (built from
    the smallest h values); the residual compares it with the neighbouring
    extrapolant of the same order.
    """
    pts = sorted(((float(h), complex(v)) for h, v in samples),
                 key=lambda p: -p[0])
    if order < 1:
        raise ValueError("order must be >= 1")
    if len(pts) < order + 1:
        raise ValueError(f"need at least {order + 1} samples for order {order}")
    hs = [p[0] for p in pts]
    if any(h <= 0 for h in hs):
        raise ValueError("h values must be positive")
    if len(set(hs)) != len(hs):
        raise ValueError("h values must be distinct")

    cols = [[p[1] for p in pts]]
    for j in range(1, order + 1):
        prev = cols[j - 1]
        cur = []
        for i in range(j, len(pts)):
            num = prev[i - j + 1] * hs[i - j] - prev[i - j] * hs[i]
            cur.append(num / (hs[i - j] - hs[i]))
        cols.append(cur)
    limit = cols[order][-1]
    if len(cols[order]) > 1:
        residual = abs(limit - cols[order][-2])
    else:
        residual = abs(limit - cols[order - 1][-1])
    return ExtrapolationResult(limit=limit, samples=tuple(pts),
                               order=order, residual=residual)


def geometric_h_grid(h0: float = 0.1, count: int = 6) -> list[float]:
    """Default extrapolation grid h_i = h0 * 2^-i."""
    return [h0 * 2.0 ** -i for i in range(count)]


def one_minus_qpow(z, log_q: float) -> complex:
    """Stable 1 - q^z = 1 - exp(z log q) for complex z, real log q < 0.

    Written through expm1 so the real part survives the near-cancellation
    when z log q is small (evaluation points approaching the pole lattice).
    """
    w = complex(z) * log_q
    ea = math.exp(w.real)
    re = -math.expm1(w.real) + ea * 2.0 * math.sin(w.imag / 2.0) ** 2
    im = -ea * math.sin(w.imag)
    return complex(re, im)
