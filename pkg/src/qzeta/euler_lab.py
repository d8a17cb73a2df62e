"""Experimental side of the package: Euler's rational-function evaluation of
divergent alternating series, the q -> 1 limit experiments, the Eisenstein
limit, the Lambert-type identity for zeta_q at positive integers, the
incomplete beta function with its integration-by-parts continuation, and
numerical verification of the two Euler-Maclaurin representations of
zeta_q.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bernoulli import periodic_bernoulli_array
from .classical import _gauss
from .kernel import (ExtrapolationResult, QParam, geometric_h_grid,
                     pochhammer, richardson_extrapolate)
from .qzeta import (DEFAULT_POLICY, EvalPolicy, PoleProximityError,
                    lattice_delta, zeta_q, zeta_q_nonpositive)
from .sumengine import DOUBLE_DOUBLE

# ---------------------------------------------------------------------------
# Euler's table: alternating power sums as rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial, ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    def derivative(self) -> "IntPolynomial":
        if len(self.coeffs) == 1:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i)
                             or (0,))

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return tuple(out)


def _poly_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n))


@lru_cache(maxsize=None)
def euler_numerator(m: int) -> IntPolynomial:
    """Numerator N_m(x) of sum_{n>=0} (-1)^n (n+1)^m x^n = N_m(x)/(1+x)^(m+1).

    One application of x d/dx after multiplying by x sends the rational
    form for exponent m to the one for m+1; clearing denominators gives

        N_{m+1} = (1+x) (N_m + x N_m') - (m+1) x N_m.

    The generating identity itself is the normative contract; it is
    verified against this recurrence by exact series expansion in tests.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > 30:
        raise ValueError("euler_numerator supports m <= 30")
    if m == 0:
        return IntPolynomial((1,))
    prev = euler_numerator(m - 1).coeffs
    dprev = IntPolynomial(prev).derivative().coeffs
    inner = _poly_add(prev, _poly_mul((0, 1), dprev))        # N + x N'
    lifted = _poly_mul((1, 1), inner)                        # (1+x)(...)
    drop = _poly_mul((0, m), prev)                           # m x N
    return IntPolynomial(_poly_add(lifted, tuple(-c for c in drop)))


def alternating_power_series_coeffs(m: int, degree: int) -> list[int]:
    """Exact series coefficients of N_m(x)/(1+x)^(m+1) through x^degree.

    Independent check of the closed form: coefficient n must equal
    (-1)^n (n+1)^m.
    """
    num = euler_numerator(m).coeffs
    # expand (1+x)^-(m+1) = sum C(m+n, n) (-x)^n exactly
    inv = [(-1) ** n * math.comb(m + n, n) for n in range(degree + 1)]
    out = []
    for n in range(degree + 1):
        out.append(sum(num[j] * inv[n - j]
                       for j in range(min(len(num), n + 1))))
    return out


def tilde_zeta_neg(m: int) -> Fraction:
    """Euler's value of the alternating series 1^m - 2^m + 3^m - ... at x=1:
    N_m(1) / 2^(m+1), exact."""
    return Fraction(euler_numerator(m)(Fraction(1)), 2 ** (m + 1))


def zeta_neg_via_alt(m: int) -> Fraction:
    """Value of "1^m + 2^m + ..." through the alternating relation:
    tilde value divided by (1 - 2^(m+1)), exact."""
    if m < 0 or m > 30:
        raise ValueError("m must be in 0..30")
    return tilde_zeta_neg(m) / (1 - Fraction(2) ** (1 + m))


# ---------------------------------------------------------------------------
# q -> 1 limit experiments
# ---------------------------------------------------------------------------

def default_q_grid() -> list[QParam]:
    """q = 1 - 2^-k/10 for k = 0..5."""
    return [QParam(1.0 - h) for h in geometric_h_grid()]


def theorem1_limit(m: int, q_grid=None, order: int = 4) -> ExtrapolationResult:
    """Extrapolate zeta_q(-m) over the grid toward q = 1; the limit should
    equal -B_{m+1}/(m+1)."""
    grid = q_grid if q_grid is not None else default_q_grid()
    if len(grid) < order + 1:
        raise ValueError("grid too small for requested order")
    samples = [(1.0 - qp.q, complex(zeta_q_nonpositive(m, qp))) for qp in grid]
    return richardson_extrapolate(samples, order)


def theorem2_limit(s, q_grid=None, order: int = 4,
                   tol: float = 1e-15) -> ExtrapolationResult:
    """Extrapolate zeta_q(s) toward q = 1 (limit should equal zeta_em(s)).

    Grid points are evaluated with the double-double accumulator: for
    Re(s) < 0 the continuation series cancels like (1-q)^(-Re s), and the
    binary64 noise floor destroys a high-order extrapolation table.
    """
    s = complex(s)
    grid = q_grid if q_grid is not None else default_q_grid()
    if len(grid) < order + 1:
        raise ValueError("grid too small for requested order")
    samples = []
    for qp in grid:
        policy = EvalPolicy(tol=tol, max_terms=50_000_000,
                            accumulator=DOUBLE_DOUBLE)
        try:
            samples.append((1.0 - qp.q, zeta_q(s, qp, policy).value))
        except PoleProximityError as exc:
            raise PoleProximityError(exc.pole, exc.distance) from ValueError(
                f"pole collision at grid point q={qp.q}")
    return richardson_extrapolate(samples, order)


def eisenstein_sample(k: int, q: QParam,
                      policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """(1-q)^k sum_{n>=1} n^(k-1) q^n/(1-q^n), the Lambert-type divisor sum
    whose q -> 1 limit is (k-1)! zeta(k)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    block = 8192
    acc = 0.0
    n0 = 1
    while n0 < policy.max_terms:
        n = np.arange(n0, n0 + block, dtype=np.float64)
        qn = np.exp(n * q.log_q)
        acc += float(np.sum(n ** (k - 1) * qn / (1.0 - qn)))
        last = (n0 + block - 1) ** (k - 1) * q.q ** (n0 + block - 1)
        rho = q.q * ((n0 + block) / (n0 + block - 1)) ** (k - 1)
        n0 += block
        if rho < 1.0 and last * rho / (1.0 - rho) < policy.tol * max(1.0, acc):
            break
    return (1.0 - q.q) ** k * acc


def eisenstein_limit(k: int, h_grid=None, order: int = 3) -> ExtrapolationResult:
    """Extrapolated Eisenstein sample over h = 1 - q."""
    hs = h_grid if h_grid is not None else [0.02, 0.01, 0.005, 0.0025]
    samples = [(h, complex(eisenstein_sample(k, QParam(1.0 - h)))) for h in hs]
    return richardson_extrapolate(samples, order)


def lambert_identity_residual(k: int, q: QParam,
                              policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """|zeta_q(k) - (1-q)^k sum_{n>=1} C(n, k-1) q^n/(1-q^n)|.

    The reindexing r+k-1 -> n of the continuation series makes this an
    identity; C(n, k-1) = 0 kills the first k-2 summands.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    zq = zeta_q(float(k), q, policy).value
    block = 8192
    acc = 0.0
    n0 = 1
    kf = math.factorial(k - 1)
    while n0 < policy.max_terms:
        n = np.arange(n0, n0 + block, dtype=np.float64)
        binom = np.ones_like(n)
        for i in range(k - 1):
            binom *= n - i
        binom /= kf
        qn = np.exp(n * q.log_q)
        acc += float(np.sum(binom * qn / (1.0 - qn)))
        last = abs(binom[-1]) * q.q ** (n0 + block - 1)
        rho = q.q * ((n0 + block) / max(1.0, n0 + block - k)) ** (k - 1)
        n0 += block
        if rho < 1.0 and last * rho / (1.0 - rho) < policy.tol * max(1.0, acc):
            break
    return abs(zq - (1.0 - q.q) ** k * acc)


# ---------------------------------------------------------------------------
# incomplete beta function and its continuation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IncompleteBetaQuery:
    """b_t(alpha, beta) = Integral_0^t u^(alpha-1) (1-u)^(beta-1) du."""

    t: float
    alpha: complex
    beta: complex

    def __post_init__(self):
        if not 0.0 < self.t < 1.0:
            raise ValueError("t must lie in (0, 1)")


def _osc_nodes(im_alpha: float) -> int:
    """Gauss nodes per dyadic segment; one octave spans |Im alpha| ln 2 of
    phase, so the node count tracks the oscillation."""
    want = int(16 + 1.0 * abs(im_alpha) * math.log(2.0))
    return min(1 << max(5, (want - 1).bit_length()), 1 << 12)


def incomplete_beta(query: IncompleteBetaQuery, tol: float = 1e-13) -> complex:
    """Adaptive Gauss quadrature over (0, t], splitting dyadically toward 0
    (the u^(alpha-1) factor concentrates mass there); requires
    Re(alpha) > 0 for convergence at the origin."""
    alpha, beta, t = query.alpha, query.beta, query.t
    ra = alpha.real
    if ra <= 0.0:
        raise ValueError("incomplete_beta requires Re(alpha) > 0")
    u01, w01 = _gauss(_osc_nodes(alpha.imag))
    total = 0.0 + 0.0j
    hi = t
    for _ in range(60000):
        lo = hi / 2.0
        u = lo + (hi - lo) * u01
        vals = np.exp((alpha - 1.0) * np.log(u) + (beta - 1.0) * np.log1p(-u))
        total += (hi - lo) * np.dot(w01, vals)
        rem = lo ** ra / ra * max(1.0, (1.0 - lo) ** (beta.real - 1.0))
        if rem < tol * (abs(total) + 1e-300) or lo == 0.0:
            return total
        hi = lo
    raise ArithmeticError("incomplete_beta quadrature did not converge")


def _beta_closed_terms(t: float, alpha: complex, beta: complex, M: int) -> complex:
    """sum_{k=1}^{M-1} (-1)^(k-1) (1-beta)_{k-1}/(alpha)_k t^(alpha+k-1)(1-t)^(beta-k)."""
    lnt = math.log(t)
    ln1mt = math.log1p(-t)
    acc = 0.0 + 0.0j
    num = 1.0 + 0.0j                     # (1-beta)_{k-1}
    den = 1.0 + 0.0j                     # (alpha)_k, built incrementally
    for k in range(1, M):
        den *= alpha + (k - 1)
        if den == 0:
            raise ValueError("zero Pochhammer denominator in recursion")
        acc += (-1.0) ** (k - 1) * num / den \
            * cmath.exp((alpha + k - 1.0) * lnt + (beta - k) * ln1mt)
        num *= (1.0 - beta) + (k - 1)
    return acc


def incomplete_beta_recursion(query: IncompleteBetaQuery, M: int,
                              tol: float = 1e-13) -> complex:
    """Integration-by-parts continuation: M-1 boundary terms plus the
    shifted remainder integral b_t(alpha+M-1, beta-M+1).  Must agree with
    direct quadrature wherever both are defined, and is M-independent."""
    if M < 2:
        raise ValueError("M must be >= 2")
    t, alpha, beta = query.t, query.alpha, query.beta
    for i in range(M - 1):
        if alpha + i == 0:
            raise ValueError("zero Pochhammer denominator in recursion")
    closed = _beta_closed_terms(t, alpha, beta, M)
    coef = (-1.0) ** (M - 1) * pochhammer(1.0 - beta, M - 1) \
        / pochhammer(alpha, M - 1)
    rem = incomplete_beta(
        IncompleteBetaQuery(t=t, alpha=alpha + (M - 1), beta=beta - (M - 1)),
        tol=tol)
    return closed + coef * rem


@lru_cache(maxsize=4096)
def _beta_abs_bound(t: float, ra: float, rb: float) -> float:
    """Integral_0^t u^(ra-1) (1-u)^(rb-1) du for real exponents, ra > 0:
    absolute bound for the same integral with any imaginary parts."""
    u01, w01 = _gauss(64)
    total = 0.0
    hi = t
    for _ in range(2000):
        lo = hi / 2.0
        u = lo + (hi - lo) * u01
        total += (hi - lo) * float(np.dot(w01, u ** (ra - 1.0) * (1.0 - u) ** (rb - 1.0)))
        rem = lo ** ra / ra * max(1.0, (1.0 - lo) ** (rb - 1.0))
        if rem < 1e-14 * (total + 1e-300) or lo == 0.0:
            break
        hi = lo
    return total


def _beta_via_recursion_adaptive(t: float, alpha: complex, beta: complex,
                                 tol_abs: float, m_max: int = 24) -> complex:
    """b_t(alpha, beta) via the integration-by-parts continuation with M
    chosen so the remainder is negligible or cheap.

    The remainder after M-1 steps is bounded by
    |(1-beta)_{M-1}/(alpha)_{M-1}| * b_t(Re alpha + M - 1, Re beta - M + 1);
    |(alpha)_k| grows like |Im alpha|^k, so for lattice arguments with
    large |Im alpha| a modest M drives the bound below tol_abs and the
    oscillatory quadrature is skipped entirely.
    """
    best = None
    for M in range(2, m_max + 1):
        if alpha.real + M - 1 <= 0:
            continue
        coef = abs(pochhammer(1.0 - beta, M - 1) / pochhammer(alpha, M - 1))
        bound = coef * _beta_abs_bound(t, alpha.real + M - 1, beta.real - M + 1)
        if best is None or bound < best[1]:
            best = (M, bound)
        if bound < tol_abs:
            break
    M, bound = best
    if bound < tol_abs:
        return _beta_closed_terms(t, alpha, beta, M)
    return incomplete_beta_recursion(
        IncompleteBetaQuery(t=t, alpha=alpha, beta=beta), M, tol=1e-12)


# ---------------------------------------------------------------------------
# Euler-Maclaurin representations of zeta_q
# ---------------------------------------------------------------------------

def _zqeul_closed(s: complex, q: QParam) -> complex:
    logq = q.log_q
    qs1 = cmath.exp((s - 1.0) * logq)
    return qs1 / (s - 1.0) * (q.q - 1.0) / logq + qs1 / 2.0 \
        + qs1 / 12.0 * logq / (q.q - 1.0) * (s - 1.0 + q.q)


def zeta_q_em_form(s, q: QParam, tol: float = 1e-12) -> complex:
    """zeta_q(s) for Re(s) > 1 through its Euler-Maclaurin representation:
    three closed terms minus the B~_2-weighted remainder integral

        (1-q)^s (log q)^2/2 *
        Integral_1^inf B~_2(x) q^(x(s-1))
            [s(s+1) - 3s(1-q^x) + (1-q^x)^2] / (1-q^x)^(s+2) dx,

    the integrand being the exact second derivative of the summand.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise ValueError("the Euler-Maclaurin q-form requires Re(s) > 1")
    logq = q.log_q
    decay = (s.real - 1.0) * (-logq)
    env = (abs(s) + 1.0) ** 2 / (1.0 - q.q) ** (s.real + 2.0) / 6.0
    X = 1 + max(4, math.ceil(math.log(max(env, 1.0) / (tol * 1e-2)) / decay))
    nsub = max(1, math.ceil(abs(s.imag) * (-logq) / 4.0))
    u01, w01 = _gauss(16)
    integral = 0.0 + 0.0j
    for j in range(1, X):
        for kk in range(nsub):
            frac = (kk + u01) / nsub
            xs = j + frac
            qx = np.exp(xs * logq)
            omq = -np.expm1(xs * logq)
            bv = periodic_bernoulli_array(2, frac)
            poly = s * (s + 1.0) - 3.0 * s * omq + omq ** 2
            vals = bv * np.exp(xs * (s - 1.0) * logq) * poly \
                / np.exp((s + 2.0) * np.log(omq))
            integral += np.dot(w01, vals) / nsub
    pref = cmath.exp(s * math.log(1.0 - q.q))
    return _zqeul_closed(s, q) - pref * logq ** 2 / 2.0 * integral


def verify_zqeul(s, q: QParam, tol: float = 1e-12) -> float:
    """Residual between the continuation value of zeta_q(s) and its
    Euler-Maclaurin representation; a proven identity, so the residual
    measures quadrature plus truncation error only."""
    s = complex(s)
    rhs = zeta_q_em_form(s, q, tol)
    lhs = zeta_q(s, q, EvalPolicy(tol=max(tol * 1e-1, 1e-15))).value
    return abs(lhs - rhs)


def verify_zqbq(s, q: QParam, N: int = 200, tol: float = 1e-10) -> float:
    """Residual of the incomplete-beta representation with the frequency
    sum truncated to 0 < |n| <= N:

        zeta_q(s) = closed terms - (1-q)^s log q sum_n (2 pi i n)^(-2)
            { s(s+1) b_q(s-1+delta n, -s-1) - 3s b_q(s-1+delta n, -s)
              + b_q(s-1+delta n, -s+1) },

    delta = 2 pi i/log q, b_q the incomplete beta integral at t = q.  Each
    b_q is evaluated through the integration-by-parts continuation.  The
    truncation error decays like 1/N (empirically much faster), so the
    residual is dominated by the omitted |n| > N terms.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise ValueError("the beta representation requires Re(s) > 1")
    if N < 1:
        raise ValueError("N must be >= 1")
    delta = lattice_delta(q)
    pref = cmath.exp(s * math.log(1.0 - q.q))
    scale = abs(pref * q.log_q)
    nsum = 0.0 + 0.0j
    for n in range(1, N + 1):
        for sgn in (1, -1):
            nn = sgn * n
            alpha = s - 1.0 + delta * nn
            wn = (2.0j * math.pi * nn) ** 2
            tol_abs = tol / (scale * (6.0 * abs(s) ** 2 + 1.0)) * abs(wn) / N
            b1 = _beta_via_recursion_adaptive(q.q, alpha, -s - 1.0, tol_abs)
            b2 = _beta_via_recursion_adaptive(q.q, alpha, -s, tol_abs)
            b3 = _beta_via_recursion_adaptive(q.q, alpha, -s + 1.0, tol_abs)
            nsum += (s * (s + 1.0) * b1 - 3.0 * s * b2 + b3) / wn
    rhs = _zqeul_closed(s, q) - pref * q.log_q * nsum
    lhs = zeta_q(s, q, EvalPolicy(tol=1e-14)).value
    return abs(lhs - rhs)
