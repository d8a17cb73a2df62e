"""The q-zeta function family.

Everything is built on the series f_q(s, t) = sum_{n>=1} q^(nt) / [n]_q^s
(0 < q < 1), which converges for Re(t) > 0 and continues meromorphically to
all (s, t) through the binomial rearrangement

    f_q(s, t) = (1-q)^s sum_{r>=0} C(s+r-1, r) q^(t+r) / (1 - q^(t+r)),

with simple poles where some q^(t+r) hits 1, i.e. on the lattice
t in Z_{<=0} + delta Z with delta = 2 pi i / log q.  The specialization
zeta_q(s) = f_q(s, s-1) is the q-deformation of interest: it has simple
poles on {1 + b delta} and {a + b delta : a <= 0, b != 0}, while the points
s = -m on the real axis are points of indeterminacy with finite limiting
values given in closed form by ``zeta_q_nonpositive``.

Evaluations near the pole lattice are refused (with the offending pole
attached to the exception) rather than returned as huge values, since
silent blow-ups poison downstream extrapolation tables.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from . import ddarith as dd
from .kernel import QParam, SeriesResult
from .sumengine import ACCUMULATORS, STANDARD, continuation_sum

REROUTE_RADIUS = 1e-8     # |s + m| below this reroutes to the closed formula
REROUTE_MAX_M = 10_000


@dataclass(frozen=True)
class EvalPolicy:
    """Truncation and safety knobs shared by all series evaluations."""

    tol: float = 1e-12
    max_terms: int = 2_000_000
    pole_guard: float = 1e-8
    accumulator: str = STANDARD

    def __post_init__(self):
        if self.tol < 1e-15:
            raise ValueError("tol must be >= 1e-15")
        if self.pole_guard < 1e-12:
            raise ValueError("pole_guard must be >= 1e-12")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")
        if self.accumulator not in ACCUMULATORS:
            raise ValueError(f"accumulator must be one of {ACCUMULATORS}")


DEFAULT_POLICY = EvalPolicy()

T_LATTICE = "t-lattice"
S_LATTICE = "s-lattice"


@dataclass(frozen=True)
class PoleDescriptor:
    """A simple-pole lattice point a + b*delta, delta = 2 pi i / log q."""

    base: complex
    a: int
    b: int
    delta: complex
    kind: str


class PoleProximityError(ArithmeticError):
    """Evaluation point is within pole_guard of a lattice pole."""

    def __init__(self, pole: PoleDescriptor, distance: float):
        self.pole = pole
        self.distance = distance
        super().__init__(
            f"{pole.kind} pole at {pole.base} (a={pole.a}, b={pole.b}), "
            f"distance {distance:.3e}")


class NonConvergenceError(ArithmeticError):
    """Stopping rule never fired within the term budget."""


def lattice_delta(q: QParam) -> complex:
    """delta = 2 pi i / log q (purely imaginary, negative imaginary part)."""
    return complex(0.0, 2.0 * math.pi / q.log_q)


def _nearest_t_pole(t: complex, q: QParam, r_max: int,
                    half_offset: bool = False) -> tuple[float, PoleDescriptor]:
    """Distance from t to the nearest pole -r + (b + off) delta, r in [0, r_max]."""
    im_d = 2.0 * math.pi / q.log_q
    off = 0.5 if half_offset else 0.0
    r_star = min(max(int(round(-t.real)), 0), r_max)
    b_star = int(round(t.imag / im_d - off))
    best = None
    for r in (r_star - 1, r_star, r_star + 1):
        if r < 0 or r > r_max:
            continue
        for b in (b_star - 1, b_star, b_star + 1):
            d = math.hypot(t.real + r, t.imag - (b + off) * im_d)
            if best is None or d < best[0]:
                base = complex(-r, (b + off) * im_d)
                best = (d, PoleDescriptor(base=base, a=-r, b=b,
                                          delta=lattice_delta(q),
                                          kind=T_LATTICE))
    return best


def f_q_direct(s, t, q: QParam, policy: EvalPolicy = DEFAULT_POLICY) -> SeriesResult:
    """Defining series sum_{n>=1} q^(nt)/[n]_q^s; requires Re(t) > 0.

    Terms are accumulated with Neumaier compensation; the error estimate is
    the geometric tail bound |term| q^Re(t) / (1 - q^Re(t)).
    """
    s = complex(s)
    t = complex(t)
    if t.real <= 0.0:
        raise ValueError("f_q_direct requires Re(t) > 0 (series diverges otherwise)")
    logq = q.log_q
    log1mq = math.log(1.0 - q.q)
    ar = ai = car = cai = 0.0
    below = 0
    n = 0
    last_abs = 0.0
    abs_sum = 0.0
    while n < policy.max_terms:
        n += 1
        ln_qint = math.log(-math.expm1(n * logq)) - log1mq
        term = cmath.exp(n * t * logq - s * ln_qint)
        tt = ar + term.real
        car += (ar - tt) + term.real if abs(ar) >= abs(term.real) else (term.real - tt) + ar
        ar = tt
        tt = ai + term.imag
        cai += (ai - tt) + term.imag if abs(ai) >= abs(term.imag) else (term.imag - tt) + ai
        ai = tt
        last_abs = abs(term)
        abs_sum += last_abs
        if last_abs < policy.tol * max(1.0, abs(complex(ar + car, ai + cai))):
            below += 1
            if below >= 3:
                break
        else:
            below = 0
    value = complex(ar + car, ai + cai)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ArithmeticError(
            f"f_q_direct overflowed the binary64 range (s={s}, t={t}, q={q.q})")
    rho = q.q ** t.real
    if s.real < 0.0:
        # ([n+1]/[n])^|Re s| > 1 inflates the ratio; largest at the stop index
        rho *= ((-math.expm1((n + 1) * logq))
                / (-math.expm1(n * logq))) ** (-s.real)
    err = last_abs * rho / (1.0 - rho) if rho < 1.0 else math.inf
    err += 2.0 ** -52 * abs_sum * (8.0 + 2.0 * math.log2(n + 1))
    if below < 3:
        raise NonConvergenceError(
            f"f_q_direct did not converge within {policy.max_terms} terms")
    return SeriesResult(value=value, err_estimate=err, terms_used=n,
                        converged=err <= policy.tol * max(1.0, abs(value)))


def f_q_continued(s, t, q: QParam, policy: EvalPolicy = DEFAULT_POLICY,
                  n_terms: int | None = None) -> SeriesResult:
    """Binomial-continuation series for f_q(s, t), valid for all (s, t) off
    the pole lattice.

    With ``n_terms`` given, exactly that many terms r = 0..n_terms-1 are
    summed in ascending order (exact-term mode, used to reproduce printed
    partial sums); otherwise truncation follows the three-consecutive
    sub-tolerance rule.
    """
    s = complex(s)
    t = complex(t)
    r_max = (n_terms - 1) if n_terms is not None else policy.max_terms
    dist, pole = _nearest_t_pole(t, q, r_max)
    if dist <= policy.pole_guard:
        raise PoleProximityError(pole, dist)
    result = continuation_sum(s, t, q, n_terms=n_terms, tol=policy.tol,
                              max_terms=policy.max_terms,
                              accumulator=policy.accumulator)
    if n_terms is None and not result.converged and \
            result.terms_used >= policy.max_terms:
        raise NonConvergenceError(
            f"continuation did not converge within {policy.max_terms} terms")
    return result


def zeta_q(s, q: QParam, policy: EvalPolicy = DEFAULT_POLICY,
           n_terms: int | None = None) -> SeriesResult:
    """zeta_q(s) = f_q(s, s-1).

    Near the indeterminacy points s = -m (m >= 0 integer) the series is
    0/0; evaluation within max(pole_guard, 1e-8) of such a point is
    rerouted to the exact limiting value ``zeta_q_nonpositive``.
    """
    s = complex(s)
    if n_terms is None:
        m = int(round(-s.real))
        radius = max(REROUTE_RADIUS, policy.pole_guard)
        if 0 <= m <= REROUTE_MAX_M and abs(s - (-m)) < radius:
            v = zeta_q_nonpositive(m, q)
            return SeriesResult(value=complex(v), err_estimate=abs(v) * 1e-15,
                                terms_used=m + 2, converged=True)
    try:
        return f_q_continued(s, s - 1.0, q, policy, n_terms=n_terms)
    except PoleProximityError as exc:
        p = exc.pole
        sp = PoleDescriptor(base=p.base + 1.0, a=p.a + 1, b=p.b,
                            delta=p.delta, kind=S_LATTICE)
        raise PoleProximityError(sp, exc.distance) from None


def _log_q_dd(q: QParam) -> tuple[float, float]:
    import mpmath as mp

    with mp.workdps(50):
        return dd.dd_from_mp(mp.log(mp.mpf(q.q)))


def _log_q_fraction(q: QParam, dps: int) -> Fraction:
    """log q as an exact rational snapshot of an mpmath value at dps digits."""
    import mpmath as mp

    with mp.workdps(dps):
        sign, man, exp, _ = mp.log(mp.mpf(q.q))._mpf_
    f = Fraction(-man if sign else man)
    return f * Fraction(2) ** exp


def _cancellation_dps(m: int, q: QParam) -> int:
    """Working digits for the log term of the s = -m closed formulas: the
    braces cancel like (1-q)^m, so the requirement grows with both m and
    the distance to q = 1."""
    return 30 + math.ceil((m + 1) * max(0.0, -math.log10(1.0 - q.q)))


def zeta_q_nonpositive(m: int, q: QParam) -> float:
    """Exact limiting value of zeta_q at s = -m:

    (1-q)^(-m) { sum_{r=0}^m (-1)^r C(m,r) / (q^(m+1-r) - 1)
                 + (-1)^(m+1) / ((m+1) log q) }.

    The braces cancel to O((1-q)^m), so the binomial sum is carried in
    exact rational arithmetic (q is a binary rational) and the only
    inexact ingredient, log q, enters at a precision chosen to outlast
    the cancellation depth.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    qf = Fraction(q.q)
    acc = Fraction(0)
    for r in range(m + 1):
        acc += (-1) ** r * Fraction(math.comb(m, r)) / (qf ** (m + 1 - r) - 1)
    logq = _log_q_fraction(q, _cancellation_dps(m, q))
    braces = acc + Fraction((-1) ** (m + 1)) / ((m + 1) * logq)
    return float(braces * (1 - qf) ** (-m))


def residue_at_one(q: QParam) -> float:
    """Residue of the simple pole at s = 1: (q - 1)/log q."""
    lh, ll = _log_q_dd(q)
    rh, rl = dd.dd_div(q.q - 1.0, 0.0, lh, ll)
    return rh + rl


def pole_set(q: QParam, window: tuple[float, float, float, float]) -> list[PoleDescriptor]:
    """All poles of zeta_q inside the closed rectangle
    (re_min, re_max, im_min, im_max): the points 1 + b delta together with
    {a + b delta : a <= 0, b != 0}.  s = -m with b = 0 is not a pole."""
    re_min, re_max, im_min, im_max = map(float, window)
    if not (re_min <= re_max and im_min <= im_max):
        raise ValueError("window must be a nonempty rectangle")
    im_d = 2.0 * math.pi / q.log_q     # negative
    rows = (im_max - im_min) / abs(im_d) + 1
    cols = max(0.0, re_max - min(re_max, 0.0) - re_min) + 2
    if rows * cols > 200_000:
        raise ValueError("window encloses too many lattice points")
    delta = lattice_delta(q)
    b_from = math.ceil(im_max / im_d - 1e-12)
    b_to = math.floor(im_min / im_d + 1e-12)
    out = []
    for b in range(min(b_from, b_to), max(b_from, b_to) + 1):
        im = b * im_d
        if not (im_min - 1e-12 <= im <= im_max + 1e-12):
            continue
        if re_min - 1e-12 <= 1.0 <= re_max + 1e-12:
            out.append(PoleDescriptor(base=complex(1.0, im), a=1, b=b,
                                      delta=delta, kind=S_LATTICE))
        if b != 0:
            for a in range(math.ceil(re_min - 1e-12), min(0, math.floor(re_max + 1e-12)) + 1):
                out.append(PoleDescriptor(base=complex(a, im), a=a, b=b,
                                          delta=delta, kind=S_LATTICE))
    out.sort(key=lambda p: (p.a, p.b))
    return out


def tilde_zeta_q(s, q: QParam, policy: EvalPolicy = DEFAULT_POLICY) -> SeriesResult:
    """Alternating variant sum (-1)^(n-1) q^(n(s-1)) / [n]_q^s.

    The same binomial rearrangement applied separately to even and odd n
    collapses to a single series with denominator 1 + q^(t+r), so the
    poles sit on the half-shifted lattice -r + (b + 1/2) delta.  Satisfies
    tilde_zeta_q(s) = zeta_q(s; q) - 2 (1+q)^(-s) zeta_q(s; q^2).
    """
    s = complex(s)
    t = s - 1.0
    dist, pole = _nearest_t_pole(t, q, policy.max_terms, half_offset=True)
    if dist <= policy.pole_guard:
        raise PoleProximityError(pole, dist)
    result = continuation_sum(s, t, q, alternating=True, tol=policy.tol,
                              max_terms=policy.max_terms,
                              accumulator=policy.accumulator)
    if not result.converged and result.terms_used >= policy.max_terms:
        raise NonConvergenceError(
            f"alternating continuation did not converge within "
            f"{policy.max_terms} terms")
    return result


def jackson_integral_form(s, t, q: QParam,
                          policy: EvalPolicy = DEFAULT_POLICY) -> complex:
    """Jackson-integral (beta-like) form (1-q) sum_{j>=0} q^(jt)/(1-q^(j+1))^s.

    Equals q^(-t) (1-q)^(1-s) f_q(s, t); requires Re(t) > 0 for the
    geometric factor to decay.
    """
    s = complex(s)
    t = complex(t)
    if t.real <= 0.0:
        raise ValueError("jackson_integral_form requires Re(t) > 0")
    logq = q.log_q
    acc = complex(0.0)
    below = 0
    for j in range(policy.max_terms):
        one_m = -math.expm1((j + 1) * logq)       # 1 - q^(j+1), exact sign
        term = cmath.exp(j * t * logq - s * math.log(one_m))
        acc += term
        if abs(term) < policy.tol * max(1.0, abs(acc)):
            below += 1
            if below >= 3:
                break
        else:
            below = 0
    else:
        raise NonConvergenceError("jackson series did not converge")
    if below < 3:
        raise NonConvergenceError("jackson series did not converge")
    return (1.0 - q.q) * acc


def hurwitz_zeta_q(s, a: float, q: QParam,
                   policy: EvalPolicy = DEFAULT_POLICY) -> SeriesResult:
    """q-deformed Hurwitz function sum_{n>=0} q^((n+a)(s-1)) / [n+a]_q^s.

    The binomial rearrangement goes through verbatim with the offset a,
    giving (1-q)^s sum_r C(s+r-1, r) q^(a(s-1+r)) / (1 - q^(s-1+r)); at
    a = 1 this is bit-for-bit the Riemann-case series.  Near s = -m the
    evaluation reroutes to the limiting value (see
    ``hurwitz_zeta_q_nonpositive`` for the derivation).
    """
    s = complex(s)
    a = float(a)
    if a <= 0.0:
        raise ValueError("offset a must be positive")
    m = int(round(-s.real))
    radius = max(REROUTE_RADIUS, policy.pole_guard)
    if 0 <= m <= REROUTE_MAX_M and abs(s - (-m)) < radius:
        v = hurwitz_zeta_q_nonpositive(m, a, q)
        return SeriesResult(value=complex(v), err_estimate=abs(v) * 1e-15,
                            terms_used=m + 2, converged=True)
    t = s - 1.0
    dist, pole = _nearest_t_pole(t, q, policy.max_terms)
    if dist <= policy.pole_guard:
        raise PoleProximityError(pole, dist)
    result = continuation_sum(s, t, q, hurwitz_a=a, tol=policy.tol,
                              max_terms=policy.max_terms,
                              accumulator=policy.accumulator)
    if not result.converged and result.terms_used >= policy.max_terms:
        raise NonConvergenceError(
            f"offset continuation did not converge within "
            f"{policy.max_terms} terms")
    return result


def hurwitz_zeta_q_nonpositive(m: int, a: float, q: QParam) -> float:
    """Limiting value of the q-Hurwitz function at s = -m.

    Derivation (the r = m+1 term of the rearranged series is the 0/0 one):
    with t = s - 1 and s -> -m, terms r >= m+2 vanish because
    C(-m+r-1, r) = 0 while the denominator stays nonzero; for r = m+1,
    C(s+m, m+1) ~ (s+m) (-1)^m m!/(m+1)! and (s+m)/(1 - q^(s+m)) tends to
    -1/log q, so that term contributes (-1)^(m+1)/((m+1) log q) --
    independently of a, since q^(a(s+m)) -> 1.  The surviving r <= m terms
    evaluate directly, giving

    (1-q)^(-m) { sum_{r=0}^m (-1)^r C(m,r) q^((m+1-r)(1-a)) / (q^(m+1-r)-1)
                 + (-1)^(m+1)/((m+1) log q) }.

    The general-a powers are irrational, so the whole braces are carried
    at a cancellation-aware working precision.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if a <= 0.0:
        raise ValueError("offset a must be positive")
    if a == 1.0:
        return zeta_q_nonpositive(m, q)
    import mpmath as mp

    with mp.workdps(_cancellation_dps(m, q)):
        qm = mp.mpf(q.q)
        lq = mp.log(qm)
        acc = mp.mpf(0)
        for r in range(m + 1):
            k = m + 1 - r
            acc += (-1) ** r * math.comb(m, r) \
                * mp.exp(k * (1 - mp.mpf(a)) * lq) / (qm ** k - 1)
        acc += mp.mpf((-1) ** (m + 1)) / ((m + 1) * lq)
        return float(acc * (1 - qm) ** (-m))
