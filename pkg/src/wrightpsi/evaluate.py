"""Values of the Wright function: convergent series, algebraic and exponential
expansions, sector dispatch, and the exponentially improved expansion on the
negative real axis when ``alpha = beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .coeffs import B_coefficients, CoefficientSet, terminating_family, c_coefficients
from .errors import (
    AsymptoticRegimeTooSmall,
    DivergentSeries,
    InsufficientCoeffs,
    InvalidParams,
    KappaNotOne,
    KappaOutOfRange,
    NoMinimumFound,
    NotPolynomialCase,
    RadiusExceeded,
)
from .numkernel import PrecisionCtx, gamma, rgamma, to_mp
from .params import WrightParams, integer_value, is_exact

__all__ = [
    "Route",
    "EvalResult",
    "ExpansionTerms",
    "expansion_terms",
    "series_guard_bits",
    "eval_series",
    "eval_H",
    "h_term",
    "eval_E",
    "optimal_truncation",
    "least_term_index",
    "eval_theorem1",
    "eval_stokes_kappa1",
    "stokes_algebraic_part",
    "stokes_exponential_part",
    "wright_polynomial",
    "eval_polynomial",
]

DEFAULT_M = 5
_MAX_TERMS = 200_000
_TAIL_RUN = 20


class Route(str, Enum):
    CONVERGENT_SERIES = "ConvergentSeries"
    THEOREM1_SECTOR = "Theorem1Sector"
    THEOREM3_STOKES = "Theorem3Stokes"
    THEOREM4_STOKES = "Theorem4Stokes"
    POLYNOMIAL_EXACT = "PolynomialExact"
    CLOSED_FORM_FINITE = "ClosedFormFinite"


@dataclass(frozen=True)
class EvalResult:
    value: object
    route: Route
    m_used: int | None = None
    M_used: int | None = None
    err_estimate: object = 0


@dataclass(frozen=True)
class ExpansionTerms:
    Z: object
    X: object
    nu: object = None


def _mp_value(z, mp):
    v = to_mp(z, mp)
    if hasattr(v, "_mpc_") and v.imag == 0:
        return v.real
    return v


def _is_zero(z) -> bool:
    try:
        return z == 0
    except TypeError:
        return False


def expansion_terms(p: WrightParams, z, ctx: PrecisionCtx, m: int | None = None) -> ExpansionTerms:
    """``Z = kappa (h z)^(1/kappa)`` on the principal branch, ``X = |Z|`` and,
    when ``m`` is given, ``nu = mu (a + m) + theta``."""
    mp = ctx.mp
    kappa = to_mp(p.kappa, mp)
    zz = to_mp(z, mp)
    h = to_mp(p.h(mp), mp)
    Z = kappa * mp.exp((mp.log(h) + mp.log(zz)) / kappa)
    if hasattr(Z, "_mpc_") and Z.imag == 0:
        Z = Z.real
    nu = None
    if m is not None:
        nu = to_mp(p.mu, mp) * (to_mp(p.a, mp) + m) + to_mp(p.theta, mp)
    return ExpansionTerms(Z=Z, X=abs(Z), nu=nu)


# -- convergent series -------------------------------------------------------------


def series_guard_bits(p: WrightParams, z) -> int:
    """Extra bits for the power series: its largest term is about ``e^X`` with
    ``X = kappa (h|z|)^(1/kappa)`` while the sum can be algebraically small."""
    kappa = float(p.kappa)
    r = float(abs(complex(z))) if not is_exact(z) else abs(float(z))
    if kappa <= 0 or r == 0:
        return 64
    h = float(p.h(PrecisionCtx().mp))
    X = kappa * (h * r) ** (1 / kappa)
    return math.ceil(X * math.log2(math.e)) + 64


class _GammaSequence:
    """``Gamma(start + step*r)`` (or its reciprocal) for r = 0, 1, 2, ...

    With ``step = P/Q`` rational and small ``P`` the recurrence
    ``Gamma(s + P) = Gamma(s) (s)_P`` links ``r`` and ``r + Q``.
    """

    def __init__(self, start, step, ctx: PrecisionCtx, reciprocal: bool):
        self.start, self.step, self.ctx, self.reciprocal = start, step, ctx, reciprocal
        self.period = None
        if is_exact(step):
            step = Fraction(step)
            if step.numerator <= 64:
                self.period, self.shift = step.denominator, step.numerator
        self.values: dict[int, object] = {}

    def arg(self, r: int):
        return self.start + self.step * r

    def __call__(self, r: int):
        Q = self.period
        prev = self.values.get(r - Q) if Q else None
        if prev is not None and prev != 0:
            s = to_mp(self.arg(r - Q), self.ctx.mp)
            poch = s
            for i in range(1, self.shift):
                poch *= s + i
            v = prev / poch if self.reciprocal else prev * poch
        else:
            v = rgamma(self.arg(r), self.ctx) if self.reciprocal else gamma(self.arg(r), self.ctx)
        self.values[r] = v
        if Q:
            self.values.pop(r - Q, None)
        return v


def eval_series(p: WrightParams, z, ctx: PrecisionCtx | None = None) -> EvalResult:
    """Sum ``sum_r Gamma(alpha r + a)/Gamma(beta r + b) z^r / r!`` directly."""
    ctx = ctx or PrecisionCtx()
    kappa = p.kappa
    mp0 = ctx.mp
    if _is_zero(z):
        v = gamma(p.a, ctx) * rgamma(p.b, ctx)
        return EvalResult(_mp_value(v, mp0), Route.CONVERGENT_SERIES, err_estimate=mp0.zero)
    if kappa < 0:
        raise DivergentSeries(f"kappa = {kappa} < 0: the series diverges for z != 0")
    if kappa == 0:
        h = to_mp(p.h(mp0), mp0)
        if abs(to_mp(z, mp0)) * h >= 1:
            raise RadiusExceeded(f"|z| >= 1/h = {1 / h} with kappa = 0")
    guard = series_guard_bits(p, z) + 16
    wctx = ctx.extended(guard)
    mp = wctx.mp
    zz = _mp_value(z, mp)
    num = _GammaSequence(p.a, p.alpha, wctx, reciprocal=False)
    den = _GammaSequence(p.b, p.beta, wctx, reciprocal=True)
    cutoff = mp.ldexp(mp.one, -(ctx.bits + guard))
    total = mp.zero
    power = mp.one
    biggest = mp.zero
    run = 0
    r = 0
    while True:
        if r:
            power = power * zz / r
        t = num(r) * den(r) * power
        total += t
        at = abs(t)
        if at > biggest:
            biggest = at
        if at <= cutoff * biggest:
            run += 1
            if run >= _TAIL_RUN:
                break
        else:
            run = 0
        r += 1
        if r > _MAX_TERMS:
            raise RadiusExceeded("series did not settle within the term limit")
    nxt = abs(num(r + 1) * den(r + 1) * power * zz / (r + 1))
    return EvalResult(_mp_value(total, mp0), Route.CONVERGENT_SERIES, err_estimate=mp0.mpf(nxt))


# -- algebraic expansion H -----------------------------------------------------------


def _polar(z, mp, arg=None):
    zz = to_mp(z, mp)
    r = abs(zz)
    phi = mp.arg(zz) if arg is None else to_mp(arg, mp)
    return r, phi


def h_term(p: WrightParams, k: int, r, phi, ctx: PrecisionCtx):
    """k-th term of ``H(z)`` at ``z = r e^{i phi}`` (exact zero at a reciprocal-gamma pole)."""
    mp = ctx.mp
    # exact arithmetic keeps pole detection exact for rational parameters
    s = (k + p.a) / p.alpha
    den_arg = p.b - p.beta * s
    rg = rgamma(den_arg, ctx)
    if rg == 0:
        return mp.zero
    ss = to_mp(s, mp)
    sign = -1 if k % 2 else 1
    coef = gamma(s, ctx) * rg / (to_mp(p.alpha, mp) * mp.factorial(k)) * sign
    if phi == 0:
        zpow = mp.exp(-ss * mp.log(r))
    else:
        zpow = mp.exp(-ss * (mp.log(r) + mp.j * phi))
    v = coef * zpow
    if hasattr(v, "_mpc_") and v.imag == 0:
        return v.real
    return v


def eval_H(p: WrightParams, z, m: int, ctx: PrecisionCtx | None = None, arg=None):
    """First ``m`` terms of the algebraic expansion ``H(z)``.

    ``arg`` overrides the argument of ``z`` (for rotated arguments such as
    ``z e^{-pi i}`` that leave the principal range).
    """
    if m < 1:
        raise InvalidParams("m must be at least 1")
    ctx = ctx or PrecisionCtx()
    if _is_zero(z):
        raise InvalidParams("H(z) is undefined at z = 0")
    wctx = ctx.extended(16)
    r, phi = _polar(z, wctx.mp, arg)
    total = wctx.mp.zero
    for k in range(m):
        total += h_term(p, k, r, phi, wctx)
    return _mp_value(total, ctx.mp)


def least_term_index(p: WrightParams, r, phi, kmax: int) -> int:
    """Index of the first local minimum of ``|H term_k|`` (k >= 1, ties to the smaller index)."""
    ctx = PrecisionCtx(64)
    mags = []
    for k in range(kmax + 2):
        mags.append(abs(h_term(p, k, r, phi, ctx)))
    for k in range(1, kmax + 1):
        if mags[k] == 0:
            continue
        left = next((mags[i] for i in range(k - 1, -1, -1) if mags[i] != 0), None)
        right = next((mags[i] for i in range(k + 1, len(mags)) if mags[i] != 0), None)
        if right is None:
            break
        if (left is None or mags[k] <= left) and mags[k] <= right:
            return k
    raise NoMinimumFound(f"terms of H still decreasing at k = {kmax}: |z| = {float(r):g} too small for the asymptotic regime")


def optimal_truncation(p: WrightParams, x) -> int:
    """Truncation index ``m_o`` of ``H(x)`` for ``kappa = 1``: the index of its least term."""
    if not p.kappa_is_one:
        raise KappaNotOne("optimal truncation on the Stokes line needs alpha = beta")
    xf = float(x)
    if not xf > 0:
        raise InvalidParams("x must be positive")
    alpha = float(p.alpha)
    kmax = math.ceil(4 * alpha * xf) + 50
    mp = PrecisionCtx(64).mp
    m = least_term_index(p, to_mp(x, mp), mp.zero, kmax)
    if abs(m - alpha * xf) > max(5.0, 0.2 * alpha * xf):
        raise AsymptoticRegimeTooSmall(f"least term at k = {m}, far from alpha*x = {alpha * xf:g}")
    return m


# -- exponential expansion E ----------------------------------------------------------


def eval_E(p: WrightParams, z, cs: CoefficientSet, J: int, ctx: PrecisionCtx | None = None):
    """``Z^theta e^Z sum_{j<J} A_j Z^-j`` with ``Z = kappa (h z)^(1/kappa)``."""
    if not p.kappa > 0:
        raise InvalidParams("E(z) needs kappa > 0")
    if J > len(cs.c):
        raise InsufficientCoeffs(f"need {J} coefficients, have {len(cs.c)}")
    ctx = ctx or PrecisionCtx()
    wctx = ctx.extended(16)
    mp = wctx.mp
    Z = expansion_terms(p, z, wctx).Z
    Zinv = 1 / Z
    s = mp.zero
    zp = mp.one
    for j in range(J):
        s += to_mp(cs.c[j], mp) * zp
        zp *= Zinv
    v = to_mp(cs.A0, mp) * mp.exp(to_mp(p.theta, mp) * mp.log(Z) + Z) * s
    return _mp_value(v, ctx.mp)


def _E_term_magnitude(p, z, cs, j, ctx):
    mp = ctx.mp
    Z = expansion_terms(p, z, ctx).Z
    return abs(to_mp(cs.A0, mp) * to_mp(cs.c[j], mp) * mp.exp(to_mp(p.theta, mp) * mp.log(Z) + Z) * Z ** (-j))


# -- Theorem 1 sector dispatch -----------------------------------------------------


def eval_theorem1(p: WrightParams, z, m: int | None = None, J: int = DEFAULT_M,
                  ctx: PrecisionCtx | None = None) -> EvalResult:
    """Compound expansion for ``0 < kappa < 2``: ``E(z) + H(z e^{-+pi i})`` in
    ``|arg z| <= pi kappa/2`` and ``H(z e^{-+pi i})`` elsewhere (upper sign for
    ``Im z >= 0``).  ``m`` defaults to the least-term index of H."""
    kappa = p.kappa
    if not 0 < kappa < 2:
        raise KappaOutOfRange(f"kappa = {kappa} outside (0, 2)")
    ctx = ctx or PrecisionCtx()
    mp = ctx.mp
    zz = to_mp(z, mp)
    if zz == 0:
        raise InvalidParams("z must be nonzero")
    r, phi = abs(zz), mp.arg(zz)
    upper = mp.im(zz) >= 0
    harg = phi - mp.pi if upper else phi + mp.pi
    if m is None:
        # the least term of H sits near k = alpha (h|z|)^(1/kappa)
        hr = float(to_mp(p.h(mp), mp)) * float(r)
        kmax = 50 + math.ceil(4 * float(p.alpha) * hr ** (1 / float(kappa)))
        m = least_term_index(p, r, harg, min(kmax, 4000))
    H = eval_H(p, r, m, ctx, arg=harg)
    err = abs(h_term(p, m, r, harg, ctx))
    value = H
    M_used = None
    if abs(phi) <= mp.pi * to_mp(kappa, mp) / 2:
        cs = c_coefficients(p, J + 1, ctx)
        value = value + eval_E(p, zz, cs, J, ctx)
        err = max(err, _E_term_magnitude(p, zz, cs, J, ctx))
        M_used = J
    return EvalResult(_mp_value(value, mp), Route.THEOREM1_SECTOR, m_used=m, M_used=M_used, err_estimate=err)


# -- kappa = 1 on the negative real axis ----------------------------------------------


def _cos_sin_pi(theta, mp):
    t = to_mp(theta, mp)
    return mp.cospi(t), mp.sinpi(t)


def stokes_algebraic_part(p: WrightParams, x, m: int, ctx: PrecisionCtx | None = None):
    """The algebraic part subtracted on the Stokes line: ``H`` truncated after ``m`` terms."""
    return eval_H(p, x, m, ctx)


def stokes_exponential_part(p: WrightParams, x, M: int, m: int | None, cs: CoefficientSet,
                            ctx: PrecisionCtx | None = None, with_next: bool = False):
    """Exponentially small part ``x^theta e^-x {cos(pi theta) S_A - 2 sin(pi theta)/sqrt(2 pi x) S_B}``
    with both sums truncated after ``M`` terms.

    ``m = None`` drops the B-series (integer theta).  With ``with_next`` also
    returns the magnitude of the first omitted term.
    """
    ctx = ctx or PrecisionCtx()
    wctx = ctx.extended(16)
    mp = wctx.mp
    need = M + 1 if with_next else M
    if need > len(cs.c):
        raise InsufficientCoeffs(f"need {need} coefficients, have {len(cs.c)}")
    xx = to_mp(x, mp)
    cos_t, sin_t = _cos_sin_pi(p.theta, mp)
    A = [to_mp(cs.A(j, mp), mp) for j in range(need)]
    B = None
    if m is not None:
        B = [to_mp(v, mp) for v in B_coefficients(p, cs, x, m, need, wctx)]
    prefac = mp.exp(to_mp(p.theta, mp) * mp.log(xx) - xx)
    bfac = 2 * sin_t / mp.sqrt(2 * mp.pi * xx)

    def term(j):
        t = cos_t * A[j]
        if B is not None:
            t -= bfac * B[j]
        return (-1) ** j * t * xx ** (-j)

    s = mp.zero
    for j in range(M):
        s += term(j)
    value = _mp_value(prefac * s, ctx.mp)
    if with_next:
        return value, ctx.mp.mpf(abs(prefac * term(M)))
    return value


def eval_stokes_kappa1(p: WrightParams, x, M: int = DEFAULT_M, ctx: PrecisionCtx | None = None,
                       m: int | None = None) -> EvalResult:
    """``1Psi1(-x)`` for ``alpha = beta`` and large ``x > 0`` including the
    exponentially small contribution.

    Dispatch on ``theta = a - b``: non-integer (optimally truncated H plus the
    A- and B-series), ``-n`` (n-term H plus the A-series, exact when that series
    terminates within ``M`` terms) and ``+n`` (exact polynomial times ``e^-x``).
    """
    if not p.kappa_is_one:
        raise KappaNotOne(f"kappa = {p.kappa}; the Stokes-line expansion needs alpha = beta")
    ctx = ctx or PrecisionCtx()
    if not float(x) > 0:
        raise InvalidParams("x must be positive")
    if M < 1:
        raise InvalidParams("M must be at least 1")
    n = integer_value(p.theta)
    if n is not None and n >= 0:
        return EvalResult(eval_polynomial(p, -to_mp(x, ctx.mp) if not is_exact(x) else -Fraction(x), ctx),
                          Route.POLYNOMIAL_EXACT, err_estimate=ctx.mp.zero)
    if n is not None:
        n = -n
        fam = terminating_family(p)
        J = fam[2] if fam is not None else None
        alg = eval_H(p, x, n, ctx)
        if J is not None and M > J:
            cs = c_coefficients(p, J + 1, ctx)
            exp_part = stokes_exponential_part(p, x, J + 1, None, cs, ctx)
            return EvalResult(alg + exp_part, Route.CLOSED_FORM_FINITE, m_used=n, M_used=J + 1,
                              err_estimate=ctx.mp.zero)
        cs = c_coefficients(p, M + 1, ctx)
        exp_part, err = stokes_exponential_part(p, x, M, None, cs, ctx, with_next=True)
        return EvalResult(alg + exp_part, Route.THEOREM4_STOKES, m_used=n, M_used=M, err_estimate=err)
    if m is None:
        m = optimal_truncation(p, x)
    cs = c_coefficients(p, M + 1, ctx)
    alg = eval_H(p, x, m, ctx)
    exp_part, err = stokes_exponential_part(p, x, M, m, cs, ctx, with_next=True)
    return EvalResult(alg + exp_part, Route.THEOREM3_STOKES, m_used=m, M_used=M, err_estimate=err)


# -- polynomial case theta = n -------------------------------------------------------


def wright_polynomial(p: WrightParams, n: int | None = None) -> list:
    """Ascending coefficients of the degree-n polynomial with ``1Psi1(z) = P_n(z) e^z``
    for ``alpha = beta``, ``theta = n``:  ``P_0 = 1``,
    ``P_{r+1}(z) = (alpha z + b + r) P_r(z) + alpha z P_r'(z)``."""
    th = integer_value(p.theta)
    if not p.kappa_is_one or th is None or th < 0:
        raise NotPolynomialCase("needs alpha = beta and theta = a - b a non-negative integer")
    if n is None:
        n = th
    if n != th:
        raise NotPolynomialCase(f"theta = {p.theta} does not equal n = {n}")
    alpha, b = p.alpha, p.b
    one = Fraction(1) if (is_exact(alpha) and is_exact(b)) else alpha * 0 + 1
    P = [one]
    for r in range(n):
        new = []
        for i in range(len(P) + 1):
            v = 0
            if i < len(P):
                v = (b + r + alpha * i) * P[i]
            if i >= 1:
                v = v + alpha * P[i - 1]
            new.append(v)
        P = new
    return P


def eval_polynomial(p: WrightParams, z, ctx: PrecisionCtx | None = None):
    """``P_n(z) e^z`` (Horner in the working precision)."""
    ctx = ctx or PrecisionCtx()
    wctx = ctx.extended(16)
    mp = wctx.mp
    coeffs = wright_polynomial(p)
    zz = _mp_value(z, mp)
    acc = mp.zero
    for c in reversed(coeffs):
        acc = acc * zz + to_mp(c, mp)
    return _mp_value(acc * mp.exp(zz), ctx.mp)
