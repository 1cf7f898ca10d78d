"""Expansion coefficients of the Wright function asymptotics.

* ``A_0``/``A_1`` closed forms and the normalised ``c_j = A_j/A_0`` obtained by
  matching the large-``s`` expansion of a gamma-function quotient against
  inverse factorials ``1/(1 - kappa s - theta)_j``;
* termination of the ``c_j`` in the special parameter families, with the
  closed forms of the last nonzero coefficient;
* the terminant smoothing coefficients ``g_2k(mu; j)`` (printed polynomials
  for ``k <= 3`` and a generator of any order);
* the composite coefficients ``B_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (
    BranchError,
    InsufficientCoeffs,
    InvalidParams,
    MatchFailure,
    NotApplicable,
    OrderTooHigh,
)
from .fps import FLOAT, RATIONAL, TruncatedSeries, fps_compose, fps_exp, fps_inv, fps_log, fps_pow, fps_reversion
from .numkernel import PrecisionCtx, gamma_star_series, mp_context, to_mp
from .params import DerivedParams, WrightParams, derive_params, exact_power, integer_value, is_exact, power

__all__ = [
    "WrightParams",
    "DerivedParams",
    "derive_params",
    "CoefficientSet",
    "GCoeffs",
    "leading_A0_A1",
    "c1_closed_form",
    "c_coefficients",
    "termination_index",
    "terminating_family",
    "coverup_closed_forms",
    "g_even_table",
    "g_even_generate",
    "tau_series",
    "B_coefficients",
    "pochhammer",
]

MAX_M = 60


def pochhammer(a, k: int):
    out = 1 if is_exact(a) else a * 0 + 1
    for i in range(k):
        out = out * (a + i)
    return Fraction(out) if isinstance(out, int) else out


def _mul(x, y, mp):
    """Product that tolerates mixing Fractions with mp values."""
    if is_exact(x) and is_exact(y):
        return Fraction(x) * Fraction(y)
    return to_mp(x, mp) * to_mp(y, mp) if (is_exact(x) or is_exact(y)) else x * y


@dataclass(frozen=True)
class CoefficientSet:
    """``A_0`` and the normalised coefficients ``c_0 .. c_{M-1}``."""

    A0: object
    c: tuple
    exact: bool
    termination_index: int | None = None

    def __len__(self) -> int:
        return len(self.c)

    def A(self, j: int, mp):
        """``A_j = A_0 c_j`` (exact when both factors are)."""
        return _mul(self.A0, self.c[j], mp)


# -- A_0, A_1 -------------------------------------------------------------------


def leading_A0_A1(p: WrightParams, ctx: PrecisionCtx | None = None):
    """Closed forms for ``A_0`` and ``A_1``; exact Fractions whenever possible."""
    kappa, theta = p.kappa, p.theta
    if not kappa > 0:
        raise InvalidParams(f"kappa = {kappa} must be positive")
    mp = (ctx or PrecisionCtx()).mp
    half = Fraction(1, 2)
    if p.is_rational and p.alpha == p.beta:
        # kappa = 1: the two powers merge into alpha^theta
        factors = [power(p.alpha, theta, mp)]
    elif p.is_rational:
        factors = [power(kappa, -half - theta, mp), power(p.alpha, p.a - half, mp), power(p.beta, half - p.b, mp)]
    else:
        factors = [
            to_mp(kappa, mp) ** (-mp.mpf(0.5) - to_mp(theta, mp)),
            to_mp(p.alpha, mp) ** (to_mp(p.a, mp) - 0.5),
            to_mp(p.beta, mp) ** (0.5 - to_mp(p.b, mp)),
        ]
    A0 = factors[0]
    for f in factors[1:]:
        A0 = _mul(A0, f, mp)
    return A0, _mul(A0, c1_closed_form(p, ctx), mp)


def c1_closed_form(p: WrightParams, ctx: PrecisionCtx | None = None):
    """``A_1/A_0`` from its closed form (exact for rational parameters)."""
    if p.is_rational:
        a, b, al, be = p.a, p.b, p.alpha, p.beta
        k, th = p.kappa, p.theta
        sixth = Fraction(1, 6)
        return Fraction(1, 2) * k * (
            (a * a - a + sixth) / al - (b * b - b + sixth) / be + (1 - k - 6 * th * (1 - th)) / (6 * k)
        )
    mp = (ctx or PrecisionCtx()).mp
    a, b, al, be = (to_mp(v, mp) for v in (p.a, p.b, p.alpha, p.beta))
    k, th = 1 + be - al, a - b
    return k / 2 * ((a * a - a + mp.one / 6) / al - (b * b - b + mp.one / 6) / be + (1 - k - 6 * th * (1 - th)) / (6 * k))


# -- termination ----------------------------------------------------------------


def terminating_family(p: WrightParams):
    """``("plus", n, n)`` for theta = n >= 0, ``("minus", n, J)`` for the
    theta = -n family with alpha = 1/q, a = p/q coprime; else ``None``."""
    if not p.kappa_is_one:
        return None
    n = integer_value(p.theta)
    if n is None:
        return None
    if n >= 0:
        return ("plus", n, n)
    n = -n
    q = integer_value(1 / p.alpha)
    if q is None or q < 1:
        return None
    pnum = integer_value(p.a * q)
    if pnum is None or pnum < 1 or math.gcd(pnum, q) != 1:
        return None
    return ("minus", n, pnum - q + n * (q - 1))


def termination_index(p: WrightParams) -> int | None:
    fam = terminating_family(p)
    return None if fam is None else fam[2]


def coverup_closed_forms(p: WrightParams, ctx: PrecisionCtx | None = None):
    """Last nonzero coefficient of a terminating family.

    ``c_n = alpha^-n (b)_n`` when theta = n >= 1 and
    ``c_J = (-1)^J alpha^(n-1) (n)_J`` when theta = -n with alpha = 1/q, a = p/q.
    """
    fam = terminating_family(p)
    if fam is None or fam[1] < 1:
        raise NotApplicable("closed forms need alpha = beta and theta = +-n with n >= 1 (and a, alpha of the form p/q, 1/q for theta = -n)")
    kind, n, J = fam
    mp = (ctx or PrecisionCtx()).mp
    if kind == "plus":
        return _mul(power(p.alpha, -n, mp), pochhammer(p.b, n), mp)
    return _mul((-1) ** J * power(p.alpha, n - 1, mp), pochhammer(Fraction(n), J), mp)


# -- c_j by coefficient matching --------------------------------------------------


def _lift(s: TruncatedSeries, kind: str, mp) -> TruncatedSeries:
    if kind == RATIONAL or s.kind == FLOAT:
        return s
    return TruncatedSeries([to_mp(c, mp) for c in s.coeffs], FLOAT)


def _matching_lhs(kappa, theta, a, b, alpha, beta, N: int, kind: str, mp) -> TruncatedSeries:
    """``R(s) Upsilon(s)`` as a series in ``chi = 1/(kappa s)`` through ``chi**N``."""
    one = Fraction(1) if kind == RATIONAL else mp.one
    half = one / 2
    X = TruncatedSeries.variable(N + 1, kind, one)
    Xn = X.truncate(N)
    gstar = _lift(gamma_star_series(N), kind, mp)
    upsilon = TruncatedSeries.constant(one, N, kind)
    log_r = TruncatedSeries.constant(one * 0, N, kind)
    # Gamma(s) Gamma(1-b+beta s) / (Gamma(kappa s + theta) Gamma(1-a+alpha s))
    for scale, shift, sign in ((one, one * 0, 1), (beta, 1 - b, 1), (kappa, theta, -1), (alpha, 1 - a, -1)):
        u = shift * kappa / scale
        # 1/(scale s + shift) = (kappa/scale) chi / (1 + u chi)
        v = Xn * (kappa / scale) / (1 + Xn * u)
        g = fps_compose(gstar, v)
        upsilon = upsilon * g if sign > 0 else upsilon / g
        if shift != 0:
            # log e(scale s; shift) = (scale s + shift - 1/2) log(1 + shift/(scale s)) - shift
            lg = fps_log(1 + X * u)
            log_e = lg.shift_down() * (scale / kappa) + lg.truncate(N) * (shift - half) - shift
            log_r = log_r + log_e if sign > 0 else log_r - log_e
    return fps_exp(log_r) * upsilon


def _solve_triangular(lhs: TruncatedSeries, theta, N: int, kind: str, mp) -> list:
    """Match ``lhs`` against ``sum_j c_j (-chi)^j prod_{i<j} (1 - (1-theta+i) chi)^-1``."""
    one = Fraction(1) if kind == RATIONAL else mp.one
    Xn = TruncatedSeries.variable(N, kind, one)
    P = [TruncatedSeries.constant(one, N, kind)]
    for j in range(1, N + 1):
        P.append(P[-1] * fps_inv(1 - Xn * (1 - theta + j - 1)))
    c = []
    for n in range(N + 1):
        s = lhs[n]
        for j in range(n):
            t = c[j] * P[j][n - j]
            s = s - t if j % 2 == 0 else s + t
        c.append(s if n % 2 == 0 else -s)
    return c


def c_coefficients(p: WrightParams, M: int, ctx: PrecisionCtx | None = None) -> CoefficientSet:
    """``c_0 .. c_{M-1}`` with ``c_j = A_j/A_0``.

    Rational parameters give exact Fractions.  Anything else is computed in
    floating point at four times the working precision of ``ctx``.
    """
    if not isinstance(M, int) or M < 1:
        raise InvalidParams(f"M must be a positive integer, got {M!r}")
    if M > MAX_M:
        raise InvalidParams(f"M = {M} exceeds the supported maximum {MAX_M}")
    if not p.kappa > 0:
        raise InvalidParams(f"kappa = {p.kappa} must be positive")
    ctx = ctx or PrecisionCtx()
    N = M - 1
    fam = terminating_family(p)
    term = None if fam is None else fam[2]
    if p.is_rational:
        kind, mp = RATIONAL, None
        a, b, alpha, beta = p.a, p.b, p.alpha, p.beta
    else:
        kind, mp = FLOAT, mp_context(4 * ctx.total)
        a, b, alpha, beta = (to_mp(v, mp) for v in (p.a, p.b, p.alpha, p.beta))
    kappa = 1 + beta - alpha
    theta = a - b
    lhs = _matching_lhs(kappa, theta, a, b, alpha, beta, N, kind, mp)
    c = _solve_triangular(lhs, theta, N, kind, mp)
    if kind == RATIONAL:
        if c[0] != 1:
            raise MatchFailure(f"c_0 = {c[0]} != 1")
        if term is not None and any(cj != 0 for cj in c[term + 1:]):
            raise MatchFailure(f"coefficients beyond the termination index {term} are nonzero")
    else:
        if abs(c[0] - 1) > mp.ldexp(1, -ctx.total):
            raise MatchFailure(f"c_0 = {c[0]} != 1")
        c[0] = mp.one
        if term is not None:
            c[term + 1:] = [mp.zero] * len(c[term + 1:])
    A0, _ = leading_A0_A1(p, ctx)
    return CoefficientSet(A0=A0, c=tuple(c), exact=kind == RATIONAL, termination_index=term)


# -- g_2k -----------------------------------------------------------------------


@dataclass(frozen=True)
class GCoeffs:
    """``g_0, g_2, ..`` of the terminant expansion for one ``(mu, delta)``."""

    mu: object
    delta: object
    g_even: tuple

    def __getitem__(self, k):
        return self.g_even[k]

    def __len__(self):
        return len(self.g_even)


def _common(mu, delta):
    if is_exact(mu) and is_exact(delta):
        return Fraction(mu), Fraction(delta)
    ref = delta if not is_exact(delta) else mu
    mp = ref.context
    return to_mp(mu, mp), to_mp(delta, mp)


def _ghat(mu, d):
    return (
        (1 - 6 * d + 3 * mu) / 6,
        (2 + 45 * mu + 45 * mu**2 - 90 * d * (1 + 3 * mu + mu**2) + 270 * d**2 * (1 + mu) - 180 * d**3) / 30,
        (
            -65 + 105 * mu + 630 * mu**2 - 210 * mu**4
            - 42 * d * (5 + 90 * mu + 100 * mu**2 - 6 * mu**4)
            + 1260 * d**2 * (3 + 10 * mu + 5 * mu**2)
            - 840 * d**3 * (10 + 15 * mu + 3 * mu**2)
            + 1260 * d**4 * (5 + 3 * mu)
            - 1512 * d**5
        ) / 140,
        (
            7 * (-16 - 417 * mu + 225 * mu**2 - 1008 * mu**4 + 180 * mu**6)
            - 6 * d * (-973 + 1575 * mu + 9555 * mu**2 - 4410 * mu**4 + 180 * mu**6)
            + 1890 * d**2 * (5 + 91 * mu + 112 * mu**2 - 14 * mu**4)
            - 1260 * d**3 * (91 + 336 * mu + 210 * mu**2 - 6 * mu**4)
            + 26460 * d**4 * (8 + 15 * mu + 5 * mu**2)
            - 22680 * d**5 * (7 + 7 * mu + mu**2)
            + 7560 * d**6 * (7 + 3 * mu)
            - 6480 * d**7
        ) / 700,
    )


def g_even_table(mu, delta, N: int) -> GCoeffs:
    """``g_0 .. g_{2(N-1)}`` from the printed polynomials (``N <= 4``)."""
    if N > 4:
        raise OrderTooHigh("only g_0, g_2, g_4, g_6 have printed forms")
    if N < 1:
        raise InvalidParams("N must be at least 1")
    mu, d = _common(mu, delta)
    gh = _ghat(mu, d)
    return GCoeffs(mu, delta, tuple(gh[k] / 36**k for k in range(N)))


@lru_cache(maxsize=16)
def tau_series(order: int) -> TruncatedSeries:
    """``tau(w)`` with ``w**2/2 = tau - log tau - 1`` on the branch ``tau ~ 1 + w``."""
    X = TruncatedSeries.variable(order + 2)
    # w = t sqrt(2 (t - log(1+t)) / t^2) with t = tau - 1
    q = (X - fps_log(1 + X)).shift_down().shift_down() * 2
    root = fps_pow(q, Fraction(1, 2))
    w_of_t = TruncatedSeries((Fraction(0),) + root.coeffs)
    t_of_w = fps_reversion(w_of_t)
    if t_of_w[1] != 1:
        raise BranchError(f"tau'(0) = {t_of_w[1]}, expected 1")
    return (1 + t_of_w).truncate(order)


def g_even_generate(mu, delta, N: int) -> GCoeffs:
    """``g_0 .. g_{2(N-1)}`` to any order from the defining expansion

    ``mu tau^(delta-1) / (1 - tau^mu) dtau/dw = -1/w + sum_k g_k w^k``.
    """
    if N < 1:
        raise InvalidParams("N must be at least 1")
    mu, d = _common(mu, delta)
    K = 2 * N
    tau = tau_series(K + 1)
    if not is_exact(mu):
        tau = _lift(tau, FLOAT, mu.context)
    if tau[1] != 1:
        raise BranchError("tau(w) must start 1 + w")
    dtau = tau.derivative()
    t = tau.truncate(K)
    # (1 - tau^mu)/w has constant term -mu
    denom = (1 - fps_pow(tau, mu)).shift_down()
    wF = fps_pow(t, d - 1) * dtau * mu * fps_inv(denom)
    lead = wF[0]
    if (lead != -1) if is_exact(mu) else abs(lead + 1) > mu.context.ldexp(1, -mu.context.prec + 16):
        raise BranchError(f"residue at w = 0 is {lead}, expected -1")
    return GCoeffs(mu, delta, tuple(wF[2 * k + 1] for k in range(N)))


# -- B_j -------------------------------------------------------------------------


def B_coefficients(p: WrightParams, cs: CoefficientSet, x, m: int, M: int, ctx: PrecisionCtx | None = None) -> list:
    """``B_0 .. B_{M-1}`` for the Stokes-line expansion at ``kappa = 1``.

    ``B_j = sum_k (-2)^k (1/2)_k A_{j-k} g_2k(mu; j-k)`` with
    ``delta_i = mu (a + m) + theta - x - i``; ``m`` is the truncation index of
    the algebraic series actually used.
    """
    if not p.kappa_is_one:
        raise InvalidParams("B_j are defined for kappa = 1 only")
    if M > len(cs.c):
        raise InsufficientCoeffs(f"need {M} coefficients c_j, have {len(cs.c)}")
    ctx = ctx or PrecisionCtx()
    mp = ctx.mp
    mu = p.mu
    exact = p.is_rational and is_exact(x)
    if exact:
        nu = mu * (p.a + m) + p.theta
        base = nu - Fraction(x)
    else:
        mu = to_mp(mu, mp)
        base = mu * (to_mp(p.a, mp) + m) + to_mp(p.theta, mp) - to_mp(x, mp)
    gs = [g_even_generate(mu, base - i, M - i) for i in range(M)]
    c = cs.c if exact else tuple(to_mp(v, mp) for v in cs.c)
    out = []
    for j in range(M):
        s = 0
        for k in range(j + 1):
            coef = (-2) ** k * pochhammer(Fraction(1, 2), k)
            term = c[j - k] * gs[j - k][k]
            s = s + (coef * term if exact else to_mp(coef, mp) * term)
        out.append(_mul(cs.A0, s, mp))
    return out
