"""Configurable-precision arithmetic and the gamma-function family.

Arithmetic is delegated to private :class:`mpmath.MPContext` instances (one
per precision, never mutated after creation), so nothing here touches the
global ``mpmath.mp`` state.  The gamma function itself is computed from the
Stirling series with argument raising and reflection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational

import mpmath

from .errors import PoleError
from .fps import TruncatedSeries, fps_exp

__all__ = [
    "PrecisionCtx",
    "mp_context",
    "to_mp",
    "is_real_value",
    "gamma",
    "rgamma",
    "gamma_star",
    "bernoulli_numbers",
    "stirling_coeffs",
    "StirlingCoeffs",
    "bits_for_digits",
]


@lru_cache(maxsize=64)
def mp_context(prec: int) -> mpmath.MPContext:
    """A private mpmath context at ``prec`` bits.  Treat as read-only."""
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


def bits_for_digits(digits: int) -> int:
    return max(64, math.ceil(digits * math.log2(10)) + 4)


@dataclass(frozen=True)
class PrecisionCtx:
    """Working precision: ``bits`` of mantissa plus ``guard_bits`` for cancellation."""

    bits: int = 170
    guard_bits: int = 0

    def __post_init__(self):
        if not isinstance(self.bits, int) or self.bits < 64:
            raise ValueError(f"bits must be an integer >= 64, got {self.bits!r}")
        if not isinstance(self.guard_bits, int) or self.guard_bits < 0:
            raise ValueError(f"guard_bits must be a non-negative integer, got {self.guard_bits!r}")

    @classmethod
    def from_digits(cls, digits: int, guard_bits: int = 0) -> PrecisionCtx:
        return cls(bits_for_digits(digits), guard_bits)

    @property
    def total(self) -> int:
        return self.bits + self.guard_bits

    @property
    def digits(self) -> int:
        return int(self.bits * math.log10(2))

    @cached_property
    def mp(self) -> mpmath.MPContext:
        return mp_context(self.total)

    def with_guard(self, guard_bits: int) -> PrecisionCtx:
        return PrecisionCtx(self.bits, guard_bits)

    def extended(self, extra: int) -> PrecisionCtx:
        return PrecisionCtx(self.bits, self.guard_bits + extra)

    @property
    def eps(self):
        """Relative accuracy target ``2**-bits`` as an mpf."""
        return self.mp.ldexp(self.mp.one, -self.bits)


def to_mp(v, mp: mpmath.MPContext):
    """Convert an int/Fraction/Decimal/float/complex/mpmath value into ``mp``."""
    if isinstance(v, Rational):
        return mp.mpf(int(v.numerator)) / int(v.denominator)
    if isinstance(v, Decimal):
        return mp.mpf(str(v))
    if isinstance(v, complex):
        return mp.mpc(v.real, v.imag)
    if isinstance(v, (mpmath.mpc, mpmath.ctx_mp_python.mpc)) or hasattr(v, "_mpc_"):
        return mp.mpc(v)
    return mp.mpf(v)


def is_real_value(v) -> bool:
    if isinstance(v, complex):
        return v.imag == 0
    if hasattr(v, "_mpc_"):
        return v.imag == 0
    return True


def _as_real_if_possible(z, mp):
    if hasattr(z, "_mpc_") and z.imag == 0:
        return mp.mpf(z.real)
    return z


def _nonpositive_integer(z) -> bool:
    if isinstance(z, Rational):
        return z.denominator == 1 and z <= 0
    if isinstance(z, complex):
        return z.imag == 0 and z.real <= 0 and z.real == int(z.real)
    if hasattr(z, "_mpc_"):
        if z.imag != 0:
            return False
        z = z.real
    return z <= 0 and z == int(z)


# -- Bernoulli / Stirling ------------------------------------------------------


@lru_cache(maxsize=8)
def _bernoulli_table(K: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for n in range(1, K + 1):
        if n >= 3 and n % 2 == 1:
            B.append(Fraction(0))
            continue
        s = sum(math.comb(n + 1, j) * B[j] for j in range(n) if B[j])
        B.append(-s / (n + 1))
    return tuple(B)


def bernoulli_numbers(K: int) -> list[Fraction]:
    """Exact ``B_0 .. B_K`` (``B_1 = -1/2``) from ``sum_j C(n+1, j) B_j = 0``."""
    if K < 0:
        raise ValueError("K must be non-negative")
    # share one cached table for all smaller requests
    size = max(16, 1 << max(K, 1).bit_length())
    return list(_bernoulli_table(size)[: K + 1])


@dataclass(frozen=True)
class StirlingCoeffs:
    """``gamma_k`` with ``Gamma*(z) ~ sum_k (-1)**k gamma_k z**-k``."""

    gamma_k: tuple[Fraction, ...]

    def __getitem__(self, k):
        return self.gamma_k[k]

    def __len__(self):
        return len(self.gamma_k)


def log_gamma_star_series(K: int) -> TruncatedSeries:
    """``log Gamma*(1/u)`` as a series in ``u`` through ``u**K``."""
    B = bernoulli_numbers(K + 1)
    cs = [Fraction(0)] * (K + 1)
    for m in range(1, K + 1, 2):
        # u^(2k-1) coefficient B_2k / (2k (2k-1)) with m = 2k-1
        cs[m] = B[m + 1] / ((m + 1) * m)
    return TruncatedSeries(cs)


@lru_cache(maxsize=32)
def _stirling(K: int) -> tuple[Fraction, ...]:
    g = fps_exp(log_gamma_star_series(K))
    return tuple((-1) ** k * c for k, c in enumerate(g.coeffs))


def stirling_coeffs(K: int) -> StirlingCoeffs:
    if K < 0:
        raise ValueError("K must be non-negative")
    return StirlingCoeffs(_stirling(K))


def gamma_star_series(K: int) -> TruncatedSeries:
    """``Gamma*(1/u) ~ sum (-1)**k gamma_k u**k`` as a rational series."""
    return fps_exp(log_gamma_star_series(K))


# -- gamma ----------------------------------------------------------------------


@lru_cache(maxsize=64)
def _stirling_log_terms(prec: int) -> tuple:
    """``B_2k/(2k(2k-1))`` as mpfs, enough for raised arguments at ``prec`` bits."""
    mp = mp_context(prec)
    kmax = int(0.5 * prec) + 8
    B = bernoulli_numbers(2 * kmax)
    return tuple(to_mp(B[2 * k] / (2 * k * (2 * k - 1)), mp) for k in range(1, kmax + 1))


def _raise_threshold(prec: int) -> int:
    return int(0.2 * prec) + 10


def _stirling_tail(w, mp, prec):
    """``sum_k B_2k / (2k (2k-1) w^(2k-1))`` for ``|w|`` above the raise threshold."""
    terms = _stirling_log_terms(prec)
    tol = mp.ldexp(mp.one, -prec - 4)
    winv = 1 / w
    winv2 = winv * winv
    p = winv
    s = mp.zero
    for c in terms:
        t = c * p
        s += t
        if abs(t) < tol:
            return s
        p *= winv2
    raise ArithmeticError("Stirling series did not converge; argument not raised enough")


def _log_gamma_raised(w, mp, prec):
    return (w - 0.5) * mp.log(w) - w + mp.log(2 * mp.pi) / 2 + _stirling_tail(w, mp, prec)


def _magnitude_guard(z) -> int:
    mag = min(float(abs(z)), 1e300)
    return int(mag * math.log2(mag + 2)).bit_length() if mag > 1 else 0


def _gamma_core(z, prec: int):
    """Gamma of an mp value ``z`` with Re(z) >= 1/2 in a context of ``prec`` bits."""
    mp = mp_context(prec)
    R = _raise_threshold(prec)
    x, y = mp.re(z), mp.im(z)
    n = 0
    if x * x + y * y < R * R:
        n = max(0, int(math.ceil(math.sqrt(max(R * R - float(y) ** 2, 0.0)) - float(x))) + 1)
    w = z + n
    lg = _log_gamma_raised(w, mp, prec)
    out = mp.exp(lg)
    if n:
        p = z
        for i in range(1, n):
            p *= z + i
        out /= p
    return out


def _gamma_mp(z, mp):
    """Gamma of an mp value at the precision of ``mp`` (with internal guard bits)."""
    prec = mp.prec
    guard = 24 + _magnitude_guard(z)
    hp = mp_context(prec + guard)
    zz = hp.mpc(z) if hasattr(z, "_mpc_") else hp.mpf(z)
    if hp.re(zz) < 0.5:
        # reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        out = hp.pi / (hp.sinpi(zz) * _gamma_core(1 - zz, hp.prec))
    else:
        out = _gamma_core(zz, hp.prec)
    return mp.mpc(out) if hasattr(out, "_mpc_") else mp.mpf(out)


def gamma(z, ctx: PrecisionCtx):
    """Gamma(z) with relative error below ``2**(-ctx.bits + 8)``.

    Real input gives an ``mpf``; complex input gives an ``mpc``.  Raises
    :class:`PoleError` at ``0, -1, -2, ...``.
    """
    if _nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z}")
    mp = ctx.mp
    zz = _as_real_if_possible(to_mp(z, mp), mp)
    if _nonpositive_integer(zz):
        raise PoleError(f"gamma has a pole at {z}")
    return _gamma_mp(zz, mp)


def rgamma(z, ctx: PrecisionCtx):
    """1/Gamma(z), exactly zero at the poles of Gamma."""
    mp = ctx.mp
    if _nonpositive_integer(z):
        return mp.zero
    zz = _as_real_if_possible(to_mp(z, mp), mp)
    if _nonpositive_integer(zz):
        return mp.zero
    return 1 / _gamma_mp(zz, mp)


def gamma_star(z, ctx: PrecisionCtx):
    """Scaled gamma ``Gamma(z) (2 pi)^(-1/2) e^z z^(1/2 - z)``, tending to 1 at infinity."""
    if _nonpositive_integer(z):
        raise PoleError(f"gamma_star has a pole at {z}")
    mp = ctx.mp
    zz = _as_real_if_possible(to_mp(z, mp), mp)
    guard = 16 + _magnitude_guard(zz)
    hp = mp_context(mp.prec + guard)
    zh = hp.mpc(zz) if hasattr(zz, "_mpc_") else hp.mpf(zz)
    R = _raise_threshold(hp.prec)
    if hp.re(zh) > 0 and abs(zh) >= R:
        # direct asymptotic form avoids cancelling the large exponents
        out = hp.exp(_stirling_tail(zh, hp, hp.prec))
    else:
        g = _gamma_mp(zh, hp)
        out = g * hp.exp(zh + (0.5 - zh) * hp.log(zh)) / hp.sqrt(2 * hp.pi)
    return mp.mpc(out) if hasattr(out, "_mpc_") else mp.mpf(out)
