"""Parameter quadruple ``(a, b, alpha, beta)`` and the quantities derived from it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

from .errors import InvalidParams
from .numkernel import PrecisionCtx, mp_context, to_mp


def is_exact(v) -> bool:
    return isinstance(v, Rational)


def _is_real(v) -> bool:
    if isinstance(v, complex):
        return v.imag == 0
    if hasattr(v, "_mpc_"):
        return v.imag == 0
    return True


def _real(v):
    if isinstance(v, complex):
        return v.real
    if hasattr(v, "_mpc_"):
        return v.real
    return v


def _near_integer(v, tol=1e-12) -> bool:
    if is_exact(v):
        return Fraction(v).denominator == 1
    v = float(v)
    return abs(v - round(v)) <= tol * max(1.0, abs(v))


def integer_value(v) -> int | None:
    """``v`` as an int if it is (exactly, or to 1e-12 for floats) a real integer."""
    if not _is_real(v):
        return None
    v = _real(v)
    return int(round(float(v))) if _near_integer(v) else None


def _iroot(n: int, k: int) -> int | None:
    if n < 0:
        return None
    r = round(n ** (1.0 / k)) if n < 2**1000 else int(Decimal(n) ** (Decimal(1) / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def exact_power(base, exponent) -> Fraction | None:
    """``base**exponent`` as a Fraction when both are rational and the result is."""
    if not (is_exact(base) and is_exact(exponent)):
        return None
    base, exponent = Fraction(base), Fraction(exponent)
    if base == 1 or exponent == 0:
        return Fraction(1)
    if base <= 0:
        return None
    q = exponent.denominator
    if q == 1:
        return base ** exponent.numerator
    num, den = _iroot(base.numerator, q), _iroot(base.denominator, q)
    if num is None or den is None:
        return None
    return Fraction(num, den) ** exponent.numerator


def power(base, exponent, mp):
    """Exact power when possible, else an mp value."""
    e = exact_power(base, exponent)
    if e is not None:
        return e
    return to_mp(base, mp) ** to_mp(exponent, mp)


PARAM_PREC = 2048


def _as_param_mp(v):
    mp = mp_context(PARAM_PREC)
    try:
        return to_mp(v, mp)
    except (TypeError, ValueError) as exc:
        raise InvalidParams(f"cannot interpret {v!r} as a number") from exc


@dataclass(frozen=True)
class WrightParams:
    """The Wright function parameters.

    ``a`` and ``b`` may be complex; ``alpha`` and ``beta`` must be real and
    positive.  Ints and Fractions are kept exact, which enables the exact
    coefficient path.
    """

    a: object
    b: object
    alpha: object
    beta: object

    def __post_init__(self):
        vals = {}
        for name in ("a", "b", "alpha", "beta"):
            v = getattr(self, name)
            if isinstance(v, bool) or v is None or isinstance(v, str):
                raise InvalidParams(f"{name} must be a number, got {v!r}")
            vals[name] = Fraction(v) if isinstance(v, int) else v
        if not all(is_exact(v) for v in vals.values()):
            # mixed or inexact input: everything moves to one high-precision context
            vals = {n: _as_param_mp(v) for n, v in vals.items()}
        for name in ("alpha", "beta"):
            v = vals[name]
            if not _is_real(v):
                raise InvalidParams(f"{name} must be real, got {v!r}")
            vals[name] = _real(v)
            if not vals[name] > 0:
                raise InvalidParams(f"{name} must be positive, got {v!r}")
        for name in ("a", "b"):
            if hasattr(vals[name], "_mpc_") and vals[name].imag == 0:
                vals[name] = vals[name].real
        for n, v in vals.items():
            object.__setattr__(self, n, v)
        self._check_numerator_poles()

    def _check_numerator_poles(self):
        # alpha r + a must avoid 0, -1, -2, ...
        a, alpha = self.a, self.alpha
        if not _is_real(a):
            return
        a = _real(a)
        if a > 0:
            return
        rmax = int(math.floor(float(-a) / float(alpha))) + 1
        for r in range(rmax + 1):
            v = alpha * r + a
            if v <= 0 and _near_integer(v):
                raise InvalidParams(f"alpha*r + a = {v} is a pole of the numerator gamma (r={r})")

    @property
    def is_rational(self) -> bool:
        return all(is_exact(getattr(self, n)) for n in ("a", "b", "alpha", "beta"))

    @property
    def kappa(self):
        return 1 + self.beta - self.alpha

    @property
    def theta(self):
        return self.a - self.b

    @property
    def mu(self):
        return 1 / Fraction(self.alpha) if is_exact(self.alpha) else 1 / self.alpha

    @property
    def kappa_is_one(self) -> bool:
        if is_exact(self.alpha) and is_exact(self.beta):
            return self.alpha == self.beta
        return abs(float(self.alpha) - float(self.beta)) <= 1e-15 * float(self.alpha)

    def h(self, mp=None):
        """``alpha**alpha * beta**(-beta)``; exact when possible, else an mp value."""
        if is_exact(self.alpha) and self.alpha == self.beta:
            return Fraction(1)
        mp = mp or PrecisionCtx().mp
        p1, p2 = power(self.alpha, self.alpha, mp), power(self.beta, -self.beta, mp)
        return p1 * p2 if (is_exact(p1) and is_exact(p2)) else to_mp(p1, mp) * to_mp(p2, mp)

    def as_strings(self, digits: int = 30) -> dict:
        out = {}
        for n in ("a", "b", "alpha", "beta"):
            v = getattr(self, n)
            out[n] = str(v) if is_exact(v) else v.context.nstr(v, digits)
        return out


@dataclass(frozen=True)
class DerivedParams:
    kappa: object
    h: object
    theta: object
    mu: object


def derive_params(p: WrightParams, ctx: PrecisionCtx | None = None) -> DerivedParams:
    mp = (ctx or PrecisionCtx()).mp
    return DerivedParams(kappa=p.kappa, h=p.h(mp), theta=p.theta, mu=p.mu)
