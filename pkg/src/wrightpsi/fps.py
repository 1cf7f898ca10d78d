"""Truncated univariate power series over exact rationals or mpmath numbers.

A :class:`TruncatedSeries` of order ``N`` knows the coefficients of
``x**0 .. x**N``.  Binary operations truncate to the smaller order.  A series
is either of *rational* kind (``int``/``Fraction`` coefficients, exact) or of
*float* kind (mpmath ``mpf``/``mpc`` coefficients); the two never mix.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import BadConstantTerm, KindMismatch, NonzeroConstantTerm, NotInvertible

RATIONAL = "rational"
FLOAT = "float"


def scalar_kind(c) -> str | None:
    """``RATIONAL`` for ints/Fractions, ``None`` for plain ints (compatible with both)."""
    if isinstance(c, bool):
        raise KindMismatch("bool is not a series scalar")
    if isinstance(c, int):
        return None
    if isinstance(c, Rational):
        return RATIONAL
    return FLOAT


def _norm(c):
    # ints become Fractions so that rational series stay homogeneous
    if isinstance(c, int):
        return Fraction(c)
    return c


class TruncatedSeries:
    __slots__ = ("coeffs", "kind")

    def __init__(self, coeffs: Iterable, kind: str | None = None):
        cs = tuple(coeffs)
        if not cs:
            raise ValueError("a series needs at least one coefficient")
        kinds = {k for k in map(scalar_kind, cs) if k is not None}
        if len(kinds) > 1:
            raise KindMismatch("mixed rational and float coefficients")
        inferred = kinds.pop() if kinds else (kind or RATIONAL)
        if kind is not None and kind != inferred:
            raise KindMismatch(f"coefficients are {inferred}, requested {kind}")
        if inferred == RATIONAL:
            cs = tuple(Fraction(c) for c in cs)
        self.coeffs = cs
        self.kind = inferred

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, c, order: int, kind: str | None = None) -> TruncatedSeries:
        zero = Fraction(0) if scalar_kind(c) != FLOAT else c * 0
        return cls([_norm(c)] + [zero] * order, kind)

    @classmethod
    def variable(cls, order: int, kind: str = RATIONAL, one=None) -> TruncatedSeries:
        """The series ``x`` to the given order (``one`` supplies a float-kind unit)."""
        if kind == FLOAT:
            if one is None:
                raise ValueError("float-kind variable needs a unit scalar")
            zero = one * 0
        else:
            one, zero = Fraction(1), Fraction(0)
        cs = [zero] * (order + 1)
        if order >= 1:
            cs[1] = one
        return cls(cs, kind)

    # -- basic protocol ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"TruncatedSeries([{terms}], order={self.order})"

    def _zero(self):
        return self.coeffs[0] * 0

    def _check(self, other: TruncatedSeries) -> None:
        if self.kind != other.kind:
            raise KindMismatch(f"{self.kind} series combined with {other.kind} series")

    def _check_scalar(self, c) -> None:
        k = scalar_kind(c)
        if k is not None and k != self.kind:
            raise KindMismatch(f"{k} scalar combined with {self.kind} series")

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError("cannot raise the order of a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], self.kind)

    # -- ring operations --------------------------------------------------

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self.coeffs], self.kind)

    def __add__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            self._check(other)
            n = min(len(self), len(other))
            return TruncatedSeries([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], self.kind)
        self._check_scalar(other)
        return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:], self.kind)

    __radd__ = __add__

    def __sub__(self, other) -> TruncatedSeries:
        return self + (-other)

    def __rsub__(self, other) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return fps_mul(self, other)
        self._check_scalar(other)
        return TruncatedSeries([c * other for c in self.coeffs], self.kind)

    __rmul__ = __mul__

    def __truediv__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return fps_mul(self, fps_inv(other))
        self._check_scalar(other)
        if scalar_kind(other) is None:
            other = Fraction(other) if self.kind == RATIONAL else other
        return TruncatedSeries([c / other for c in self.coeffs], self.kind)

    def __rtruediv__(self, other) -> TruncatedSeries:
        return fps_inv(self) * other

    def __pow__(self, e) -> TruncatedSeries:
        if isinstance(e, int) and e >= 0:
            out = TruncatedSeries.constant(1 if self.kind == RATIONAL else self.coeffs[0] * 0 + 1,
                                           self.order, self.kind)
            base = self
            while e:
                if e & 1:
                    out = out * base
                base = base * base
                e >>= 1
            return out
        return fps_pow(self, e)

    # -- calculus ---------------------------------------------------------

    def derivative(self) -> TruncatedSeries:
        """Derivative; the order drops by one (order 0 gives the zero series)."""
        if self.order == 0:
            return TruncatedSeries([self._zero()], self.kind)
        return TruncatedSeries([k * self.coeffs[k] for k in range(1, len(self))], self.kind)

    def integral(self) -> TruncatedSeries:
        cs = [self._zero()] + [self.coeffs[k] / (k + 1) for k in range(len(self))]
        if self.kind == RATIONAL:
            cs = [Fraction(c) for c in cs]
        return TruncatedSeries(cs, self.kind)

    def shift_down(self) -> TruncatedSeries:
        """Divide by ``x``; requires a zero constant term, order drops by one."""
        if self.coeffs[0] != 0:
            raise NotInvertible("constant term must vanish to divide by x")
        if self.order == 0:
            raise NotInvertible("nothing left after dividing an order-0 series by x")
        return TruncatedSeries(self.coeffs[1:], self.kind)

    def __call__(self, g: TruncatedSeries) -> TruncatedSeries:
        return fps_compose(self, g)


def fps_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the smaller order."""
    f._check(g)
    n = min(len(f), len(g))
    a, b = f.coeffs, g.coeffs
    out = []
    for k in range(n):
        s = a[0] * b[k]
        for i in range(1, k + 1):
            s += a[i] * b[k - i]
        out.append(s)
    return TruncatedSeries(out, f.kind)


def fps_inv(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    a = f.coeffs
    if a[0] == 0:
        raise NotInvertible("series with zero constant term has no inverse")
    inv0 = 1 / a[0] if f.kind == FLOAT else Fraction(1) / a[0]
    h = [inv0]
    for n in range(1, len(a)):
        s = a[1] * h[n - 1]
        for k in range(2, n + 1):
            s += a[k] * h[n - k]
        h.append(-s * inv0)
    return TruncatedSeries(h, f.kind)


def fps_exp(f: TruncatedSeries) -> TruncatedSeries:
    """Formal exponential via ``(exp f)' = f' exp f``."""
    a = f.coeffs
    if a[0] != 0:
        if f.kind == RATIONAL:
            raise NonzeroConstantTerm("exp of a rational series needs a zero constant term")
        scale = a[0].context.exp(a[0])
        a = (a[0] * 0,) + a[1:]
    else:
        scale = None
    g = [Fraction(1) if f.kind == RATIONAL else a[0] * 0 + 1]
    for n in range(1, len(a)):
        s = a[1] * g[n - 1]
        for k in range(2, n + 1):
            s += k * a[k] * g[n - k]
        g.append(s / n)
    out = TruncatedSeries(g, f.kind)
    return out * scale if scale is not None else out


def fps_log(f: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1."""
    a = f.coeffs
    if a[0] != 1:
        raise BadConstantTerm(f"log needs constant term 1, got {a[0]}")
    g = [a[0] * 0]
    for n in range(1, len(a)):
        s = n * a[n]
        for k in range(1, n):
            s -= k * g[k] * a[n - k]
        g.append(s / n)
    return TruncatedSeries(g, f.kind)


def fps_pow(f: TruncatedSeries, e) -> TruncatedSeries:
    """``f**e = exp(e log f)`` for a series with constant term 1."""
    if f.coeffs[0] != 1:
        raise BadConstantTerm(f"pow needs constant term 1, got {f.coeffs[0]}")
    if isinstance(e, int):
        e = Fraction(e) if f.kind == RATIONAL else e
    return fps_exp(fps_log(f) * e)


def fps_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f(g(x))`` for ``g(0) = 0``, by Horner's rule."""
    f._check(g)
    if g.coeffs[0] != 0:
        raise NotInvertible("inner series of a composition must have zero constant term")
    n = min(f.order, g.order)
    g = g.truncate(n)
    out = TruncatedSeries.constant(f.coeffs[n], n, f.kind)
    for k in range(n - 1, -1, -1):
        out = fps_mul(out, g) + f.coeffs[k]
    return out


def fps_reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``g`` with ``f(g(x)) = x`` (Lagrange inversion)."""
    a = f.coeffs
    if f.order < 1 or a[0] != 0 or a[1] == 0:
        raise NotInvertible("reversion needs f(0) = 0 and f'(0) != 0")
    n = f.order
    # h = x / f(x); then [x^k] g = [t^(k-1)] h^k / k
    h = fps_inv(f.shift_down())
    zero = a[0] * 0
    out = [zero]
    power = TruncatedSeries.constant(1 if f.kind == RATIONAL else zero + 1, h.order, f.kind)
    for k in range(1, n + 1):
        power = fps_mul(power, h)
        out.append(power.coeffs[k - 1] / k)
    return TruncatedSeries(out, f.kind)


def series(coeffs: Sequence, kind: str | None = None) -> TruncatedSeries:
    return TruncatedSeries(coeffs, kind)
