"""Independent reference values.

Two routes that share no code with :mod:`wrightpsi.evaluate`: trapezoidal
quadrature of the Mellin-Barnes integral for ``1Psi1(-x)`` when
``alpha = beta``, and the confluent hypergeometric series that the function
reduces to when ``alpha = beta = 1``.  Both use mpmath's own gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContourFailure, InvalidParams, KappaNotOne, TruncationFailure
from .numkernel import PrecisionCtx, is_real_value, to_mp
from .params import WrightParams, integer_value

__all__ = ["ContourSpec", "mb_quadrature", "mb_contour", "kummer_series"]

MAX_HEIGHT = 10_000
_MAX_HALVINGS = 14


@dataclass(frozen=True)
class ContourSpec:
    """Vertical line ``Re s = c_offset`` cut at ``|Im s| = height``, sampled at ``nodes`` points."""

    c_offset: float
    height: float
    nodes: int


def _mp_real(v, mp):
    v = to_mp(v, mp)
    if hasattr(v, "_mpc_") and v.imag == 0:
        return v.real
    return v


def _separating_interval(p: WrightParams) -> tuple[float, float]:
    upper = min(1.0, float(_mp_real(p.a, PrecisionCtx(64).mp).real) / float(p.alpha))
    if upper <= 0:
        raise ContourFailure("Re(a) <= 0: no straight contour separates the pole sequences")
    return 0.0, upper


def _integrand(p: WrightParams, mp, logx):
    a, b, alpha = to_mp(p.a, mp), to_mp(p.b, mp), to_mp(p.alpha, mp)

    def f(s):
        return mp.gamma(s) * mp.gamma(a - alpha * s) * mp.rgamma(b - alpha * s) * mp.exp(-s * logx)

    return f


def mb_contour(p: WrightParams, x, ctx: PrecisionCtx) -> ContourSpec:
    """Contour placement and height for ``mb_quadrature``; nodes left at zero until run."""
    if not p.kappa_is_one:
        raise KappaNotOne("the Mellin-Barnes oracle handles alpha = beta only")
    lo, hi = _separating_interval(p)
    c = (lo + hi) / 2
    mp = ctx.mp
    f = _integrand(p, mp, mp.log(to_mp(x, mp)))
    scale = abs(f(mp.mpf(c)))
    tol = mp.ldexp(scale, -ctx.bits - 8)

    def small(t):
        return abs(f(mp.mpc(c, t))) + abs(f(mp.mpc(c, -t))) < tol

    # the integrand decays like exp(-pi|t|/2) times a power of |t|
    hi_t = 8.0
    while not small(hi_t):
        hi_t *= 2
        if hi_t > MAX_HEIGHT:
            raise TruncationFailure(f"integrand still above tolerance at |Im s| = {MAX_HEIGHT}")
    lo_t = hi_t / 2
    for _ in range(20):
        mid = (lo_t + hi_t) / 2
        if small(mid):
            hi_t = mid
        else:
            lo_t = mid
    return ContourSpec(c_offset=c, height=hi_t, nodes=0)


def mb_quadrature(p: WrightParams, x, ctx: PrecisionCtx | None = None, with_spec: bool = False):
    """``1Psi1(-x)`` from ``(1/2 pi i) int Gamma(s) Gamma(a - alpha s)/Gamma(b - alpha s) x^-s ds``.

    The line ``Re s = c`` sits midway in ``(0, min(1, Re(a)/alpha))``.  Node
    spacing is halved until two successive trapezoidal sums agree to the
    working precision.
    """
    ctx = ctx or PrecisionCtx()
    if not float(x) > 0:
        raise InvalidParams("x must be positive")
    spec = mb_contour(p, x, ctx)
    # the sum can be much smaller than the integrand (e.g. exponentially small results)
    guard = 32 + math.ceil(float(x) * math.log2(math.e))
    wctx = ctx.extended(guard)
    mp = wctx.mp
    f = _integrand(p, mp, mp.log(to_mp(x, mp)))
    c = mp.mpf(spec.c_offset)
    T = mp.mpf(spec.height)
    # real parameters: the integrand at c - it is the conjugate of that at c + it
    symmetric = is_real_value(p.a) and is_real_value(p.b)

    def line_sum(start, step):
        # sum over t = start, start + step, ... up to T (and the mirror when needed)
        s = mp.zero
        t = start
        while t <= T:
            v = f(mp.mpc(c, t))
            if symmetric:
                s += 2 * v.real
            else:
                s += v + f(mp.mpc(c, -t))
            t += step
        return s

    h = mp.mpf(1) / 4
    center = f(mp.mpc(c, 0))
    total = center + line_sum(h, h)
    estimate = total * h / (2 * mp.pi)
    nodes = 1 + 2 * int(T / h)
    tol = mp.ldexp(mp.one, -ctx.bits - 4)
    for _ in range(_MAX_HALVINGS):
        h2 = h / 2
        total = total + line_sum(h2, h)
        new = total * h2 / (2 * mp.pi)
        nodes = 1 + 2 * int(T / h2)
        h = h2
        if abs(new - estimate) <= tol * abs(new):
            estimate = new
            break
        estimate = new
    else:
        raise TruncationFailure("trapezoidal sums did not settle")
    value = _mp_real(estimate, mp)
    if symmetric and hasattr(value, "_mpc_"):
        value = value.real
    value = ctx.mp.mpf(value) if not hasattr(value, "_mpc_") else ctx.mp.mpc(value)
    if with_spec:
        return value, ContourSpec(spec.c_offset, spec.height, nodes)
    return value


def kummer_series(a, b, z, ctx: PrecisionCtx | None = None):
    """``1F1(a; b; z) = sum (a)_r/(b)_r z^r/r!`` with guard bits against cancellation."""
    ctx = ctx or PrecisionCtx()
    n = integer_value(b)
    if n is not None and n <= 0:
        raise InvalidParams(f"b = {b} is a non-positive integer")
    r0 = float(abs(to_mp(z, PrecisionCtx(64).mp)))
    guard = 64 + math.ceil(r0 * math.log2(math.e))
    mp = ctx.extended(guard).mp
    aa, bb, zz = (_mp_real(v, mp) for v in (a, b, z))
    cutoff = mp.ldexp(mp.one, -(ctx.bits + guard))
    t = mp.one
    total = mp.one
    biggest = mp.one
    run = 0
    r = 0
    while run < 20:
        t = t * (aa + r) / (bb + r) * zz / (r + 1)
        r += 1
        total += t
        at = abs(t)
        biggest = max(biggest, at)
        run = run + 1 if at <= cutoff * biggest else 0
        if r > 1_000_000:
            raise TruncationFailure("hypergeometric series did not settle")
    return _mp_real(total, ctx.mp)
