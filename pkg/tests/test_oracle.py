from fractions import Fraction as F

import pytest

from wrightpsi.errors import ContourFailure, InvalidParams, KappaNotOne
from wrightpsi.evaluate import eval_series
from wrightpsi.numkernel import PrecisionCtx, to_mp
from wrightpsi.oracle import ContourSpec, kummer_series, mb_contour, mb_quadrature
from wrightpsi.params import WrightParams

EXAMPLE = WrightParams(F(1, 3), F(7, 3), F(1, 3), F(1, 3))


def rel(a, b):
    return abs(a - b) / abs(b)


def test_quadrature_closed_form():
    ctx = PrecisionCtx.from_digits(40)
    mp = ctx.mp
    x = mp.mpf(5)
    want = 3 * (1 / x - 6 / x**4) + 9 * mp.exp(-x) / x**2 * (1 + 2 / x + 2 / x**2)
    value, spec = mb_quadrature(EXAMPLE, 5, ctx, with_spec=True)
    assert rel(value, want) < 1e-20
    assert isinstance(spec, ContourSpec) and spec.nodes > 1
    assert 0 < spec.c_offset < 1


@pytest.mark.parametrize("a,b,alpha", [(F(1, 2), F(1, 4), F(1, 3)), (F(3, 4), F(1, 4), F(3, 2)),
                                       (F(1, 2), F(5, 2), F(3, 4))])
def test_quadrature_agrees_with_series(a, b, alpha):
    ctx = PrecisionCtx.from_digits(25)
    p = WrightParams(a, b, alpha, alpha)
    assert rel(mb_quadrature(p, 10, ctx), eval_series(p, -10, ctx).value) < 1e-15


def test_quadrature_small_x():
    ctx = PrecisionCtx.from_digits(25)
    p = WrightParams(F(1, 2), F(1, 4), F(1, 3), F(1, 3))
    assert rel(mb_quadrature(p, F(1, 2), ctx), eval_series(p, F(-1, 2), ctx).value) < 1e-15


def test_quadrature_self_convergence():
    p = WrightParams(F(3, 4), F(1, 4), F(3, 2), F(3, 2))
    lo = mb_quadrature(p, 3, PrecisionCtx.from_digits(20))
    hi = mb_quadrature(p, 3, PrecisionCtx.from_digits(30))
    assert rel(to_mp(lo, hi.context), hi) < 1e-18


def test_oracle_errors():
    ctx = PrecisionCtx.from_digits(20)
    with pytest.raises(ContourFailure):
        mb_quadrature(WrightParams(F(-1, 3), 1, F(1, 2), F(1, 2)), 3, ctx)
    with pytest.raises(KappaNotOne):
        mb_contour(WrightParams(1, 1, F(1, 2), 1), 3, ctx)
    with pytest.raises(InvalidParams):
        mb_quadrature(EXAMPLE, -1, ctx)
    with pytest.raises(InvalidParams):
        kummer_series(1, -2, 1, ctx)


def test_kummer_special_values():
    ctx = PrecisionCtx.from_digits(40)
    mp = ctx.mp
    assert kummer_series(F(1, 3), F(5, 2), 0, ctx) == 1
    z = mp.mpf(-17) / 2
    assert rel(kummer_series(F(7, 3), F(7, 3), z, ctx), mp.exp(z)) < 1e-38
    assert rel(kummer_series(F(1, 3), F(5, 2), z, ctx), mp.hyp1f1(mp.mpf(1) / 3, mp.mpf(5) / 2, z)) < 1e-38


def test_kummer_matches_series_for_unit_alpha():
    ctx = PrecisionCtx.from_digits(40)
    mp = ctx.mp
    a, b, z = F(5, 3), F(1, 2), -30
    want = eval_series(WrightParams(a, b, 1, 1), z, ctx).value
    got = mp.gamma(to_mp(a, mp)) / mp.gamma(to_mp(b, mp)) * kummer_series(a, b, z, ctx)
    assert rel(got, want) < 1e-35
