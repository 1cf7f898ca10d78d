from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from wrightpsi.errors import BadConstantTerm, KindMismatch, NonzeroConstantTerm, NotInvertible
from wrightpsi.fps import (
    FLOAT,
    TruncatedSeries,
    fps_compose,
    fps_exp,
    fps_inv,
    fps_log,
    fps_mul,
    fps_pow,
    fps_reversion,
    series,
)
from wrightpsi.numkernel import mp_context

ORDER = 12
small = st.fractions(min_value=-5, max_value=5, max_denominator=9)


def rational_series(order=ORDER, const=None):
    head = st.just(F(const)) if const is not None else small
    return st.builds(lambda c0, rest: series([c0] + rest), head, st.lists(small, min_size=order, max_size=order))


X = TruncatedSeries.variable(ORDER)
ONE = TruncatedSeries.constant(1, ORDER)


def test_basic_products():
    x = TruncatedSeries.variable(2)
    assert ((1 + x) * (1 - x)).coeffs == (1, 0, -1)
    f = series([1, 1, F(1, 2)])
    g = series([1, -1, F(1, 2)])
    assert fps_mul(f, g).coeffs == (1, 0, 0)
    assert f * 1 == f


def test_order_is_min_of_operands():
    assert (series([1, 2, 3]) + series([1, 1])).order == 1
    assert (series([1, 2, 3]) * series([1, 1, 1, 1])).order == 2


def test_exp_log_examples():
    x = TruncatedSeries.variable(3)
    assert fps_exp(x).coeffs == (1, 1, F(1, 2), F(1, 6))
    assert fps_exp(series([0, 0, 0])).coeffs == (1, 0, 0)
    assert fps_log(1 + x).coeffs == (0, 1, F(-1, 2), F(1, 3))
    assert fps_log(series([1, 0, 0])).coeffs == (0, 0, 0)
    assert fps_exp(fps_log(1 + x)) == 1 + x
    assert fps_log((1 + x) ** 2) == 2 * fps_log(1 + x)


def test_pow_examples():
    x = TruncatedSeries.variable(3)
    assert ((1 + x) ** 2).truncate(2).coeffs == (1, 2, 1)
    half = fps_pow(1 + x, F(1, 2))
    assert half * half == 1 + x
    assert fps_pow(1 + x, -1).coeffs == (1, -1, 1, -1)


def test_reversion_examples():
    x = TruncatedSeries.variable(5)
    assert fps_reversion(x) == x
    assert fps_reversion(series([0, 1, 1])).coeffs == (0, 1, -1)


def test_errors():
    with pytest.raises(NonzeroConstantTerm):
        fps_exp(series([1, 1]))
    with pytest.raises(BadConstantTerm):
        fps_log(series([2, 1]))
    with pytest.raises(BadConstantTerm):
        fps_pow(series([3, 1]), F(1, 2))
    with pytest.raises(NotInvertible):
        fps_reversion(series([1, 1]))
    with pytest.raises(NotInvertible):
        fps_reversion(series([0, 0, 1]))
    with pytest.raises(NotInvertible):
        fps_inv(series([0, 1]))
    mp = mp_context(100)
    fl = series([mp.mpf(1), mp.mpf(2)])
    with pytest.raises(KindMismatch):
        fl * series([1, 1])
    with pytest.raises(KindMismatch):
        series([F(1), mp.mpf(1)])
    with pytest.raises(KindMismatch):
        fl + F(1, 3)


def test_float_kind_exp_with_constant():
    mp = mp_context(120)
    f = series([mp.mpf(1) / 2, mp.mpf(1), mp.zero], FLOAT)
    e = fps_exp(f)
    assert abs(e[0] - mp.exp(mp.mpf(1) / 2)) < mp.eps * 4
    assert abs(e[1] - mp.exp(mp.mpf(1) / 2)) < mp.eps * 4


@settings(max_examples=40, deadline=None)
@given(rational_series(), rational_series(), rational_series())
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert (f + g) - g == f


@settings(max_examples=40, deadline=None)
@given(rational_series())
def test_inverse(f):
    assume(f[0] != 0)
    assert f * fps_inv(f) == ONE
    assert f / f == ONE


@settings(max_examples=30, deadline=None)
@given(rational_series(const=1), rational_series(const=1))
def test_exp_log_inverse_pair(f, g):
    assert fps_exp(fps_log(f)) == f
    assert fps_log(f * g) == fps_log(f) + fps_log(g)


@settings(max_examples=30, deadline=None)
@given(rational_series(const=0))
def test_log_exp_inverse_pair(f):
    assert fps_log(fps_exp(f)) == f


@settings(max_examples=30, deadline=None)
@given(rational_series(const=1), st.fractions(min_value=-3, max_value=3, max_denominator=5),
       st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_pow_additivity(f, p, q):
    assert fps_pow(f, p) * fps_pow(f, q) == fps_pow(f, p + q)
    assert fps_log(fps_pow(f, p)) == fps_log(f) * p


@settings(max_examples=30, deadline=None)
@given(rational_series(const=0))
def test_reversion_composition(f):
    assume(f[1] != 0)
    g = fps_reversion(f)
    assert fps_compose(f, g) == X
    assert fps_compose(g, f) == X


def test_calculus_helpers():
    f = series([1, 2, 3, 4])
    assert f.derivative().coeffs == (2, 6, 12)
    assert f.integral().coeffs == (0, 1, 1, 1, 1)
    assert series([0, 5, 6]).shift_down().coeffs == (5, 6)
    with pytest.raises(NotInvertible):
        f.shift_down()
