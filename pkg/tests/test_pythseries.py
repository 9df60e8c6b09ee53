import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanlog.pythseries import arith_factorial, dobinski_h
from meanlog.special import EULER_GAMMA, bell, exp_integral_ei


def mp_h(x):
    return mpmath.nsum(lambda k: mpmath.power(k, x) / mpmath.factorial(k), [1, mpmath.inf])


@pytest.mark.parametrize("x, expected", [(1, math.e), (0, math.e - 1)])
def test_h_examples(x, expected):
    assert dobinski_h(x).value == pytest.approx(expected, rel=1e-15)


def test_h_minus_one_is_ei_minus_gamma():
    assert abs(dobinski_h(-1).value - (exp_integral_ei(1.0) - EULER_GAMMA)) <= 1e-10
    assert dobinski_h(-1).value == pytest.approx(1.3179021514544, abs=1e-12)


def test_h_minus_two():
    assert abs(dobinski_h(-2).value - 1.14649907) <= 5e-8


@pytest.mark.parametrize("n", range(1, 13))
def test_dobinski_bell(n):
    assert abs(dobinski_h(n).value / math.e - bell(n)) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(st.floats(-30, 30))
def test_h_against_mpmath(x):
    s = dobinski_h(x)
    ref = float(mp_h(x))
    assert abs(s.value - ref) <= s.tail_bound + 1e-14 * ref


@settings(max_examples=60, deadline=None)
@given(st.floats(-30, 30))
def test_h_tail_bound_target(x):
    s = dobinski_h(x)
    assert 0 <= s.tail_bound <= 1e-12 * s.value
    assert s.terms_used >= 1


def test_h_increasing_and_limits():
    xs = [-20, -10, -5, -2, -1, -0.5, 0, 0.5, 1, 2, 5, 10, 20]
    vals = [dobinski_h(x).value for x in xs]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[0] < 1.01
    assert vals[-1] > 1e9


def test_h_tends_to_one_not_zero():
    # the k = 1 term is 1 for every x
    assert dobinski_h(-60).value == pytest.approx(1.0, abs=1e-15)
    assert dobinski_h(-30).value > 1.0


@pytest.mark.parametrize("x, expected", [(0, math.e), (1, 2 * math.e), (-1, 0.0)])
def test_arith_examples(x, expected):
    assert arith_factorial(x).value == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("x", [-3, -1, 0, 0.5, 1, 10])
def test_arith_closed_form(x):
    s = arith_factorial(x)
    assert abs(s.value - math.e * (x + 1)) <= 1e-12 * (abs(x) + 1)
    assert s.tail_bound <= 1e-13 * (abs(s.value) + 1)


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e6, 1e6))
def test_arith_property(x):
    s = arith_factorial(x)
    assert abs(s.value - math.e * (x + 1)) <= 1e-12 * (abs(x) + 1)
