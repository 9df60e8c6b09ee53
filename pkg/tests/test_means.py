import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanlog.means import (
    EXP_MINUS_GAMMA,
    FitError,
    MaybeComplex,
    asymptotic_fit,
    cos_root_limit_part,
    expected_leading_coeff,
    expected_next_coeff,
    f_epsilon,
    f_epsilon_fd_slope,
    f_epsilon_leading,
    f_epsilon_slope,
    interval_mean,
    mean_at_zero,
    mean_at_zero_unified,
    power_mean,
    zeta_root_limit_part,
)
from meanlog.special import faulhaber, faulhaber_eval, zeta


def mp_power_mean(x, m):
    if m == 0:
        return float(mpmath.exp(mpmath.loggamma(x + 1) / x))
    # expm1/log1p keeps tiny |m| from rounding 1 + m log k to 1
    m = mpmath.mpf(m)
    u = mpmath.fsum(mpmath.expm1(m * mpmath.log(k)) for k in range(1, x + 1)) / x
    return float(mpmath.exp(mpmath.log1p(u) / m))


@pytest.mark.parametrize("x, m, expected", [(4, 1, 2.5), (3, -1, 18 / 11), (4, 0, 24 ** 0.25)])
def test_power_mean_examples(x, m, expected):
    assert power_mean(x, m) == pytest.approx(expected, rel=1e-14)


def test_power_mean_rejects_empty():
    with pytest.raises(ValueError):
        power_mean(0, 1.0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 400), st.floats(-40, 40))
def test_power_mean_against_mpmath(x, m):
    assert power_mean(x, m) == pytest.approx(mp_power_mean(x, m), rel=1e-12)


def test_power_mean_large_order_does_not_overflow():
    assert power_mean(10 ** 5, 200.0) == pytest.approx(mp_power_mean(10 ** 5, 200), rel=1e-12)
    assert power_mean(1000, -300.0) == pytest.approx(mp_power_mean(1000, -300), rel=1e-12)


def test_power_mean_ordering():
    orders = (-3, -2, -1, 0, 1, 2, 3)
    for x in range(2, 1001):
        vals = [power_mean(x, m) for m in orders]
        assert all(a < b for a, b in zip(vals, vals[1:])), x


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 2000), st.floats(-50, 50))
def test_power_mean_bounds(x, m):
    v = power_mean(x, m)
    assert 1.0 - 1e-12 <= v <= x * (1 + 1e-12)


@pytest.mark.parametrize("m", [2.2250738585e-313, -5e-324, 1e-25, 1e-19])
def test_power_mean_tiny_order_is_geometric(m):
    assert power_mean(2, m) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert power_mean(1000, m) == pytest.approx(power_mean(1000, 0), rel=1e-15)


def test_power_mean_at_one_is_one():
    for m in (-5.0, -1.0, 0.0, 0.3, 7.0):
        assert power_mean(1, m) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("x", [5, 50, 500])
def test_geometric_limit(x):
    g = power_mean(x, 0)
    assert abs(power_mean(x, 1e-6) - g) <= 1e-4 * g


def test_faulhaber_consistency():
    for m in range(1, 11):
        coeffs = faulhaber(m)
        for x in range(1, 31):
            exact = float(faulhaber_eval(coeffs, x))
            assert power_mean(x, m) ** m * x == pytest.approx(exact, rel=1e-12)


# --- MaybeComplex -------------------------------------------------------------

def test_maybe_complex_invariant():
    with pytest.raises(ValueError):
        MaybeComplex(1.0, 0.5, True)
    with pytest.raises(ValueError):
        MaybeComplex(1.0, 0.0, False)


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e6, 1e6).filter(lambda z: z != 0), st.integers(1, 12))
def test_principal_root_matches_cmath(z, m):
    r = MaybeComplex.principal_root(z, m)
    w = cmath.exp(cmath.log(complex(z)) / m)
    assert abs(complex(r) - w) <= 1e-12 * abs(w)
    assert r.is_real == (r.imag_part == 0.0)


# --- mean at zero ---------------------------------------------------------------

def test_mean_at_zero_examples():
    assert mean_at_zero(1).real_part == 0.5
    assert mean_at_zero(2).real_part == pytest.approx(1 / math.sqrt(6), rel=1e-15)
    assert mean_at_zero(-2).real_part == pytest.approx(1 / math.sqrt(2 * 1.2020569031595942), rel=1e-13)
    assert mean_at_zero(-1).real_part == pytest.approx(6 / math.pi ** 2, rel=1e-13)


def test_mean_at_zero_odd_orders_vanish():
    for m in (3, 5, 7, 9):
        v = mean_at_zero(m)
        assert v.is_real and v.real_part == 0.0


def test_mean_at_zero_m4_is_on_the_diagonal():
    v = mean_at_zero(4)
    assert not v.is_real
    assert v.abs == pytest.approx(30 ** -0.25, rel=1e-14)
    assert v.arg == pytest.approx(math.pi / 4, rel=1e-14)


def test_mean_at_zero_m6_is_real():
    # B_6 = 1/42 > 0
    v = mean_at_zero(6)
    assert v.is_real and v.real_part == pytest.approx(42 ** (-1 / 6), rel=1e-14)


def test_mean_at_zero_rejects_zero():
    with pytest.raises(ValueError):
        mean_at_zero(0)


@pytest.mark.parametrize("m", [k for j in range(1, 9) for k in (j, -j)])
def test_unified_formula_agrees(m):
    a, b = mean_at_zero(m), mean_at_zero_unified(m)
    assert abs(a.real_part - b.real_part) <= 1e-9
    assert abs(a.imag_part - b.imag_part) <= 1e-9


def test_unified_examples():
    assert mean_at_zero_unified(1).real_part == pytest.approx(0.5, rel=1e-14)
    assert mean_at_zero_unified(-1).real_part == pytest.approx(6 / math.pi ** 2, rel=1e-13)
    assert abs(mean_at_zero_unified(1e-3).real_part - EXP_MINUS_GAMMA) <= 5e-3


def test_unified_rejects_pole():
    with pytest.raises(ValueError):
        mean_at_zero_unified(5e-7)


def test_unified_converges_to_exp_minus_gamma():
    errs = [abs(mean_at_zero_unified(10.0 ** -j).real_part - EXP_MINUS_GAMMA) for j in (1, 2, 3)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 5e-3


def test_zeta_root_limit():
    assert zeta_root_limit_part(1e-4) == pytest.approx(2 * math.pi, rel=1e-2)


def test_cos_root_limit_part_matches_its_expansion():
    # log cos(pi x/2) / x = -pi**2 x / 8 + O(x**3)
    x = 1e-4
    assert cos_root_limit_part(x) == pytest.approx(math.exp(-math.pi ** 2 * x / 8), rel=1e-12)


# --- asymptotics ----------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4, -2, -3, -4])
def test_asymptotic_leading_coefficient(m):
    fit = asymptotic_fit(m)
    assert fit.leading_coeff == pytest.approx(expected_leading_coeff(m), rel=1e-2)
    expected_exp = 1.0 if m > -1 else -1.0 / m
    assert fit.leading_exponent == pytest.approx(expected_exp, abs=0.05)
    assert fit.residual >= 0


def test_asymptotic_examples():
    f2 = asymptotic_fit(2)
    assert f2.leading_coeff == pytest.approx(1 / math.sqrt(3), rel=1e-6)
    assert f2.next_coeff == pytest.approx(math.sqrt(3) / 4, rel=1e-4)
    fm2 = asymptotic_fit(-2)
    assert fm2.leading_coeff == pytest.approx(1 / math.sqrt(zeta(2.0)), rel=1e-6)
    f1 = asymptotic_fit(1)
    assert f1.leading_coeff == pytest.approx(0.5, rel=1e-9)
    assert f1.next_coeff == pytest.approx(0.5, rel=1e-6)


@pytest.mark.parametrize("m", [1, 2])
def test_asymptotic_next_coefficient(m):
    assert asymptotic_fit(m).next_coeff == pytest.approx(expected_next_coeff(m), rel=0.05)


def test_asymptotic_geometric_case():
    assert asymptotic_fit(0).leading_coeff == pytest.approx(math.exp(-1), rel=1e-6)


def test_asymptotic_fit_rejects_harmonic_order():
    with pytest.raises(ValueError):
        asymptotic_fit(-1.0)


def test_asymptotic_fit_is_deterministic():
    assert asymptotic_fit(3) == asymptotic_fit(3)


def test_asymptotic_fit_flags_wrong_model():
    # a ladder too short to separate the x**(1/2) and x**(-3/2) terms is still
    # fitted, but a model pinned to the wrong regime must be rejected
    with pytest.raises(FitError):
        asymptotic_fit(-1.02, ladder=(16, 32, 64, 128))


# --- F(x, 1/n) ------------------------------------------------------------------

def test_f_epsilon_is_average_of_two_means():
    x, n = 1000, 3
    assert f_epsilon(x, n) == pytest.approx(
        0.5 * (power_mean(x, -1 + 1 / n) + power_mean(x, -1 - 1 / n)), rel=1e-15)


def test_f_epsilon_rejects_small_n():
    with pytest.raises(ValueError):
        f_epsilon(10, 1)


@pytest.mark.parametrize("n, expected", [(2, 1 / 8), (3, 1 / math.sqrt(108)), (4, 2048 ** (-1 / 3))])
def test_f_epsilon_leading_formula(n, expected):
    assert f_epsilon_leading(n) == pytest.approx(expected, rel=1e-14)


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_f_epsilon_extrapolated_slope(n):
    assert f_epsilon_slope(n) == pytest.approx(f_epsilon_leading(n), rel=0.02)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.xfail(strict=True, reason=(
    "a single finite difference at x = 2**18 is biased by the x**(-1/(n+1)) "
    "correction: measured errors 2.05%, 7.1%, 15.2%, 25.4% for n = 2..5"))
def test_f_epsilon_raw_slope_at_2_18(n):
    x = 2 ** 18
    assert f_epsilon_fd_slope(x, n) == pytest.approx(f_epsilon_leading(n), rel=0.02)


def test_f_epsilon_raw_slope_approaches_from_one_side():
    # the bias shrinks as x grows, which is what extrapolation exploits
    n = 3
    errs = [abs(f_epsilon_fd_slope(2 ** j, n) / f_epsilon_leading(n) - 1) for j in (12, 15, 18)]
    assert errs[0] > errs[1] > errs[2]


# --- unit interval --------------------------------------------------------------

@pytest.mark.parametrize("m, expected", [(1, 0.5), (0, math.exp(-1)), (-1, 0.0)]
                         + [(m, (m + 1) ** (-1 / m)) for m in range(2, 7)])
def test_interval_mean(m, expected):
    assert interval_mean(m) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("m", [0.5, 2.0, -0.5])
def test_interval_mean_against_quadrature(m):
    integral = mpmath.quad(lambda t: t ** m, [0, 1])
    assert interval_mean(m) == pytest.approx(float(integral ** (1 / mpmath.mpf(m))), rel=1e-12)


def test_interval_mean_rejects_divergent():
    with pytest.raises(ValueError):
        interval_mean(-2.0)


def test_interval_mean_is_limit_of_scaled_power_mean():
    for m in (1.0, 2.0, 0.5):
        assert power_mean(10 ** 5, m) / 10 ** 5 == pytest.approx(interval_mean(m), rel=1e-4)


def test_exp_minus_gamma_constant():
    assert EXP_MINUS_GAMMA == pytest.approx(float(mpmath.exp(-mpmath.euler)), rel=1e-15)
