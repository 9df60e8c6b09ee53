"""Exact and floating special functions shared by every other module.

Exact quantities (harmonic numbers, Bernoulli numbers, Faulhaber
coefficients) are returned as :class:`fractions.Fraction`, which is kept in
lowest terms with a positive denominator after every operation.  Floating
series are accumulated with :func:`math.fsum`, so results do not depend on
summation order or on how work is split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

ExactRational = Fraction

EULER_GAMMA = 0.57721566490153286060651209008240243
LOG_2PI = 1.8378770664093454835606594728112353

ZETA_POLE_GUARD = 1e-6


@dataclass(frozen=True)
class SeriesValue:
    """A floating series result with a bound on its truncation error."""

    value: float
    tail_bound: float
    terms_used: int

    def __post_init__(self):
        if not self.tail_bound >= 0.0:
            raise ValueError(f"tail_bound must be >= 0, got {self.tail_bound!r}")
        if self.terms_used < 0:
            raise ValueError(f"terms_used must be >= 0, got {self.terms_used!r}")

    def __float__(self) -> float:
        return self.value


# ---------------------------------------------------------------------------
# exact rationals
# ---------------------------------------------------------------------------

def _reciprocal_sum(lo: int, hi: int) -> tuple[int, int]:
    """Unreduced (p, q) with p/q = sum of 1/k for lo <= k < hi."""
    if hi - lo == 1:
        return 1, lo
    mid = (lo + hi) // 2
    p1, q1 = _reciprocal_sum(lo, mid)
    p2, q2 = _reciprocal_sum(mid, hi)
    return p1 * q2 + p2 * q1, q1 * q2


def harmonic_exact(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n as an exact fraction (binary splitting)."""
    if n < 1:
        raise ValueError(f"harmonic_exact requires n >= 1, got {n}")
    p, q = _reciprocal_sum(1, n + 1)
    return Fraction(p, q)


def gen_harmonic(n: int, r: float) -> float:
    """Generalized harmonic number sum_{k=1..n} k**(-r) in floating point."""
    if n < 1:
        raise ValueError(f"gen_harmonic requires n >= 1, got {n}")
    k = np.arange(1, n + 1, dtype=np.float64)
    return math.fsum(np.power(k, -float(r)))


@lru_cache(maxsize=None)
def _bernoulli_minus(m: int) -> Fraction:
    # B_m with B_1 = -1/2, from sum_{j=0}^{m} C(m+1, j) B_j = 0
    if m == 0:
        return Fraction(1)
    if m == 1:
        return Fraction(-1, 2)
    if m % 2:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(m):
        bj = _bernoulli_minus(j)
        if bj:
            acc += math.comb(m + 1, j) * bj
    return -acc / (m + 1)


def bernoulli(m: int, plus_convention: bool = False) -> Fraction:
    """Bernoulli number B_m.

    The default convention has B_1 = -1/2; ``plus_convention=True`` gives
    B_1 = +1/2.  Every other index is identical in both conventions.
    """
    if m < 0:
        raise ValueError(f"bernoulli requires m >= 0, got {m}")
    b = _bernoulli_minus(m)
    if m == 1 and plus_convention:
        return -b
    return b


def faulhaber(m: int) -> list[Fraction]:
    """Coefficients of S_m(x) = sum_{k=1..x} k**m, degree m+1 down to degree 1.

    S_m(x) = 1/(m+1) * sum_j C(m+1, j) B_j^+ x^(m+1-j); the constant term is 0
    and is not included.
    """
    if m < 1:
        raise ValueError(f"faulhaber requires m >= 1, got {m}")
    return [
        Fraction(math.comb(m + 1, j)) * bernoulli(j, plus_convention=True) / (m + 1)
        for j in range(m + 1)
    ]


def faulhaber_eval(coeffs: list[Fraction], x: int) -> Fraction:
    """Evaluate a :func:`faulhaber` coefficient list at integer x."""
    acc = Fraction(0)
    for c in coeffs:
        acc = (acc + c) * x
    return acc


def bell(n: int) -> int:
    """n-th Bell number from the Bell triangle, in exact integers."""
    if n < 0:
        raise ValueError(f"bell requires n >= 0, got {n}")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


# ---------------------------------------------------------------------------
# floating special functions
# ---------------------------------------------------------------------------

def sinpi(x: float) -> float:
    """sin(pi*x), exactly zero at integers and exactly +-1 at half-integers."""
    r = math.fmod(x, 2.0)
    if r < 0:
        r += 2.0
    if r == 0.0 or r == 1.0:
        return 0.0
    if r == 0.5:
        return 1.0
    if r == 1.5:
        return -1.0
    if r > 1.0:
        return -math.sin(math.pi * (r - 1.0))
    return math.sin(math.pi * r)


_STIRLING_SHIFT = 10.0


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0 via the Stirling series after an upward shift.

    Positive integer arguments are evaluated as log((x-1)!) so the zeros at
    x = 1 and x = 2 come out exactly.
    """
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    if float(x).is_integer() and x <= 1000:
        return math.log(math.factorial(int(x) - 1))
    shift = 1.0
    while x < _STIRLING_SHIFT:
        shift *= x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # B_{2k} / (2k (2k-1) x^{2k-1})
    corr = 0.0
    power = inv
    for k in range(1, 9):
        b = _bernoulli_minus(2 * k)
        corr += float(b) / (2 * k * (2 * k - 1)) * power
        power *= inv2
    stirling = (x - 0.5) * math.log(x) - x + 0.5 * LOG_2PI + corr
    return stirling - math.log(shift)


def digamma(x: float) -> float:
    """psi(x) = d/dx log Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"digamma requires x > 0, got {x}")
    shifts = []
    while x < _STIRLING_SHIFT:
        shifts.append(1.0 / x)
        x += 1.0
    inv2 = 1.0 / (x * x)
    power = inv2
    terms = [math.log(x), -0.5 / x]
    for k in range(1, 9):
        terms.append(-float(_bernoulli_minus(2 * k)) / (2 * k) * power)
        power *= inv2
    terms.extend(-s for s in shifts)
    return math.fsum(terms)


def exp_integral_ei_series(x: float) -> SeriesValue:
    """Ei(x) = gamma + log x + sum_{k>=1} x^k / (k k!) with its tail bound."""
    if not x > 0:
        raise ValueError(f"exp_integral_ei requires x > 0, got {x}")
    terms = [EULER_GAMMA, math.log(x)]
    t = 1.0  # x^k / k!
    k = 0
    while True:
        k += 1
        t *= x / k
        terms.append(t / k)
        # geometric tail once x/(k+2) < 1: sum_{j>k} x^j/(j j!) <= next/(1 - x/(k+2))
        ratio = x / (k + 2)
        if ratio < 0.5:
            nxt = t * x / (k + 1) / (k + 1)
            bound = nxt / (1.0 - ratio)
            value = math.fsum(terms)
            if bound <= 1e-16 * abs(value):
                return SeriesValue(value, bound, k)


def exp_integral_ei(x: float) -> float:
    """Exponential integral Ei(x) for x > 0."""
    return exp_integral_ei_series(x).value


def _zeta_em(s: float) -> SeriesValue:
    """Euler-Maclaurin evaluation of zeta(s) for real s > -1/2, s != 1.

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{j=1..K} B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1) + R_K,
    and for real s with s + 2K + 1 > 0 the remainder satisfies |R_K| <= |T_{K+1}|.
    """
    n_cut = 20
    while True:
        ns = np.arange(1, n_cut, dtype=np.float64)
        head = [math.fsum(np.power(ns, -s)),
                n_cut ** (1.0 - s) / (s - 1.0),
                0.5 * n_cut ** (-s)]
        base = math.fsum(head)
        rising = s  # s(s+1)...(s+2j-2)
        npow = n_cut ** (-s - 1.0)
        corrections = []
        prev = math.inf
        for j in range(1, 40):
            b = _bernoulli_minus(2 * j)
            term = float(b) / math.factorial(2 * j) * rising * npow
            if abs(term) > prev:
                break  # asymptotic terms started to grow
            if abs(term) <= 1e-17 * abs(base) or term == 0.0:
                value = math.fsum(head + corrections)
                return SeriesValue(value, abs(term), n_cut)
            corrections.append(term)
            prev = abs(term)
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            npow /= n_cut * n_cut
        n_cut *= 2


def zeta_series(s: float) -> SeriesValue:
    """zeta(s) together with a bound on the Euler-Maclaurin remainder."""
    if abs(s - 1.0) < ZETA_POLE_GUARD:
        raise ValueError(f"zeta has a pole at s = 1 (|s - 1| < {ZETA_POLE_GUARD}), got s={s}")
    if s > -0.5:
        return _zeta_em(s)
    inner = _zeta_em(1.0 - s)
    factor = _reflection_factor(s)
    return SeriesValue(factor * inner.value, abs(factor) * inner.tail_bound, inner.terms_used)


def _reflection_factor(s: float) -> float:
    # 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), assembled in log space
    sn = sinpi(s / 2.0)
    if sn == 0.0:
        return 0.0
    log_mag = s * math.log(2.0) + (s - 1.0) * math.log(math.pi) + log_gamma(1.0 - s)
    return sn * math.exp(log_mag)


def zeta(s: float) -> float:
    """Riemann zeta function for real s with |s - 1| >= 1e-6.

    s > -1/2 uses Euler-Maclaurin summation; s <= -1/2 is reduced to the
    s > 1 regime with the functional equation
    zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s).
    """
    return zeta_series(s).value


def zeta_functional(s: float, zeta_one_minus_s: float) -> float:
    """Right-hand side of the functional equation given zeta(1 - s)."""
    return _reflection_factor(s) * zeta_one_minus_s
