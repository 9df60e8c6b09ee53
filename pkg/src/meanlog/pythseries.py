"""Factorial-damped series: h(x) = sum_{k>=1} k**x / k! and sum_{k>=0} (x+k)/k!.

At nonnegative integers h(n) = Bell(n) * e.  Under this definition the k = 1
term is 1 for every x, so h(x) -> 1 (not 0) as x -> -inf.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .special import SeriesValue

H_REL_TARGET = 1e-13
_EXACT_REL_TARGET = 2.0 ** -64  # below one rounding unit of the result
ARITH_REL_TARGET = 1e-14
_MAX_TERMS = 10_000
_EXACT_MAX_X = 40


def _h_tail(next_term: float, k_next: int, x: float) -> float:
    """Bound on sum_{k >= k_next} k**x/k! given its first term.

    Consecutive ratios ((k+1)/k)**x / (k+1) decrease in k for x >= 0 and are
    at most 1/(k+1) for x < 0, so the tail is geometric once the first ratio
    drops below 1.
    """
    r = ((k_next + 1) / k_next) ** max(x, 0.0) / (k_next + 1)
    return math.inf if r >= 1.0 else next_term / (1.0 - r)


def _log_term(k: int, x: float) -> float:
    return x * math.log(k) - math.lgamma(k + 1)


def dobinski_h(x: float) -> SeriesValue:
    """h(x) = sum_{k>=1} k**x / k!, summed in ascending k.

    Stops at the first K whose certified tail is at most 1e-13 times the
    partial sum.  Integer x in [0, 40] is summed in exact rationals until the
    tail is below one rounding unit, then rounded once, so h(n)/e recovers
    Bell(n) to within float rounding.
    """
    exact = float(x).is_integer() and 0 <= x <= _EXACT_MAX_X
    xi = int(x) if exact else 0
    target = _EXACT_REL_TARGET if exact else H_REL_TARGET
    terms: list[float] = []
    total = Fraction(0)
    fact = 1
    for k in range(1, _MAX_TERMS + 1):
        if exact:
            fact *= k
            total += Fraction(k ** xi, fact)
        else:
            terms.append(math.exp(_log_term(k, x)))
        partial = float(total) if exact else math.fsum(terms)
        nxt = math.exp(_log_term(k + 1, x))
        tail = _h_tail(nxt, k + 1, x)
        if tail <= target * partial:
            return SeriesValue(partial, tail, k)
    raise ArithmeticError(f"dobinski_h({x}) did not converge in {_MAX_TERMS} terms")


def arith_factorial(x: float) -> SeriesValue:
    """sum_{k>=0} (x+k)/k!, which equals e*(x+1).

    The tail after index K is at most |x| * 2/(K+1)! + 2/K!.
    """
    terms = []
    for k in range(_MAX_TERMS):
        terms.append((x + k) / math.factorial(k))
        tail = abs(x) * 2.0 / math.factorial(k + 1) + 2.0 / math.factorial(k)
        value = math.fsum(terms)
        if tail <= ARITH_REL_TARGET * (abs(value) + 1.0):
            return SeriesValue(value, tail, k + 1)
    raise ArithmeticError(f"arith_factorial({x}) did not converge")
