"""Power means of the integers 1..x and their extensions.

``power_mean(x, m)`` is the Hölder mean of {1, ..., x}.  The remaining
functions study it away from that literal definition: its value at x = 0
(through Bernoulli numbers and zeta), its leading behaviour as x grows, the
symmetric average around m = -1, and the analogous means of the identity
function on [0, 1].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .special import EULER_GAMMA, bernoulli, log_gamma, zeta


class FitError(RuntimeError):
    """An asymptotic fit whose residual is too large to trust."""


@dataclass(frozen=True)
class MaybeComplex:
    """A real number or a principal-branch complex root.

    Build instances with :meth:`principal_root` or :meth:`real`; ``is_real``
    is true exactly when ``imag_part`` is zero.
    """

    real_part: float
    imag_part: float
    is_real: bool

    def __post_init__(self):
        if self.is_real != (self.imag_part == 0.0):
            raise ValueError("is_real must match imag_part == 0")

    @classmethod
    def real(cls, value: float) -> "MaybeComplex":
        return cls(float(value), 0.0, True)

    @classmethod
    def principal_root(cls, z: float, m: float) -> "MaybeComplex":
        """z**(1/m) = exp(Log z / m) with Log the principal logarithm."""
        if z == 0.0:
            if m < 0:
                raise ZeroDivisionError("0 ** (1/m) with m < 0")
            return cls.real(0.0)
        if z > 0.0:
            return cls.real(math.exp(math.log(z) / m))
        w = cmath.exp(cmath.log(complex(z, 0.0)) / m)
        return cls(w.real, w.imag, w.imag == 0.0)

    @property
    def abs(self) -> float:
        return math.hypot(self.real_part, self.imag_part)

    @property
    def arg(self) -> float:
        return math.atan2(self.imag_part, self.real_part)

    def __complex__(self) -> complex:
        return complex(self.real_part, self.imag_part)


# ---------------------------------------------------------------------------
# M_m(x) over {1..x}
# ---------------------------------------------------------------------------

def power_mean(x: int, m: float) -> float:
    """Hölder mean of order m of the integers 1..x.

    Terms are evaluated as expm1(m*log(k/c)) with c = x for m > 0 and c = 1
    otherwise, so no term overflows and small |m| keeps full relative
    accuracy.  m = 0 gives the geometric mean (x!)**(1/x).
    """
    if x < 1:
        raise ValueError(f"power_mean requires x >= 1, got {x}")
    x = int(x)
    # below 1e-20 the gap to the geometric mean, about |m| (log x)**2 / 2, is
    # under one rounding unit, while m*log(k) would start losing bits
    if abs(m) < 1e-20:
        return math.exp(log_gamma(x + 1.0) / x)
    k = np.arange(1, x + 1, dtype=np.float64)
    scale = float(x) if m > 0 else 1.0
    if m > 0:
        k /= scale
    u = np.expm1(m * np.log(k))
    mean_minus_one = math.fsum(u) / x
    return scale * math.exp(math.log1p(mean_minus_one) / m)


def harmonic_mean(x: int) -> float:
    return power_mean(x, -1.0)


def geometric_mean(x: int) -> float:
    return power_mean(x, 0.0)


# ---------------------------------------------------------------------------
# the x -> 0 extension
# ---------------------------------------------------------------------------

def mean_at_zero(m: int) -> MaybeComplex:
    """M_m(0) from Bernoulli numbers (m >= 2) or zeta values (m <= -2)."""
    m = int(m)
    if m == 0:
        raise ValueError("mean_at_zero is undefined at m = 0; the limit is exp(-gamma)")
    if m == 1:
        return MaybeComplex.real(0.5)
    if m == -1:
        return MaybeComplex.real(1.0 / zeta(2.0))
    if m >= 2:
        return MaybeComplex.principal_root(float(bernoulli(m)), m)
    return MaybeComplex.principal_root(-m * zeta(1.0 - m), m)


def mean_at_zero_unified(m: float) -> MaybeComplex:
    """(-m * zeta(1 - m)) ** (1/m) on the principal branch, for 0 < |m| <= 2."""
    if abs(m) < 1e-6:
        raise ValueError(f"|m| < 1e-6 hits the zeta pole; the m -> 0 limit is exp(-gamma), got m={m}")
    return MaybeComplex.principal_root(-m * zeta(1.0 - m), m)


def zeta_root_limit_part(x: float) -> float:
    """(-2 zeta(x)) ** (1/x), which tends to 2*pi as x -> 0."""
    return math.exp(math.log(-2.0 * zeta(x)) / x)


def cos_root_limit_part(x: float) -> float:
    """cos(pi x / 2) ** (1/x), which tends to 1 as x -> 0."""
    # cos y = 1 - 2 sin(y/2)**2 avoids cancellation for small y
    return math.exp(math.log1p(-2.0 * math.sin(math.pi * x / 4.0) ** 2) / x)


# ---------------------------------------------------------------------------
# asymptotics in x
# ---------------------------------------------------------------------------

FIT_LADDER = tuple(2 ** j for j in range(10, 21, 2))


@dataclass(frozen=True)
class AsymptoticFit:
    """Leading behaviour leading_coeff * x**leading_exponent of M_m(x).

    ``next_coeff`` multiplies x**next_exponent, the first correction in the
    fitted model.  ``residual`` is the largest relative misfit on the ladder.
    """

    leading_exponent: float
    leading_coeff: float
    next_coeff: float
    residual: float
    next_exponent: float = 0.0
    ladder: tuple[int, ...] = FIT_LADDER

    def __post_init__(self):
        if not self.residual >= 0.0:
            raise ValueError("residual must be >= 0")


def _model_basis(m: float) -> list[tuple[float, int]]:
    # (power of x, power of log x) for each basis function, dominant first
    if m == 0:
        return [(1.0, 0), (0.0, 1), (0.0, 0), (-1.0, 2)]
    if m > -1:
        eps = m + 1.0
        exps = {1.0, 0.0, -1.0}
        k = 1
        while 1.0 - k * eps > -1.0:
            exps.add(round(1.0 - k * eps, 12))
            k += 1
        return [(e, 0) for e in sorted(exps, reverse=True)[:4]]
    r = -m
    lead = 1.0 / r
    return [(lead, 0), (lead + (1.0 - r), 0), (lead - r, 0)]


def _basis_values(basis, xs: np.ndarray) -> np.ndarray:
    cols = [xs ** e * np.log(xs) ** lg for e, lg in basis]
    return np.column_stack(cols)


def asymptotic_fit(m: float, ladder: tuple[int, ...] = FIT_LADDER) -> AsymptoticFit:
    """Fit the large-x behaviour of power_mean(x, m) on a fixed ladder of x.

    For m > -1 the model is c1*x + c2*x**e2 + ... with the correction powers
    that the Euler-Maclaurin expansion of sum k**m produces; for m < -1 the
    leading power is x**(-1/m).  The leading exponent is measured
    independently from the log-log slope of the two largest ladder points.
    """
    if abs(m + 1.0) < 1e-9:
        raise ValueError("m = -1 changes regime (x / log x); use f_epsilon instead")
    xs = np.array(ladder, dtype=np.float64)
    ys = np.array([power_mean(int(x), m) for x in ladder])
    slope = math.log(ys[-1] / ys[-2]) / math.log(xs[-1] / xs[-2])

    basis = _model_basis(m)
    design = _basis_values(basis, xs) / ys[:, None]
    coef, *_ = np.linalg.lstsq(design, np.ones_like(ys), rcond=None)
    fitted = _basis_values(basis, xs) @ coef
    residual = float(np.max(np.abs(fitted - ys) / ys))

    expected_exponent = basis[0][0]
    if abs(slope - expected_exponent) > 0.05:
        raise FitError(f"log-log slope {slope:.6g} does not match model exponent {expected_exponent:.6g}")
    last_term = abs(coef[-1] * _basis_values(basis[-1:], xs[:1])[0, 0]) / ys[0]
    if residual > 10.0 * max(last_term, 1e-12):
        raise FitError(f"fit residual {residual:.3g} exceeds 10x next-order estimate {last_term:.3g}")

    return AsymptoticFit(
        leading_exponent=slope,
        leading_coeff=float(coef[0]),
        next_coeff=float(coef[1]),
        residual=residual,
        next_exponent=basis[1][0],
        ladder=tuple(ladder),
    )


def expected_leading_coeff(m: float) -> float:
    """(m+1)**(-1/m) for m > -1 (1/e at 0); zeta(-m)**(1/m) for m < -1."""
    if m == 0:
        return math.exp(-1.0)
    if m > -1:
        return (m + 1.0) ** (-1.0 / m)
    return zeta(-m) ** (1.0 / m)


def expected_next_coeff(m: float) -> float:
    """Constant term (m+1) / (2m (m+1)**(1/m)) of M_m(x) for m > 0."""
    return (m + 1.0) / (2.0 * m * (m + 1.0) ** (1.0 / m))


# ---------------------------------------------------------------------------
# approaching the harmonic mean
# ---------------------------------------------------------------------------

def f_epsilon(x: int, n: int) -> float:
    """(M_{-1+1/n}(x) + M_{-1-1/n}(x)) / 2."""
    if n < 2:
        raise ValueError(f"f_epsilon requires n >= 2, got {n}")
    eps = 1.0 / n
    return 0.5 * (power_mean(x, -1.0 + eps) + power_mean(x, -1.0 - eps))


def f_epsilon_leading(n: int) -> float:
    """Conjectured leading coefficient 1 / (2 n**(n/(n-1)))."""
    return 1.0 / (2.0 * n ** (n / (n - 1.0)))


def f_epsilon_fd_slope(x: int, n: int) -> float:
    """Raw finite-difference slope (F(2x) - F(x)) / x."""
    return (f_epsilon(2 * x, n) - f_epsilon(x, n)) / x


def _f_epsilon_correction_powers(n: int, count: int) -> list[float]:
    # F(x)/x = c + sum a_i x**(-d_i): the +eps mean contributes d = k/n, the
    # -eps mean d = 1/(n+1) + k/n (k >= 0), plus the integer orders
    eps = 1.0 / n
    ds = set()
    k = 0
    while len(ds) < 3 * count:
        ds.add(round((k + 1) * eps, 12))
        ds.add(round(1.0 / (n + 1) + k * eps, 12))
        ds.add(float(k + 1))
        k += 1
    return sorted(ds)[:count]


def f_epsilon_slope(n: int, ladder: tuple[int, ...] | None = None) -> float:
    """Extrapolated slope lim F(x, 1/n) / x.

    Finite-difference slopes s_j = (F(2 x_j) - F(x_j)) / x_j on a doubling
    ladder are Richardson-extrapolated, eliminating one correction power
    x**(-d) per sweep.  The raw slope converges only like x**(-1/(n+1)), so a
    single finite difference is far from the limit at practical x.
    """
    if ladder is None:
        ladder = tuple(2 ** j for j in range(8, 20))
    fs = {x: f_epsilon(x, n) for x in sorted(set(ladder) | {2 * x for x in ladder})}
    row = [(fs[2 * x] - fs[x]) / x for x in ladder]
    for d in _f_epsilon_correction_powers(n, len(row) - 1):
        f = 2.0 ** d
        row = [(f * row[i + 1] - row[i]) / (f - 1.0) for i in range(len(row) - 1)]
    return row[-1]


# ---------------------------------------------------------------------------
# the unit interval
# ---------------------------------------------------------------------------

def interval_mean(m: float) -> float:
    """Power mean of the identity on [0, 1]: (m+1)**(-1/m), 1/e at m = 0, 0 at m = -1."""
    if m == 0:
        return math.exp(-1.0)
    if m == -1:
        return 0.0
    if m < -1:
        raise ValueError(f"integral of x**m on [0, 1] diverges for m < -1, got m={m}")
    return (m + 1.0) ** (-1.0 / m)


EXP_MINUS_GAMMA = math.exp(-EULER_GAMMA)
