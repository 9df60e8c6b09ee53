"""The full verification suite: one aggregate report per acceptance check.

Checks run sequentially in declaration order.  Each aggregate report lists
its individual comparisons under ``details["subchecks"]``; ``computed`` is
the number of failing subchecks.  Wall-clock budgets are recorded in
``details`` but never affect ``passed``, which keeps reports deterministic.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

from . import logseries, means, primes, pythseries, special
from .golden import load_table
from .report import VerificationReport, compare

DEFAULT_LIMIT = 10 ** 6
DEFAULT_PRECISION = 1e-9


@dataclass(frozen=True)
class SuiteConfig:
    limit: int = DEFAULT_LIMIT  # sieve limit for the prime checks
    precision: float = DEFAULT_PRECISION  # slack added to series tail bounds

    def __post_init__(self):
        if not 2 <= self.limit <= primes.MAX_LIMIT:
            raise ValueError(f"limit must be in [2, {primes.MAX_LIMIT}], got {self.limit}")
        if not self.precision > 0:
            raise ValueError(f"precision must be > 0, got {self.precision}")


def _sub(report: VerificationReport) -> dict:
    d = report.to_dict()
    del d["runtime_ms"]
    return d


def _aggregate(name: str, reference: str, subs: list[VerificationReport], t0: float,
               budget_s: float | None = None, **details) -> VerificationReport:
    failing = [s.check_name for s in subs if not s.passed]
    details = dict(details, subchecks=[_sub(s) for s in subs], failing=failing)
    if budget_s is not None:
        details["runtime_budget_ms"] = int(budget_s * 1000)
    return VerificationReport(
        check_name=name,
        reference=reference,
        expected=0,
        computed=len(failing),
        tolerance=0.0,
        passed=not failing,
        kind="exact",
        runtime_ms=int((time.perf_counter() - t0) * 1000),
        details=details,
    )


def _flag(name: str, reference: str, ok: bool, **details) -> VerificationReport:
    return compare(name, reference, 1, int(bool(ok)), 0.0, kind="exact", **details)


# ---------------------------------------------------------------------------
# checks, in declaration order
# ---------------------------------------------------------------------------

def check_telescoping(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    bad = [(m, b) for m in range(2, 11) for b in range(1, 101)
           if logseries.log_partial_exact(m, b)
           != special.harmonic_exact(m * b) - special.harmonic_exact(b)]
    sub = compare("telescoping:m=2..10,b=1..100", "S_b = H_mb - H_b in exact rationals",
                  0, len(bad), 0.0, kind="exact", mismatches=bad[:10])
    return _aggregate("01_telescoping", "partial sums of the double series telescope", [sub], t0, 5)


def check_log_series(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    subs = [compare(f"log_series:m={m}", "double series converges to log m",
                    math.log(m), logseries.log_series(m).value, 1e-10)
            for m in range(2, 21)]
    return _aggregate("02_log_series", "double series for log m", subs, t0, 1)


def check_v1_conjecture(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    subs = []
    for m in range(2, 10):
        for p in range(2, 7):
            s = logseries.power_log_v1(m, p)
            subs.append(compare(f"v1_conjecture:m={m}:p={p}",
                                "first power logarithm equals (m**(p-1)-1)/m**(p-1) zeta(p)",
                                logseries.power_log_v1_closed(m, p), s.value,
                                s.tail_bound + cfg.precision, tail_bound=s.tail_bound))
    return _aggregate("03_v1_conjecture", "closed form of the first power logarithm", subs, t0, 30)


def check_golden(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    table = load_table()
    subs = [logseries.verify_entry(e, cfg.precision) for e in table.select(variant=2, tag="")]
    subs += [r for r in logseries.pattern_reports(table)
             if r.check_name.split(":")[1] in
             ("log2_central_binomial", "zeta2_half_of_log2", "leading_coefficient")]
    return _aggregate("04_golden_v2", "second power logarithm closed forms and coefficient laws",
                      subs, t0, 60)


def check_v2_decay(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    vals = {p: logseries.power_log_v2(2, p) for p in range(2, 11)}
    decreasing = all(vals[p + 1].value + vals[p + 1].tail_bound < vals[p].value for p in range(2, 10))
    subs = [
        _flag("v2_decay:strictly_decreasing:p=2..10", "second power logarithm of 2 decreases in p",
              decreasing, values=[vals[p].value for p in range(2, 11)]),
        VerificationReport("v2_decay:below_1e-4:p=6",
                           "second power logarithm of 2 at p=6 is below 1e-4",
                           "< 1e-4", vals[6].value, 1e-4, vals[6].value < 1e-4, "bound",
                           details={"n1_term": 2.0 ** -6}),
    ]
    squeeze = logseries.power_log_v2_decay(10)
    subs.append(VerificationReport(squeeze.check_name, squeeze.reference, squeeze.expected,
                                   squeeze.computed, squeeze.tolerance, squeeze.passed,
                                   squeeze.kind, 0, squeeze.details))
    return _aggregate("05_v2_decay", "second power logarithm of 2 tends to 0", subs, t0)


def check_chebyshev(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    limit = min(cfg.limit, DEFAULT_LIMIT)
    table = primes.sieve(limit)
    report = primes.verify_chebyshev_harmonic(table, limit)
    sub = VerificationReport(report.check_name, report.reference, report.expected, report.computed,
                             report.tolerance, report.passed, report.kind, 0, report.details)
    return _aggregate("06_chebyshev_harmonic", "1/6 < pi(x) H_x / x < 20/3 for all x >= 2",
                      [sub], t0, 10, limit=limit)


def check_hm_trend(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    table = primes.sieve(cfg.limit)
    ks = [k for k in range(3, 7) if 10 ** k <= cfg.limit]
    ratios = {k: primes.hm_ratio(table, 10 ** k) for k in ks}
    devs = [abs(ratios[k] - 1.0) for k in ks]
    subs = [_flag(f"hm_trend:nonincreasing:k={ks[0] if ks else '-'}..{ks[-1] if ks else '-'}",
                  "|pi(x) H_x / x - 1| is nonincreasing over x = 10**k",
                  all(b <= a for a, b in zip(devs, devs[1:])),
                  ratios={str(10 ** k): r for k, r in ratios.items()})]
    if 6 in ratios:
        subs.append(compare("hm_trend:range:x=10**6", "pi(x) H_x / x within 0.15 of 1 at x = 10**6",
                            1.0, ratios[6], 0.15))
    return _aggregate("07_hm_trend", "pi(x) is asymptotic to the harmonic mean of 1..x", subs, t0,
                      limit=cfg.limit)


def check_asymptotics(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    subs = []
    for m in (1, 2, 3, 4, -2, -3, -4):
        fit = means.asymptotic_fit(m)
        subs.append(compare(f"asymptotic:leading:m={m}",
                            "leading coefficient (m+1)**(-1/m) for m > -1, zeta(-m)**(1/m) for m < -1",
                            means.expected_leading_coeff(m), fit.leading_coeff, 0.01, kind="rel",
                            exponent=fit.leading_exponent, residual=fit.residual))
        if m in (1, 2):
            subs.append(compare(f"asymptotic:next:m={m}", "constant term (m+1)/(2m (m+1)**(1/m))",
                                means.expected_next_coeff(m), fit.next_coeff, 0.05, kind="rel"))
    return _aggregate("08_mean_asymptotics", "large-x behaviour of the power mean", subs, t0)


def check_f_epsilon(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    subs = [compare(f"f_epsilon:slope:n={n}", "F(x, 1/n) ~ x / (2 n**(n/(n-1)))",
                    means.f_epsilon_leading(n), means.f_epsilon_slope(n), 0.02, kind="rel")
            for n in range(2, 6)]
    return _aggregate("09_f_epsilon", "symmetric average of power means around m = -1", subs, t0)


def check_mean_at_zero(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    subs = []
    for m in [k for j in range(1, 9) for k in (j, -j)]:
        a, b = means.mean_at_zero(m), means.mean_at_zero_unified(m)
        err = max(abs(a.real_part - b.real_part), abs(a.imag_part - b.imag_part))
        subs.append(compare(f"mean_at_zero:unified:m={m}", "M_m(0) equals (-m zeta(1-m))**(1/m)",
                            0.0, err, 1e-9, direct=[a.real_part, a.imag_part],
                            unified=[b.real_part, b.imag_part]))
    m4 = means.mean_at_zero(4)
    subs.append(_flag("mean_at_zero:m=4:non_real", "M_4(0) is not real", not m4.is_real))
    subs.append(compare("mean_at_zero:m=4:modulus", "|M_4(0)| = 30**(-1/4)",
                        30.0 ** -0.25, m4.abs, 1e-12))
    return _aggregate("10_mean_at_zero", "power mean extended to x = 0", subs, t0)


def check_exp_minus_gamma(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    errs = [abs(means.mean_at_zero_unified(10.0 ** -j).real_part - means.EXP_MINUS_GAMMA)
            for j in (1, 2, 3)]
    subs = [
        compare("exp_minus_gamma:m=1e-3", "M_m(0) -> exp(-gamma) as m -> 0",
                0.0, errs[2], 5e-3, limit=means.EXP_MINUS_GAMMA),
        _flag("exp_minus_gamma:error_decreasing", "error decreases over m = 1e-1, 1e-2, 1e-3",
              errs[0] > errs[1] > errs[2], errors=errs),
        compare("zeta_root:x=1e-4", "(-2 zeta(x))**(1/x) -> 2 pi",
                2.0 * math.pi, means.zeta_root_limit_part(1e-4), 1e-2, kind="rel"),
        compare("cos_root:x=1e-4", "(cos(pi x / 2))**(1/x) -> 1",
                1.0, means.cos_root_limit_part(1e-4), 1e-6),
    ]
    return _aggregate("11_exp_minus_gamma", "limit of M_m(0) at m = 0 and its two factors", subs, t0)


def check_interval_means(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    cases = [(1, 0.5), (0, math.exp(-1.0)), (-1, 0.0)]
    cases += [(m, (m + 1.0) ** (-1.0 / m)) for m in range(2, 7)]
    subs = [compare(f"interval_mean:m={m}", "power mean of the identity on [0, 1]",
                    v, means.interval_mean(m), 1e-12) for m, v in cases]
    return _aggregate("12_interval_means", "power means on the unit interval", subs, t0)


def check_dobinski(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    subs = [compare(f"dobinski:bell:n={n}", "h(n) = Bell(n) e",
                    float(special.bell(n)), pythseries.dobinski_h(n).value / math.e, 1e-9)
            for n in range(1, 13)]
    subs.append(compare("dobinski:h(0)", "h(0) = e - 1", math.e - 1.0,
                        pythseries.dobinski_h(0).value, 1e-10))
    subs.append(compare("dobinski:h(-1)", "h(-1) = Ei(1) - gamma",
                        special.exp_integral_ei(1.0) - special.EULER_GAMMA,
                        pythseries.dobinski_h(-1).value, 1e-10))
    subs.append(compare("dobinski:h(-2)", "h(-2) = 1.14649907 to the printed digits",
                        1.14649907, pythseries.dobinski_h(-2).value, 5e-8))
    return _aggregate("13_dobinski", "factorial-damped power series", subs, t0)


def check_special(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    subs = []
    for s in (-0.5, 0.25, 0.5, 0.75):
        subs.append(compare(f"zeta:reflection:s={s}", "functional equation reproduces zeta(s)",
                            special.zeta(s), special.zeta_functional(s, special.zeta(1.0 - s)),
                            1e-10, kind="rel"))
    for m in range(2, 31, 2):
        subs.append(compare(f"bernoulli:zeta:m={m}", "B_m = -m zeta(1-m)",
                            float(special.bernoulli(m)), -m * special.zeta(1.0 - m), 1e-10, kind="rel"))
    worst = 0.0
    for q in range(0, 101):
        odd = math.fsum(1.0 / (2 * k - 1) for k in range(1, q + 1))
        ref = -special.EULER_GAMMA - 2.0 * math.log(2.0) + 2.0 * odd
        worst = max(worst, abs(special.digamma(q + 0.5) - ref))
    subs.append(compare("digamma:half_integer:q=0..100",
                        "psi(q + 1/2) = -gamma - 2 log 2 + 2 sum_{k<=q} 1/(2k-1)", 0.0, worst, 1e-11))
    return _aggregate("14_special_functions", "special-function cross-checks", subs, t0)


CHECKS: tuple[Callable[[SuiteConfig], VerificationReport], ...] = (
    check_telescoping,
    check_log_series,
    check_v1_conjecture,
    check_golden,
    check_v2_decay,
    check_chebyshev,
    check_hm_trend,
    check_asymptotics,
    check_f_epsilon,
    check_mean_at_zero,
    check_exp_minus_gamma,
    check_interval_means,
    check_dobinski,
    check_special,
)


def run_verify_all(cfg: SuiteConfig | None = None) -> list[VerificationReport]:
    """Run every check in declaration order; a raising check becomes a failed report."""
    cfg = cfg or SuiteConfig()
    out = []
    for check in CHECKS:
        t0 = time.perf_counter()
        try:
            out.append(check(cfg))
        except Exception as exc:  # noqa: BLE001  one broken check must not abort the suite
            out.append(VerificationReport(
                check.__name__, "check raised", 0, 1, 0.0, False, "exact",
                int((time.perf_counter() - t0) * 1000),
                {"error": f"{type(exc).__name__}: {exc}"}))
    return out
