"""Power means, zeta and Bernoulli values, prime-counting bounds and log series."""

from .logseries import golden_verify, log_partial_exact, log_series, power_log_v1, power_log_v1_closed, power_log_v2
from .means import MaybeComplex, asymptotic_fit, f_epsilon, interval_mean, mean_at_zero, mean_at_zero_unified, power_mean
from .primes import PrimeTable, hm_ratio, pi, sieve, verify_chebyshev_harmonic
from .pythseries import arith_factorial, dobinski_h
from .report import VerificationReport
from .special import (
    EULER_GAMMA,
    SeriesValue,
    bell,
    bernoulli,
    digamma,
    exp_integral_ei,
    faulhaber,
    gen_harmonic,
    harmonic_exact,
    log_gamma,
    zeta,
)
from .suite import SuiteConfig, run_verify_all

__version__ = "0.1.0"
