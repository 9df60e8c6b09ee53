"""Segmented odd-only sieve, pi(x), and the harmonic-mean prime estimate.

The harmonic mean of 1..x is x / H_x; these helpers compare it with pi(x).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .report import VerificationReport
from .special import gen_harmonic

BLOCK_BITS = 16
BLOCK = 1 << BLOCK_BITS  # numbers per checkpoint block
_SLOTS_PER_BLOCK = BLOCK // 2  # odd slots per block
_SEGMENT_SLOTS = 1 << 18  # odd slots sieved at once (8 blocks)

MAX_LIMIT = 10 ** 9
LOWER_BOUND = 1.0 / 6.0
UPPER_BOUND = 6.0 + 2.0 / 3.0


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Primes up to ``limit``.

    ``bitmap`` holds one bit per odd number (bit i <-> 2i + 1, little-endian
    within each byte).  ``pi_checkpoints[b]`` is the number of odd primes
    below b * 2**16.
    """

    limit: int
    bitmap: np.ndarray
    pi_checkpoints: np.ndarray

    def __post_init__(self):
        self.bitmap.setflags(write=False)
        self.pi_checkpoints.setflags(write=False)

    @property
    def n_slots(self) -> int:
        return (self.limit + 1) // 2

    def popcount(self) -> int:
        """Number of primes <= limit counted directly from the bitmap."""
        bits = np.unpackbits(self.bitmap, bitorder="little")[: self.n_slots]
        return int(bits.sum()) + (1 if self.limit >= 2 else 0)

    def is_prime(self, n: int) -> bool:
        if n > self.limit or n < 0:
            raise ValueError(f"{n} outside sieved range [0, {self.limit}]")
        if n == 2:
            return True
        if n < 2 or n % 2 == 0:
            return False
        i = n // 2
        return bool((self.bitmap[i >> 3] >> (i & 7)) & 1)

    def primes(self) -> np.ndarray:
        bits = np.unpackbits(self.bitmap, bitorder="little")[: self.n_slots]
        odd = 2 * np.flatnonzero(bits) + 1
        return np.concatenate(([2], odd)) if self.limit >= 2 else odd

    def pi_array(self) -> np.ndarray:
        """pi(x) for every x in 0..limit, as an int64 array."""
        flags = np.zeros(self.limit + 1, dtype=np.int64)
        bits = np.unpackbits(self.bitmap, bitorder="little")[: self.n_slots]
        flags[1::2] = bits[: len(flags[1::2])]
        if self.limit >= 2:
            flags[2] = 1
        return np.cumsum(flags)


def _base_primes(n: int) -> list[int]:
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [p for p in range(3, n + 1) if flags[p]]


def sieve(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes over odd numbers, in segments of 2**18 slots."""
    if not 2 <= limit <= MAX_LIMIT:
        raise ValueError(f"sieve limit must be in [2, {MAX_LIMIT}], got {limit}")
    n_slots = (limit + 1) // 2
    base = _base_primes(math.isqrt(limit))
    packed = []
    block_counts = []
    for lo in range(0, n_slots, _SEGMENT_SLOTS):
        hi = min(lo + _SEGMENT_SLOTS, n_slots)
        seg = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            seg[0] = False  # 1 is not prime
        for p in base:
            first = p * p // 2  # slot of p*p
            if first >= hi:
                break
            if first < lo:
                # smallest slot >= lo congruent to first modulo p
                first += -(-(lo - first) // p) * p
            seg[first - lo :: p] = False
        for b in range(0, len(seg), _SLOTS_PER_BLOCK):
            block_counts.append(int(np.count_nonzero(seg[b : b + _SLOTS_PER_BLOCK])))
        packed.append(np.packbits(seg, bitorder="little"))
    checkpoints = np.concatenate(([0], np.cumsum(block_counts, dtype=np.int64)))
    return PrimeTable(limit, np.concatenate(packed), checkpoints)


def pi(table: PrimeTable, x: int) -> int:
    """Number of primes <= x, from a checkpoint plus a partial popcount."""
    if x > table.limit:
        raise ValueError(f"x={x} exceeds sieve limit {table.limit}")
    if x < 2:
        return 0
    last = (x - 1) // 2  # last odd slot <= x
    block = last // _SLOTS_PER_BLOCK
    start = block * _SLOTS_PER_BLOCK
    chunk = table.bitmap[start // 8 : last // 8 + 1]
    bits = np.unpackbits(chunk, bitorder="little")[: last - start + 1]
    return 1 + int(table.pi_checkpoints[block]) + int(bits.sum())


def hm_ratio(table: PrimeTable, x: int) -> float:
    """pi(x) * H_x / x, i.e. pi(x) divided by the harmonic mean of 1..x."""
    if x < 2:
        raise ValueError(f"hm_ratio requires x >= 2, got {x}")
    return pi(table, x) * gen_harmonic(x, 1.0) / x


def harmonic_prefix(limit: int) -> tuple[np.ndarray, float]:
    """H_1..H_limit by running summation, with a worst-case rounding bound.

    Recursive summation of n positive terms errs by at most (n-1) u sum|x_i|
    (u the unit roundoff); the bound below uses 2u to cover the reciprocals'
    own rounding.  Entry 0 is H_0 = 0.
    """
    recip = np.concatenate(([0.0], 1.0 / np.arange(1, limit + 1, dtype=np.float64)))
    h = np.cumsum(recip)
    bound = max(limit - 1, 0) * np.finfo(np.float64).eps * float(h[-1])
    return h, bound


def verify_chebyshev_harmonic(table: PrimeTable, limit: int) -> VerificationReport:
    """Check 1/6 < pi(x) H_x / x < 20/3 for every integer x in [2, limit]."""
    if limit > table.limit:
        raise ValueError(f"limit={limit} exceeds sieve limit {table.limit}")
    if limit < 2:
        raise ValueError("limit must be >= 2")
    t0 = time.perf_counter()
    pis = table.pi_array()[: limit + 1]
    h, h_err = harmonic_prefix(limit)
    xs = np.arange(2, limit + 1)
    ratios = pis[2:] * h[2:] / xs
    i_min = int(np.argmin(ratios))
    i_max = int(np.argmax(ratios))
    lo, hi = float(ratios[i_min]), float(ratios[i_max])
    # ratio error from H_x rounding is at most pi(x)/x * h_err <= h_err
    passed = lo - h_err > LOWER_BOUND and hi + h_err < UPPER_BOUND
    return VerificationReport(
        check_name="chebyshev_harmonic_bound",
        reference="two-sided bound 1/6 < pi(x) H_x / x < 6 + 2/3 for integers x >= 2",
        expected="1/6 < pi(x)*H_x/x < 20/3",
        computed=hi,
        tolerance=0.0,
        passed=bool(passed),
        kind="bound",
        runtime_ms=int((time.perf_counter() - t0) * 1000),
        details={
            "limit": limit,
            "min_ratio": lo,
            "argmin": int(xs[i_min]),
            "max_ratio": hi,
            "argmax": int(xs[i_max]),
            "harmonic_error_bound": float(h_err),
        },
    )


def harmonic_excess_range(limit: int) -> tuple[float, float]:
    """min and max of H_x - log x over x in [2, limit]."""
    h, _ = harmonic_prefix(limit)
    xs = np.arange(2, limit + 1, dtype=np.float64)
    excess = h[2:] - np.log(xs)
    return float(excess.min()), float(excess.max())

