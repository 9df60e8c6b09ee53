import mpmath
import pytest

from meanlog.primes import sieve

mpmath.mp.dps = 40


@pytest.fixture(scope="session")
def table_1e6():
    return sieve(10 ** 6)


def trial_division_pi(x: int) -> int:
    count = 0
    for n in range(2, x + 1):
        if all(n % d for d in range(2, int(n ** 0.5) + 1)):
            count += 1
    return count


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, text = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:02d} {'PASS' if ok else 'FAIL'} {text}")
