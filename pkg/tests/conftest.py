"""Independent oracles shared by the test modules.

These are written the slow, obvious way on purpose: plain loops over
triples, dense eigen-decomposition, bisection. They must not call into the
code paths they check.
"""

import itertools
import math

import numpy as np
import pytest


def brute_triad_ratios(a):
    a = np.asarray(a)
    n = a.shape[0]
    return [a[i, k] / (a[i, j] * a[j, k]) for i, j, k in itertools.combinations(range(n), 3)]


def brute_pli(a):
    r = brute_triad_ratios(a)
    return sum(x + 1 / x - 2 for x in r) / len(r)


def brute_kii(a):
    return max(min(abs(1 - x), abs(1 - 1 / x)) for x in brute_triad_ratios(a))


def dense_lambda_max(a):
    ev = np.linalg.eigvals(np.asarray(a))
    return float(ev[np.argmax(ev.real)].real)


def corner_char_root(x, n=3):
    """Largest real root of lam^3 - n lam^2 = (n - 2)(x + 1/x - 2), by bisection."""
    c = (n - 2) * (x + 1 / x - 2)
    lo, hi = float(n), float(n) + 1.0
    while hi ** 3 - n * hi ** 2 < c:
        hi *= 2
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if mid ** 3 - n * mid ** 2 > c:
            hi = mid
        else:
            lo = mid
    return lo


def random_saaty(rng, n):
    scale = [1 / 9, 1 / 8, 1 / 7, 1 / 6, 1 / 5, 1 / 4, 1 / 3, 1 / 2, 1, 2, 3, 4, 5, 6, 7, 8, 9]
    a = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = scale[rng.integers(len(scale))]
            a[j, i] = 1 / a[i, j]
    return a


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def prop8_rows():
    # the matrix as printed, with rounded reciprocals in row 3
    return [[1, 0.1, 0.15], [10, 1, 0.3], [6.6666, 3.3333, 1]]


def approx_eq(a, b, tol):
    return math.isclose(a, b, rel_tol=0, abs_tol=tol)


# -- acceptance report ----------------------------------------------------------

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
