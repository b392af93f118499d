import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st
from scipy import integrate

from compspline import Domain, extend_knots
from compspline import anthropometric

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=50)
settings.load_profile("repo")

# PASS/FAIL lines of the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def cubic20_knots():
    return extend_knots(3, [2, 5, 9, 14], Domain(0, 20))


@pytest.fixture
def weight_knots():
    return anthropometric.knot_config()


@pytest.fixture
def rng():
    return np.random.default_rng(20190415)


def quad_pieces(func, breakpoints):
    """Adaptive quadrature summed over the intervals of ``breakpoints``."""
    total = 0.0
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        val, _ = integrate.quad(func, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)
        total += val
    return total


def random_knots(rng, degrees=(1, 2, 3), max_interior=6):
    """Random clamped configuration with interior knots kept apart."""
    k = int(rng.choice(degrees))
    a = float(rng.uniform(-10, 10))
    eta = float(rng.uniform(0.5, 40))
    g = int(rng.integers(0, max_interior + 1))
    while True:
        inner = np.sort(rng.uniform(0, 1, g))
        pts = np.concatenate([[0], inner, [1]])
        if g == 0 or np.diff(pts).min() > 0.02:
            break
    return extend_knots(k, a + eta * inner, Domain(a, a + eta))


@st.composite
def knot_configs(draw, degrees=(1, 2, 3), max_interior=6):
    k = draw(st.sampled_from(degrees))
    a = draw(st.floats(-10, 10, allow_nan=False))
    eta = draw(st.floats(0.5, 40, allow_nan=False))
    g = draw(st.integers(0, max_interior))
    gaps = draw(st.lists(st.floats(0.05, 1.0), min_size=g + 1, max_size=g + 1))
    cuts = np.cumsum(gaps)[:-1] / np.sum(gaps)
    return extend_knots(k, a + eta * cuts, Domain(a, a + eta))


def smallest_consistent_counts(p, decimals=4, max_n=5000):
    """Smallest integer counts whose proportions round to ``p``."""
    p = np.asarray(p, dtype=float)
    half = 0.5 * 10.0**-decimals + 1e-12
    for n in range(1, max_n + 1):
        c = np.round(p * n)
        if c.sum() == n and np.all(np.abs(c / n - p) <= half):
            return c.astype(int)
    raise ValueError("no consistent counts found")


def gl_pieces(breakpoints, n_nodes=30):
    """Composite Gauss-Legendre nodes and weights, independent of the library."""
    t, w = np.polynomial.legendre.leggauss(n_nodes)
    xs, ws = [], []
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        xs.append((hi - lo) / 2 * t + (hi + lo) / 2)
        ws.append((hi - lo) / 2 * w)
    return np.concatenate(xs), np.concatenate(ws)
