"""Clamped B-spline machinery on a bounded interval.

Knot vectors here are always *clamped*: the degree-``k`` basis on interior
knots ``l_1 < ... < l_g`` of ``[a, b]`` uses ``k + 1`` copies of ``a`` and of
``b``.  Basis functions are indexed ``0 .. g + k`` in code; the mathematical
index ``-k .. g`` is obtained by subtracting ``k``.

Everything in this module is a pure function of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class Domain:
    """Closed support interval ``[a, b]``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise ValueError(f"domain bounds must be finite, got [{a}, {b}]")
        if not a < b:
            raise ValueError(f"domain requires a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def eta(self) -> float:
        return self.b - self.a

    def check_inside(self, x) -> np.ndarray:
        """Return ``x`` as a float array, raising if any entry leaves ``[a, b]``."""
        x = np.asarray(x, dtype=float)
        bad = (x < self.a) | (x > self.b) | ~np.isfinite(x)
        if np.any(bad):
            offender = x[bad].flat[0]
            raise ValueError(f"x = {offender!r} lies outside the domain [{self.a}, {self.b}]")
        return x


@dataclass(frozen=True)
class KnotConfig:
    """Degree, interior knots and domain of a clamped spline space.

    Use :func:`extend_knots` to build one from user input; the constructor
    validates but also admits ``degree == 0``, which is needed internally for
    the lowest-order Gram matrices.
    """

    degree: int
    interior: tuple[float, ...]
    domain: Domain

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise ValueError(f"degree must be a nonnegative integer, got {self.degree!r}")
        interior = tuple(float(v) for v in np.atleast_1d(np.asarray(self.interior, dtype=float)))
        arr = np.asarray(interior)
        if arr.size and np.any(np.diff(arr) <= 0):
            raise ValueError(f"interior knots must be strictly increasing, got {list(interior)}")
        if arr.size and (arr[0] <= self.domain.a or arr[-1] >= self.domain.b):
            raise ValueError(
                f"interior knots must lie strictly inside ({self.domain.a}, {self.domain.b}), "
                f"got {list(interior)}"
            )
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "interior", interior)

    @property
    def g(self) -> int:
        """Number of interior knots."""
        return len(self.interior)

    @property
    def n_basis(self) -> int:
        """Dimension ``g + k + 1`` of the spline space."""
        return self.g + self.degree + 1

    @cached_property
    def breakpoints(self) -> np.ndarray:
        """Distinct knots ``a, l_1, ..., l_g, b``."""
        bp = np.array((self.domain.a, *self.interior, self.domain.b))
        bp.setflags(write=False)
        return bp

    @cached_property
    def extended_knots(self) -> np.ndarray:
        """Full clamped knot vector of length ``g + 2k + 2``."""
        k = self.degree
        t = np.concatenate(
            [np.full(k, self.domain.a), self.breakpoints, np.full(k, self.domain.b)]
        )
        t.setflags(write=False)
        return t

    @cached_property
    def spans(self) -> np.ndarray:
        """Support lengths ``l_{i+k+1} - l_i`` of the ``g + k + 1`` B-splines."""
        t = self.extended_knots
        s = t[self.degree + 1 :] - t[: self.n_basis]
        s.setflags(write=False)
        return s

    def with_degree(self, degree: int) -> KnotConfig:
        return KnotConfig(degree, self.interior, self.domain)


def extend_knots(k: int, interior, domain: Domain) -> KnotConfig:
    """Build the clamped knot configuration of degree ``k >= 1``."""
    if int(k) != k or k < 1:
        raise ValueError(f"spline degree must be a positive integer, got {k!r}")
    return KnotConfig(int(k), tuple(np.atleast_1d(np.asarray(interior, dtype=float))), domain)


@dataclass(frozen=True, eq=False)
class BSplineFn:
    """Spline stored by its coefficients in the clamped B-spline basis."""

    knots: KnotConfig
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float).reshape(-1)
        if c.size != self.knots.n_basis:
            raise ValueError(
                f"expected {self.knots.n_basis} B-spline coefficients, got {c.size}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    def __call__(self, x):
        return eval_bspline(self, x)


def _basis_matrix(t: np.ndarray, k: int, x: np.ndarray) -> np.ndarray:
    """Cox-de Boor values of all B-splines at the 1-D points ``x``.

    ``t`` is a clamped knot vector.  The last nonempty knot interval is
    treated as closed, so that evaluation at the right end returns the
    clamped boundary value.
    """
    n = t.size - k - 1
    mu = np.searchsorted(t, x, side="right") - 1
    mu = np.clip(mu, k, n - 1)
    m = x.size
    vals = np.zeros((m, k + 1))
    vals[:, 0] = 1.0
    left = np.zeros((m, k + 1))
    right = np.zeros((m, k + 1))
    for j in range(1, k + 1):
        left[:, j] = x - t[mu + 1 - j]
        right[:, j] = t[mu + j] - x
        saved = np.zeros(m)
        for r in range(j):
            # denominators are spans of knot intervals containing [t[mu], t[mu+1]], hence > 0
            temp = vals[:, r] / (right[:, r + 1] + left[:, j - r])
            vals[:, r] = saved + right[:, r + 1] * temp
            saved = left[:, j - r] * temp
        vals[:, j] = saved
    out = np.zeros((m, n))
    cols = mu[:, None] - k + np.arange(k + 1)
    out[np.arange(m)[:, None], cols] = vals
    return out


def eval_b_basis(knots: KnotConfig, x) -> np.ndarray:
    """Values of the ``g + k + 1`` B-splines of degree ``k`` at ``x``.

    A scalar ``x`` gives a vector; an array of shape ``(n,)`` gives an
    ``(n, g + k + 1)`` matrix.
    """
    x = knots.domain.check_inside(x)
    vals = _basis_matrix(knots.extended_knots, knots.degree, np.atleast_1d(x).reshape(-1))
    return vals[0] if x.ndim == 0 else vals


def eval_m_basis(knots: KnotConfig, x) -> np.ndarray:
    """Curry-Schoenberg M-splines: B-splines rescaled to unit integral."""
    b = eval_b_basis(knots, x)
    scale = np.divide(
        knots.degree + 1.0, knots.spans, out=np.zeros(knots.n_basis), where=knots.spans > 0
    )
    return b * scale


def collocation_matrix(knots: KnotConfig, x) -> np.ndarray:
    """``(n, g + k + 1)`` matrix whose row ``j`` holds the basis values at ``x[j]``."""
    x = np.atleast_1d(np.asarray(x, dtype=float)).reshape(-1)
    return np.atleast_2d(eval_b_basis(knots, x))


def eval_bspline(f: BSplineFn, x) -> np.ndarray | float:
    vals = eval_b_basis(f.knots, x) @ f.coefficients
    return float(vals) if np.ndim(vals) == 0 else vals


def piecewise_gauss_legendre(breakpoints, n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule with ``n_nodes`` nodes per breakpoint interval."""
    bp = np.asarray(breakpoints, dtype=float)
    ref_x, ref_w = np.polynomial.legendre.leggauss(n_nodes)
    lo, hi = bp[:-1, None], bp[1:, None]
    half = (hi - lo) / 2
    x = (half * ref_x + (lo + hi) / 2).reshape(-1)
    w = (half * ref_w).reshape(-1)
    return x, w


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Symmetric matrix of L2 inner products between basis functions.

    ``order`` records ``(k, l)`` for the B-spline Gram matrix of degree
    ``k - l``; for Gram matrices of other bases it is informational.
    """

    knots: KnotConfig
    order: tuple[int, int]
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {e.shape}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)


def gram_matrix(knots: KnotConfig, l: int = 0) -> GramMatrix:
    """Gram matrix of the degree ``k - l`` B-splines on the same interior knots.

    Entries are computed with a Gauss-Legendre rule per knot interval that
    is exact for the piecewise polynomial integrand of degree ``2(k - l)``.
    """
    k = knots.degree
    if int(l) != l or l < 0 or l > k:
        raise ValueError(f"Gram order l must satisfy 0 <= l <= k = {k}, got {l!r}")
    low = knots.with_degree(k - l)
    n_nodes = math.ceil((2 * (k - l) + 1) / 2) + 1
    x, w = piecewise_gauss_legendre(low.breakpoints, n_nodes)
    b = _basis_matrix(low.extended_knots, low.degree, x)
    m = (b * w[:, None]).T @ b
    m = (m + m.T) / 2
    return GramMatrix(knots, (k, int(l)), m)


def derivative_reduction(knots: KnotConfig, l: int) -> np.ndarray:
    """Matrix taking B-spline coefficients to those of the ``l``-th derivative.

    If ``b`` are the degree-``k`` coefficients of ``s``, then ``S @ b`` are
    the coefficients of ``s^(l)`` in the degree ``k - l`` basis on the same
    interior knots.  ``S`` has shape ``(g + k + 1 - l, g + k + 1)``.
    """
    k = knots.degree
    if int(l) != l or l < 1 or l > k - 1:
        raise ValueError(f"derivative order must satisfy 1 <= l <= k - 1 = {k - 1}, got {l!r}")
    t = knots.extended_knots
    n = knots.n_basis
    s = np.eye(n)
    for j in range(1, int(l) + 1):
        rows = n - j
        idx = np.arange(j, n)
        spans = t[idx + k + 1 - j] - t[idx]
        d = np.divide(k + 1 - j, spans, out=np.zeros(rows), where=spans > 0)
        lj = np.zeros((rows, rows + 1))
        lj[np.arange(rows), np.arange(rows)] = -1.0
        lj[np.arange(rows), np.arange(1, rows + 1)] = 1.0
        s = (d[:, None] * lj) @ s
    return s


def spline_integral(f: BSplineFn) -> float:
    """Exact integral over ``[a, b]`` of a clamped B-spline expansion."""
    return float(f.knots.spans @ f.coefficients) / (f.knots.degree + 1)
