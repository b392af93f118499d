"""Penalized least-squares smoothing of clr data with zero-integral splines.

For data ``(t_i, y_i)`` with weights ``w_i`` the fitted spline minimizes

    (1 - alpha) * int (s^(l))^2 + alpha * sum_i w_i (y_i - s(t_i))^2

over the zero-integral splines of degree ``k``.  Writing ``s`` through its
ZB coefficients ``z`` turns this into ``z' G z - 2 z' g + alpha y' W y``,
minimized by the solution of ``G z = g``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import NumericalDegeneracyError, cho_solve, cholesky
from .bspline import KnotConfig, collocation_matrix, derivative_reduction, gram_matrix
from .zbspline import ZBSplineFn, build_coeff_map


class SchoenbergWhitneyError(ValueError):
    """The data abscissas cannot determine a unique smoothing spline."""


@dataclass(frozen=True, eq=False)
class ClrSample:
    """Discrete clr observations ``y`` at abscissas ``t`` with positive weights ``w``."""

    t: np.ndarray
    y: np.ndarray
    w: np.ndarray | None = None

    def __post_init__(self):
        t = np.array(self.t, dtype=float).reshape(-1)
        y = np.array(self.y, dtype=float).reshape(-1)
        w = np.ones_like(t) if self.w is None else np.array(self.w, dtype=float).reshape(-1)
        if not (t.size == y.size == w.size):
            raise ValueError(
                f"t, y and w must have equal lengths, got {t.size}, {y.size}, {w.size}"
            )
        if t.size == 0:
            raise ValueError("a clr sample needs at least one observation")
        if np.any(np.diff(t) < 0):
            raise ValueError("abscissas t must be in ascending order")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(y)):
            raise ValueError("t and y must be finite")
        if np.any(~(w > 0)) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite and strictly positive")
        for name, arr in (("t", t), ("y", y), ("w", w)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.t.size


@dataclass(frozen=True)
class SmoothingParams:
    """Penalty derivative order ``l`` and fit/smoothness weight ``alpha``.

    ``alpha`` is the weight of the data term; both ends of ``(0, 1)`` are
    excluded.
    """

    l: int = 2
    alpha: float = 0.5

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 1:
            raise ValueError(f"penalty order l must be a positive integer, got {self.l!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie strictly between 0 and 1, got {self.alpha!r}")
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "alpha", float(self.alpha))

    def check_against(self, knots: KnotConfig):
        if self.l > knots.degree - 1:
            raise ValueError(
                f"penalty order l = {self.l} requires degree k >= {self.l + 1}, "
                f"got k = {knots.degree}"
            )


def check_schoenberg_whitney(knots: KnotConfig, t) -> bool:
    """Whether the collocation matrix at ``t`` has full column rank.

    Looks for an increasing selection ``u_0 < ... < u_{g+k}`` from ``t`` with
    each ``u_j`` in the open support of ``B_j``; at the clamped ends the
    boundary point itself also qualifies for the first and last B-spline,
    which are the only ones not vanishing there.  Greedy left-to-right
    selection of the smallest admissible point decides existence.
    """
    t = np.asarray(t, dtype=float).reshape(-1)
    n, k = knots.n_basis, knots.degree
    if t.size < n:
        return False
    ext = knots.extended_knots
    a, b = knots.domain.a, knots.domain.b
    pos, prev = 0, -np.inf
    for j in range(n):
        lo, hi = ext[j], ext[j + k + 1]
        while True:
            if pos == t.size:
                return False
            u = t[pos]
            pos += 1
            if u <= prev:
                continue
            if lo < u < hi or (j == 0 and u == a) or (j == n - 1 and u == b):
                prev = u
                break
            if u >= hi:
                return False
    return True


def assemble_normal_system(
    sample: ClrSample, knots: KnotConfig, params: SmoothingParams
) -> tuple[np.ndarray, np.ndarray]:
    """Matrix ``G`` and right-hand side ``g`` of the normal equations ``G z = g``."""
    params.check_against(knots)
    alpha = params.alpha
    u = build_coeff_map(knots).U
    s = derivative_reduction(knots, params.l)
    m = gram_matrix(knots, params.l).entries
    bx = collocation_matrix(knots, sample.t)
    wb = bx * sample.w[:, None]
    inner = (1 - alpha) * (s.T @ m @ s) + alpha * (bx.T @ wb)
    g_mat = u.T @ inner @ u
    g_mat = (g_mat + g_mat.T) / 2
    rhs = alpha * (u.T @ (wb.T @ sample.y))
    return g_mat, rhs


def fit_smoothing_spline(
    sample: ClrSample, knots: KnotConfig, params: SmoothingParams | None = None
) -> ZBSplineFn:
    """Zero-integral smoothing spline of ``sample`` in the ZB basis of ``knots``.

    Raises
    ------
    SchoenbergWhitneyError
        If the abscissas do not interlace the knots, so that the minimizer is
        not unique.
    NumericalDegeneracyError
        If Cholesky factorization of ``G`` meets a pivot below tolerance.
    """
    params = params or SmoothingParams()
    params.check_against(knots)
    if not check_schoenberg_whitney(knots, sample.t):
        raise SchoenbergWhitneyError(
            f"Schoenberg-Whitney condition fails: {sample.n} abscissas cannot interlace "
            f"the {knots.n_basis} B-splines of degree {knots.degree} on knots "
            f"{list(knots.breakpoints)}; the collocation matrix is rank deficient"
        )
    g_mat, rhs = assemble_normal_system(sample, knots, params)
    low = cholesky(g_mat, what="smoothing matrix G")
    return ZBSplineFn(knots, cho_solve(low, rhs))


def objective_value(sample: ClrSample, knots: KnotConfig, params: SmoothingParams, z) -> float:
    """Penalized criterion at ZB coefficients ``z`` via the quadratic form."""
    z = np.asarray(getattr(z, "coefficients", z), dtype=float)
    g_mat, rhs = assemble_normal_system(sample, knots, params)
    const = params.alpha * float(sample.y @ (sample.w * sample.y))
    return float(z @ g_mat @ z - 2 * z @ rhs + const)


__all__ = [
    "ClrSample",
    "NumericalDegeneracyError",
    "SchoenbergWhitneyError",
    "SmoothingParams",
    "assemble_normal_system",
    "check_schoenberg_whitney",
    "fit_smoothing_spline",
    "objective_value",
]
