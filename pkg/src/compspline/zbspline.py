"""Zero-integral splines and their ZB-spline basis.

A ZB-spline ``Z_i`` of degree ``k`` is the derivative of the degree ``k + 1``
B-spline ``B_i``; equivalently ``Z_i = M_i - M_{i+1}`` with ``M`` the
unit-integral (Curry-Schoenberg) B-splines of degree ``k``.  The ``g + k``
functions ``Z_{-k} .. Z_{g-1}`` span exactly the splines with zero integral,
and a ZB-expansion with coefficients ``z`` has B-spline coefficients
``b = D K z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bspline import BSplineFn, KnotConfig, eval_b_basis, spline_integral


@dataclass(frozen=True, eq=False)
class CoeffMapMatrices:
    """``D`` (diagonal scaling) and ``K`` (difference pattern) with ``U = D K``."""

    D: np.ndarray
    K: np.ndarray

    @property
    def U(self) -> np.ndarray:
        return self.D @ self.K


def _require_positive_degree(knots: KnotConfig):
    if knots.degree < 1:
        raise ValueError("zero-integral splines require degree k >= 1")


@lru_cache(maxsize=64)
def build_coeff_map(knots: KnotConfig) -> CoeffMapMatrices:
    _require_positive_degree(knots)
    n = knots.n_basis
    d = np.diag((knots.degree + 1) / knots.spans)
    k = np.zeros((n, n - 1))
    k[np.arange(n - 1), np.arange(n - 1)] = 1.0
    k[np.arange(1, n), np.arange(n - 1)] = -1.0
    d.setflags(write=False)
    k.setflags(write=False)
    return CoeffMapMatrices(d, k)


def zspace_dimension(knots: KnotConfig) -> int:
    _require_positive_degree(knots)
    return knots.g + knots.degree


@dataclass(frozen=True, eq=False)
class ZBSplineFn:
    """Zero-integral spline stored by its ``g + k`` ZB-spline coefficients."""

    knots: KnotConfig
    coefficients: np.ndarray

    def __post_init__(self):
        _require_positive_degree(self.knots)
        z = np.array(self.coefficients, dtype=float).reshape(-1)
        if z.size != zspace_dimension(self.knots):
            raise ValueError(
                f"expected {zspace_dimension(self.knots)} ZB coefficients, got {z.size}"
            )
        z.setflags(write=False)
        object.__setattr__(self, "coefficients", z)

    def __call__(self, x):
        return eval_zbspline(self, x)

    def to_bspline(self) -> BSplineFn:
        return zb_to_b(self)


def zb_to_b(f: ZBSplineFn) -> BSplineFn:
    m = build_coeff_map(f.knots)
    return BSplineFn(f.knots, m.D @ (m.K @ f.coefficients))


def b_to_zb(f: BSplineFn, atol: float = 1e-10) -> ZBSplineFn:
    """Inverse of :func:`zb_to_b` for B-spline expansions with zero integral.

    ``K`` is inverted by cumulative summation, which leaves the last entry of
    ``D^{-1} b`` unused; that entry is consistent only when the integral
    vanishes, so a nonzero integral (beyond ``atol`` relative to the
    coefficient scale) is rejected.
    """
    knots = f.knots
    scaled = f.coefficients * knots.spans / (knots.degree + 1)
    total = spline_integral(f)
    scale = max(float(np.abs(scaled).sum()), 1.0)
    if abs(total) > atol * scale:
        raise ValueError(f"spline integral {total:.3e} is not zero; no ZB representation")
    return ZBSplineFn(knots, np.cumsum(scaled[:-1]))


def eval_zb_basis(knots: KnotConfig, x) -> np.ndarray:
    """Values of the ``g + k`` ZB-splines at ``x`` (scalar -> vector, array -> matrix)."""
    _require_positive_degree(knots)
    b = eval_b_basis(knots, x)
    scaled = b * ((knots.degree + 1) / knots.spans)
    return scaled[..., :-1] - scaled[..., 1:]


def eval_zbspline(f: ZBSplineFn, x):
    vals = eval_zb_basis(f.knots, x) @ f.coefficients
    return float(vals) if np.ndim(vals) == 0 else vals
