"""Orthonormal basis of the zero-integral spline space.

The ZB basis is oblique in L2.  With ``Sigma`` its Gram matrix and the lower
Cholesky factorization ``Sigma = L L'``, the functions ``O = Phi Z`` with
``Phi = L^{-1}`` are orthonormal, and ``Phi' Phi = Sigma^{-1}``.  Any ``Phi``
with that property works; the Cholesky choice is fixed here so results are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import solve_triangular

from ._linalg import cholesky
from .bspline import GramMatrix, KnotConfig, gram_matrix
from .zbspline import ZBSplineFn, build_coeff_map, eval_zb_basis


@lru_cache(maxsize=64)
def zb_gram(knots: KnotConfig) -> GramMatrix:
    """L2 Gram matrix ``K' D M D K`` of the ZB-splines."""
    cm = build_coeff_map(knots)
    m = gram_matrix(knots, 0).entries
    sigma = cm.K.T @ cm.D @ m @ cm.D @ cm.K
    return GramMatrix(knots, (knots.degree, 0), (sigma + sigma.T) / 2)


@dataclass(frozen=True, eq=False)
class OrthoBasis:
    knots: KnotConfig
    phi: np.ndarray
    sigma: GramMatrix
    chol: np.ndarray  # lower factor of sigma; phi is its inverse

    def __post_init__(self):
        for name in ("phi", "chol"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def orthogonalizing_transform(sigma: GramMatrix) -> OrthoBasis:
    low = cholesky(sigma.entries, what="ZB Gram matrix")
    phi = solve_triangular(low, np.eye(low.shape[0]), lower=True)
    return OrthoBasis(sigma.knots, phi, sigma, low)


def ortho_basis(knots: KnotConfig) -> OrthoBasis:
    """Shortcut for ``orthogonalizing_transform(zb_gram(knots))``."""
    return orthogonalizing_transform(zb_gram(knots))


def eval_ortho_basis(basis: OrthoBasis, x) -> np.ndarray:
    """Orthonormal basis values ``Phi Z(x)``; arrays of ``x`` give one row per point."""
    return eval_zb_basis(basis.knots, x) @ basis.phi.T


def _check_same_knots(f: ZBSplineFn, basis: OrthoBasis):
    if f.knots != basis.knots:
        raise ValueError("spline and orthonormal basis use different knot configurations")


def to_ortho_coefficients(f: ZBSplineFn, basis: OrthoBasis) -> np.ndarray:
    """Coefficients ``c`` with ``sum c_i O_i = sum z_i Z_i``, i.e. ``c = L' z``."""
    _check_same_knots(f, basis)
    return basis.chol.T @ f.coefficients


def from_ortho_coefficients(c, basis: OrthoBasis) -> ZBSplineFn:
    c = np.asarray(c, dtype=float)
    z = solve_triangular(basis.chol.T, c, lower=False)
    return ZBSplineFn(basis.knots, z)
