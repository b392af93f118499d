"""Simplicial functional PCA of compositional splines.

The inputs share one ZB basis, so the Bayes inner product of two densities is
``z1' Sigma z2``.  After centring at the Bayes-space mean, the directions that
maximize the summed squared projections under unit Bayes norm solve the
eigenproblem of ``L' C' C L`` (``Sigma = L L'``, ``C`` the centred
coefficients); a component's coefficients are ``L'^{-1} v``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from ._linalg import cholesky
from .bayes import CompositionalSpline, difference, perturb, power
from .bspline import KnotConfig
from .ortho import zb_gram


def _stack(fs: Sequence[CompositionalSpline]) -> tuple[KnotConfig, np.ndarray]:
    if len(fs) == 0:
        raise ValueError("need at least one compositional spline")
    knots = fs[0].knots
    for i, f in enumerate(fs):
        if f.knots != knots:
            raise ValueError(f"spline {i} uses a different knot configuration than spline 0")
    return knots, np.vstack([f.coefficients for f in fs])


def bayes_mean(fs: Sequence[CompositionalSpline]) -> CompositionalSpline:
    knots, z = _stack(fs)
    return CompositionalSpline.from_coefficients(knots, z.mean(axis=0))


@dataclass(frozen=True, eq=False)
class SfpcaModel:
    """Fitted SFPCA.

    Attributes
    ----------
    knots : KnotConfig
    mean_z : ndarray, shape (m,)
        ZB coefficients of the Bayes-space mean.
    rho : ndarray, shape (m,)
        Eigenvalues in descending order (plain sums, no ``1/N``).
    components : ndarray, shape (m, m)
        Column ``j`` holds the ZB coefficients of component ``j``.
    scores : ndarray, shape (N, m)
        Bayes inner products of the centred inputs with each component.
    gram : ndarray, shape (m, m)
        ZB Gram matrix used as the metric.
    """

    knots: KnotConfig
    mean_z: np.ndarray
    rho: np.ndarray
    components: np.ndarray
    scores: np.ndarray
    gram: np.ndarray

    @property
    def n_components(self) -> int:
        return self.rho.size

    @property
    def mean(self) -> CompositionalSpline:
        return CompositionalSpline.from_coefficients(self.knots, self.mean_z)

    def component(self, kappa: int) -> CompositionalSpline:
        """Component ``kappa`` (0-based) as a compositional spline."""
        self._check_kappa(kappa)
        return CompositionalSpline.from_coefficients(self.knots, self.components[:, kappa])

    def _check_kappa(self, kappa: int):
        if not 0 <= kappa < self.n_components:
            raise IndexError(f"component index {kappa} outside 0..{self.n_components - 1}")


def fit_sfpca(fs: Sequence[CompositionalSpline]) -> SfpcaModel:
    knots, z = _stack(fs)
    if z.shape[0] < 2:
        raise ValueError(f"SFPCA needs at least 2 densities, got {z.shape[0]}")
    mean_z = z.mean(axis=0)
    centred = z - mean_z
    sigma = zb_gram(knots).entries
    low = cholesky(sigma, what="ZB Gram matrix")
    cl = centred @ low
    evals, evecs = np.linalg.eigh(cl.T @ cl)
    order = np.argsort(evals)[::-1]
    # eigenvalues within rounding noise of the uncentred data scale are zero
    scale = float(np.sum((z @ low) ** 2))
    tol = 10 * max(z.shape) * np.finfo(float).eps * scale
    rho = np.where(evals[order] > tol, evals[order], 0.0)
    evecs = evecs[:, order]
    theta = solve_triangular(low.T, evecs, lower=False)
    # orientation: the largest-magnitude coefficient of each component is positive
    pivot = np.argmax(np.abs(theta), axis=0)
    signs = np.sign(theta[pivot, np.arange(theta.shape[1])])
    signs[signs == 0] = 1.0
    theta = theta * signs
    scores = centred @ sigma @ theta
    out = {"mean_z": mean_z, "rho": rho, "components": theta, "scores": scores, "gram": sigma}
    for arr in out.values():
        arr.setflags(write=False)
    return SfpcaModel(knots=knots, **out)


def explained_variance(model: SfpcaModel) -> np.ndarray:
    """Fractions ``rho / sum(rho)``; an all-zero spectrum gives an empty array."""
    total = float(model.rho.sum())
    if total <= 0.0:
        return np.empty(0)
    return model.rho / total


def perturb_mean(
    model: SfpcaModel, kappa: int, factor: float = 1.0
) -> tuple[CompositionalSpline, CompositionalSpline]:
    """Mean perturbed by ``+/- factor * sqrt(rho)`` times component ``kappa``."""
    model._check_kappa(kappa)
    step = power(factor * np.sqrt(model.rho[kappa]), model.component(kappa))
    return perturb(model.mean, step), difference(model.mean, step)


def project(model: SfpcaModel, i: int, kappa: int) -> CompositionalSpline:
    """Centred projection of density ``i`` onto component ``kappa``."""
    model._check_kappa(kappa)
    if not 0 <= i < model.scores.shape[0]:
        raise IndexError(f"observation index {i} outside 0..{model.scores.shape[0] - 1}")
    return power(model.scores[i, kappa], model.component(kappa))
