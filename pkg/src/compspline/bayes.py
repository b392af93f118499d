"""Densities in the Bayes space represented through zero-integral splines.

A compositional spline is a density whose centred log-ratio (clr) transform
is a ZB-spline.  Perturbation, powering and the Bayes inner product act on the
clr side as addition, scaling and the L2 inner product, so all of them reduce
to operations on ZB coefficients.  The unit-integral density is only formed
when a value is requested.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .bspline import Domain, KnotConfig, piecewise_gauss_legendre
from .ortho import zb_gram
from .zbspline import ZBSplineFn, eval_zb_basis, eval_zbspline, zspace_dimension

QUAD_NODES = 16


def clr_discrete(v) -> np.ndarray:
    """Centred log-ratio of a vector of strictly positive parts."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        raise ValueError("clr of an empty composition is undefined")
    if np.any(~(v > 0)) or not np.all(np.isfinite(v)):
        bad = v[~((v > 0) & np.isfinite(v))].flat[0]
        raise ValueError(f"clr needs strictly positive finite parts, got {bad!r}")
    logv = np.log(v)
    return logv - logv.mean(axis=-1, keepdims=True)


@lru_cache(maxsize=64)
def _quadrature(knots: KnotConfig) -> tuple[np.ndarray, np.ndarray]:
    x, w = piecewise_gauss_legendre(knots.breakpoints, QUAD_NODES)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True, eq=False)
class CompositionalSpline:
    """Density ``exp(s) / int exp(s)`` with ``s`` a zero-integral spline."""

    clr_spline: ZBSplineFn

    @classmethod
    def from_coefficients(cls, knots: KnotConfig, z) -> CompositionalSpline:
        return cls(ZBSplineFn(knots, z))

    @classmethod
    def uniform(cls, knots: KnotConfig) -> CompositionalSpline:
        return cls(ZBSplineFn(knots, np.zeros(zspace_dimension(knots))))

    @property
    def knots(self) -> KnotConfig:
        return self.clr_spline.knots

    @property
    def domain(self) -> Domain:
        return self.knots.domain

    @property
    def coefficients(self) -> np.ndarray:
        return self.clr_spline.coefficients

    def clr(self, x):
        return eval_zbspline(self.clr_spline, x)

    def log_normalizer(self) -> float:
        """``log int exp(s)`` over the domain."""
        x, w = _quadrature(self.knots)
        return float(logsumexp(eval_zbspline(self.clr_spline, x), b=w))

    def __call__(self, x):
        return density_eval(self, x)


def density_eval(f: CompositionalSpline, x):
    """Unit-integral density value(s) at ``x``."""
    vals = np.exp(eval_zbspline(f.clr_spline, x) - f.log_normalizer())
    return float(vals) if np.ndim(vals) == 0 else vals


def functional_clr(density, breakpoints, x, n_nodes: int = QUAD_NODES):
    """clr of an arbitrary positive density callable, ``ln f(x) - mean of ln f``.

    The mean of ``ln f`` uses a Gauss-Legendre rule on each interval of
    ``breakpoints`` (whose ends give the domain).
    """
    bp = np.asarray(breakpoints, dtype=float)
    qx, qw = piecewise_gauss_legendre(bp, n_nodes)
    mean_log = float(qw @ np.log(density(qx))) / (bp[-1] - bp[0])
    return np.log(density(np.asarray(x, dtype=float))) - mean_log


def _check_compatible(f: CompositionalSpline, g: CompositionalSpline):
    if f.knots != g.knots:
        raise ValueError(
            "compositional splines live on different knot configurations; "
            "re-smooth them onto a common basis first"
        )


def perturb(f: CompositionalSpline, g: CompositionalSpline) -> CompositionalSpline:
    _check_compatible(f, g)
    return CompositionalSpline.from_coefficients(f.knots, f.coefficients + g.coefficients)


def difference(f: CompositionalSpline, g: CompositionalSpline) -> CompositionalSpline:
    """``f`` perturbed by the reciprocal of ``g``."""
    _check_compatible(f, g)
    return CompositionalSpline.from_coefficients(f.knots, f.coefficients - g.coefficients)


def power(alpha: float, f: CompositionalSpline) -> CompositionalSpline:
    return CompositionalSpline.from_coefficients(f.knots, float(alpha) * f.coefficients)


def bayes_inner_product(f: CompositionalSpline, g: CompositionalSpline) -> float:
    _check_compatible(f, g)
    return float(f.coefficients @ zb_gram(f.knots).entries @ g.coefficients)


def bayes_norm(f: CompositionalSpline) -> float:
    return float(np.sqrt(max(bayes_inner_product(f, f), 0.0)))


@lru_cache(maxsize=64)
def _cb_log_normalizers(knots: KnotConfig) -> np.ndarray:
    x, w = _quadrature(knots)
    z = eval_zb_basis(knots, x)
    out = logsumexp(z, b=w[:, None], axis=0)
    out.setflags(write=False)
    return out


def eval_cb_basis(knots: KnotConfig, x) -> np.ndarray:
    """CB-splines: each ZB-spline mapped to a unit-integral density."""
    return np.exp(eval_zb_basis(knots, x) - _cb_log_normalizers(knots))
