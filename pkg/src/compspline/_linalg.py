"""Small dense linear-algebra helpers shared by the spline modules."""

import numpy as np
from scipy.linalg import solve_triangular

PIVOT_TOL = 1e-12


class NumericalDegeneracyError(np.linalg.LinAlgError):
    """Raised when a matrix that should be positive definite is not."""


def cholesky(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Lower Cholesky factor of a symmetric positive definite matrix.

    Pivots (squared diagonal entries of the factor) below ``PIVOT_TOL`` times
    the largest diagonal entry of ``a`` are treated as a failure.
    """
    a = np.asarray(a, dtype=float)
    try:
        low = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalDegeneracyError(f"{what} is not positive definite") from exc
    scale = max(float(np.max(np.abs(np.diag(a)))), np.finfo(float).tiny)
    pivots = np.diag(low) ** 2
    if np.any(pivots < PIVOT_TOL * scale):
        raise NumericalDegeneracyError(
            f"{what} is numerically singular (smallest Cholesky pivot "
            f"{pivots.min():.3e}, scale {scale:.3e})"
        )
    return low


def cho_solve(low: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    y = solve_triangular(low, rhs, lower=True)
    return solve_triangular(low.T, y, lower=False)
