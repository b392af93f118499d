"""Fit the 16 body-weight clr samples and run SFPCA on the fitted densities.

Prints coefficient deviations from the tabulated ZB and B-spline
coefficients, the explained-variance fractions and where the first
component's clr changes sign.  With ``--out-dir`` the fits and the model are
also written as JSON.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from compspline import (
    CompositionalSpline,
    SmoothingParams,
    explained_variance,
    fit_sfpca,
    fit_smoothing_spline,
    zb_to_b,
)
from compspline import anthropometric


@dataclass(frozen=True)
class Config:
    penalty_order: int = anthropometric.PENALTY_ORDER
    alpha: float = anthropometric.ALPHA
    grid_points: int = 4001


def sign_changes(fn, a, b, n):
    x = np.linspace(a, b, n)
    v = fn(x)
    idx = np.flatnonzero(np.sign(v[:-1]) != np.sign(v[1:]))
    return [brentq(fn, x[i], x[i + 1]) for i in idx]


def run(cfg: Config) -> dict:
    kn = anthropometric.knot_config()
    params = SmoothingParams(cfg.penalty_order, cfg.alpha)
    samples = anthropometric.clr_samples()
    fits = {gid: fit_smoothing_spline(s, kn, params) for gid, s in samples.items()}
    z = np.array([f.coefficients for f in fits.values()])
    b = np.array([zb_to_b(f).coefficients for f in fits.values()])
    model = fit_sfpca([CompositionalSpline(f) for f in fits.values()])
    frac = explained_variance(model)
    crossings = sign_changes(model.component(0).clr, kn.domain.a, kn.domain.b, cfg.grid_points)
    return {
        "config": asdict(cfg),
        "max_zb_deviation": float(np.abs(z - anthropometric.ZB_COEFFICIENTS).max()),
        "max_b_deviation": float(np.abs(b - anthropometric.B_COEFFICIENTS).max()),
        "explained_fractions": frac.tolist(),
        "first_component_crossings": crossings,
        "zb_coefficients": {gid: f.coefficients.tolist() for gid, f in fits.items()},
        "eigenvalues": model.rho.tolist(),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alpha", type=float, default=Config.alpha)
    parser.add_argument("--penalty-order", type=int, default=Config.penalty_order)
    parser.add_argument("--out-dir", type=Path)
    args = parser.parse_args(argv)
    result = run(Config(penalty_order=args.penalty_order, alpha=args.alpha))
    print(f"max |z - tabulated ZB|     {result['max_zb_deviation']:.4f}")
    print(f"max |b - tabulated B|      {result['max_b_deviation']:.4f}")
    fr = result["explained_fractions"]
    print(f"explained variance         {fr[0]:.4f}, {fr[1]:.4f} (first two: {fr[0] + fr[1]:.4f})")
    print(f"component 1 clr crossings  {[round(r, 2) for r in result['first_component_crossings']]}")
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        (args.out_dir / "anthropometric.json").write_text(json.dumps(result, indent=2) + "\n")


if __name__ == "__main__":
    main()
