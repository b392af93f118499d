"""Batch command line: ingest -> smooth -> sfpca, and basis export.

Every subcommand writes plain CSV/JSON for external plotting.  Outputs are
written only after all computations succeed; the exit status is 0 exactly
when every artifact was written, 1 for data or fitting failures and 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bayes import CompositionalSpline, density_eval, eval_cb_basis
from .bspline import Domain, KnotConfig, extend_knots
from .ingest import (
    TableFormatError,
    build_histogram,
    format_number,
    impute_zeros,
    read_clr_samples,
    read_raw_values,
    to_clr_sample,
    write_clr_samples,
)
from .ortho import eval_ortho_basis, ortho_basis
from .sfpca import SfpcaModel, explained_variance, fit_sfpca, perturb_mean
from .smoothing import (
    ClrSample,
    NumericalDegeneracyError,
    SchoenbergWhitneyError,
    SmoothingParams,
    fit_smoothing_spline,
)
from .zbspline import ZBSplineFn, eval_zb_basis, eval_zbspline, zb_to_b

log = logging.getLogger("compspline")

PERTURBATION_FACTOR = 2.0
PERTURBED_COMPONENTS = 2


class ConfigError(ValueError):
    pass


class FitError(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    domain: Domain
    degree: int
    interior_knots: tuple[float, ...]
    penalty_order: int = 2
    alpha: float = 0.5
    weights: str = "file"
    grid_points: int = 512

    @classmethod
    def from_dict(cls, raw: Mapping) -> RunConfig:
        unknown = set(raw) - {"domain", "knots", "degree", "penalty_order", "alpha", "weights",
                              "grid_points"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            a, b = raw["domain"]
            cfg = cls(
                domain=Domain(a, b),
                degree=raw["degree"],
                interior_knots=tuple(float(v) for v in raw.get("knots", ())),
                penalty_order=raw.get("penalty_order", 2),
                alpha=float(raw.get("alpha", 0.5)),
                weights=raw.get("weights", "file"),
                grid_points=raw.get("grid_points", 512),
            )
        except KeyError as exc:
            raise ConfigError(f"config is missing key {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid config: {exc}") from None
        if cfg.weights not in ("file", "ones"):
            raise ConfigError(f"weights policy must be 'file' or 'ones', got {cfg.weights!r}")
        if int(cfg.grid_points) != cfg.grid_points or cfg.grid_points < 2:
            raise ConfigError(f"grid_points must be an integer >= 2, got {cfg.grid_points!r}")
        cfg.knots()
        try:
            SmoothingParams(cfg.penalty_order, cfg.alpha)
        except ValueError as exc:
            raise ConfigError(f"invalid smoothing parameters: {exc}") from None
        return cfg

    @classmethod
    def load(cls, path) -> RunConfig:
        try:
            raw = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
        return cls.from_dict(raw)

    def knots(self) -> KnotConfig:
        try:
            return extend_knots(self.degree, self.interior_knots, self.domain)
        except ValueError as exc:
            raise ConfigError(f"invalid knot configuration: {exc}") from None

    def params(self) -> SmoothingParams:
        try:
            p = SmoothingParams(self.penalty_order, self.alpha)
            p.check_against(self.knots())
        except ValueError as exc:
            raise ConfigError(f"invalid smoothing parameters: {exc}") from None
        return p

    def grid(self) -> np.ndarray:
        return np.linspace(self.domain.a, self.domain.b, int(self.grid_points))

    def to_dict(self) -> dict:
        return {
            "domain": [self.domain.a, self.domain.b],
            "knots": list(self.interior_knots),
            "degree": self.degree,
            "penalty_order": self.penalty_order,
            "alpha": self.alpha,
            "weights": self.weights,
            "grid_points": int(self.grid_points),
        }


def fit_groups(
    samples: Mapping[str, ClrSample], config: RunConfig
) -> dict[str, ZBSplineFn]:
    knots, params = config.knots(), config.params()
    fits = {}
    for gid, sample in samples.items():
        if config.weights == "ones":
            sample = ClrSample(sample.t, sample.y)
        try:
            fits[gid] = fit_smoothing_spline(sample, knots, params)
        except (SchoenbergWhitneyError, NumericalDegeneracyError, ValueError) as exc:
            raise FitError(f"group {gid!r}: {exc}") from None
    return fits


def spline_record(gid: str, f: ZBSplineFn) -> dict:
    k = f.knots
    return {
        "group_id": gid,
        "domain": [k.domain.a, k.domain.b],
        "degree": k.degree,
        "interior_knots": list(k.interior),
        "zb_coefficients": f.coefficients.tolist(),
        "b_coefficients": zb_to_b(f).coefficients.tolist(),
    }


def _write_json(path: Path, payload):
    path.write_text(json.dumps(payload, indent=2) + "\n")


def _write_csv(path: Path, header: Sequence[str], rows):
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(v) for v in row])


def _grid_rows(gid: str, f: ZBSplineFn, x: np.ndarray):
    clr = eval_zbspline(f, x)
    dens = density_eval(CompositionalSpline(f), x)
    for xi, ci, di in zip(x, clr, dens):
        yield gid, xi, ci, di


def cmd_smooth(config: RunConfig, input_path, out_dir) -> list[Path]:
    fits = fit_groups(read_clr_samples(input_path), config)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    x = config.grid()
    spline_path, grid_path = out_dir / "splines.json", out_dir / "grid.csv"
    _write_json(
        spline_path,
        {
            "config": config.to_dict(),
            "splines": [spline_record(gid, f) for gid, f in fits.items()],
        },
    )
    _write_csv(
        grid_path,
        ("group_id", "x", "clr_value", "density_value"),
        (row for gid, f in fits.items() for row in _grid_rows(gid, f, x)),
    )
    return [spline_path, grid_path]


def model_summary(model: SfpcaModel, group_ids: Sequence[str]) -> dict:
    fractions = explained_variance(model)
    return {
        "group_ids": list(group_ids),
        "eigenvalues": model.rho.tolist(),
        "explained_fractions": fractions.tolist(),
        "zero_spectrum": bool(fractions.size == 0),
        "mean_zb_coefficients": model.mean_z.tolist(),
        "component_zb_coefficients": model.components.T.tolist(),
        "scores": model.scores.tolist(),
    }


def cmd_sfpca(config: RunConfig, input_path, out_dir) -> list[Path]:
    fits = fit_groups(read_clr_samples(input_path), config)
    if len(fits) < 2:
        raise FitError(f"SFPCA needs at least 2 groups, input has {len(fits)}")
    gids = list(fits)
    model = fit_sfpca([CompositionalSpline(f) for f in fits.values()])
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    x = config.grid()
    paths = {
        name: out_dir / name
        for name in ("model.json", "scores.csv", "scree.csv", "perturbation.csv",
                     "components.csv")
    }
    _write_json(paths["model.json"], {"config": config.to_dict(), **model_summary(model, gids)})
    n_comp = model.n_components
    _write_csv(
        paths["scores.csv"],
        ("group_id", *(f"pc{j + 1}" for j in range(n_comp))),
        ((gid, *model.scores[i]) for i, gid in enumerate(gids)),
    )
    fractions = explained_variance(model)
    _write_csv(
        paths["scree.csv"],
        ("component", "fraction", "cumulative"),
        ((j + 1, fr, cum) for j, (fr, cum) in enumerate(zip(fractions, np.cumsum(fractions)))),
    )
    mean_dens = density_eval(model.mean, x)

    def perturbation_rows():
        for kappa in range(min(PERTURBED_COMPONENTS, n_comp)):
            plus, minus = perturb_mean(model, kappa, PERTURBATION_FACTOR)
            for row in zip(x, mean_dens, density_eval(plus, x), density_eval(minus, x)):
                yield (kappa + 1, *row)

    _write_csv(
        paths["perturbation.csv"],
        ("component", "x", "mean_density", "plus_density", "minus_density"),
        perturbation_rows(),
    )
    _write_csv(
        paths["components.csv"],
        ("component", "x", "clr_value"),
        (
            (kappa + 1, xi, vi)
            for kappa in range(n_comp)
            for xi, vi in zip(x, model.component(kappa).clr(x))
        ),
    )
    return list(paths.values())


def cmd_basis(config: RunConfig, out_dir) -> list[Path]:
    knots = config.knots()
    x = config.grid()
    values = {
        "zb": eval_zb_basis(knots, x),
        "ortho": eval_ortho_basis(ortho_basis(knots), x),
        "cb": eval_cb_basis(knots, x),
    }
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "basis.csv"
    k = knots.degree
    _write_csv(
        path,
        ("basis_kind", "index", "x", "value"),
        (
            (kind, j - k, xi, vi)
            for kind, vals in values.items()
            for j in range(vals.shape[1])
            for xi, vi in zip(x, vals[:, j])
        ),
    )
    return [path]


def parse_range(text: str) -> Domain:
    try:
        a, b = (float(v) for v in text.split(":"))
        return Domain(a, b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like A:B with A < B, got {text!r}")


def cmd_ingest(raw_path, domain: Domain, out_path, classes: int | None = None) -> list[Path]:
    samples = {}
    for gid, values in read_raw_values(raw_path).items():
        try:
            hist = impute_zeros(build_histogram(values, domain, classes))
        except ValueError as exc:
            raise FitError(f"group {gid!r}: {exc}") from None
        log.info("group %s: %d values in %d classes", gid, hist.n_obs, hist.n_classes)
        samples[gid] = to_clr_sample(hist)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    write_clr_samples(out_path, samples)
    return [out_path]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compspline", description="Compositional spline smoothing and SFPCA of densities."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("smooth", "fit a compositional smoothing spline per group"),
        ("sfpca", "smooth every group, then run simplicial functional PCA"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True)
        p.add_argument("--input", required=True, help="CSV with group_id,t,clr_value[,weight]")
        p.add_argument("--out-dir", required=True)

    p = sub.add_parser("basis", help="sample the ZB, orthonormal and CB bases on a grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("ingest", help="raw values -> histograms -> clr samples")
    p.add_argument("--raw", required=True, help="CSV with group_id,value")
    p.add_argument("--range", required=True, type=parse_range, help="histogram range A:B")
    p.add_argument("--out", required=True)
    p.add_argument("--classes", type=int, default=None, help="override Sturges' rule")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s"
    )
    try:
        if args.command == "ingest":
            written = cmd_ingest(args.raw, args.range, args.out, args.classes)
        else:
            config = RunConfig.load(args.config)
            if args.command == "smooth":
                written = cmd_smooth(config, args.input, args.out_dir)
            elif args.command == "sfpca":
                written = cmd_sfpca(config, args.input, args.out_dir)
            else:
                written = cmd_basis(config, args.out_dir)
    except ConfigError as exc:
        print(f"compspline {args.command}: config error: {exc}", file=sys.stderr)
        return 2
    except (FitError, TableFormatError, OSError) as exc:
        print(f"compspline {args.command}: {exc}", file=sys.stderr)
        return 1
    for path in written:
        log.info("wrote %s", path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
