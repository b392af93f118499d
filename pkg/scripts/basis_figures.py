"""Sample ZB, orthonormal and CB bases for a few knot layouts into CSV files.

The layouts cover linear, quadratic and cubic splines on equidistant and
uneven knots.  Output is long-format CSV (layout, basis_kind, index, x,
value) for an external plotting tool.
"""

from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from compspline import Domain, eval_cb_basis, eval_ortho_basis, eval_zb_basis, extend_knots, ortho_basis


@dataclass(frozen=True)
class Layout:
    name: str
    degree: int
    breakpoints: tuple[float, ...]

    def knots(self):
        bp = self.breakpoints
        return extend_knots(self.degree, bp[1:-1], Domain(bp[0], bp[-1]))


LAYOUTS = (
    Layout("linear-equidistant", 1, (0, 1, 2, 3)),
    Layout("quadratic-equidistant", 2, (0, 1, 2, 3, 4)),
    Layout("cubic-equidistant", 3, (0, 1, 2, 3, 4, 5)),
    Layout("linear-uneven", 1, (0, 1, 10, 30)),
    Layout("quadratic-uneven", 2, (0, 1, 10, 30, 50)),
    Layout("cubic-example", 3, (0, 2, 5, 9, 14, 20)),
)


def sample(layout: Layout, n: int):
    kn = layout.knots()
    x = np.linspace(kn.domain.a, kn.domain.b, n)
    bases = {
        "zb": eval_zb_basis(kn, x),
        "ortho": eval_ortho_basis(ortho_basis(kn), x),
        "cb": eval_cb_basis(kn, x),
    }
    for kind, vals in bases.items():
        for j in range(vals.shape[1]):
            for xi, vi in zip(x, vals[:, j]):
                yield layout.name, kind, j - kn.degree, repr(float(xi)), repr(float(vi))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("basis_figures.csv"))
    parser.add_argument("--grid-points", type=int, default=301)
    args = parser.parse_args(argv)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["layout", "basis_kind", "index", "x", "value"])
        for layout in LAYOUTS:
            w.writerows(sample(layout, args.grid_points))
    print(f"wrote {len(LAYOUTS)} layouts to {args.out}")


if __name__ == "__main__":
    main()
