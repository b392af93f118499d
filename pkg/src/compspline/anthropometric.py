"""Body-weight histograms of 16 age groups (15 to 31 years) and their fits.

Values are the tabulated three-decimal clr data and fit coefficients,
plus four example histograms.  Midpoints are recomputed
exactly from the class count over the 40-110 kg range; the tabulated ones
are these values rounded.
"""

from __future__ import annotations

import numpy as np

from .bspline import Domain, KnotConfig, extend_knots
from .smoothing import ClrSample, SmoothingParams

AGE_GROUPS = tuple(f"{age}-{age + 1}" for age in range(15, 31))

HISTOGRAM_RANGE = Domain(40.0, 110.0)
DOMAIN = Domain(40.0, 107.0)
INTERIOR_KNOTS = (62.0, 84.0)
DEGREE = 3
PENALTY_ORDER = 2
ALPHA = 0.5

# discrete clr of the class densities, one row per age group
CLR_VALUES = (
    (0.100, 1.486, 1.737, 1.289, 0.233, -0.748, -1.846, -2.252),
    (-0.210, 1.217, 1.760, 1.636, 0.396, -0.392, -2.001, -2.407),
    (-1.375, 0.570, 1.316, 1.669, 1.381, 0.534, -0.364, -2.069, -1.663),
    (-1.354, 0.592, 1.419, 1.443, 1.406, 1.131, 0.563, -0.661, -1.171, -3.369),
    (-1.536, 0.628, 1.408, 1.555, 1.535, 1.209, 0.302, -0.774, -1.536, -2.789),
    (-1.341, 0.674, 1.333, 1.558, 1.638, 1.452, 0.422, -0.568, -2.034, -3.133),
    (-1.746, 0.451, 1.185, 1.463, 1.411, 1.131, 0.531, -0.242, -1.746, -2.439),
    (-1.168, 0.550, 1.281, 1.450, 1.511, 1.106, 0.624, -0.917, -2.015, -2.421),
    (-1.884, 0.573, 1.412, 1.348, 1.177, 1.177, 0.681, -0.680, -0.417, -3.388),
    (-1.602, 0.595, 1.186, 1.274, 1.106, 0.796, 0.056, -0.423, -2.988),
    (-1.401, 0.471, 0.768, 0.824, 1.145, 0.850, 0.209, -1.178, -1.688),
    (-1.045, 0.513, 0.901, 1.180, 1.258, 0.513, -0.485, -2.836),
    (-0.816, 0.570, 0.742, 0.742, 1.056, 0.570, -0.256, -2.608),
    (-1.155, 0.579, 0.790, 0.965, 0.690, -0.308, -1.561),
    (-1.060, 0.480, 0.837, 0.674, 0.614, -0.773, -0.773),
    (-0.756, -0.168, 0.525, 0.679, 0.579, 0.120, -0.979),  # first entry printed as "--0.756"
)

# printed midpoints, kept to check the recomputed ones
PRINTED_MIDPOINTS = {
    7: (45.0, 55.0, 65.0, 75.0, 85.0, 95.0, 105.0),
    8: (44.375, 53.125, 61.875, 70.625, 79.375, 88.125, 96.875, 105.625),
    9: (43.889, 51.667, 59.444, 67.222, 75.000, 82.778, 90.556, 98.333, 106.111),
    10: (43.5, 50.5, 57.5, 64.5, 71.5, 78.5, 85.5, 92.5, 99.5, 106.5),
}

ZB_COEFFICIENTS = np.array(
    [
        [-6.950, 6.647, 46.536, 40.973, 13.163],
        [-7.806, -0.596, 41.616, 45.181, 14.083],
        [-16.677, -11.292, 18.284, 43.917, 9.102],
        [-17.067, -8.988, 21.373, 33.533, 20.188],
        [-18.483, -9.902, 22.408, 38.249, 16.447],
        [-17.242, -7.010, 18.199, 46.788, 18.682],
        [-20.452, -10.875, 11.653, 36.887, 14.797],
        [-15.236, -5.368, 16.735, 46.421, 14.071],
        [-22.485, -12.348, 17.033, 23.450, 20.153],
        [-19.873, -14.176, 13.567, 20.115, 19.448],
        [-19.011, -5.949, -4.623, 30.860, 9.973],
        [-14.997, -10.545, 2.638, 28.225, 19.143],
        [-14.461, -4.455, -0.689, 21.892, 18.070],
        [-18.518, -11.045, -2.723, 21.744, 10.395],
        [-16.445, -9.417, -1.814, 23.562, 2.889],
        [-5.077, -15.534, -4.171, 8.220, 7.618],
    ]
)

B_COEFFICIENTS = np.array(
    [
        [-1.264, 1.236, 2.381, -0.332, -2.472, -2.289],
        [-1.419, 0.655, 2.520, 0.213, -2.764, -2.449],
        [-3.032, 0.490, 1.766, 1.530, -3.095, -1.583],
        [-3.103, 0.734, 1.813, 0.726, -1.186, -3.511],
        [-3.361, 0.780, 1.929, 0.946, -1.938, -2.860],
        [-3.135, 0.930, 1.505, 1.707, -2.498, -3.249],
        [-3.719, 0.871, 1.345, 1.507, -1.964, -2.573],
        [-2.770, 0.897, 1.320, 1.772, -2.876, -2.447],
        [-4.088, 0.922, 1.754, 0.383, -0.293, -3.505],
        [-3.613, 0.518, 1.656, 0.391, -0.059, -3.382],
        [-3.456, 1.187, 0.079, 2.118, -1.857, -1.734],
        [-2.727, 0.405, 0.787, 1.528, -0.807, -3.329],
        [-2.629, 0.910, 0.225, 1.348, -0.340, -3.143],
        [-3.367, 0.679, 0.497, 1.461, -1.009, -1.808],
        [-2.990, 0.639, 0.454, 1.515, -1.838, -0.502],
        [-0.923, -0.951, 0.678, 0.740, -0.053, -1.325],
    ]
)

for _arr in (ZB_COEFFICIENTS, B_COEFFICIENTS):
    _arr.setflags(write=False)

# example histograms: proportions p and densities f = p / width
HISTOGRAMS = {
    "15-16": {
        "p": (0.0656, 0.2625, 0.3375, 0.2156, 0.0750, 0.0281, 0.0094, 0.0062),
        "f": (0.0075, 0.0300, 0.0386, 0.0246, 0.0086, 0.0032, 0.0011, 0.0007),
    },
    "22-23": {
        "p": (0.0156, 0.0869, 0.1804, 0.2138, 0.2272, 0.1514, 0.0935, 0.0200, 0.0067, 0.0045),
        "f": (0.0022, 0.0124, 0.0258, 0.0305, 0.0325, 0.0216, 0.0134, 0.0029, 0.0010, 0.0006),
    },
    "23-24": {
        "p": (0.0078, 0.0908, 0.2100, 0.1971, 0.1659, 0.1659, 0.1011, 0.0259, 0.0337, 0.0017),
        "f": (0.0011, 0.0130, 0.0300, 0.0282, 0.0237, 0.0237, 0.0144, 0.0037, 0.0048, 0.0002),
    },
    "30-31": {
        "p": (0.0568, 0.1023, 0.2045, 0.2386, 0.2159, 0.1364, 0.0455),
        "f": (0.0057, 0.0102, 0.0205, 0.0239, 0.0216, 0.0136, 0.0045),
    },
}


def knot_config() -> KnotConfig:
    return extend_knots(DEGREE, INTERIOR_KNOTS, DOMAIN)


def smoothing_params() -> SmoothingParams:
    return SmoothingParams(l=PENALTY_ORDER, alpha=ALPHA)


def class_midpoints(n_classes: int) -> np.ndarray:
    edges = np.linspace(HISTOGRAM_RANGE.a, HISTOGRAM_RANGE.b, n_classes + 1)
    return (edges[:-1] + edges[1:]) / 2


def clr_samples() -> dict[str, ClrSample]:
    """The 16 clr samples with unit weights, keyed by age group."""
    return {
        gid: ClrSample(class_midpoints(len(y)), y)
        for gid, y in zip(AGE_GROUPS, CLR_VALUES)
    }
