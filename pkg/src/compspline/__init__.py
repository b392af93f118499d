"""Compositional splines: zero-integral spline bases for densities in the Bayes space."""

from .bayes import (
    CompositionalSpline,
    bayes_inner_product,
    bayes_norm,
    clr_discrete,
    density_eval,
    difference,
    eval_cb_basis,
    functional_clr,
    perturb,
    power,
)
from .bspline import (
    BSplineFn,
    Domain,
    GramMatrix,
    KnotConfig,
    collocation_matrix,
    derivative_reduction,
    eval_b_basis,
    eval_bspline,
    eval_m_basis,
    extend_knots,
    gram_matrix,
    spline_integral,
)
from .ingest import (
    HistogramData,
    build_histogram,
    impute_zeros,
    read_clr_samples,
    read_table,
    sturges_classes,
    to_clr_sample,
    write_clr_samples,
    write_table,
)
from .ortho import (
    OrthoBasis,
    eval_ortho_basis,
    from_ortho_coefficients,
    ortho_basis,
    orthogonalizing_transform,
    to_ortho_coefficients,
    zb_gram,
)
from .sfpca import SfpcaModel, bayes_mean, explained_variance, fit_sfpca, perturb_mean, project
from .smoothing import (
    ClrSample,
    NumericalDegeneracyError,
    SchoenbergWhitneyError,
    SmoothingParams,
    assemble_normal_system,
    check_schoenberg_whitney,
    fit_smoothing_spline,
    objective_value,
)
from .zbspline import (
    CoeffMapMatrices,
    ZBSplineFn,
    b_to_zb,
    build_coeff_map,
    eval_zb_basis,
    eval_zbspline,
    zb_to_b,
    zspace_dimension,
)

__version__ = "0.1.0"
