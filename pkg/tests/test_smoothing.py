import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.interpolate import BSpline

from compspline import (
    ClrSample,
    Domain,
    SchoenbergWhitneyError,
    SmoothingParams,
    assemble_normal_system,
    check_schoenberg_whitney,
    collocation_matrix,
    extend_knots,
    fit_smoothing_spline,
    objective_value,
    spline_integral,
    zb_to_b,
    zspace_dimension,
)
from compspline import anthropometric

from conftest import knot_configs, quad_pieces


def direct_objective(sample, knots, params, z):
    """Penalized criterion evaluated from the B-spline form by quadrature."""
    from compspline import ZBSplineFn

    b = zb_to_b(ZBSplineFn(knots, z)).coefficients
    s = BSpline(knots.extended_knots, b, knots.degree)
    ds = s.derivative(params.l)
    penalty = quad_pieces(lambda x: ds(x) ** 2, knots.breakpoints)
    resid = sample.y - s(sample.t)
    return (1 - params.alpha) * penalty + params.alpha * float(np.sum(sample.w * resid**2))


def random_sample(kn, rng, n=None):
    n = n or kn.n_basis + int(rng.integers(0, 10))
    t = np.sort(rng.uniform(kn.domain.a, kn.domain.b, n))
    return ClrSample(t, rng.normal(size=n), rng.uniform(0.5, 2.0, n))


class TestParams:
    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.1, 1.5, float("nan")])
    def test_alpha_interior(self, alpha):
        with pytest.raises(ValueError, match="alpha"):
            SmoothingParams(alpha=alpha)

    def test_l_positive(self):
        with pytest.raises(ValueError):
            SmoothingParams(l=0)

    def test_l_below_degree(self, weight_knots):
        with pytest.raises(ValueError, match="requires degree"):
            SmoothingParams(l=3).check_against(weight_knots)

    def test_sample_validation(self):
        with pytest.raises(ValueError, match="ascending"):
            ClrSample([2, 1], [0, 0])
        with pytest.raises(ValueError, match="positive"):
            ClrSample([1, 2], [0, 0], [1, 0])
        with pytest.raises(ValueError):
            ClrSample([1, 2], [0])
        np.testing.assert_array_equal(ClrSample([1, 2], [0, 0]).w, [1, 1])


class TestSchoenbergWhitney:
    def test_ten_class_group(self, weight_knots):
        t = anthropometric.class_midpoints(10)
        assert t[0] == pytest.approx(43.5) and t[-1] == pytest.approx(106.5)
        assert check_schoenberg_whitney(weight_knots, t)

    def test_repeated_point(self, weight_knots):
        assert not check_schoenberg_whitney(weight_knots, [70.0] * 6)

    def test_too_few(self, weight_knots):
        assert not check_schoenberg_whitney(weight_knots, [45, 60, 70, 90, 100])

    def test_endpoints_count(self):
        kn = extend_knots(1, [], Domain(0, 1))
        assert check_schoenberg_whitney(kn, [0.0, 1.0])

    @settings(max_examples=80)
    @given(knot_configs(), st.integers(0, 2**32 - 1), st.integers(0, 4))
    def test_agrees_with_rank(self, kn, seed, extra):
        rng = np.random.default_rng(seed)
        n = max(1, kn.n_basis - 2 + extra)
        # snap to a coarse grid so repeated and boundary points occur
        t = np.sort(np.round(rng.uniform(0, 1, n) * 8) / 8 * kn.domain.eta + kn.domain.a)
        t = np.clip(t, kn.domain.a, kn.domain.b)
        rank = np.linalg.matrix_rank(collocation_matrix(kn, t), tol=1e-9)
        assert check_schoenberg_whitney(kn, t) == (rank == kn.n_basis)


class TestNormalSystem:
    @settings(max_examples=40)
    @given(knot_configs(degrees=(2, 3)), st.integers(0, 2**32 - 1))
    def test_symmetric_and_positive_definite(self, kn, seed):
        rng = np.random.default_rng(seed)
        sample = random_sample(kn, rng)
        params = SmoothingParams(l=int(rng.integers(1, kn.degree)), alpha=float(rng.uniform(0.05, 0.95)))
        g, _ = assemble_normal_system(sample, kn, params)
        assert np.abs(g - g.T).max() <= 1e-12 * np.abs(g).max()
        if check_schoenberg_whitney(kn, sample.t):
            assert np.linalg.eigvalsh(g).min() > 0

    def test_rank_deficient_gives_singular_matrix(self):
        # every point at the centre: the zero-integral line through it is invisible
        kn = extend_knots(3, [], Domain(0, 2))
        sample = ClrSample([1.0] * 6, np.zeros(6))
        g, _ = assemble_normal_system(sample, kn, SmoothingParams(l=2))
        ev = np.linalg.eigvalsh(g)
        assert ev.min() <= 1e-12 * ev.max()
        with pytest.raises(SchoenbergWhitneyError):
            fit_smoothing_spline(sample, kn, SmoothingParams(l=2))

    def test_zero_data(self, weight_knots):
        sample = ClrSample(anthropometric.class_midpoints(8), np.zeros(8), np.linspace(1, 3, 8))
        _, rhs = assemble_normal_system(sample, weight_knots, SmoothingParams())
        np.testing.assert_array_equal(rhs, 0)
        np.testing.assert_array_equal(fit_smoothing_spline(sample, weight_knots).coefficients, 0)


class TestFit:
    def test_tabulated_coefficients(self, weight_knots):
        params = anthropometric.smoothing_params()
        for sample, z in zip(anthropometric.clr_samples().values(), anthropometric.ZB_COEFFICIENTS):
            fit = fit_smoothing_spline(sample, weight_knots, params)
            np.testing.assert_allclose(fit.coefficients, z, atol=0.05)

    def test_zero_integral(self, weight_knots):
        for sample in anthropometric.clr_samples().values():
            fit = fit_smoothing_spline(sample, weight_knots)
            assert abs(spline_integral(zb_to_b(fit))) < 1e-12 * np.abs(fit.coefficients).sum()

    def test_rejects_schoenberg_whitney_failure(self, weight_knots):
        with pytest.raises(SchoenbergWhitneyError, match="Schoenberg-Whitney"):
            fit_smoothing_spline(ClrSample([50, 60, 70], [1, 0, -1]), weight_knots)

    @settings(max_examples=30)
    @given(knot_configs(degrees=(2, 3)), st.integers(0, 2**32 - 1))
    def test_minimizer(self, kn, seed):
        rng = np.random.default_rng(seed)
        sample = random_sample(kn, rng, kn.n_basis + 5)
        if not check_schoenberg_whitney(kn, sample.t):
            return
        params = SmoothingParams(l=1, alpha=0.5)
        fit = fit_smoothing_spline(sample, kn, params)
        best = objective_value(sample, kn, params, fit)
        for _ in range(100):
            delta = rng.normal(size=fit.coefficients.size)
            z = fit.coefficients + 1e-3 * delta / np.linalg.norm(delta)
            assert best <= objective_value(sample, kn, params, z) + 1e-12 * abs(best)

    def test_monotone_tradeoff(self, weight_knots):
        for sample in list(anthropometric.clr_samples().values())[::3]:
            rss = []
            for alpha in np.linspace(0.05, 0.95, 19):
                fit = fit_smoothing_spline(sample, weight_knots, SmoothingParams(2, alpha))
                resid = sample.y - fit(sample.t)
                rss.append(float(np.sum(sample.w * resid**2)))
            assert np.all(np.diff(rss) <= 1e-12 * max(rss))


class TestObjective:
    def test_zero_coefficients(self, weight_knots):
        sample = anthropometric.clr_samples()["15-16"]
        w = np.linspace(1, 2, sample.n)
        sample = ClrSample(sample.t, sample.y, w)
        val = objective_value(sample, weight_knots, SmoothingParams(), np.zeros(5))
        assert val == pytest.approx(0.5 * np.sum(w * sample.y**2), rel=1e-14)

    @settings(max_examples=40)
    @given(knot_configs(degrees=(2, 3, 4)), st.integers(0, 2**32 - 1))
    def test_quadratic_form_matches_direct_evaluation(self, kn, seed):
        rng = np.random.default_rng(seed)
        sample = random_sample(kn, rng)
        params = SmoothingParams(l=int(rng.integers(1, kn.degree)), alpha=float(rng.uniform(0.1, 0.9)))
        z = rng.normal(size=zspace_dimension(kn))
        direct = direct_objective(sample, kn, params, z)
        assert objective_value(sample, kn, params, z) == pytest.approx(direct, rel=1e-8)
