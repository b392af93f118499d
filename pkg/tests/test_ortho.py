import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compspline import (
    Domain,
    GramMatrix,
    ZBSplineFn,
    eval_ortho_basis,
    eval_zb_basis,
    extend_knots,
    from_ortho_coefficients,
    ortho_basis,
    orthogonalizing_transform,
    to_ortho_coefficients,
    zb_gram,
    zspace_dimension,
)
from compspline._linalg import cholesky

from conftest import gl_pieces, knot_configs

EQUIDISTANT_CONFIGS = [
    extend_knots(1, [1, 2], Domain(0, 3)),
    extend_knots(2, [1, 2, 3], Domain(0, 4)),
]


def quadrature_gram(values, w):
    return (values * w[:, None]).T @ values


class TestZBGram:
    @settings(max_examples=40)
    @given(knot_configs(degrees=(1, 2, 3, 4)))
    def test_against_quadrature(self, kn):
        x, w = gl_pieces(kn.breakpoints)
        ref = quadrature_gram(eval_zb_basis(kn, x), w)
        sigma = zb_gram(kn).entries
        np.testing.assert_allclose(sigma, ref, atol=1e-10 * max(1.0, np.abs(ref).max()))
        np.testing.assert_array_equal(sigma, sigma.T)

    def test_weight_configuration(self, weight_knots):
        sigma = zb_gram(weight_knots).entries
        assert sigma.shape == (5, 5)
        cholesky(sigma)


def _gram(entries):
    e = np.asarray(entries, dtype=float)
    kn = extend_knots(1, list(np.linspace(0, 1, e.shape[0] + 1)[1:-1]), Domain(0, 1))
    return GramMatrix(kn, (1, 0), e)


class TestTransform:
    def test_identity(self):
        np.testing.assert_array_equal(orthogonalizing_transform(_gram(np.eye(3))).phi, np.eye(3))

    def test_diagonal(self):
        phi = orthogonalizing_transform(_gram(np.diag([4.0, 9.0]))).phi
        np.testing.assert_allclose(phi, np.diag([0.5, 1 / 3]), rtol=1e-15)

    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_random_positive_definite(self, m, seed):
        a = np.random.default_rng(seed).normal(size=(m, m))
        sigma = a @ a.T + m * np.eye(m)
        phi = orthogonalizing_transform(_gram(sigma)).phi
        np.testing.assert_allclose(phi @ sigma @ phi.T, np.eye(m), atol=1e-10)
        np.testing.assert_allclose(phi.T @ phi @ sigma, np.eye(m), atol=1e-10)


class TestOrthoBasis:
    @pytest.mark.parametrize("kn", EQUIDISTANT_CONFIGS, ids=["linear", "quadratic"])
    def test_equidistant_configs(self, kn):
        basis = ortho_basis(kn)
        x, w = gl_pieces(kn.breakpoints)
        o = eval_ortho_basis(basis, x)
        np.testing.assert_allclose(quadrature_gram(o, w), np.eye(o.shape[1]), atol=1e-10)
        np.testing.assert_allclose(w @ o, 0, atol=1e-12)
        np.testing.assert_allclose(basis.phi.T @ basis.phi @ basis.sigma.entries, np.eye(o.shape[1]), atol=1e-10)

    @settings(max_examples=60)
    @given(knot_configs(degrees=(1, 2, 3)))
    def test_random_configs(self, kn):
        basis = ortho_basis(kn)
        x, w = gl_pieces(kn.breakpoints)
        o = eval_ortho_basis(basis, x)
        m = o.shape[1]
        np.testing.assert_allclose(quadrature_gram(o, w), np.eye(m), atol=1e-10)
        np.testing.assert_allclose(
            basis.phi.T @ basis.phi, np.linalg.inv(basis.sigma.entries), atol=1e-10 * np.linalg.cond(basis.sigma.entries)
        )

    def test_identity_phi_reproduces_zb(self, cubic20_knots):
        from compspline import OrthoBasis

        m = zspace_dimension(cubic20_knots)
        basis = OrthoBasis(cubic20_knots, np.eye(m), zb_gram(cubic20_knots), np.eye(m))
        x = np.linspace(0, 20, 23)
        np.testing.assert_array_equal(eval_ortho_basis(basis, x), eval_zb_basis(cubic20_knots, x))


class TestCoefficients:
    @settings(max_examples=60)
    @given(knot_configs(), st.integers(0, 2**32 - 1))
    def test_round_trip_and_pointwise(self, kn, seed):
        rng = np.random.default_rng(seed)
        basis = ortho_basis(kn)
        f = ZBSplineFn(kn, rng.normal(size=zspace_dimension(kn)))
        c = to_ortho_coefficients(f, basis)
        back = from_ortho_coefficients(c, basis)
        np.testing.assert_allclose(back.coefficients, f.coefficients, atol=1e-12 * (1 + np.abs(f.coefficients).max()) * np.linalg.cond(basis.chol))
        x = rng.uniform(kn.domain.a, kn.domain.b, 100)
        np.testing.assert_allclose(eval_ortho_basis(basis, x) @ c, f(x), atol=1e-10 * (1 + np.abs(f(x)).max()))

    @settings(max_examples=60)
    @given(knot_configs(), st.integers(0, 2**32 - 1))
    def test_parseval(self, kn, seed):
        basis = ortho_basis(kn)
        z = np.random.default_rng(seed).normal(size=zspace_dimension(kn))
        c = to_ortho_coefficients(ZBSplineFn(kn, z), basis)
        x, w = gl_pieces(kn.breakpoints)
        norm_sq = float(w @ (eval_zb_basis(kn, x) @ z) ** 2)
        assert float(c @ c) == pytest.approx(norm_sq, rel=1e-8)
        assert float(z @ basis.sigma.entries @ z) == pytest.approx(float(c @ c), rel=1e-10)

    def test_zero(self, weight_knots):
        basis = ortho_basis(weight_knots)
        np.testing.assert_array_equal(to_ortho_coefficients(ZBSplineFn(weight_knots, np.zeros(5)), basis), 0)

    def test_knot_mismatch(self, weight_knots, cubic20_knots):
        with pytest.raises(ValueError, match="different knot"):
            to_ortho_coefficients(ZBSplineFn(cubic20_knots, np.zeros(7)), ortho_basis(weight_knots))
