"""Tests for OLS, the Jacobi eigensolver, PCA and correlation."""

import numpy as np
import pytest

from sha_lab.core.exceptions import (
    DimensionMismatchError,
    NoConvergenceError,
    NonFiniteError,
    NotSymmetricError,
    NumericalError,
    RankDeficientError,
)
from sha_lab.core.utils.rng import make_rng
from sha_lab.numcore import correlation, covariance, loadings_table, ols_fit, pca, symmetric_eigen


class TestOls:
    def test_recovers_exact_linear_relation(self):
        rng = make_rng(0, "ols")
        x = rng.normal(size=(200, 5))
        beta = np.array([1.0, 2.0, -1.0, -1.0, -1.0])
        y = x @ beta + 0.5
        fit = ols_fit(x, y)
        np.testing.assert_allclose(fit.coefficients, beta, atol=1e-9)
        assert fit.intercept == pytest.approx(0.5, abs=1e-9)
        assert fit.residual_norm < 1e-8
        assert fit.solver == "cholesky"
        np.testing.assert_allclose(fit.predict(x[:3]), y[:3], atol=1e-9)

    def test_ill_conditioned_uses_qr(self):
        rng = make_rng(1, "ols")
        base = rng.normal(size=(100, 1))
        x = np.hstack([base, base + 1e-6 * rng.normal(size=(100, 1))])
        y = 3.0 * base[:, 0]
        fit = ols_fit(x, y)
        assert fit.solver == "qr"
        assert fit.condition > 1e4

    def test_rank_deficient(self):
        rng = make_rng(2, "ols")
        col = rng.normal(size=(50, 1))
        with pytest.raises(RankDeficientError):
            ols_fit(np.hstack([col, 2.0 * col]), rng.normal(size=50))

    def test_too_few_rows(self):
        with pytest.raises(DimensionMismatchError):
            ols_fit(np.eye(3), np.ones(3))

    def test_misaligned_target(self):
        with pytest.raises(DimensionMismatchError):
            ols_fit(np.ones((10, 2)), np.ones(9))

    def test_non_finite_input(self):
        x = np.ones((10, 2))
        x[3, 1] = np.inf
        with pytest.raises(NonFiniteError):
            ols_fit(x, np.ones(10))


class TestSymmetricEigen:
    def test_matches_lapack(self):
        rng = make_rng(3, "eigen")
        a = rng.normal(size=(6, 6))
        sym = a + a.T
        result = symmetric_eigen(sym)
        assert result.converged
        expected = np.sort(np.linalg.eigvalsh(sym))[::-1]
        np.testing.assert_allclose(result.eigenvalues, expected, atol=1e-9)
        reconstructed = result.eigenvectors @ np.diag(result.eigenvalues) @ result.eigenvectors.T
        np.testing.assert_allclose(reconstructed, sym, atol=1e-9)

    def test_diagonal_needs_no_sweeps(self):
        result = symmetric_eigen(np.diag([1.0, 3.0, 2.0]))
        assert result.sweeps == 0
        np.testing.assert_array_equal(result.eigenvalues, [3.0, 2.0, 1.0])

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetricError):
            symmetric_eigen(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_not_square(self):
        with pytest.raises(NotSymmetricError):
            symmetric_eigen(np.ones((2, 3)))

    def test_sweep_budget(self):
        rng = make_rng(4, "eigen")
        a = rng.normal(size=(5, 5))
        sym = a + a.T
        relaxed = symmetric_eigen(sym, max_sweeps=1)
        assert not relaxed.converged
        with pytest.raises(NoConvergenceError):
            symmetric_eigen(sym, max_sweeps=1, strict=True)


class TestPca:
    @pytest.fixture
    def data(self) -> np.ndarray:
        rng = make_rng(5, "pca")
        latent = rng.normal(size=(400, 1))
        noise = 0.1 * rng.normal(size=(400, 3))
        return np.hstack([latent, -latent, 0.5 * latent]) + noise

    def test_dominant_component(self, data):
        result = pca(data, k=2)
        assert result.k == 2
        assert result.projections.shape == (400, 2)
        assert result.explained_variance_ratio[0] > 0.95
        assert result.explained_variance_ratio.sum() == pytest.approx(1.0)

    def test_sign_convention(self, data):
        components = pca(data).components
        for j in range(components.shape[1]):
            column = components[:, j]
            assert column[np.argmax(np.abs(column))] > 0

    def test_projections_are_centered(self, data):
        np.testing.assert_allclose(pca(data, k=2).projections.mean(axis=0), 0.0, atol=1e-12)

    def test_invalid_k(self, data):
        with pytest.raises(DimensionMismatchError):
            pca(data, k=4)

    def test_constant_input(self):
        with pytest.raises(NumericalError):
            pca(np.ones((10, 3)))

    def test_loadings_table(self, data):
        rows = loadings_table(pca(data, k=2), ["a", "b", "c"], k=2)
        assert [r["feature"] for r in rows] == ["a", "b", "c"]
        assert set(rows[0]) == {"feature", "PC1", "PC2"}


class TestCorrelation:
    def test_population_covariance(self):
        x = np.array([[1.0, 2.0], [3.0, 6.0]])
        np.testing.assert_allclose(covariance(x), [[1.0, 2.0], [2.0, 4.0]])

    def test_perfect_correlation(self):
        x = np.array([[1.0, -2.0], [2.0, -4.0], [3.0, -6.0]])
        np.testing.assert_allclose(correlation(x).matrix, [[1.0, -1.0], [-1.0, 1.0]])

    def test_zero_variance_flagged(self):
        x = np.array([[1.0, 5.0], [2.0, 5.0], [4.0, 5.0]])
        result = correlation(x)
        assert result.flagged == [1]
        assert result.matrix[0, 1] == 0.0
        assert result.matrix[1, 1] == 1.0

    def test_needs_two_rows(self):
        with pytest.raises(DimensionMismatchError):
            covariance(np.ones((1, 3)))
