"""Covariance and correlation (population convention, ddof = 0)."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.exceptions import DimensionMismatchError
from .linalg import as_matrix


@dataclass(frozen=True, eq=False)
class CorrelationResult:
    matrix: NDArray[np.float64]
    zero_variance: NDArray[np.bool_]

    @property
    def flagged(self) -> list[int]:
        """Indices of zero-variance columns."""
        return [int(i) for i in np.flatnonzero(self.zero_variance)]


def covariance(x: ArrayLike) -> NDArray[np.float64]:
    """Population covariance matrix of the columns of ``x``."""
    xm = as_matrix(x)
    n = xm.shape[0]
    if n < 2:
        raise DimensionMismatchError(f"covariance needs at least 2 rows, got {n}")
    centered = xm - xm.mean(axis=0)
    cov = centered.T @ centered / n
    return 0.5 * (cov + cov.T)


def correlation(x: ArrayLike) -> CorrelationResult:
    """Pearson correlation; zero-variance columns get 0 off-diagonal entries and a flag."""
    cov = covariance(x)
    std = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    zero = std == 0.0
    safe = np.where(zero, 1.0, std)
    corr = cov / np.outer(safe, safe)
    corr[zero, :] = 0.0
    corr[:, zero] = 0.0
    corr = np.clip(corr, -1.0, 1.0)
    np.fill_diagonal(corr, 1.0)
    return CorrelationResult(matrix=corr, zero_variance=zero)
