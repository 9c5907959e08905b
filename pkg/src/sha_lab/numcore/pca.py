"""Principal component analysis on top of the Jacobi eigensolver."""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.exceptions import DimensionMismatchError, NumericalError
from .eigen import symmetric_eigen
from .linalg import as_matrix
from .stats import covariance


@dataclass(frozen=True, eq=False)
class PcaResult:
    """Loadings (columns = components), variance ratios and projected rows."""

    components: NDArray[np.float64]
    eigenvalues: NDArray[np.float64]
    explained_variance_ratio: NDArray[np.float64]
    projections: NDArray[np.float64]
    converged: bool = True

    @property
    def k(self) -> int:
        return int(self.projections.shape[1])


def _fix_signs(vectors: NDArray[np.float64]) -> NDArray[np.float64]:
    """Flip each column so its largest-magnitude entry is positive."""
    fixed = vectors.copy()
    for j in range(fixed.shape[1]):
        i = int(np.argmax(np.abs(fixed[:, j])))
        if fixed[i, j] < 0:
            fixed[:, j] = -fixed[:, j]
    return fixed


def pca(x: ArrayLike, k: Optional[int] = None) -> PcaResult:
    """Eigendecomposition of the population covariance of ``x``.

    ``x`` is expected to be standardized by the caller; rows are centered here
    so projections have zero mean.

    Raises:
        DimensionMismatchError: k outside [1, d]
        NumericalError: All columns are constant
    """
    xm = as_matrix(x)
    d = xm.shape[1]
    k = d if k is None else k
    if not 1 <= k <= d:
        raise DimensionMismatchError(f"k must lie in [1, {d}], got {k}")

    eig = symmetric_eigen(covariance(xm))
    values = np.clip(eig.eigenvalues, 0.0, None)
    total = values.sum()
    if total <= 0.0:
        raise NumericalError("PCA input has zero total variance")

    components = _fix_signs(eig.eigenvectors)
    centered = xm - xm.mean(axis=0)
    return PcaResult(
        components=components,
        eigenvalues=eig.eigenvalues,
        explained_variance_ratio=values / total,
        projections=centered @ components[:, :k],
        converged=eig.converged,
    )


def loadings_table(
    result: PcaResult, feature_names: Sequence[str], k: int = 2
) -> list[dict[str, Any]]:
    """Rows ``{feature, PC1, ..., PCk}`` in feature order."""
    if len(feature_names) != result.components.shape[0]:
        raise DimensionMismatchError(
            f"{len(feature_names)} names for {result.components.shape[0]} features"
        )
    return [
        {"feature": name, **{f"PC{j + 1}": float(result.components[i, j]) for j in range(k)}}
        for i, name in enumerate(feature_names)
    ]
