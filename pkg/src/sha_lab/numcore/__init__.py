"""Dense linear algebra and statistics used by the models and analyses."""

from .eigen import EigenResult, symmetric_eigen
from .linalg import OlsResult, as_matrix, as_vector, ols_fit
from .pca import PcaResult, loadings_table, pca
from .stats import CorrelationResult, correlation, covariance

__all__ = [
    "CorrelationResult",
    "EigenResult",
    "OlsResult",
    "PcaResult",
    "as_matrix",
    "as_vector",
    "correlation",
    "covariance",
    "loadings_table",
    "ols_fit",
    "pca",
    "symmetric_eigen",
]
