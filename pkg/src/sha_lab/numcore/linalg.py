"""Dense matrix helpers and ordinary least squares."""

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg as sla

from ..core.exceptions import DimensionMismatchError, NonFiniteError, RankDeficientError
from ..observability.logger import get_logger

logger = get_logger(__name__)

# Normal equations square the condition number; above this use the QR solution.
CHOLESKY_CONDITION_LIMIT = 1e4
# |R_dd| below this fraction of |R_11| counts as a dependent column.
RANK_RTOL = 1e-10


def as_matrix(data: ArrayLike) -> NDArray[np.float64]:
    """Validate and convert to a 2-D float64 array with finite entries."""
    x = np.asarray(data, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(-1, 1)
    if x.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError("matrix contains NaN or infinite entries")
    return x


def as_vector(data: ArrayLike) -> NDArray[np.float64]:
    v = np.asarray(data, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise NonFiniteError("vector contains NaN or infinite entries")
    return v


@dataclass(frozen=True, eq=False)
class OlsResult:
    """Least-squares fit of y ~ x @ coefficients + intercept."""

    coefficients: NDArray[np.float64]
    intercept: float
    residual_norm: float
    condition: float
    solver: Literal["cholesky", "qr"]

    def predict(self, x: ArrayLike) -> NDArray[np.float64]:
        return as_matrix(x) @ self.coefficients + self.intercept


def ols_fit(x: ArrayLike, y: ArrayLike) -> OlsResult:
    """Ordinary least squares with an intercept column.

    A column-pivoted QR factorization of the design matrix detects rank
    deficiency and estimates the condition number; well-conditioned systems
    are then solved through the Cholesky-factored normal equations, the rest
    through the QR factors directly.

    Raises:
        DimensionMismatchError: Fewer than d + 1 rows, or y misaligned
        RankDeficientError: Design matrix lacks full column rank
    """
    xm = as_matrix(x)
    yv = as_vector(y)
    n, d = xm.shape
    if yv.shape[0] != n:
        raise DimensionMismatchError(f"x has {n} rows, y has {yv.shape[0]}")
    if n < d + 1:
        raise DimensionMismatchError(f"OLS needs at least d + 1 = {d + 1} rows, got {n}")

    design = np.hstack([xm, np.ones((n, 1))])
    q, r, perm = sla.qr(design, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    rank_tol = diag[0] * RANK_RTOL
    if diag[0] == 0.0 or diag[-1] <= rank_tol:
        condition = float("inf") if diag[-1] == 0.0 else float(diag[0] / diag[-1])
        raise RankDeficientError(condition)
    condition = float(np.linalg.cond(r))

    if condition < CHOLESKY_CONDITION_LIMIT:
        solver: Literal["cholesky", "qr"] = "cholesky"
        factor = sla.cho_factor(design.T @ design)
        beta = sla.cho_solve(factor, design.T @ yv)
    else:
        solver = "qr"
        z = sla.solve_triangular(r, q.T @ yv)
        beta = np.empty_like(z)
        beta[perm] = z

    residual = yv - design @ beta
    result = OlsResult(
        coefficients=beta[:d].copy(),
        intercept=float(beta[d]),
        residual_norm=float(np.linalg.norm(residual)),
        condition=condition,
        solver=solver,
    )
    logger.debug("OLS fit", rows=n, columns=d, solver=solver, condition=condition)
    return result
