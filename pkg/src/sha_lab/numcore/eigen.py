"""Cyclic Jacobi eigensolver for small dense symmetric matrices."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.exceptions import NoConvergenceError, NotSymmetricError
from ..observability.logger import get_logger
from .linalg import as_matrix

logger = get_logger(__name__)

SYMMETRY_TOLERANCE = 1e-10
OFF_DIAGONAL_TOLERANCE = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class EigenResult:
    """Eigenvalues in descending order; eigenvectors are the columns."""

    eigenvalues: NDArray[np.float64]
    eigenvectors: NDArray[np.float64]
    sweeps: int
    converged: bool


def _off_norm(a: NDArray[np.float64]) -> float:
    return float(np.sqrt(np.sum(a * a) - np.sum(np.diag(a) ** 2)))


def symmetric_eigen(
    a: ArrayLike,
    tol: float = OFF_DIAGONAL_TOLERANCE,
    max_sweeps: int = MAX_SWEEPS,
    strict: bool = False,
) -> EigenResult:
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm is below
    ``tol * max(1, ||a||_F)``. Without convergence the best iterate is
    returned with ``converged=False``, unless ``strict`` is set.

    Raises:
        NotSymmetricError: ``a`` is not square or not symmetric within 1e-10
        NoConvergenceError: ``strict`` and the sweep budget ran out
    """
    m = as_matrix(a).copy()
    d = m.shape[0]
    if m.shape != (d, d):
        raise NotSymmetricError(f"matrix must be square, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.T).max(initial=0.0) > SYMMETRY_TOLERANCE * scale:
        raise NotSymmetricError("matrix is not symmetric within 1e-10")
    m = 0.5 * (m + m.T)

    v = np.eye(d)
    threshold = tol * max(1.0, float(np.linalg.norm(m)))
    sweeps = 0
    converged = _off_norm(m) < threshold
    while not converged and sweeps < max_sweeps:
        sweeps += 1
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = m[p, q]
                if apq == 0.0:
                    continue
                theta = (m[q, q] - m[p, p]) / (2.0 * apq)
                t = 1.0 if theta == 0.0 else np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c

                row_p, row_q = m[p, :].copy(), m[q, :].copy()
                m[p, :] = c * row_p - s * row_q
                m[q, :] = s * row_p + c * row_q
                col_p, col_q = m[:, p].copy(), m[:, q].copy()
                m[:, p] = c * col_p - s * col_q
                m[:, q] = s * col_p + c * col_q
                m[p, q] = m[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
        converged = _off_norm(m) < threshold

    if not converged:
        if strict:
            raise NoConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps",
                {"off_norm": _off_norm(m)},
            )
        logger.warning("Jacobi iteration did not converge", sweeps=sweeps, off_norm=_off_norm(m))

    values = np.diag(m).copy()
    order = np.argsort(-values, kind="stable")
    return EigenResult(
        eigenvalues=values[order],
        eigenvectors=v[:, order],
        sweeps=sweeps,
        converged=converged,
    )
