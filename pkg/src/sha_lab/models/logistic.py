"""Binary logistic regression trained by full-batch Adam."""

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit

from ..core.enums import ModelKind
from ..core.exceptions import DegenerateTargetError, DimensionMismatchError
from ..core.interfaces.model import IModel
from ..core.schemas.training import LogisticParams, TrainConfig
from ..features.matrix import FeatureMatrix
from ..observability.logger import get_logger
from .optim import AdamState, adam_step

logger = get_logger(__name__)

# Keeps probabilities strictly inside (0, 1).
PROBA_EPS = 1e-15


def check_binary(y: NDArray[np.float64]) -> None:
    """Raise unless ``y`` holds both 0 and 1 and nothing else."""
    values = np.unique(y)
    if not np.all(np.isin(values, (0.0, 1.0))):
        raise DegenerateTargetError(f"binary target expected, got values {values.tolist()[:5]}")
    if values.size < 2:
        raise DegenerateTargetError("training target has a single class")


@dataclass(frozen=True, eq=False)
class LogisticModel(IModel):
    weights: NDArray[np.float64]
    bias: float
    params: LogisticParams
    seed: int = 0
    epochs_run: int = 0

    @property
    def kind(self) -> ModelKind:
        return ModelKind.LOGISTIC

    @property
    def n_features(self) -> int:
        return int(self.weights.shape[0])

    def decision_function(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        if x.shape[1] != self.n_features:
            raise DimensionMismatchError(
                f"model fitted on {self.n_features} features, got {x.shape[1]}"
            )
        return np.asarray(x @ self.weights + self.bias, dtype=np.float64)

    def predict_proba(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        p = expit(self.decision_function(x))
        return np.clip(p, PROBA_EPS, 1.0 - PROBA_EPS)

    def predict(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return (self.decision_function(x) > 0.0).astype(np.float64)

    def to_payload(self) -> dict[str, Any]:
        return {
            "weights": self.weights.tolist(),
            "bias": self.bias,
            "params": self.params.model_dump(),
            "seed": self.seed,
            "epochs_run": self.epochs_run,
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "LogisticModel":
        return cls(
            weights=np.asarray(payload["weights"], dtype=np.float64),
            bias=float(payload["bias"]),
            params=LogisticParams.model_validate(payload["params"]),
            seed=int(payload.get("seed", 0)),
            epochs_run=int(payload.get("epochs_run", 0)),
        )


def logistic_fit(m: FeatureMatrix, cfg: TrainConfig) -> LogisticModel:
    """Minimize mean cross-entropy with full-batch Adam from zero weights.

    Stops after ``cfg.logistic.max_epochs`` or once the gradient norm falls
    below ``cfg.logistic.tolerance``.

    Raises:
        DegenerateTargetError: Target is not binary or has a single class
    """
    params = cfg.logistic
    y = m.require_y()
    check_binary(y)
    x = m.x
    n, d = x.shape

    theta = [np.zeros(d), np.zeros(1)]
    state = AdamState.zeros_like(theta)
    epoch = 0
    grad_norm = float("inf")
    for epoch in range(1, params.max_epochs + 1):
        residual = expit(x @ theta[0] + theta[1][0]) - y
        grads = [x.T @ residual / n, np.array([residual.mean()])]
        grad_norm = float(np.sqrt(np.sum(grads[0] ** 2) + grads[1][0] ** 2))
        if grad_norm < params.tolerance:
            epoch -= 1
            break
        theta, state = adam_step(theta, grads, state, epoch, params.learning_rate)

    logger.info("Logistic regression fitted", rows=n, features=d, epochs=epoch, grad_norm=grad_norm)
    return LogisticModel(
        weights=theta[0], bias=float(theta[1][0]), params=params, seed=cfg.seed, epochs_run=epoch
    )
