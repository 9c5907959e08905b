"""Loss functions for boosting: gradients, hessians and base scores."""

from abc import ABC, abstractmethod

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit

from ...core.enums import Task

Array = NDArray[np.float64]


class BoostingLoss(ABC):
    """Second-order loss used by the tree grower."""

    @abstractmethod
    def base_score(self, y: Array) -> float:
        """Constant raw prediction minimizing the loss."""
        ...

    @abstractmethod
    def gradients(self, y: Array, raw: Array) -> tuple[Array, Array]:
        """Per-row gradient and hessian with respect to the raw prediction."""
        ...

    @abstractmethod
    def value(self, y: Array, raw: Array) -> float:
        """Mean loss."""
        ...


class LogisticLoss(BoostingLoss):
    def base_score(self, y: Array) -> float:
        p = float(np.clip(y.mean(), 1e-15, 1.0 - 1e-15))
        return float(np.log(p / (1.0 - p)))

    def gradients(self, y: Array, raw: Array) -> tuple[Array, Array]:
        p = expit(raw)
        return p - y, p * (1.0 - p)

    def value(self, y: Array, raw: Array) -> float:
        # log(1 + e^raw) - y * raw, computed stably
        return float(np.mean(np.logaddexp(0.0, raw) - y * raw))


class SquaredLoss(BoostingLoss):
    def base_score(self, y: Array) -> float:
        return float(y.mean())

    def gradients(self, y: Array, raw: Array) -> tuple[Array, Array]:
        return raw - y, np.ones_like(raw)

    def value(self, y: Array, raw: Array) -> float:
        return float(0.5 * np.mean((raw - y) ** 2))


def loss_for(task: Task) -> BoostingLoss:
    if task == Task.CLASSIFY:
        return LogisticLoss()
    return SquaredLoss()
