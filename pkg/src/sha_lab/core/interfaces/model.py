"""Fitted model interface."""

from abc import ABC, abstractmethod
from typing import Any

import numpy as np
from numpy.typing import NDArray

from ..enums import ModelKind


class IModel(ABC):
    """A fitted, immutable predictor that can be serialized to JSON."""

    @property
    @abstractmethod
    def kind(self) -> ModelKind:
        """Model family."""
        ...

    @property
    @abstractmethod
    def n_features(self) -> int:
        """Number of input columns the model was fitted on."""
        ...

    @abstractmethod
    def predict(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        """Class labels (0/1) for classifiers, real values for regressors."""
        ...

    @abstractmethod
    def predict_proba(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        """Probability of class 1, strictly inside (0, 1)."""
        ...

    @abstractmethod
    def to_payload(self) -> dict[str, Any]:
        """Hyperparameters and learned parameters as JSON-compatible data."""
        ...

    @classmethod
    @abstractmethod
    def from_payload(cls, payload: dict[str, Any]) -> "IModel":
        """Rebuild a model from :meth:`to_payload` output."""
        ...
