"""Model factory: one entry point for training any learner by kind."""

from dataclasses import dataclass
from typing import Optional

from ..core.enums import ModelKind, Task
from ..core.exceptions import ConfigError
from ..core.interfaces.model import IModel
from ..core.schemas.training import TrainConfig
from ..features.matrix import FeatureMatrix
from .gbm import GbmModel, gbm_fit
from .logistic import LogisticModel, logistic_fit
from .mlp import MlpModel, mlp_fit


@dataclass(frozen=True, eq=False)
class FitOutcome:
    """A fitted model plus the accuracies tracked during training (networks only)."""

    model: IModel
    best_test_accuracy: Optional[float] = None
    final_test_accuracy: Optional[float] = None


class ModelFactory:
    """Factory for training and rebuilding models."""

    _CLASSES: dict[ModelKind, type[IModel]] = {
        ModelKind.LOGISTIC: LogisticModel,
        ModelKind.GBM: GbmModel,
        ModelKind.MLP: MlpModel,
    }

    @staticmethod
    def fit(
        kind: ModelKind,
        train: FeatureMatrix,
        cfg: TrainConfig,
        test: Optional[FeatureMatrix] = None,
        task: Task = Task.CLASSIFY,
        threads: int = 1,
    ) -> FitOutcome:
        """
        Train a model of the given kind.

        Args:
            kind: Learner to train
            train: Training matrix
            cfg: Hyperparameters and seed
            test: Evaluation matrix; the network reports its best epoch on it
            task: Only the GBM supports regression
            threads: Worker count for GBM split search

        Returns:
            Fitted model with optional accuracy tracking
        """
        if task == Task.REGRESS and kind != ModelKind.GBM:
            raise ConfigError(f"{kind.value} does not support regression", {"model": kind.value})
        if kind == ModelKind.LOGISTIC:
            return FitOutcome(model=logistic_fit(train, cfg))
        if kind == ModelKind.GBM:
            return FitOutcome(model=gbm_fit(train, cfg, task, threads=threads))
        if kind == ModelKind.MLP:
            result = mlp_fit(train, test, cfg)
            return FitOutcome(
                model=result.model,
                best_test_accuracy=result.best_test_accuracy,
                final_test_accuracy=result.final_test_accuracy,
            )
        raise ConfigError(f"Unknown model kind: {kind}")

    @classmethod
    def model_class(cls, kind: ModelKind) -> type[IModel]:
        return cls._CLASSES[kind]
