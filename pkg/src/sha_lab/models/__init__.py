"""Learners: logistic regression, feed-forward network and histogram GBM."""

from .factory import FitOutcome, ModelFactory
from .gbm import GbmModel, gbm_feature_importance, gbm_fit, gbm_predict, gbm_predict_proba
from .logistic import LogisticModel, logistic_fit
from .mlp import EpochRecord, MlpFitResult, MlpModel, mlp_fit, mlp_gradcheck
from .optim import AdamState, adam_step
from .serialization import load_model, model_from_dict, model_to_dict, save_model

__all__ = [
    "AdamState",
    "EpochRecord",
    "FitOutcome",
    "GbmModel",
    "LogisticModel",
    "MlpFitResult",
    "MlpModel",
    "ModelFactory",
    "adam_step",
    "gbm_feature_importance",
    "gbm_fit",
    "gbm_predict",
    "gbm_predict_proba",
    "load_model",
    "logistic_fit",
    "mlp_fit",
    "mlp_gradcheck",
    "model_from_dict",
    "model_to_dict",
    "save_model",
]
