"""Histogram-based gradient boosting."""

from .binning import BinMapper, find_bin_edges
from .booster import GbmModel, gbm_feature_importance, gbm_fit, gbm_predict, gbm_predict_proba
from .losses import LogisticLoss, SquaredLoss, loss_for
from .tree import Node, Tree

__all__ = [
    "BinMapper",
    "GbmModel",
    "LogisticLoss",
    "Node",
    "SquaredLoss",
    "Tree",
    "find_bin_edges",
    "gbm_feature_importance",
    "gbm_fit",
    "gbm_predict",
    "gbm_predict_proba",
    "loss_for",
]
