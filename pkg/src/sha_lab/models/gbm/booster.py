"""Histogram gradient-boosting machine for classification and regression."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit

from ...core.enums import ModelKind, Task
from ...core.exceptions import DegenerateTargetError, DimensionMismatchError
from ...core.interfaces.model import IModel
from ...core.schemas.training import GbmParams, TrainConfig
from ...features.matrix import FeatureMatrix
from ...observability.logger import get_logger
from ..logistic import check_binary
from .binning import BinMapper
from .grower import TreeGrower
from .losses import loss_for
from .tree import Tree

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class GbmModel(IModel):
    """Boosted ensemble: raw prediction = base_score + sum of tree outputs.

    Leaf values already include the shrinkage factor. ``degenerate`` marks a
    regression fitted on a constant target (no trees).
    """

    task: Task
    base_score: float
    mapper: BinMapper
    trees: list[Tree]
    params: GbmParams
    feature_names: tuple[str, ...] = ()
    train_loss: list[float] = field(default_factory=list)
    degenerate: bool = False

    @property
    def kind(self) -> ModelKind:
        return ModelKind.GBM

    @property
    def n_features(self) -> int:
        return self.mapper.n_features

    def raw_predict(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        if x.shape[1] != self.n_features:
            raise DimensionMismatchError(
                f"model fitted on {self.n_features} features, got {x.shape[1]}"
            )
        binned = self.mapper.transform(x)
        raw = np.full(x.shape[0], self.base_score, dtype=np.float64)
        for tree in self.trees:
            raw += tree.predict_binned(binned)
        return raw

    def predict_proba(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        if self.task != Task.CLASSIFY:
            raise DimensionMismatchError("predict_proba is only defined for classifiers")
        return np.clip(expit(self.raw_predict(x)), 1e-15, 1.0 - 1e-15)

    def predict(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        raw = self.raw_predict(x)
        if self.task == Task.CLASSIFY:
            return (raw > 0.0).astype(np.float64)
        return raw

    def to_payload(self) -> dict[str, Any]:
        return {
            "task": self.task.value,
            "base_score": self.base_score,
            "bin_edges": [edges.tolist() for edges in self.mapper.edges],
            "trees": [tree.to_payload() for tree in self.trees],
            "params": self.params.model_dump(),
            "feature_names": list(self.feature_names),
            "train_loss": self.train_loss,
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "GbmModel":
        return cls(
            task=Task(payload["task"]),
            base_score=float(payload["base_score"]),
            mapper=BinMapper(
                edges=[np.asarray(e, dtype=np.float64) for e in payload["bin_edges"]]
            ),
            trees=[Tree.from_payload(t) for t in payload["trees"]],
            params=GbmParams.model_validate(payload["params"]),
            feature_names=tuple(payload.get("feature_names", ())),
            train_loss=[float(v) for v in payload.get("train_loss", [])],
            degenerate=bool(payload.get("degenerate", False)),
        )


def gbm_fit(
    m: FeatureMatrix,
    cfg: TrainConfig,
    task: Task = Task.CLASSIFY,
    threads: int = 1,
) -> GbmModel:
    """Fit a boosted ensemble on ``m``.

    Args:
        m: Training matrix (targets 0/1 for ``Task.CLASSIFY``)
        cfg: Hyperparameters under ``cfg.gbm``
        task: Logistic loss for classify, squared loss for regress
        threads: Workers for per-feature split search; results do not depend on it

    Raises:
        DegenerateTargetError: Fewer than 2 rows, or a single-class classification target
    """
    params = cfg.gbm
    y = m.require_y()
    if m.n_rows < 2:
        raise DegenerateTargetError(f"GBM needs at least 2 rows, got {m.n_rows}")
    if task == Task.CLASSIFY:
        check_binary(y)

    loss = loss_for(task)
    mapper = BinMapper.fit(m.x, params.max_bins)

    if task == Task.REGRESS and np.all(y == y[0]):
        logger.warning("Constant regression target; returning base-score model", value=y[0])
        return GbmModel(
            task=task,
            base_score=float(y[0]),
            mapper=mapper,
            trees=[],
            params=params,
            feature_names=m.feature_names,
            train_loss=[0.0],
            degenerate=True,
        )

    binned = mapper.transform(m.x)
    base = loss.base_score(y)
    raw = np.full(m.n_rows, base, dtype=np.float64)
    history = [loss.value(y, raw)]
    trees: list[Tree] = []

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for _ in range(params.n_trees):
            g, h = loss.gradients(y, raw)
            tree = TreeGrower(binned, mapper, g, h, params, executor).grow()
            trees.append(tree)
            raw = raw + tree.predict_binned(binned)
            history.append(loss.value(y, raw))
    finally:
        if executor is not None:
            executor.shutdown()

    logger.info(
        "GBM fitted",
        task=task.value,
        rows=m.n_rows,
        features=m.n_features,
        trees=len(trees),
        final_loss=history[-1],
    )
    return GbmModel(
        task=task,
        base_score=base,
        mapper=mapper,
        trees=trees,
        params=params,
        feature_names=m.feature_names,
        train_loss=history,
    )


def gbm_predict(model: GbmModel, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Class labels for classifiers, real predictions for regressors."""
    return model.predict(x)


def gbm_predict_proba(model: GbmModel, x: NDArray[np.float64]) -> NDArray[np.float64]:
    return model.predict_proba(x)


def gbm_feature_importance(
    model: GbmModel, feature_names: Optional[tuple[str, ...]] = None
) -> list[tuple[str, float]]:
    """Total split gain per feature, sorted descending (name order breaks ties)."""
    names = feature_names or model.feature_names or tuple(
        f"f{j}" for j in range(model.n_features)
    )
    totals = np.zeros(model.n_features, dtype=np.float64)
    for tree in model.trees:
        for node in tree.nodes:
            if not node.is_leaf:
                totals[node.feature] += node.gain
    ranked = sorted(zip(names, totals.tolist()), key=lambda item: (-item[1], item[0]))
    return [(name, float(gain)) for name, gain in ranked]
