"""Feed-forward ReLU network with a 2-logit softmax head.

Training is minibatch Adam on cross-entropy with inverted dropout after every
hidden layer. Shuffles and dropout masks come from dedicated seeded streams,
``(seed, "shuffle", epoch)`` and ``(seed, "dropout", epoch, batch)``, so a
fit is a pure function of its inputs.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
from numpy.typing import NDArray
from scipy.special import log_softmax, softmax

from ..core.enums import ModelKind
from ..core.exceptions import DegenerateConfigError, DimensionMismatchError, NonFiniteError
from ..core.interfaces.model import IModel
from ..core.schemas.training import MlpParams, TrainConfig
from ..core.utils.rng import make_rng
from ..features.matrix import FeatureMatrix
from ..observability.logger import get_logger
from .logistic import check_binary
from .optim import AdamState, adam_step

logger = get_logger(__name__)

N_CLASSES = 2
GRADCHECK_MAX_ROWS = 8
GRADCHECK_FLOOR = 1e-6

Array = NDArray[np.float64]
GradHook = Callable[[list[Array]], list[Array]]


@dataclass(frozen=True, eq=False)
class MlpModel(IModel):
    """Layer ``i`` maps ``layer_sizes[i]`` to ``layer_sizes[i + 1]`` units.

    ``params`` alternates weight matrices and bias vectors: W0, b0, W1, b1, ...
    """

    layer_sizes: tuple[int, ...]
    params: list[Array]
    dropout: float
    seed: int = 0

    @property
    def kind(self) -> ModelKind:
        return ModelKind.MLP

    @property
    def n_features(self) -> int:
        return self.layer_sizes[0]

    @property
    def n_params(self) -> int:
        return sum(p.size for p in self.params)

    def logits(self, x: Array) -> Array:
        """Eval-mode forward pass (no dropout)."""
        if x.shape[1] != self.n_features:
            raise DimensionMismatchError(
                f"network expects {self.n_features} features, got {x.shape[1]}"
            )
        return _forward(self.params, x, masks=None)[0]

    def predict_proba(self, x: Array) -> Array:
        p = softmax(self.logits(x), axis=1)[:, 1]
        return np.clip(p, 1e-15, 1.0 - 1e-15)

    def predict(self, x: Array) -> Array:
        return np.argmax(self.logits(x), axis=1).astype(np.float64)

    def to_payload(self) -> dict[str, Any]:
        return {
            "layer_sizes": list(self.layer_sizes),
            "params": [p.tolist() for p in self.params],
            "dropout": self.dropout,
            "seed": self.seed,
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "MlpModel":
        return cls(
            layer_sizes=tuple(int(s) for s in payload["layer_sizes"]),
            params=[np.asarray(p, dtype=np.float64) for p in payload["params"]],
            dropout=float(payload["dropout"]),
            seed=int(payload.get("seed", 0)),
        )


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    test_accuracy: Optional[float]


@dataclass(frozen=True, eq=False)
class MlpFitResult:
    """Best-epoch model plus the final-epoch model and per-epoch history."""

    model: MlpModel
    best_test_accuracy: Optional[float]
    best_epoch: int
    final_model: MlpModel
    final_test_accuracy: Optional[float]
    history: list[EpochRecord] = field(default_factory=list)


def init_params(layer_sizes: tuple[int, ...], seed: int) -> list[Array]:
    """Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases."""
    rng = make_rng(seed, "init")
    params: list[Array] = []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        bound = 1.0 / np.sqrt(fan_in)
        params.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        params.append(rng.uniform(-bound, bound, size=fan_out))
    return params


def _forward(
    params: list[Array], x: Array, masks: Optional[list[Array]]
) -> tuple[Array, list[Array], list[Array]]:
    """Return logits, layer inputs and hidden pre-activations."""
    inputs: list[Array] = []
    pre: list[Array] = []
    h = x
    n_layers = len(params) // 2
    for layer in range(n_layers):
        w, b = params[2 * layer], params[2 * layer + 1]
        inputs.append(h)
        z = h @ w + b
        if layer == n_layers - 1:
            return z, inputs, pre
        pre.append(z)
        h = np.maximum(z, 0.0)
        if masks is not None:
            h = h * masks[layer]
    raise DimensionMismatchError("network has no layers")


def _loss_and_grads(
    params: list[Array], x: Array, y: Array, masks: Optional[list[Array]]
) -> tuple[float, list[Array]]:
    logits, inputs, pre = _forward(params, x, masks)
    n = x.shape[0]
    target = y.astype(np.int64)
    log_p = log_softmax(logits, axis=1)
    loss = float(-log_p[np.arange(n), target].mean())

    delta = np.exp(log_p)
    delta[np.arange(n), target] -= 1.0
    delta /= n

    grads: list[Array] = [np.empty(0)] * len(params)
    for layer in range(len(params) // 2 - 1, -1, -1):
        grads[2 * layer] = inputs[layer].T @ delta
        grads[2 * layer + 1] = delta.sum(axis=0)
        if layer == 0:
            break
        delta = delta @ params[2 * layer].T
        if masks is not None:
            delta = delta * masks[layer - 1]
        delta = delta * (pre[layer - 1] > 0.0)
    return loss, grads


def _dropout_masks(
    rng: np.random.Generator, batch: int, hidden: tuple[int, ...], rate: float
) -> Optional[list[Array]]:
    if rate == 0.0:
        return None
    keep = 1.0 - rate
    return [(rng.random((batch, units)) < keep) / keep for units in hidden]


def _accuracy(model: MlpModel, m: FeatureMatrix) -> float:
    return float(np.mean(model.predict(m.x) == m.require_y()))


def mlp_fit(
    train: FeatureMatrix, test: Optional[FeatureMatrix], cfg: TrainConfig
) -> MlpFitResult:
    """Train the network and track test accuracy after every epoch.

    The returned ``model`` holds the weights of the best test epoch (the first
    one on ties); ``final_model`` holds the last epoch's weights.

    Raises:
        DegenerateConfigError: Zero epochs requested
        DegenerateTargetError: Target is not binary or has a single class
        NonFiniteError: The training loss diverged (epoch reported)
    """
    params_cfg: MlpParams = cfg.mlp
    if params_cfg.epochs == 0:
        raise DegenerateConfigError("MLP training needs at least one epoch", {"epochs": 0})
    y = train.require_y()
    check_binary(y)
    layer_sizes = (train.n_features, *params_cfg.hidden_layers, N_CLASSES)
    hidden = tuple(params_cfg.hidden_layers)

    params = init_params(layer_sizes, cfg.seed)
    state = AdamState.zeros_like(params)
    n = train.n_rows
    step = 0
    history: list[EpochRecord] = []
    best: Optional[MlpModel] = None
    best_acc: Optional[float] = None
    best_epoch = 0

    def snapshot(p: list[Array]) -> MlpModel:
        return MlpModel(layer_sizes, [a.copy() for a in p], params_cfg.dropout, cfg.seed)

    for epoch in range(params_cfg.epochs):
        order = make_rng(cfg.seed, "shuffle", epoch).permutation(n)
        total = 0.0
        for batch, start in enumerate(range(0, n, params_cfg.batch_size)):
            idx = order[start : start + params_cfg.batch_size]
            masks = _dropout_masks(
                make_rng(cfg.seed, "dropout", epoch, batch), idx.size, hidden, params_cfg.dropout
            )
            loss, grads = _loss_and_grads(params, train.x[idx], y[idx], masks)
            if not np.isfinite(loss):
                raise NonFiniteError(f"MLP loss diverged in epoch {epoch}", epoch=epoch)
            total += loss * idx.size
            step += 1
            params, state = adam_step(params, grads, state, step, params_cfg.learning_rate)

        current = snapshot(params)
        test_acc = _accuracy(current, test) if test is not None else None
        history.append(EpochRecord(epoch=epoch, train_loss=total / n, test_accuracy=test_acc))
        if best is None or (test_acc is not None and best_acc is not None and test_acc > best_acc):
            best, best_acc, best_epoch = current, test_acc, epoch

    final = snapshot(params)
    assert best is not None
    logger.info(
        "MLP fitted",
        epochs=params_cfg.epochs,
        best_test_accuracy=best_acc,
        best_epoch=best_epoch,
        final_test_accuracy=history[-1].test_accuracy,
    )
    if test is None:
        best, best_epoch = final, params_cfg.epochs - 1
    return MlpFitResult(
        model=best,
        best_test_accuracy=best_acc,
        best_epoch=best_epoch,
        final_model=final,
        final_test_accuracy=history[-1].test_accuracy,
        history=history,
    )


def mlp_gradcheck(
    model: MlpModel,
    batch: FeatureMatrix,
    seed: int = 0,
    n_params: int = 200,
    h: float = 1e-5,
    grad_hook: Optional[GradHook] = None,
) -> float:
    """Max relative error between backprop and central differences.

    Dropout is off. Parameters are sampled without replacement from a seeded
    stream; relative error uses ``max(|analytic|, |numeric|, 1e-6)`` as the
    denominator. ``grad_hook`` may rewrite the analytic gradients before the
    comparison.
    """
    if batch.n_rows > GRADCHECK_MAX_ROWS:
        raise DimensionMismatchError(
            f"gradient check takes at most {GRADCHECK_MAX_ROWS} rows, got {batch.n_rows}"
        )
    x, y = batch.x, batch.require_y()
    params = [p.copy() for p in model.params]
    _, grads = _loss_and_grads(params, x, y, masks=None)
    if grad_hook is not None:
        grads = grad_hook(grads)

    sizes = [p.size for p in params]
    offsets = np.cumsum([0, *sizes])
    total = int(offsets[-1])
    picks = make_rng(seed, "gradcheck").choice(total, size=min(n_params, total), replace=False)

    worst = 0.0
    for flat in np.sort(picks):
        k = int(np.searchsorted(offsets, flat, side="right") - 1)
        local = int(flat - offsets[k])
        view = params[k].reshape(-1)
        original = view[local]
        view[local] = original + h
        plus, _ = _loss_and_grads(params, x, y, masks=None)
        view[local] = original - h
        minus, _ = _loss_and_grads(params, x, y, masks=None)
        view[local] = original
        numeric = (plus - minus) / (2.0 * h)
        analytic = float(grads[k].reshape(-1)[local])
        denom = max(abs(analytic), abs(numeric), GRADCHECK_FLOOR)
        worst = max(worst, abs(analytic - numeric) / denom)
    return worst
