"""Numeric feature matrix container."""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from ..core.enums import TargetKind
from ..core.exceptions import DimensionMismatchError, NonFiniteError, UnknownFeatureError


@dataclass(frozen=True, eq=False)
class Scaler:
    """Per-column z-score statistics fitted on a training matrix.

    Constant and excluded columns carry mean 0 / std 1 so applying the scaler
    passes them through unchanged.
    """

    columns: tuple[str, ...]
    mean: NDArray[np.float64]
    std: NDArray[np.float64]
    constant: NDArray[np.bool_]

    @property
    def constant_columns(self) -> list[str]:
        return [c for c, flag in zip(self.columns, self.constant) if flag]

    def transform(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        if x.shape[1] != len(self.columns):
            raise DimensionMismatchError(
                f"Scaler fitted on {len(self.columns)} columns, got {x.shape[1]}"
            )
        return (x - self.mean) / self.std

    def without(self, index: int) -> "Scaler":
        keep = [i for i in range(len(self.columns)) if i != index]
        return Scaler(
            columns=tuple(self.columns[i] for i in keep),
            mean=self.mean[keep],
            std=self.std[keep],
            constant=self.constant[keep],
        )


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """An n x d float64 design matrix with named columns and an optional target.

    ``classes`` maps class indices back to |Sha| values when the target is
    a class index.
    """

    x: NDArray[np.float64]
    feature_names: tuple[str, ...]
    y: Optional[NDArray[np.float64]] = None
    labels: tuple[str, ...] = ()
    target: TargetKind = TargetKind.NONE
    classes: tuple[int, ...] = ()
    scaler: Optional[Scaler] = None

    def __post_init__(self) -> None:
        if self.x.ndim != 2:
            raise DimensionMismatchError(f"x must be 2-D, got shape {self.x.shape}")
        if self.x.shape[1] != len(self.feature_names):
            raise DimensionMismatchError(
                f"x has {self.x.shape[1]} columns but {len(self.feature_names)} names"
            )
        if self.y is not None and self.y.shape != (self.x.shape[0],):
            raise DimensionMismatchError(
                f"y has shape {self.y.shape}, expected ({self.x.shape[0]},)"
            )
        if not np.all(np.isfinite(self.x)):
            raise NonFiniteError("Feature matrix contains NaN or infinite entries")

    @property
    def n_rows(self) -> int:
        return int(self.x.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.x.shape[1])

    def index_of(self, name: str) -> int:
        try:
            return self.feature_names.index(name)
        except ValueError:
            raise UnknownFeatureError(name) from None

    def column(self, name: str) -> NDArray[np.float64]:
        return self.x[:, self.index_of(name)]

    def require_y(self) -> NDArray[np.float64]:
        if self.y is None:
            raise DimensionMismatchError("Feature matrix has no target vector")
        return self.y

    def with_x(
        self, x: NDArray[np.float64], scaler: Optional[Scaler] = None
    ) -> "FeatureMatrix":
        return replace(self, x=x, scaler=scaler if scaler is not None else self.scaler)

    def take(self, rows: NDArray[np.int64]) -> "FeatureMatrix":
        """Row subset (order as given)."""
        return replace(
            self,
            x=self.x[rows],
            y=None if self.y is None else self.y[rows],
            labels=tuple(self.labels[i] for i in rows) if self.labels else (),
        )
