"""Training hyperparameter schemas.

Defaults follow the documented choices: full-batch Adam for the logistic
model, a 128-64-32 ReLU network with dropout 0.3 and Adam at 1e-3, and a
histogram GBM with 255 quantile bins, 100 trees, shrinkage 0.1, 31 leaves and
20 samples per leaf.
"""

from pydantic import BaseModel, ConfigDict, Field

from ..utils.rng import U64_MAX


class LogisticParams(BaseModel):
    """Full-batch Adam logistic regression settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    learning_rate: float = Field(0.01, gt=0)
    max_epochs: int = Field(5000, ge=1)
    tolerance: float = Field(1e-8, ge=0, description="Stop when the gradient norm drops below")


class MlpParams(BaseModel):
    """Feed-forward network settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    hidden_layers: tuple[int, ...] = (128, 64, 32)
    dropout: float = Field(0.3, ge=0.0, lt=1.0)
    learning_rate: float = Field(0.001, gt=0)
    epochs: int = Field(100, ge=0)
    batch_size: int = Field(128, ge=1)


class GbmParams(BaseModel):
    """Histogram gradient-boosting settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_bins: int = Field(255, ge=2, le=256)
    n_trees: int = Field(100, ge=0)
    shrinkage: float = Field(0.1, gt=0, le=1.0)
    max_leaves: int = Field(31, ge=2)
    min_samples_leaf: int = Field(20, ge=1)
    l2_regularization: float = Field(0.0, ge=0)
    min_hessian_leaf: float = Field(1e-3, ge=0)


class TrainConfig(BaseModel):
    """All model hyperparameters plus the training seed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(0, ge=0, le=U64_MAX)
    logistic: LogisticParams = Field(default_factory=LogisticParams)
    mlp: MlpParams = Field(default_factory=MlpParams)
    gbm: GbmParams = Field(default_factory=GbmParams)
