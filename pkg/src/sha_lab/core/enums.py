"""Core enumerations for the toolkit."""

from enum import Enum


class FeatureName(str, Enum):
    """Scalar curve invariants usable as model features."""

    SPECIAL_VALUE = "special_value"
    TORSION_ORDER = "torsion_order"
    REAL_PERIOD = "real_period"
    REGULATOR = "regulator"
    TAMAGAWA_PRODUCT = "tamagawa_product"
    RANK = "rank"
    CONDUCTOR = "conductor"
    ADELIC_LEVEL = "adelic_level"
    ADELIC_INDEX = "adelic_index"
    ADELIC_GENUS = "adelic_genus"
    KODAIRA_ENCODED = "kodaira_encoded"


# Order fixes the OLS exponent vector (+1, +2, -1, -1, -1).
BSD_FEATURES: tuple[FeatureName, ...] = (
    FeatureName.SPECIAL_VALUE,
    FeatureName.TORSION_ORDER,
    FeatureName.REAL_PERIOD,
    FeatureName.REGULATOR,
    FeatureName.TAMAGAWA_PRODUCT,
)

EXTRA_FEATURES: tuple[FeatureName, ...] = (
    FeatureName.ADELIC_LEVEL,
    FeatureName.ADELIC_INDEX,
    FeatureName.ADELIC_GENUS,
    FeatureName.KODAIRA_ENCODED,
)


class TargetKind(str, Enum):
    """What the y vector of a feature matrix holds."""

    CLASS_INDEX = "class_index"
    SQRT_SHA = "sqrt_sha"
    TRIVIAL_SHA = "trivial_sha"
    LOG_SHA = "log_sha"
    NONE = "none"


class ModelKind(str, Enum):
    """Available learners."""

    LOGISTIC = "logistic"
    GBM = "gbm"
    MLP = "mlp"


class Task(str, Enum):
    """Learning task for the gradient-boosting machine."""

    CLASSIFY = "classify"
    REGRESS = "regress"


class Transform(str, Enum):
    """Feature transform applied before training."""

    RAW = "raw"
    LOG = "log"


class DataSourceKind(str, Enum):
    """Where an experiment's curves come from."""

    CSV = "csv"
    LMFDB = "lmfdb"
    SYNTHETIC = "synthetic"
    BUNDLED = "bundled"


class PlotKind(str, Enum):
    """Static figure layouts."""

    GROUPED_BARS = "grouped_bars"
    LINE = "line"
    SCATTER = "scatter"
    HEATMAP = "heatmap"


class RegressionFeatureSet(str, Enum):
    """Feature sets compared by the regression and rank-stratified suites."""

    ALL_BSD = "all_bsd"
    REGULATOR_TO_RANK = "regulator_to_rank"
    NO_REGULATOR_NO_RANK = "no_regulator_no_rank"


class EvaluationSet(str, Enum):
    """Held-out sets used by the regression suite."""

    SMALL_CONDUCTOR = "small_conductor"
    LARGE_CONDUCTOR = "large_conductor"


class RankStratum(str, Enum):
    """Rank strata for separately trained models."""

    RANK_ZERO = "rank_zero"
    POSITIVE_RANK = "positive_rank"
