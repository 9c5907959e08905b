"""Feature specification schema."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..enums import BSD_FEATURES, FeatureName

# May be zero or negative, so never log-transformed.
NON_LOGGABLE: frozenset[FeatureName] = frozenset(
    {FeatureName.ADELIC_GENUS, FeatureName.KODAIRA_ENCODED}
)


class FeatureSpec(BaseModel):
    """Which columns to build and how to transform them."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    features: list[FeatureName] = Field(default_factory=lambda: list(BSD_FEATURES))
    log_transform: list[bool] = Field(
        default_factory=list,
        description="Per-feature log flag; a single bool is broadcast",
    )
    standardize: bool = True
    include_ap: bool = False
    standardize_ap: bool = True

    @model_validator(mode="before")
    @classmethod
    def _broadcast_log_flag(cls, data: Any) -> Any:
        if isinstance(data, dict):
            flag = data.get("log_transform", False)
            if isinstance(flag, bool):
                features = data.get("features", list(BSD_FEATURES))
                data = {**data, "log_transform": [flag] * len(features)}
        return data

    @model_validator(mode="after")
    def _check_flags(self) -> "FeatureSpec":
        if len(self.log_transform) != len(self.features):
            raise ValueError(
                f"log_transform has {len(self.log_transform)} flags "
                f"for {len(self.features)} features"
            )
        if len(set(self.features)) != len(self.features):
            raise ValueError("duplicate feature names")
        for name, flag in zip(self.features, self.log_transform):
            if flag and name in NON_LOGGABLE:
                raise ValueError(f"feature {name.value!r} can be non-positive; cannot log it")
        return self

    @property
    def names(self) -> list[str]:
        return [f.value for f in self.features]

    def log_flags(self) -> dict[str, bool]:
        return dict(zip(self.names, self.log_transform))

    def with_log(self, enabled: bool) -> "FeatureSpec":
        """Same features with every loggable column flagged (or none)."""
        flags = [enabled and f not in NON_LOGGABLE for f in self.features]
        return self.model_copy(update={"log_transform": flags})

    def with_features(self, features: list[FeatureName]) -> "FeatureSpec":
        flags = self.log_flags()
        any_log = any(self.log_transform)
        new_flags = [flags.get(f.value, any_log and f not in NON_LOGGABLE) for f in features]
        return FeatureSpec(
            features=features,
            log_transform=new_flags,
            standardize=self.standardize,
            include_ap=self.include_ap,
            standardize_ap=self.standardize_ap,
        )

    @classmethod
    def bsd(cls, log: bool = False, **kwargs: Any) -> "FeatureSpec":
        """The five BSD features, optionally log-transformed."""
        return cls(features=list(BSD_FEATURES), log_transform=log, **kwargs)
