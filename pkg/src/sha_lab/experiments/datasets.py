"""Resolve dataset selectors and assemble train/test/holdout sets."""

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Optional

from ..config import Settings, get_settings
from ..core.enums import DataSourceKind
from ..core.exceptions import ConfigError, UsageError
from ..core.schemas.curves import CurveRecord, Dataset
from ..core.schemas.experiments import DatasetSelector, ExperimentConfig
from ..curvedata.bundled import load_bundled_sample
from ..curvedata.csv_io import load_csv
from ..curvedata.lmfdb import fetch_lmfdb
from ..curvedata.sampling import apply_class_filter, filter_records, train_test_split
from ..curvedata.synthetic import synthesize_from_spec
from ..observability.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ExperimentData:
    """Source dataset plus the splits derived from it."""

    source: Dataset
    selected: Dataset
    train: Dataset
    test: Dataset
    holdout: Optional[Dataset] = None


def load_selector(
    selector: DatasetSelector,
    allow_download: bool = False,
    settings: Optional[Settings] = None,
) -> Dataset:
    """Load the curves a selector points at.

    Raises:
        UsageError: An LMFDB selector without ``allow_download``
    """
    settings = settings or get_settings()
    if selector.kind == DataSourceKind.CSV:
        assert selector.path is not None
        tolerance = selector.tolerance or settings.bsd_tolerance
        return load_csv(selector.path, tolerance=tolerance)
    if selector.kind == DataSourceKind.BUNDLED:
        return load_bundled_sample(selector.tolerance or settings.bsd_tolerance)
    if selector.kind == DataSourceKind.SYNTHETIC:
        assert selector.synthetic is not None
        return synthesize_from_spec(selector.synthetic)
    if selector.kind == DataSourceKind.LMFDB:
        if not allow_download:
            raise UsageError("LMFDB selectors need --download to allow network access")
        assert selector.query is not None
        return fetch_lmfdb(selector.query, selector.limit, settings)
    raise ConfigError(f"Unknown dataset kind: {selector.kind}")


def drop_incomplete(
    ds: Dataset, features: Iterable[str], need_sha: bool = True, need_ap: bool = False
) -> Dataset:
    """Remove records lacking any requested feature; the count is logged."""
    names = list(features)

    def complete(rec: CurveRecord) -> bool:
        if need_sha and rec.sha_order is None:
            return False
        if need_ap and rec.ap_values is None:
            return False
        return all(rec.feature(name) is not None for name in names)

    kept = [rec for rec in ds.records if complete(rec)]
    if len(kept) < len(ds):
        logger.warning(
            "Dropped records missing requested features",
            dropped=len(ds) - len(kept),
            features=names,
        )
    return ds.with_records(kept)


def load_experiment_data(
    cfg: ExperimentConfig,
    allow_download: bool = False,
    settings: Optional[Settings] = None,
    extra_features: Iterable[str] = (),
) -> ExperimentData:
    """Load, filter, balance and split the data an experiment runs on."""
    source = load_selector(cfg.dataset, allow_download, settings)
    features = [*cfg.features.names, *extra_features]
    usable = drop_incomplete(source, features, need_ap=cfg.features.include_ap)
    selected = apply_class_filter(usable, cfg.class_filter, cfg.seed)
    train, test = train_test_split(selected, cfg.split)

    holdout: Optional[Dataset] = None
    if cfg.holdout is not None:
        raw = load_selector(cfg.holdout, allow_download, settings)
        holdout = filter_records(
            drop_incomplete(raw, features, need_ap=cfg.features.include_ap), cfg.holdout_filter
        )
    logger.info(
        "Experiment data ready",
        experiment=cfg.name,
        source=len(source),
        selected=len(selected),
        train=len(train),
        test=len(test),
        holdout=None if holdout is None else len(holdout),
    )
    return ExperimentData(source=source, selected=selected, train=train, test=test, holdout=holdout)
