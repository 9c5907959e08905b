"""Pytest configuration and fixtures."""

from collections.abc import Callable, Generator
from pathlib import Path
from typing import Any

import pytest

from sha_lab.config import Settings, get_settings
from sha_lab.core.enums import DataSourceKind
from sha_lab.core.schemas.curves import CurveRecord, Dataset
from sha_lab.core.schemas.experiments import (
    ClassFilter,
    DatasetSelector,
    ExperimentConfig,
    SyntheticSpec,
)
from sha_lab.core.schemas.training import GbmParams, MlpParams, TrainConfig
from sha_lab.curvedata.csv_io import save_dataset
from tests.fixtures.sample_curves import SampleCurves


@pytest.fixture
def test_settings(tmp_path: Path) -> Settings:
    """Create test settings pointing at a fake API and a temporary cache."""
    return Settings(
        lmfdb_api_url="https://lmfdb.test/api",
        lmfdb_cache_dir=tmp_path / "lmfdb-cache",
        lmfdb_page_size=100,
        lmfdb_max_retries=1,
        lmfdb_retry_backoff_seconds=0.0,
        output_dir=tmp_path / "runs",
    )


@pytest.fixture
def isolated_env(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Generator[Path, None, None]:
    """Environment-driven settings rooted in tmp_path, with the settings cache reset."""
    monkeypatch.setenv("SHA_LAB_OUTPUT_DIR", str(tmp_path / "runs"))
    monkeypatch.setenv("SHA_LAB_LMFDB_CACHE_DIR", str(tmp_path / "lmfdb-cache"))
    monkeypatch.setenv("SHA_LAB_LOG_LEVEL", "WARNING")
    get_settings.cache_clear()
    yield tmp_path
    get_settings.cache_clear()


@pytest.fixture
def fast_train_config() -> TrainConfig:
    """Small networks and ensembles so model tests stay quick."""
    return TrainConfig(
        seed=3,
        mlp=MlpParams(hidden_layers=(32, 16), epochs=25, batch_size=64),
        gbm=GbmParams(n_trees=40, min_samples_leaf=10),
    )


@pytest.fixture
def curve_11a1() -> CurveRecord:
    return SampleCurves.curve_11a1()


@pytest.fixture
def curve_37a1() -> CurveRecord:
    return SampleCurves.curve_37a1()


@pytest.fixture
def delaunay_dataset() -> Dataset:
    return SampleCurves.delaunay_quartet()


@pytest.fixture(scope="session")
def four_vs_nine() -> Dataset:
    """600 balanced synthetic curves with |Sha| in {4, 9}."""
    return SampleCurves.four_vs_nine()


@pytest.fixture(scope="session")
def mixed_sha() -> Dataset:
    return SampleCurves.mixed_sha()


@pytest.fixture
def four_vs_nine_csv(tmp_path: Path, four_vs_nine: Dataset) -> Path:
    return save_dataset(four_vs_nine, tmp_path / "data" / "four_vs_nine.csv")


@pytest.fixture
def make_config(
    tmp_path: Path, fast_train_config: TrainConfig
) -> Callable[..., ExperimentConfig]:
    """Factory for experiment configs over a synthetic dataset."""

    def _make(
        name: str = "test",
        n: int = 600,
        classes: dict[int, float] | None = None,
        seed: int = 7,
        **updates: Any,
    ) -> ExperimentConfig:
        class_spec = classes or {4: 1.0, 9: 1.0}
        payload: dict[str, Any] = {
            "name": name,
            "dataset": DatasetSelector(
                kind=DataSourceKind.SYNTHETIC,
                synthetic=SyntheticSpec(n=n, class_spec=class_spec, seed=seed),
            ),
            "class_filter": ClassFilter(sha_orders=sorted(class_spec)),
            "train": fast_train_config,
            "output_dir": tmp_path / "runs",
        }
        payload.update(updates)
        return ExperimentConfig(**payload)

    return _make
