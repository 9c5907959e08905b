"""Tests for feature matrices, transforms and the prepare pipeline."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from sha_lab.core.enums import FeatureName, TargetKind
from sha_lab.core.exceptions import (
    MissingFeatureError,
    NonFiniteError,
    NonPositiveEntryError,
    UnknownFeatureError,
)
from sha_lab.core.schemas.curves import Dataset, SplitSpec
from sha_lab.core.schemas.features import FeatureSpec
from sha_lab.curvedata.sampling import train_test_split
from sha_lab.features.builder import AP_FEATURE_NAMES, build_matrix, infer_classes
from sha_lab.features.matrix import FeatureMatrix
from sha_lab.features.transforms import (
    drop_feature,
    fit_apply_scaler,
    fit_scaler,
    log_transform,
    prepare_features,
)
from tests.fixtures.sample_curves import SampleCurves


class TestFeatureSpec:
    def test_bool_log_flag_is_broadcast(self):
        spec = FeatureSpec.bsd(log=True)
        assert spec.log_transform == [True] * 5
        assert spec.names[0] == "special_value"

    def test_flag_count_must_match(self):
        with pytest.raises(ValidationError):
            FeatureSpec(features=[FeatureName.RANK], log_transform=[True, False])

    def test_non_loggable_feature(self):
        with pytest.raises(ValidationError):
            FeatureSpec(features=[FeatureName.ADELIC_GENUS], log_transform=True)

    def test_with_features_inherits_log_flags(self):
        spec = FeatureSpec.bsd(log=True).with_features([FeatureName.RANK, FeatureName.REGULATOR])
        assert spec.log_flags() == {"rank": True, "regulator": True}


class TestBuildMatrix:
    def test_columns_and_class_targets(self, four_vs_nine):
        m = build_matrix(four_vs_nine, FeatureSpec.bsd())
        assert m.feature_names == tuple(f.value for f in FeatureSpec.bsd().features)
        assert m.x.shape == (600, 5)
        assert m.classes == (4, 9)
        assert set(np.unique(m.require_y()).tolist()) == {0.0, 1.0}
        assert m.labels == tuple(four_vs_nine.labels)

    @pytest.mark.parametrize(
        "target, expected",
        [
            (TargetKind.SQRT_SHA, 1.0),
            (TargetKind.TRIVIAL_SHA, 1.0),
            (TargetKind.LOG_SHA, 0.0),
        ],
    )
    def test_scalar_targets(self, curve_11a1, target: TargetKind, expected: float):
        ds = Dataset(records=(curve_11a1,), source="one")
        m = build_matrix(ds, FeatureSpec.bsd(), target)
        assert m.require_y()[0] == pytest.approx(expected)

    def test_ap_columns_appended(self):
        ds = SampleCurves.four_vs_nine(n=10, include_ap=True)
        m = build_matrix(ds, FeatureSpec.bsd(include_ap=True))
        assert m.n_features == 105
        assert m.feature_names[5:] == AP_FEATURE_NAMES

    def test_missing_feature_names_record(self, curve_11a1):
        target = curve_11a1.model_copy(update={"special_value": None})
        ds = Dataset(records=(target,), source="one")
        with pytest.raises(MissingFeatureError) as exc_info:
            build_matrix(ds, FeatureSpec.bsd())
        assert exc_info.value.label == "11.a1"

    def test_missing_ap_values(self, curve_11a1):
        ds = Dataset(records=(curve_11a1,), source="one")
        with pytest.raises(MissingFeatureError):
            build_matrix(ds, FeatureSpec.bsd(include_ap=True))

    def test_infer_classes(self, mixed_sha, four_vs_nine):
        assert infer_classes(mixed_sha) == (1, 4, 9)
        assert infer_classes(four_vs_nine, mixed_sha) == (1, 4, 9)

    def test_rejects_non_finite(self):
        with pytest.raises(NonFiniteError):
            FeatureMatrix(x=np.array([[1.0, math.nan]]), feature_names=("a", "b"))


class TestTransforms:
    @pytest.fixture
    def matrix(self, four_vs_nine) -> FeatureMatrix:
        return build_matrix(four_vs_nine, FeatureSpec.bsd())

    def test_log_transform(self, matrix):
        spec = FeatureSpec.bsd(log=True)
        logged = log_transform(matrix, spec)
        np.testing.assert_allclose(logged.x, np.log(matrix.x))
        # input untouched
        assert matrix.x.min() > 0

    def test_rank_uses_log1p(self, four_vs_nine):
        spec = FeatureSpec(features=[FeatureName.RANK], log_transform=True)
        m = build_matrix(four_vs_nine, spec)
        np.testing.assert_allclose(log_transform(m, spec).x, np.log1p(m.x))

    def test_log_of_non_positive_entry(self):
        m = FeatureMatrix(x=np.array([[1.0], [0.0]]), feature_names=("regulator",))
        spec = FeatureSpec(features=[FeatureName.REGULATOR], log_transform=True)
        with pytest.raises(NonPositiveEntryError) as exc_info:
            log_transform(m, spec)
        assert exc_info.value.row == 1
        assert exc_info.value.column == "regulator"

    def test_scaler_statistics(self, matrix):
        scaled = fit_apply_scaler(matrix, matrix)[0]
        np.testing.assert_allclose(scaled.x.mean(axis=0), 0.0, atol=1e-12)
        np.testing.assert_allclose(scaled.x.std(axis=0), 1.0, atol=1e-12)

    def test_constant_column_passes_through(self):
        x = np.array([[1.0, 3.0], [2.0, 3.0], [3.0, 3.0]])
        m = FeatureMatrix(x=x, feature_names=("a", "b"))
        scaler = fit_scaler(m)
        assert scaler.constant_columns == ["b"]
        np.testing.assert_array_equal(scaler.transform(x)[:, 1], x[:, 1])

    def test_drop_feature(self, matrix):
        dropped = drop_feature(matrix, "regulator")
        assert "regulator" not in dropped.feature_names
        assert dropped.n_features == 4
        np.testing.assert_array_equal(
            dropped.column("torsion_order"), matrix.column("torsion_order")
        )

    def test_drop_unknown_feature(self, matrix):
        with pytest.raises(UnknownFeatureError):
            drop_feature(matrix, "conductor")


class TestPrepareFeatures:
    def test_scaling_uses_training_statistics_only(self, four_vs_nine):
        train_ds, test_ds = train_test_split(four_vs_nine, SplitSpec(seed=4))
        spec = FeatureSpec.bsd(log=True)
        train, test = prepare_features(train_ds, test_ds, spec)

        raw_train = log_transform(build_matrix(train_ds, spec), spec).x
        raw_test = log_transform(build_matrix(test_ds, spec), spec).x
        expected = (raw_test - raw_train.mean(axis=0)) / raw_train.std(axis=0)
        np.testing.assert_allclose(test.x, expected)
        assert train.scaler is test.scaler

    def test_dropping_after_scaling_equals_never_building(self, four_vs_nine):
        train_ds, test_ds = train_test_split(four_vs_nine, SplitSpec(seed=4))
        spec = FeatureSpec.bsd(log=True)
        _, full = prepare_features(train_ds, test_ds, spec)
        narrower = spec.with_features([f for f in spec.features if f != FeatureName.REGULATOR])
        _, direct = prepare_features(train_ds, test_ds, narrower)
        np.testing.assert_allclose(drop_feature(full, "regulator").x, direct.x)

    def test_shared_class_mapping(self, four_vs_nine):
        train_ds, test_ds = train_test_split(four_vs_nine, SplitSpec(seed=4))
        train, test = prepare_features(train_ds, test_ds, FeatureSpec.bsd())
        assert train.classes == test.classes == (4, 9)
