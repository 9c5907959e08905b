"""Tests for the record validation interface, pipeline, and stages."""

import pytest

from sha_lab.core.exceptions import MissingFeatureError, NonPositiveFeatureError
from sha_lab.core.interfaces.validator import IRecordValidator, RecordCheckResult
from sha_lab.core.schemas.curves import CurveRecord
from sha_lab.curvedata.bsd import (
    BsdConsistencyStage,
    InvariantStage,
    RecordValidationPipeline,
    compute_sha_from_bsd,
    validate_record,
)


class _AlwaysFails(IRecordValidator):
    def __init__(self, blocking: bool):
        self._blocking = blocking

    @property
    def name(self) -> str:
        return "always_fails"

    @property
    def is_blocking(self) -> bool:
        return self._blocking

    def check(self, record: CurveRecord) -> RecordCheckResult:
        return RecordCheckResult(errors=[f"{record.label} rejected"])


# ---- compute_sha_from_bsd ----


class TestComputeSha:
    """Tests for the BSD formula rearranged for |Sha|."""

    @pytest.mark.parametrize("fixture_name", ["curve_11a1", "curve_37a1"])
    def test_known_curves_give_trivial_sha(self, fixture_name: str, request):
        record = request.getfixturevalue(fixture_name)
        assert compute_sha_from_bsd(record) == pytest.approx(1.0, rel=1e-6)

    def test_missing_special_value(self, curve_11a1):
        target = curve_11a1.model_copy(update={"special_value": None, "sha_order": None})
        with pytest.raises(MissingFeatureError) as exc_info:
            compute_sha_from_bsd(target)
        assert exc_info.value.feature == "special_value"
        assert exc_info.value.label == "11.a1"

    def test_non_positive_feature(self, curve_11a1):
        # model_copy skips validation, so the invariant is broken on purpose here.
        broken = curve_11a1.model_copy(update={"real_period": 0.0})
        with pytest.raises(NonPositiveFeatureError):
            compute_sha_from_bsd(broken)


# ---- Stages ----


class TestInvariantStage:
    @pytest.fixture
    def stage(self):
        return InvariantStage()

    def test_implements_interface(self, stage):
        assert isinstance(stage, IRecordValidator)

    def test_name_and_blocking(self, stage):
        assert stage.name == "invariants"
        assert stage.is_blocking is True

    def test_valid_record(self, stage, curve_37a1):
        assert stage.check(curve_37a1).is_valid

    def test_reports_every_violation(self, stage, curve_11a1):
        broken = curve_11a1.model_copy(update={"sha_order": 2, "regulator": 2.0})
        result = stage.check(broken)
        assert len(result.errors) == 2
        assert any("perfect square" in e for e in result.errors)
        assert any("regulator" in e for e in result.errors)


class TestBsdConsistencyStage:
    @pytest.fixture
    def stage(self):
        return BsdConsistencyStage(tolerance=1e-4)

    def test_name_and_blocking(self, stage):
        assert stage.name == "bsd_consistency"
        assert stage.is_blocking is False

    def test_consistent_record(self, stage, curve_11a1):
        result = stage.check(curve_11a1)
        assert result.is_valid
        assert result.computed_sha == pytest.approx(1.0, rel=1e-6)
        assert result.relative_error is not None and result.relative_error < 1e-4

    def test_inconsistent_record(self, stage, curve_37a1):
        wrong = curve_37a1.model_copy(update={"sha_order": 4})
        result = stage.check(wrong)
        assert not result.is_valid
        assert "BSD inconsistency" in result.errors[0]
        assert result.relative_error == pytest.approx(0.75, rel=1e-5)

    def test_skips_records_without_sha(self, stage, curve_37a1):
        target = curve_37a1.model_copy(update={"sha_order": None})
        result = stage.check(target)
        assert result.is_valid
        assert result.computed_sha is None

    def test_missing_feature_is_an_error_not_an_exception(self, stage, curve_37a1):
        target = curve_37a1.model_copy(update={"regulator": None})
        result = stage.check(target)
        assert not result.is_valid
        assert "regulator" in result.errors[0]


# ---- Pipeline ----


class TestRecordValidationPipeline:
    def test_default_stages(self):
        pipeline = RecordValidationPipeline.default()
        assert [s.name for s in pipeline.stages] == ["invariants", "bsd_consistency"]

    def test_non_blocking_failure_continues(self, curve_11a1):
        pipeline = RecordValidationPipeline().add(_AlwaysFails(False)).add(InvariantStage())
        result = pipeline.validate(curve_11a1.model_copy(update={"sha_order": 2}))
        assert len(result.errors) == 2

    def test_blocking_failure_stops(self, curve_11a1):
        pipeline = RecordValidationPipeline().add(_AlwaysFails(True)).add(InvariantStage())
        result = pipeline.validate(curve_11a1.model_copy(update={"sha_order": 2}))
        assert result.errors == ["11.a1 rejected"]

    def test_invariant_failure_skips_bsd_stage(self, curve_11a1):
        # sha_order 2 breaks the square invariant and would also fail BSD.
        broken = curve_11a1.model_copy(update={"sha_order": 2})
        report = validate_record(broken)
        assert not report.passed
        assert len(report.reasons) == 1
        assert "perfect square" in report.reasons[0]
        assert report.computed_sha is None
        assert report.relative_error is None

    def test_validate_record_report(self, curve_11a1):
        report = validate_record(curve_11a1)
        assert report.passed
        assert report.label == "11.a1"
        assert report.reasons == []

    def test_validate_record_tolerance(self, curve_11a1):
        # Perturb L by 1e-3 relative: passes a loose tolerance, fails a tight one.
        nudged = curve_11a1.model_copy(
            update={"special_value": curve_11a1.special_value * 1.001}
        )
        assert validate_record(nudged, tol=1e-2).passed
        assert not validate_record(nudged, tol=1e-4).passed
