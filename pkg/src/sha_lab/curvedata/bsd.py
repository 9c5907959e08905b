"""BSD-formula arithmetic and record validation.

Rearranged for Sha, the conjectural BSD formula reads

    |Sha| = |E(Q)_tors|^2 * L*(E) / (Omega * Reg * prod c_p)

with L*(E) = L^(r)(E, 1) / r!.
"""

from ..core.enums import BSD_FEATURES
from ..core.exceptions import MissingFeatureError, NonPositiveFeatureError, ShaLabError
from ..core.interfaces.validator import IRecordValidator, RecordCheckResult
from ..core.schemas.curves import CurveRecord, ValidationReport, invariant_violations
from ..observability.logger import get_logger

logger = get_logger(__name__)

DEFAULT_BSD_TOLERANCE = 1e-4


def compute_sha_from_bsd(rec: CurveRecord) -> float:
    """|Sha| implied by the five BSD features, unrounded."""
    values: dict[str, float] = {}
    for feature in BSD_FEATURES:
        value = rec.feature(feature.value)
        if value is None:
            raise MissingFeatureError(feature.value, rec.label)
        if not value > 0:
            raise NonPositiveFeatureError(feature.value, value, rec.label)
        values[feature.value] = value

    torsion = values["torsion_order"]
    return (
        torsion
        * torsion
        * values["special_value"]
        / (values["real_period"] * values["regulator"] * values["tamagawa_product"])
    )


class InvariantStage(IRecordValidator):
    """Checks the CurveRecord type invariants.

    Blocking: the BSD check only runs on structurally valid records. Every
    violated invariant is still reported.
    """

    @property
    def name(self) -> str:
        return "invariants"

    @property
    def is_blocking(self) -> bool:
        return True

    def check(self, record: CurveRecord) -> RecordCheckResult:
        return RecordCheckResult(errors=invariant_violations(record))


class BsdConsistencyStage(IRecordValidator):
    """Compares a stored |Sha| against the BSD formula within a relative tolerance."""

    def __init__(self, tolerance: float = DEFAULT_BSD_TOLERANCE):
        self._tolerance = tolerance

    @property
    def name(self) -> str:
        return "bsd_consistency"

    @property
    def is_blocking(self) -> bool:
        return False

    def check(self, record: CurveRecord) -> RecordCheckResult:
        result = RecordCheckResult()
        if record.sha_order is None:
            return result
        try:
            computed = compute_sha_from_bsd(record)
        except ShaLabError as exc:
            result.add_error(exc.message)
            return result

        rel = abs(computed - record.sha_order) / record.sha_order
        result.computed_sha = computed
        result.relative_error = rel
        if rel > self._tolerance:
            result.add_error(
                f"BSD inconsistency: formula gives {computed:.10g}, "
                f"sha_order is {record.sha_order} (relative error {rel:.3e})"
            )
        return result


class RecordValidationPipeline:
    """Runs validation stages in order; stops after a failing blocking stage."""

    def __init__(self) -> None:
        self._stages: list[IRecordValidator] = []

    def add(self, validator: IRecordValidator) -> "RecordValidationPipeline":
        """Add a validation stage. Returns self for chaining."""
        self._stages.append(validator)
        return self

    @property
    def stages(self) -> list[IRecordValidator]:
        return list(self._stages)

    def validate(self, record: CurveRecord) -> RecordCheckResult:
        combined = RecordCheckResult()
        for stage in self._stages:
            result = stage.check(record)
            combined.merge(result)
            if stage.is_blocking and not result.is_valid:
                logger.debug(
                    "Blocking stage failed, stopping pipeline",
                    stage=stage.name,
                    label=record.label,
                    errors=result.errors,
                )
                break
        return combined

    @classmethod
    def default(cls, tolerance: float = DEFAULT_BSD_TOLERANCE) -> "RecordValidationPipeline":
        return cls().add(InvariantStage()).add(BsdConsistencyStage(tolerance))


def validate_record(rec: CurveRecord, tol: float = DEFAULT_BSD_TOLERANCE) -> ValidationReport:
    """Check type invariants and, when |Sha| is stored, BSD consistency."""
    result = RecordValidationPipeline.default(tol).validate(rec)
    return ValidationReport(
        label=rec.label,
        passed=result.is_valid,
        reasons=result.errors,
        computed_sha=result.computed_sha,
        relative_error=result.relative_error,
    )
