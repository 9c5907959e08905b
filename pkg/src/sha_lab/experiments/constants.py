"""Published reference values used as experiment inputs."""

from ..core.schemas.curves import CurveRecord

# Delaunay's heuristic predictions: rank -> (P(|Sha| = 1), P(2 | |Sha|), P(3 | |Sha|)).
DELAUNAY_HEURISTIC: dict[int, tuple[float, float, float]] = {
    0: (0.022924, 0.580577, 0.360995),
    1: (0.54914, 0.31146, 0.0416),
}

# Proportions reported for all curves of conductor < 500,000, same layout.
PUBLISHED_OBSERVED: dict[int, tuple[float, float, float]] = {
    0: (0.809611, 0.138529, 0.044557),
    1: (0.986610, 0.012370, 0.0004953),
}

# The rank-29 Elkies-Klagsbrun curve. Its special value is out of reach and its
# conductor is not used by any model.
E29_RECORD = CurveRecord(
    label="E29",
    rank=29,
    torsion_order=1,
    real_period=3.5090427060633615e-15,
    regulator=433744182671713097629179252379019849.493842,
    tamagawa_product=10725120,
)
