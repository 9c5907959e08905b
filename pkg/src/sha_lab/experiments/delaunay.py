"""Empirical |Sha| divisibility proportions against Delaunay's heuristics.

For a prime p and rank r, f_{p,r}(N) is the fraction of rank-r curves of
conductor below N whose |Sha| is divisible by p. It is evaluated on a
log-spaced conductor grid and over the whole dataset.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from numpy.typing import NDArray

from ..core.enums import PlotKind
from ..core.exceptions import EmptyResultError
from ..core.interfaces.artifacts import IArtifactWriter
from ..core.schemas.curves import Dataset
from ..core.schemas.experiments import ExperimentConfig
from ..core.schemas.plots import PlotSeries, PlotSpec
from ..curvedata.sampling import filter_records
from ..observability.logger import get_logger
from .constants import DELAUNAY_HEURISTIC, PUBLISHED_OBSERVED
from .datasets import load_selector
from .manifest import RunRecorder

logger = get_logger(__name__)

GRID_START = 1_000.0
TRIVIAL = "sha_trivial"


def conductor_grid(max_conductor: int, points: int = 50) -> list[float]:
    """``points`` log-spaced bounds from 1000 to one past the largest conductor."""
    upper = max(float(max_conductor) + 1.0, GRID_START)
    return [float(v) for v in np.geomspace(GRID_START, upper, points)]


def _proportion(hits: NDArray[np.bool_], bucket: NDArray[np.bool_]) -> tuple[Optional[float], int]:
    support = int(bucket.sum())
    if support == 0:
        return None, 0
    return int((hits & bucket).sum()) / support, support


def _quantity(prime: Optional[int]) -> str:
    return TRIVIAL if prime is None else f"{prime}_divides_sha"


@dataclass(frozen=True)
class DelaunayResult:
    """Proportions over the conductor grid; None marks an empty bucket."""

    grid: list[float]
    divisibility: dict[tuple[int, int], list[Optional[float]]]
    trivial: dict[int, list[Optional[float]]]
    support: dict[int, list[int]]
    overall_divisibility: dict[tuple[int, int], Optional[float]]
    overall_trivial: dict[int, Optional[float]]
    comparison: list[dict[str, Any]]


def _comparison_rows(
    primes: Sequence[int],
    ranks: Sequence[int],
    overall_div: dict[tuple[int, int], Optional[float]],
    overall_trivial: dict[int, Optional[float]],
) -> list[dict[str, Any]]:
    """Heuristic, published and locally observed values side by side."""
    slot = {None: 0, 2: 1, 3: 2}
    rows = []
    for r in ranks:
        for prime in (None, *primes):
            index = slot.get(prime)
            heuristic = DELAUNAY_HEURISTIC.get(r)
            published = PUBLISHED_OBSERVED.get(r)
            rows.append(
                {
                    "rank": r,
                    "quantity": _quantity(prime),
                    "heuristic": heuristic[index] if heuristic and index is not None else None,
                    "published_observed": (
                        published[index] if published and index is not None else None
                    ),
                    "observed": overall_trivial[r] if prime is None else overall_div[(prime, r)],
                }
            )
    return rows


def run_delaunay_analysis(
    ds: Dataset,
    primes: Sequence[int] = (2, 3),
    ranks: Sequence[int] = (0, 1),
    grid_points: int = 50,
    writer: Optional[IArtifactWriter] = None,
    name: str = "delaunay",
) -> DelaunayResult:
    """Compute f_{p,r}(N) and the trivial-Sha proportion per rank.

    Records without conductor or |Sha| are skipped and counted.

    Raises:
        EmptyResultError: No record carries conductor, rank and |Sha|
    """
    usable = [r for r in ds.records if r.conductor is not None and r.sha_order is not None]
    if len(usable) < len(ds):
        logger.warning(
            "Skipped records without conductor or sha_order", skipped=len(ds) - len(usable)
        )
    if not usable:
        raise EmptyResultError("No records with conductor, rank and sha_order", {"rows": len(ds)})

    conductor = np.array([r.conductor for r in usable], dtype=np.int64)
    rank = np.array([r.rank for r in usable], dtype=np.int64)
    sha = np.array([r.sha_order for r in usable], dtype=np.int64)
    grid = conductor_grid(int(conductor.max()), grid_points)

    divisibility: dict[tuple[int, int], list[Optional[float]]] = {}
    trivial: dict[int, list[Optional[float]]] = {}
    support: dict[int, list[int]] = {}
    overall_div: dict[tuple[int, int], Optional[float]] = {}
    overall_trivial: dict[int, Optional[float]] = {}
    is_trivial = sha == 1
    for r in ranks:
        in_rank = rank == r
        buckets = [in_rank & (conductor < bound) for bound in grid]
        support[r] = [int(b.sum()) for b in buckets]
        trivial[r] = [_proportion(is_trivial, b)[0] for b in buckets]
        overall_trivial[r] = _proportion(is_trivial, in_rank)[0]
        for p in primes:
            divides = sha % p == 0
            divisibility[(p, r)] = [_proportion(divides, b)[0] for b in buckets]
            overall_div[(p, r)] = _proportion(divides, in_rank)[0]

    result = DelaunayResult(
        grid=grid,
        divisibility=divisibility,
        trivial=trivial,
        support=support,
        overall_divisibility=overall_div,
        overall_trivial=overall_trivial,
        comparison=_comparison_rows(primes, ranks, overall_div, overall_trivial),
    )
    logger.info(
        "Delaunay proportions computed",
        curves=len(usable),
        overall_trivial=overall_trivial,
    )
    if writer is not None:
        _emit(result, primes, ranks, writer, name)
    return result


def _emit(
    result: DelaunayResult,
    primes: Sequence[int],
    ranks: Sequence[int],
    writer: IArtifactWriter,
    name: str,
) -> None:
    div_rows = [
        {"conductor_bound": bound, "prime": p, "rank": r, "proportion": value, "support": n}
        for p in primes
        for r in ranks
        for bound, value, n in zip(result.grid, result.divisibility[(p, r)], result.support[r])
    ]
    trivial_rows = [
        {"conductor_bound": bound, "rank": r, "proportion": value, "support": n}
        for r in ranks
        for bound, value, n in zip(result.grid, result.trivial[r], result.support[r])
    ]
    writer.write_table(f"{name}_divisibility", div_rows)
    writer.write_table(f"{name}_trivial", trivial_rows)
    writer.write_table(f"{name}_comparison", result.comparison)

    for p in primes:
        writer.write_figure(
            f"{name}_divisibility_p{p}",
            PlotSpec(
                kind=PlotKind.LINE,
                title=f"Proportion of curves with {p} dividing |Sha|",
                x_label="Conductor bound N",
                y_label="Proportion",
                series=[
                    PlotSeries(name=f"rank {r}", x=result.grid, y=result.divisibility[(p, r)])
                    for r in ranks
                ],
                log_x=True,
            ),
        )
    writer.write_figure(
        f"{name}_trivial",
        PlotSpec(
            kind=PlotKind.LINE,
            title="Proportion of curves with trivial Sha",
            x_label="Conductor bound N",
            y_label="Proportion",
            series=[
                PlotSeries(name=f"rank {r}", x=result.grid, y=result.trivial[r]) for r in ranks
            ],
            log_x=True,
        ),
    )


def run_delaunay_experiment(
    cfg: ExperimentConfig,
    writer: Optional[IArtifactWriter] = None,
    *,
    allow_download: bool = False,
    primes: Sequence[int] = (2, 3),
    ranks: Sequence[int] = (0, 1),
) -> DelaunayResult:
    """Load the configured dataset, apply its record filter without balancing, and analyse it."""
    recorder = RunRecorder(cfg, "delaunay")
    ds = filter_records(load_selector(cfg.dataset, allow_download), cfg.class_filter)
    result = run_delaunay_analysis(ds, primes, ranks, cfg.conductor_grid_points, writer, cfg.name)
    for r in ranks:
        recorder.record(f"rank{r}/{TRIVIAL}", result.overall_trivial[r])
        for p in primes:
            recorder.record(f"rank{r}/{_quantity(p)}", result.overall_divisibility[(p, r)])
    recorder.finish(writer, ds)
    return result
