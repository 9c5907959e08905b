"""Quantile binning of continuous features.

Bin edges are actual training values (lower quantiles), and a value falls in
the first bin whose edge is >= the value. Because only ranks matter, a
strictly increasing transform of a column followed by a refit produces the
same bin assignment for every row.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ...core.exceptions import DimensionMismatchError


def find_bin_edges(column: NDArray[np.float64], max_bins: int) -> NDArray[np.float64]:
    """At most ``max_bins - 1`` increasing edges drawn from ``column``."""
    distinct = np.unique(column)
    if distinct.size <= max_bins:
        return distinct[:-1].copy()
    quantiles = np.linspace(0.0, 1.0, max_bins + 1)[1:-1]
    edges = np.quantile(column, quantiles, method="lower")
    edges = np.unique(edges)
    # The maximum as an edge would leave its right bin empty.
    return edges[edges < distinct[-1]]


@dataclass(frozen=True, eq=False)
class BinMapper:
    """Per-feature bin edges; bin ``i`` holds ``edges[i-1] < x <= edges[i]``."""

    edges: list[NDArray[np.float64]]

    @classmethod
    def fit(cls, x: NDArray[np.float64], max_bins: int) -> "BinMapper":
        return cls(edges=[find_bin_edges(x[:, j], max_bins) for j in range(x.shape[1])])

    @property
    def n_features(self) -> int:
        return len(self.edges)

    def n_bins(self, feature: int) -> int:
        return int(self.edges[feature].size + 1)

    def transform(self, x: NDArray[np.float64]) -> NDArray[np.int32]:
        if x.shape[1] != self.n_features:
            raise DimensionMismatchError(
                f"bins fitted on {self.n_features} features, got {x.shape[1]}"
            )
        binned = np.empty(x.shape, dtype=np.int32)
        for j, edges in enumerate(self.edges):
            binned[:, j] = np.searchsorted(edges, x[:, j], side="left")
        return binned
