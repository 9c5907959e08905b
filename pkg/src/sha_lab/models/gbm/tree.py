"""Fitted regression tree over binned features."""

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray

LEAF = -1


@dataclass
class Node:
    """One tree node; leaves have ``feature == LEAF``.

    Rows go left when ``bin <= bin_threshold`` (raw ``x <= threshold``).
    """

    feature: int = LEAF
    bin_threshold: int = 0
    threshold: float = 0.0
    left: int = -1
    right: int = -1
    value: float = 0.0
    gain: float = 0.0
    n_samples: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.feature == LEAF


@dataclass
class Tree:
    nodes: list[Node] = field(default_factory=list)

    @property
    def n_leaves(self) -> int:
        return sum(1 for node in self.nodes if node.is_leaf)

    def predict_binned(self, binned: NDArray[np.int32]) -> NDArray[np.float64]:
        out = np.zeros(binned.shape[0], dtype=np.float64)
        stack: list[tuple[int, NDArray[np.int64]]] = [(0, np.arange(binned.shape[0]))]
        while stack:
            node_id, rows = stack.pop()
            node = self.nodes[node_id]
            if node.is_leaf:
                out[rows] = node.value
                continue
            goes_left = binned[rows, node.feature] <= node.bin_threshold
            stack.append((node.left, rows[goes_left]))
            stack.append((node.right, rows[~goes_left]))
        return out

    def to_payload(self) -> dict[str, Any]:
        return {
            "feature": [n.feature for n in self.nodes],
            "bin_threshold": [n.bin_threshold for n in self.nodes],
            "threshold": [n.threshold for n in self.nodes],
            "left": [n.left for n in self.nodes],
            "right": [n.right for n in self.nodes],
            "value": [n.value for n in self.nodes],
            "gain": [n.gain for n in self.nodes],
            "n_samples": [n.n_samples for n in self.nodes],
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "Tree":
        columns = list(Node.__dataclass_fields__)
        rows = zip(*(payload[c] for c in columns))
        return cls(nodes=[Node(**dict(zip(columns, row))) for row in rows])
