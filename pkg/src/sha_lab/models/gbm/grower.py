"""Leaf-wise tree growth on gradient/hessian histograms.

The grower repeatedly splits the leaf with the largest gain until
``max_leaves`` is reached or no leaf has a valid split. Split gain is the
usual second-order score

    1/2 * [GL^2 / (HL + l2) + GR^2 / (HR + l2) - G^2 / (H + l2)]

and leaf values are Newton steps ``-G / (H + l2)`` times the shrinkage.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ...core.schemas.training import GbmParams
from .binning import BinMapper
from .tree import Node, Tree

# Splits must improve the objective by more than this.
MIN_SPLIT_GAIN = 1e-9


@dataclass
class SplitInfo:
    gain: float
    feature: int
    bin: int


@dataclass
class TreeNode:
    """Training-time node: the rows it holds and their gradient sums."""

    node_id: int
    rows: NDArray[np.int64]
    sum_gradients: float
    sum_hessians: float
    split: Optional[SplitInfo] = None


class TreeGrower:
    """Grows one tree for the given gradients and hessians."""

    def __init__(
        self,
        binned: NDArray[np.int32],
        mapper: BinMapper,
        gradients: NDArray[np.float64],
        hessians: NDArray[np.float64],
        params: GbmParams,
        executor: Optional[ThreadPoolExecutor] = None,
    ):
        self._binned = binned
        self._mapper = mapper
        self._g = gradients
        self._h = hessians
        self._params = params
        self._executor = executor
        self._tree = Tree()

    def _leaf_value(self, node: TreeNode) -> float:
        denom = node.sum_hessians + self._params.l2_regularization
        if denom <= 0.0:
            return 0.0
        return -node.sum_gradients / denom * self._params.shrinkage

    def _score(self, g: ArrayLike, h: ArrayLike) -> NDArray[np.float64]:
        return np.square(np.asarray(g)) / (np.asarray(h) + self._params.l2_regularization)

    def _best_split_for_feature(self, node: TreeNode, feature: int) -> Optional[SplitInfo]:
        n_bins = self._mapper.n_bins(feature)
        if n_bins < 2:
            return None
        bins = self._binned[node.rows, feature]
        hist_g = np.bincount(bins, weights=self._g[node.rows], minlength=n_bins)
        hist_h = np.bincount(bins, weights=self._h[node.rows], minlength=n_bins)
        hist_n = np.bincount(bins, minlength=n_bins)

        gl = np.cumsum(hist_g)[:-1]
        hl = np.cumsum(hist_h)[:-1]
        nl = np.cumsum(hist_n)[:-1]
        gr = node.sum_gradients - gl
        hr = node.sum_hessians - hl
        nr = node.rows.size - nl

        p = self._params
        valid = (
            (nl >= p.min_samples_leaf)
            & (nr >= p.min_samples_leaf)
            & (hl >= p.min_hessian_leaf)
            & (hr >= p.min_hessian_leaf)
        )
        if not valid.any():
            return None
        parent = float(self._score(node.sum_gradients, node.sum_hessians))
        with np.errstate(divide="ignore", invalid="ignore"):
            gain = 0.5 * (self._score(gl, hl) + self._score(gr, hr) - parent)
        gain = np.where(valid, gain, -np.inf)
        best = int(np.argmax(gain))
        if not gain[best] > MIN_SPLIT_GAIN:
            return None
        return SplitInfo(gain=float(gain[best]), feature=feature, bin=best)

    def _find_split(self, node: TreeNode) -> Optional[SplitInfo]:
        features = range(self._mapper.n_features)
        if self._executor is not None:
            candidates = list(
                self._executor.map(lambda f: self._best_split_for_feature(node, f), features)
            )
        else:
            candidates = [self._best_split_for_feature(node, f) for f in features]
        best: Optional[SplitInfo] = None
        # Feature order breaks ties, independent of worker count.
        for cand in candidates:
            if cand is not None and (best is None or cand.gain > best.gain):
                best = cand
        return best

    def _new_node(self, rows: NDArray[np.int64]) -> TreeNode:
        node_id = len(self._tree.nodes)
        node = TreeNode(
            node_id=node_id,
            rows=rows,
            sum_gradients=float(self._g[rows].sum()),
            sum_hessians=float(self._h[rows].sum()),
        )
        self._tree.nodes.append(Node(n_samples=int(rows.size)))
        self._tree.nodes[node_id].value = self._leaf_value(node)
        node.split = self._find_split(node)
        return node

    def grow(self) -> Tree:
        root = self._new_node(np.arange(self._binned.shape[0]))
        heap: list[tuple[float, int, TreeNode]] = []
        if root.split is not None:
            heappush(heap, (-root.split.gain, root.node_id, root))
        n_leaves = 1
        while heap and n_leaves < self._params.max_leaves:
            _, _, node = heappop(heap)
            split = node.split
            assert split is not None
            goes_left = self._binned[node.rows, split.feature] <= split.bin
            left = self._new_node(node.rows[goes_left])
            right = self._new_node(node.rows[~goes_left])

            edges = self._mapper.edges[split.feature]
            out = self._tree.nodes[node.node_id]
            out.feature = split.feature
            out.bin_threshold = split.bin
            out.threshold = float(edges[split.bin])
            out.left = left.node_id
            out.right = right.node_id
            out.gain = split.gain
            out.value = 0.0
            n_leaves += 1

            for child in (left, right):
                if child.split is not None:
                    heappush(heap, (-child.split.gain, child.node_id, child))
        return self._tree
