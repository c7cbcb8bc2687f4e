"""Random forest of binary decision trees over sparse features.

Each tree is grown on a seeded bootstrap resample; every split searches a
random feature subset (default ceil(sqrt(m))) for the impurity-minimizing
(feature, threshold) pair, with thresholds at midpoints between consecutive
distinct values.  Leaves store the positive-class fraction and the forest
probability is the mean leaf fraction across trees.  A fixed seed makes
training bit-deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from ..features import SparseVector
from .logistic import _as_csr, _check_training_inputs

_LEAF = -1


def gini_impurity(labels: Sequence[int] | np.ndarray) -> float:
    """1 - sum of squared class fractions, for binary 0/1 labels."""
    y = np.asarray(labels, dtype=np.float64)
    if y.size == 0:
        return 0.0
    q = float(y.mean())
    return 1.0 - q * q - (1.0 - q) * (1.0 - q)


def entropy_impurity(labels: Sequence[int] | np.ndarray) -> float:
    """Binary entropy in bits, with 0 log 0 = 0."""
    y = np.asarray(labels, dtype=np.float64)
    if y.size == 0:
        return 0.0
    q = float(y.mean())
    return float(_binary_entropy(np.array([q]))[0])


def _binary_entropy(q: np.ndarray) -> np.ndarray:
    out = np.zeros_like(q)
    for frac in (q, 1.0 - q):
        mask = frac > 0.0
        out[mask] -= frac[mask] * np.log2(frac[mask])
    return out


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 200
    max_depth: int | None = None
    split_criterion: str = "gini"
    min_samples_split: int = 2
    min_samples_leaf: int = 1
    features_per_split: int | None = None  # None -> ceil(sqrt(m))

    def __post_init__(self) -> None:
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if self.split_criterion not in ("gini", "entropy"):
            raise ValueError(f"unknown split_criterion {self.split_criterion!r}")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1 or None")
        if self.min_samples_split < 2 or self.min_samples_leaf < 1:
            raise ValueError("min_samples_split >= 2 and min_samples_leaf >= 1 required")
        if self.features_per_split is not None and self.features_per_split < 1:
            raise ValueError("features_per_split must be >= 1 or None")

    def to_payload(self) -> dict:
        return {
            "n_trees": self.n_trees,
            "max_depth": self.max_depth,
            "split_criterion": self.split_criterion,
            "min_samples_split": self.min_samples_split,
            "min_samples_leaf": self.min_samples_leaf,
            "features_per_split": self.features_per_split,
        }


@dataclass(frozen=True)
class DecisionTree:
    """Flat node arrays; node 0 is the root, feature == -1 marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray  # positive-class fraction at the node

    @property
    def n_nodes(self) -> int:
        return int(self.feature.size)

    def leaf_value(self, x: SparseVector) -> float:
        node = 0
        while self.feature[node] != _LEAF:
            if x.value_at(int(self.feature[node])) <= self.threshold[node]:
                node = int(self.left[node])
            else:
                node = int(self.right[node])
        return float(self.value[node])

    def to_payload(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_payload(cls, payload) -> "DecisionTree":
        return cls(
            feature=np.asarray(payload["feature"], dtype=np.int64),
            threshold=np.asarray(payload["threshold"], dtype=np.float64),
            left=np.asarray(payload["left"], dtype=np.int64),
            right=np.asarray(payload["right"], dtype=np.int64),
            value=np.asarray(payload["value"], dtype=np.float64),
        )


@dataclass(frozen=True)
class ForestModel:
    trees: tuple[DecisionTree, ...]
    params: ForestParams
    seed: int
    n_features: int
    trained_on: str | None = None

    @property
    def dimension(self) -> int:
        return self.n_features

    def predict_proba(self, x: SparseVector) -> float:
        if x.dimension != self.n_features:
            raise ValueError(
                f"feature dimension {x.dimension} does not match model "
                f"dimension {self.n_features}"
            )
        return float(np.mean([tree.leaf_value(x) for tree in self.trees]))


def _column_values(
    indptr: np.ndarray, indices: np.ndarray, data: np.ndarray, j: int, rows: np.ndarray
) -> np.ndarray:
    """Column j of a CSC matrix restricted to sorted row positions ``rows``."""
    lo, hi = indptr[j], indptr[j + 1]
    out = np.zeros(rows.size)
    if lo == hi:
        return out
    r = indices[lo:hi]
    pos = np.searchsorted(rows, r)
    clipped = np.minimum(pos, rows.size - 1)
    mask = rows[clipped] == r
    out[pos[mask]] = data[lo:hi][mask]
    return out


class _TreeBuilder:
    def __init__(self, Xc: sp.csc_matrix, y: np.ndarray, params: ForestParams,
                 rng: np.random.Generator):
        self.indptr = Xc.indptr
        self.indices = Xc.indices
        self.data = Xc.data
        self.n, self.m = Xc.shape
        self.y = y
        self.params = params
        self.rng = rng
        k = params.features_per_split or math.ceil(math.sqrt(self.m))
        self.k = min(k, self.m)
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def _new_node(self, fraction: float) -> int:
        self.feature.append(_LEAF)
        self.threshold.append(math.nan)
        self.left.append(_LEAF)
        self.right.append(_LEAF)
        self.value.append(fraction)
        return len(self.feature) - 1

    def _best_split(self, rows: np.ndarray) -> tuple[int, float, np.ndarray] | None:
        y_node = self.y[rows]
        n_s = rows.size
        total_pos = float(y_node.sum())
        msl = self.params.min_samples_leaf
        use_gini = self.params.split_criterion == "gini"
        best_cost = math.inf
        best: tuple[int, float, np.ndarray] | None = None
        for j in self.rng.choice(self.m, size=self.k, replace=False):
            col = _column_values(self.indptr, self.indices, self.data, int(j), rows)
            order = np.argsort(col, kind="stable")
            v = col[order]
            if v[0] == v[-1]:
                continue
            t = y_node[order]
            nl = np.arange(1, n_s, dtype=np.float64)
            nr = n_s - nl
            cp = np.cumsum(t)[:-1]
            valid = (v[:-1] < v[1:]) & (nl >= msl) & (nr >= msl)
            if not valid.any():
                continue
            ql = cp / nl
            qr = (total_pos - cp) / nr
            if use_gini:
                child = nl * 2.0 * ql * (1.0 - ql) + nr * 2.0 * qr * (1.0 - qr)
            else:
                child = nl * _binary_entropy(ql) + nr * _binary_entropy(qr)
            cost = np.where(valid, child / n_s, math.inf)
            i = int(np.argmin(cost))
            if cost[i] < best_cost:
                best_cost = float(cost[i])
                thr = 0.5 * (v[i] + v[i + 1])
                best = (int(j), thr, col <= thr)
        return best

    def build(self) -> DecisionTree:
        root_rows = np.arange(self.n, dtype=np.int64)
        root = self._new_node(float(self.y.mean()))
        stack: list[tuple[int, np.ndarray, int]] = [(root, root_rows, 0)]
        p = self.params
        while stack:
            node, rows, depth = stack.pop()
            y_node = self.y[rows]
            pos = float(y_node.sum())
            if (
                pos == 0.0
                or pos == rows.size
                or rows.size < p.min_samples_split
                or (p.max_depth is not None and depth >= p.max_depth)
            ):
                continue
            found = self._best_split(rows)
            if found is None:
                continue
            j, thr, left_mask = found
            left_rows = rows[left_mask]
            right_rows = rows[~left_mask]
            self.feature[node] = j
            self.threshold[node] = thr
            left_id = self._new_node(float(self.y[left_rows].mean()))
            right_id = self._new_node(float(self.y[right_rows].mean()))
            self.left[node] = left_id
            self.right[node] = right_id
            # Right pushed first so the left child expands first.
            stack.append((right_id, right_rows, depth + 1))
            stack.append((left_id, left_rows, depth + 1))
        return DecisionTree(
            feature=np.asarray(self.feature, dtype=np.int64),
            threshold=np.asarray(self.threshold, dtype=np.float64),
            left=np.asarray(self.left, dtype=np.int64),
            right=np.asarray(self.right, dtype=np.int64),
            value=np.asarray(self.value, dtype=np.float64),
        )


def train_forest(
    X: Sequence[SparseVector] | sp.spmatrix,
    y: Sequence[int] | np.ndarray,
    params: ForestParams | None = None,
    seed: int = 0,
    trained_on: str | None = None,
) -> ForestModel:
    """Grow a seeded forest; per-tree seeds are spawned deterministically."""
    params = params or ForestParams()
    X = _as_csr(X)
    y = np.asarray(y, dtype=np.float64)
    _check_training_inputs(X, y)
    n, m = X.shape
    tree_seeds = np.random.SeedSequence(seed).spawn(params.n_trees)
    trees = []
    for ss in tree_seeds:
        rng = np.random.default_rng(ss)
        boot = rng.integers(0, n, size=n)
        Xb = X[boot].tocsc()
        builder = _TreeBuilder(Xb, y[boot], params, rng)
        trees.append(builder.build())
    return ForestModel(
        trees=tuple(trees), params=params, seed=seed, n_features=m,
        trained_on=trained_on,
    )
