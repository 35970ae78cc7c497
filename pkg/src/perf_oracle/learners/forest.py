"""Random forest: bagged Gini trees with per-split feature subsets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..datasets import TabularDataset
from ..errors import LearnerError
from .trees import TreeNode, grow_gini, tree_apply


@dataclass
class ForestModel:
    trees: list = field(default_factory=list)
    n_trees: int = 0
    max_depth: int = 1
    feature_subsample: int = 1
    seed: int = 0
    n_classes: int = 2
    n_features: int = 1

    def tree_votes(self, x: np.ndarray) -> np.ndarray:
        """(n_samples, n_trees) matrix of per-tree predicted classes."""
        votes = np.empty((x.shape[0], len(self.trees)), dtype=np.int64)
        for t, root in enumerate(self.trees):
            dists = tree_apply(root, x)
            votes[:, t] = [int(np.argmax(d)) for d in dists]
        return votes

    def predict_batch(self, x: np.ndarray) -> np.ndarray:
        if x.shape[1] != self.n_features:
            raise LearnerError("arity-mismatch", f"model expects {self.n_features} features, got {x.shape[1]}")
        votes = self.tree_votes(x)
        out = np.empty(x.shape[0], dtype=np.int64)
        for i in range(x.shape[0]):
            counts = np.bincount(votes[i], minlength=self.n_classes)
            out[i] = int(np.argmax(counts))  # ties resolve to the lowest class
        return out


def fit_forest(train: TabularDataset, n_trees: int, max_depth: int, seed: int = 0,
               feature_subsample: int | None = None) -> ForestModel:
    """Train ``n_trees`` Gini trees on independent bootstrap samples.

    Each tree draws its RNG stream from ``seed ^ tree_index``, so trees can be
    trained concurrently and still reproduce the serial result bit for bit.
    Per-split candidate features default to round(sqrt(d)).
    """
    if n_trees < 1:
        raise LearnerError("bad-config", "n_trees must be >= 1")
    if max_depth < 1:
        raise LearnerError("bad-config", "max_depth must be >= 1")
    d = train.d_features
    if feature_subsample is None:
        feature_subsample = max(1, int(math.floor(math.sqrt(d) + 0.5)))
    n = train.n_samples
    trees: list[TreeNode] = []
    for t in range(n_trees):
        rng = np.random.Generator(np.random.PCG64(seed ^ t))
        idx = rng.integers(0, n, size=n)
        trees.append(grow_gini(train.x[idx], train.y[idx], train.n_classes, max_depth, feature_subsample, rng))
    return ForestModel(trees=trees, n_trees=n_trees, max_depth=max_depth,
                       feature_subsample=feature_subsample, seed=seed,
                       n_classes=train.n_classes, n_features=d)
