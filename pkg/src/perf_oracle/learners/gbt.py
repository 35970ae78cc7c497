"""Gradient boosted trees with the second-order split objective.

Each round fits one tree per class column to the first/second derivatives of
the cross-entropy at the current margins (g = p - y, h = p(1-p)); binary
problems use a single sigmoid-coupled column, multiclass uses softmax
coupling with one tree per class. Predictions accumulate tree outputs with
shrinkage on top of the class-prior base score.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..datasets import TabularDataset
from ..errors import LearnerError
from .common import sigmoid, softmax
from .trees import grow_gain, tree_apply


def split_gain(g_left: float, h_left: float, g_right: float, h_right: float,
               lam: float = 1.0, gamma: float = 0.0) -> float:
    """Loss reduction of splitting a node into (left, right) children."""

    def term(g, h):
        den = h + lam
        if den <= 0.0:
            return 0.0
        return g * g / den

    return 0.5 * (term(g_left, h_left) + term(g_right, h_right)
                  - term(g_left + g_right, h_left + h_right)) - gamma


@dataclass
class GbtModel:
    rounds: list = field(default_factory=list)  # one list of per-class trees per round
    base: np.ndarray = None
    eta: float = 0.1
    lam: float = 1.0
    gamma: float = 0.0
    max_depth: int = 3
    seed: int = 0
    n_classes: int = 2
    n_features: int = 1

    def margins(self, x: np.ndarray) -> np.ndarray:
        """(n_samples, n_columns) raw scores: base + eta * sum of trees."""
        n = x.shape[0]
        out = np.tile(self.base, (n, 1))
        for trees in self.rounds:
            for c, root in enumerate(trees):
                out[:, c] += self.eta * np.array(tree_apply(root, x), dtype=np.float64)
        return out

    def predict_batch(self, x: np.ndarray) -> np.ndarray:
        if x.shape[1] != self.n_features:
            raise LearnerError("arity-mismatch", f"model expects {self.n_features} features, got {x.shape[1]}")
        f = self.margins(x)
        if self.n_classes == 2:
            return (f[:, 0] > 0.0).astype(np.int64)  # tie at p=0.5 goes to class 0
        return np.argmax(f, axis=1).astype(np.int64)


def fit_gbt(train: TabularDataset, n_trees: int, max_depth: int = 3, eta: float = 0.1,
            lam: float = 1.0, gamma: float = 0.0, seed: int = 0) -> GbtModel:
    """Boost ``n_trees`` rounds of depth-limited trees on ``train``.

    The growth is fully deterministic (exhaustive split search, no row or
    column subsampling); ``seed`` is recorded for provenance only.
    """
    if n_trees < 1:
        raise LearnerError("bad-config", "n_trees must be >= 1")
    if max_depth < 1:
        raise LearnerError("bad-config", "max_depth must be >= 1")
    x, y, n_classes = train.x, train.y, train.n_classes
    n = train.n_samples
    priors = np.bincount(y, minlength=n_classes) / n
    if n_classes == 2:
        p1 = min(max(priors[1], 1e-12), 1.0 - 1e-12)
        base = np.array([np.log(p1 / (1.0 - p1))])
        columns = 1
        targets = (y == 1).astype(np.float64)[:, None]
    else:
        base = np.log(np.clip(priors, 1e-12, None))
        columns = n_classes
        targets = np.zeros((n, n_classes))
        targets[np.arange(n), y] = 1.0

    margins = np.tile(base, (n, 1))
    rounds = []
    for _ in range(n_trees):
        if n_classes == 2:
            probs = sigmoid(margins)
        else:
            probs = softmax(margins, axis=1)
        trees = []
        for c in range(columns):
            g = probs[:, c] - targets[:, c]
            h = probs[:, c] * (1.0 - probs[:, c])
            root = grow_gain(x, g, h, lam, gamma, max_depth)
            trees.append(root)
            margins[:, c] += eta * np.array(tree_apply(root, x), dtype=np.float64)
        rounds.append(trees)
    return GbtModel(rounds=rounds, base=base, eta=eta, lam=lam, gamma=gamma,
                    max_depth=max_depth, seed=seed, n_classes=n_classes,
                    n_features=train.d_features)
