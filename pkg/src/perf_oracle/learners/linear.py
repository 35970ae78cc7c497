"""Binary linear classifier: logistic-loss fit, thresholded output."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..datasets import TabularDataset
from ..errors import LearnerError
from ..rng import generator
from .common import Adam, TrainConfig, sigmoid


@dataclass
class LinearModel:
    w: np.ndarray
    beta: float
    n_classes: int = 2

    @property
    def n_features(self) -> int:
        return self.w.shape[0]

    def margin(self, x: np.ndarray) -> np.ndarray:
        return x @ self.w + self.beta

    def predict_batch(self, x: np.ndarray) -> np.ndarray:
        if x.shape[1] != self.n_features:
            raise LearnerError("arity-mismatch", f"model expects {self.n_features} features, got {x.shape[1]}")
        return (self.margin(x) >= 0.0).astype(np.int64)


def fit_linear(train: TabularDataset, cfg: TrainConfig = TrainConfig()) -> LinearModel:
    """Mini-batch Adam on the logistic loss; output is 1 iff the margin >= 0."""
    if train.n_classes != 2:
        raise LearnerError("binary-only", "the linear classifier only supports 2 classes")
    x, y = train.x, train.y.astype(np.float64)
    n, d = x.shape
    w = np.zeros(d)
    beta = np.zeros(1)
    opt = Adam([w, beta], cfg)
    rng = generator(cfg.seed, "linear")
    for _ in range(cfg.epochs):
        perm = rng.permutation(n)
        for start in range(0, n, cfg.batch_size):
            idx = perm[start:start + cfg.batch_size]
            xb, yb = x[idx], y[idx]
            p = sigmoid(xb @ w + beta[0])
            err = (p - yb) / idx.size
            opt.step([w, beta], [xb.T @ err, np.array([err.sum()])])
    return LinearModel(w=w, beta=float(beta[0]), n_classes=2)
