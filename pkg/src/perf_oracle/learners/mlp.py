"""Multilayer perceptron trained from scratch with backprop and Adam.

Hidden layers use relu; the output layer is a single sigmoid unit for binary
problems and a softmax row otherwise. Weights start he_normal
(normal(0, sqrt(2/fan_in))), biases at zero. The loss is the matching
cross-entropy, computed in a numerically exact form (softplus / logsumexp)
so analytic gradients agree with finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..datasets import TabularDataset
from ..errors import LearnerError
from ..rng import generator
from .common import Adam, TrainConfig, relu, relu_grad, sigmoid, softmax


@dataclass
class MlpModel:
    weights: list = field(default_factory=list)
    biases: list = field(default_factory=list)
    n_layers: int = 1
    n_units: int = 1
    n_classes: int = 2
    n_features: int = 1

    @property
    def arch(self):
        return (self.n_layers, self.n_units)

    def forward(self, x: np.ndarray):
        """Returns (hidden pre-activations, hidden activations, output scores)."""
        pres, acts = [], [x]
        h = x
        for w, b in zip(self.weights[:-1], self.biases[:-1]):
            z = h @ w + b
            pres.append(z)
            h = relu(z)
            acts.append(h)
        scores = h @ self.weights[-1] + self.biases[-1]
        return pres, acts, scores

    def scores(self, x: np.ndarray) -> np.ndarray:
        return self.forward(x)[2]

    def predict_batch(self, x: np.ndarray) -> np.ndarray:
        if x.shape[1] != self.n_features:
            raise LearnerError("arity-mismatch", f"model expects {self.n_features} features, got {x.shape[1]}")
        z = self.scores(x)
        if self.n_classes == 2:
            return (z[:, 0] > 0.0).astype(np.int64)
        return np.argmax(z, axis=1).astype(np.int64)

    def params(self):
        return self.weights + self.biases


def init_mlp(n_features: int, arch, n_classes: int, seed: int) -> MlpModel:
    layers, units = arch
    if layers < 1 or units < 1:
        raise LearnerError("bad-config", "need at least 1 layer and 1 unit")
    out_width = 1 if n_classes == 2 else n_classes
    dims = [n_features] + [units] * layers + [out_width]
    rng = generator(seed, "mlp-init")
    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        weights.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return MlpModel(weights=weights, biases=biases, n_layers=layers, n_units=units,
                    n_classes=n_classes, n_features=n_features)


def loss_and_grads(model: MlpModel, x: np.ndarray, y: np.ndarray):
    """Mean cross-entropy and gradients for every weight and bias.

    Binary head: mean(softplus(z) - y*z); softmax head:
    mean(logsumexp(z) - z_y). Gradient order matches ``model.params()``.
    """
    n = x.shape[0]
    pres, acts, z = model.forward(x)
    if model.n_classes == 2:
        zc = z[:, 0]
        loss = float(np.mean(np.logaddexp(0.0, zc) - y * zc))
        delta = (sigmoid(zc) - y)[:, None] / n
    else:
        shifted = z - z.max(axis=1, keepdims=True)
        logsumexp = np.log(np.exp(shifted).sum(axis=1)) + z.max(axis=1)
        loss = float(np.mean(logsumexp - z[np.arange(n), y]))
        delta = softmax(z, axis=1)
        delta[np.arange(n), y] -= 1.0
        delta /= n
    grads_w = [None] * len(model.weights)
    grads_b = [None] * len(model.biases)
    for layer in range(len(model.weights) - 1, -1, -1):
        grads_w[layer] = acts[layer].T @ delta
        grads_b[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ model.weights[layer].T) * relu_grad(pres[layer - 1])
    return loss, grads_w + grads_b


def fit_mlp(train: TabularDataset, arch, cfg: TrainConfig = TrainConfig()) -> MlpModel:
    """Train an MLP with ``arch = (layers, units)`` for cfg.epochs epochs."""
    model = init_mlp(train.d_features, arch, train.n_classes, cfg.seed)
    x = train.x
    y = train.y if train.n_classes > 2 else train.y.astype(np.float64)
    n = train.n_samples
    params = model.params()
    opt = Adam(params, cfg)
    rng = generator(cfg.seed, "mlp-shuffle")
    for _ in range(cfg.epochs):
        perm = rng.permutation(n)
        for start in range(0, n, cfg.batch_size):
            idx = perm[start:start + cfg.batch_size]
            _, grads = loss_and_grads(model, x[idx], y[idx])
            opt.step(params, grads)
    return model
