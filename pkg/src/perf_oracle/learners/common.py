"""Activation functions and the shared training configuration."""

from dataclasses import dataclass

import numpy as np

from ..errors import LearnerError


def relu(x):
    """Non-negative part of the argument, elementwise."""
    return np.maximum(0.0, x)


def relu_grad(x):
    """Subgradient of relu used in backprop; 0 at x == 0."""
    return (np.asarray(x) > 0.0).astype(np.float64)


def sigmoid(x):
    """Logistic function 1/(1+e^-x) with overflow-safe branches."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    if out.ndim == 0:
        return float(out)
    return out


def softmax(z, axis=-1):
    """Probability-normalized exponentials, computed with max subtraction."""
    z = np.asarray(z, dtype=np.float64)
    shifted = z - np.max(z, axis=axis, keepdims=True)
    ez = np.exp(shifted)
    return ez / np.sum(ez, axis=axis, keepdims=True)


@dataclass(frozen=True)
class TrainConfig:
    """Gradient-training knobs shared by the linear model and the MLP."""

    seed: int = 0
    epochs: int = 150
    learning_rate: float = 1e-3
    batch_size: int = 32
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self):
        if self.epochs < 1:
            raise LearnerError("bad-config", "epochs must be >= 1")
        if self.learning_rate <= 0:
            raise LearnerError("bad-config", "learning_rate must be > 0")
        if self.batch_size < 1:
            raise LearnerError("bad-config", "batch_size must be >= 1")


class Adam:
    """Adam state over a flat list of parameter arrays."""

    def __init__(self, params, cfg: TrainConfig):
        self.cfg = cfg
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, params, grads):
        cfg = self.cfg
        self.t += 1
        corr1 = 1.0 - cfg.beta1**self.t
        corr2 = 1.0 - cfg.beta2**self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= cfg.beta1
            m += (1.0 - cfg.beta1) * g
            v *= cfg.beta2
            v += (1.0 - cfg.beta2) * np.square(g)
            p -= cfg.learning_rate * (m / corr1) / (np.sqrt(v / corr2) + cfg.epsilon)
