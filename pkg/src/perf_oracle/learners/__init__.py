"""The four classifier families behind one train/predict/accuracy contract."""

import numpy as np

from ..datasets import TabularDataset
from ..errors import LearnerError
from .common import Adam, TrainConfig, relu, relu_grad, sigmoid, softmax
from .forest import ForestModel, fit_forest
from .gbt import GbtModel, fit_gbt, split_gain
from .linear import LinearModel, fit_linear
from .mlp import MlpModel, fit_mlp, init_mlp, loss_and_grads
from .serialize import load_model, model_from_dict, model_to_dict, save_model
from .trees import TreeNode, grow_gain, grow_gini, iter_nodes, tree_apply


def predict(model, row) -> int:
    """Predicted class label for a single feature row."""
    row = np.asarray(row, dtype=np.float64).reshape(1, -1)
    return int(model.predict_batch(row)[0])


def accuracy(model, ds: TabularDataset) -> float:
    """Fraction of correctly classified rows of ``ds``."""
    if ds.d_features != model.n_features:
        raise LearnerError("arity-mismatch", f"model expects {model.n_features} features, dataset has {ds.d_features}")
    return float(np.mean(model.predict_batch(ds.x) == ds.y))


__all__ = [
    "Adam", "TrainConfig", "relu", "relu_grad", "sigmoid", "softmax",
    "ForestModel", "fit_forest", "GbtModel", "fit_gbt", "split_gain",
    "LinearModel", "fit_linear", "MlpModel", "fit_mlp", "init_mlp", "loss_and_grads",
    "TreeNode", "grow_gain", "grow_gini", "iter_nodes", "tree_apply",
    "load_model", "model_from_dict", "model_to_dict", "save_model",
    "predict", "accuracy",
]
