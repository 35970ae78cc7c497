"""Versioned JSON serialization for trained models.

Layer weights are stored as shapes plus flat arrays; trees are stored as a
preorder node list. Documents carry a format version so old files stay
readable when the layout evolves.
"""

from __future__ import annotations

import json

import numpy as np

from ..errors import LearnerError
from ..fileio import atomic_write_text
from .forest import ForestModel
from .gbt import GbtModel
from .linear import LinearModel
from .mlp import MlpModel
from .trees import TreeNode

FORMAT_NAME = "perf-oracle-model"
FORMAT_VERSION = 1


def _tree_to_list(root: TreeNode) -> list:
    nodes = []

    def visit(node):
        if node.is_leaf():
            value = node.value
            if isinstance(value, np.ndarray):
                value = value.tolist()
            nodes.append({"leaf": value})
        else:
            nodes.append({"feature": node.feature, "threshold": node.threshold, "gain": node.gain})
            visit(node.left)
            visit(node.right)

    visit(root)
    return nodes


def _tree_from_list(nodes: list) -> TreeNode:
    it = iter(nodes)

    def build():
        raw = next(it)
        if "leaf" in raw:
            value = raw["leaf"]
            if isinstance(value, list):
                value = np.asarray(value, dtype=np.float64)
            return TreeNode(value=value)
        node = TreeNode(feature=raw["feature"], threshold=raw["threshold"], gain=raw.get("gain", 0.0))
        node.left = build()
        node.right = build()
        return node

    root = build()
    try:
        next(it)
    except StopIteration:
        return root
    raise LearnerError("bad-model-doc", "trailing nodes in tree document")


def model_to_dict(model) -> dict:
    doc = {"format": FORMAT_NAME, "version": FORMAT_VERSION}
    if isinstance(model, LinearModel):
        doc.update(kind="linear", w=model.w.tolist(), beta=model.beta, n_classes=model.n_classes)
    elif isinstance(model, MlpModel):
        doc.update(
            kind="mlp",
            shapes=[list(w.shape) for w in model.weights],
            weights=[w.ravel().tolist() for w in model.weights],
            biases=[b.tolist() for b in model.biases],
            n_layers=model.n_layers, n_units=model.n_units,
            n_classes=model.n_classes, n_features=model.n_features,
        )
    elif isinstance(model, ForestModel):
        doc.update(
            kind="forest", trees=[_tree_to_list(t) for t in model.trees],
            n_trees=model.n_trees, max_depth=model.max_depth,
            feature_subsample=model.feature_subsample, seed=model.seed,
            n_classes=model.n_classes, n_features=model.n_features,
        )
    elif isinstance(model, GbtModel):
        doc.update(
            kind="gbt",
            rounds=[[_tree_to_list(t) for t in trees] for trees in model.rounds],
            base=model.base.tolist(), eta=model.eta, lam=model.lam, gamma=model.gamma,
            max_depth=model.max_depth, seed=model.seed,
            n_classes=model.n_classes, n_features=model.n_features,
        )
    else:
        raise LearnerError("bad-model-doc", f"cannot serialize {type(model).__name__}")
    return doc


def model_from_dict(doc: dict):
    if doc.get("format") != FORMAT_NAME:
        raise LearnerError("bad-model-doc", "not a model document")
    if doc.get("version") != FORMAT_VERSION:
        raise LearnerError("bad-model-doc", f"unsupported version {doc.get('version')}")
    kind = doc.get("kind")
    if kind == "linear":
        return LinearModel(w=np.asarray(doc["w"], dtype=np.float64), beta=float(doc["beta"]),
                           n_classes=doc["n_classes"])
    if kind == "mlp":
        weights = [np.asarray(flat, dtype=np.float64).reshape(shape)
                   for flat, shape in zip(doc["weights"], doc["shapes"])]
        biases = [np.asarray(b, dtype=np.float64) for b in doc["biases"]]
        return MlpModel(weights=weights, biases=biases, n_layers=doc["n_layers"],
                        n_units=doc["n_units"], n_classes=doc["n_classes"],
                        n_features=doc["n_features"])
    if kind == "forest":
        return ForestModel(trees=[_tree_from_list(t) for t in doc["trees"]],
                           n_trees=doc["n_trees"], max_depth=doc["max_depth"],
                           feature_subsample=doc["feature_subsample"], seed=doc["seed"],
                           n_classes=doc["n_classes"], n_features=doc["n_features"])
    if kind == "gbt":
        return GbtModel(rounds=[[_tree_from_list(t) for t in trees] for trees in doc["rounds"]],
                        base=np.asarray(doc["base"], dtype=np.float64), eta=doc["eta"],
                        lam=doc["lam"], gamma=doc["gamma"], max_depth=doc["max_depth"],
                        seed=doc["seed"], n_classes=doc["n_classes"], n_features=doc["n_features"])
    raise LearnerError("bad-model-doc", f"unknown model kind {kind!r}")


def save_model(model, path):
    return atomic_write_text(path, json.dumps(model_to_dict(model), sort_keys=True))


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
