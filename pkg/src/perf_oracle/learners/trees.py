"""Binary decision-tree nodes and the two greedy growers used by the
forest (Gini impurity) and the boosted trees (second-order split gain).

Both growers search exhaustively over thresholds placed at the midpoints of
consecutive distinct sorted feature values. Ties on split quality are broken
toward the lowest feature index, then the lowest threshold, so trees are
reproducible regardless of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class TreeNode:
    """Internal node (feature/threshold/children) or leaf (value).

    Leaves carry a class-distribution vector for forest trees and a scalar
    weight for boosted trees. ``gain`` records the split objective reduction
    at internal nodes of boosted trees.
    """

    feature: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    value: object = None
    gain: float = 0.0

    def is_leaf(self) -> bool:
        return self.left is None


def tree_apply(root: TreeNode, x: np.ndarray) -> list:
    """Route each row of ``x`` to its leaf value."""
    n = x.shape[0]
    out = [None] * n
    stack = [(root, np.arange(n))]
    while stack:
        node, idx = stack.pop()
        if idx.size == 0:
            continue
        if node.is_leaf():
            for i in idx:
                out[i] = node.value
            continue
        go_left = x[idx, node.feature] <= node.threshold
        stack.append((node.left, idx[go_left]))
        stack.append((node.right, idx[~go_left]))
    return out


def iter_nodes(root: TreeNode):
    """Preorder traversal."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        if not node.is_leaf():
            stack.append(node.right)
            stack.append(node.left)


def _boundary_thresholds(xs: np.ndarray):
    """Midpoints between consecutive distinct values of sorted ``xs``.

    Returns (boundary positions, thresholds); a boundary at position i puts
    the first i samples on the left. Midpoints that round up to the right
    value are snapped down so `x <= threshold` reproduces the partition.
    """
    cuts = np.nonzero(xs[:-1] < xs[1:])[0] + 1
    if cuts.size == 0:
        return cuts, np.empty(0)
    lo = xs[cuts - 1]
    hi = xs[cuts]
    thr = (lo + hi) / 2.0
    thr = np.where(thr >= hi, lo, thr)
    return cuts, thr


def grow_gini(x, y, n_classes, max_depth, n_candidates, rng) -> TreeNode:
    """CART-style classification tree on (x, y) with Gini splits.

    At every node a fresh random subset of ``n_candidates`` features is
    considered, which is the forests' feature bagging.
    """
    n, d = x.shape

    def leaf(idx):
        counts = np.bincount(y[idx], minlength=n_classes).astype(np.float64)
        return TreeNode(value=counts / counts.sum())

    def build(idx, depth):
        labels = y[idx]
        if depth >= max_depth or idx.size < 2 or np.all(labels == labels[0]):
            return leaf(idx)
        feats = np.sort(rng.choice(d, size=min(n_candidates, d), replace=False))
        best = None  # (impurity, feature, threshold, left_mask)
        total = idx.size
        onehot = np.zeros((total, n_classes))
        for f in feats:
            xv = x[idx, f]
            order = np.argsort(xv, kind="stable")
            xs = xv[order]
            cuts, thrs = _boundary_thresholds(xs)
            if cuts.size == 0:
                continue
            onehot[:] = 0.0
            onehot[np.arange(total), labels[order]] = 1.0
            csum = np.cumsum(onehot, axis=0)
            left = csum[cuts - 1]
            right = csum[-1] - left
            n_left = cuts.astype(np.float64)
            n_right = total - n_left
            gini_left = 1.0 - np.sum((left / n_left[:, None]) ** 2, axis=1)
            gini_right = 1.0 - np.sum((right / n_right[:, None]) ** 2, axis=1)
            weighted = (n_left * gini_left + n_right * gini_right) / total
            k = int(np.argmin(weighted))
            if best is None or weighted[k] < best[0]:
                best = (weighted[k], int(f), float(thrs[k]))
        if best is None:
            return leaf(idx)
        _, feature, threshold = best
        go_left = x[idx, feature] <= threshold
        node = TreeNode(feature=feature, threshold=threshold)
        node.left = build(idx[go_left], depth + 1)
        node.right = build(idx[~go_left], depth + 1)
        return node

    return build(np.arange(n), 0)


def grow_gain(x, g, h, lam, gamma, max_depth) -> TreeNode:
    """Regression tree maximizing the second-order split gain.

    Leaf weights are -G/(H+lambda); a node is split only when the best gain
    is strictly positive, so an arbitrarily large per-leaf penalty collapses
    the tree to a single leaf.
    """
    n, d = x.shape

    def leaf_weight(gs, hs):
        den = hs + lam
        if den <= 0.0:
            return 0.0
        return float(-gs / den)

    def score(gs, hs):
        den = hs + lam
        if den <= 0.0:
            return 0.0
        return gs * gs / den

    def build(idx, depth):
        gs = float(g[idx].sum())
        hs = float(h[idx].sum())
        if depth >= max_depth or idx.size < 2:
            return TreeNode(value=leaf_weight(gs, hs))
        parent = score(gs, hs)
        best = None  # (gain, feature, threshold)
        for f in range(d):
            xv = x[idx, f]
            order = np.argsort(xv, kind="stable")
            xs = xv[order]
            cuts, thrs = _boundary_thresholds(xs)
            if cuts.size == 0:
                continue
            gcum = np.cumsum(g[idx][order])
            hcum = np.cumsum(h[idx][order])
            gl = gcum[cuts - 1]
            hl = hcum[cuts - 1]
            gr = gs - gl
            hr = hs - hl
            with np.errstate(divide="ignore", invalid="ignore"):
                left_term = np.where(hl + lam > 0, gl * gl / (hl + lam), 0.0)
                right_term = np.where(hr + lam > 0, gr * gr / (hr + lam), 0.0)
            gains = 0.5 * (left_term + right_term - parent) - gamma
            k = int(np.argmax(gains))
            if best is None or gains[k] > best[0]:
                best = (float(gains[k]), int(f), float(thrs[k]))
        if best is None or best[0] <= 0.0:
            return TreeNode(value=leaf_weight(gs, hs))
        gain, feature, threshold = best
        go_left = x[idx, feature] <= threshold
        node = TreeNode(feature=feature, threshold=threshold, gain=gain)
        node.left = build(idx[go_left], depth + 1)
        node.right = build(idx[~go_left], depth + 1)
        return node

    return build(np.arange(n), 0)
