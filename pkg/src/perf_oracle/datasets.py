"""Tabular classification datasets: CSV loading, one-hot encoding, splitting,
and a content-addressed download cache.

CSV files follow RFC 4180 (UTF-8, first row is the header). Any column that
contains at least one non-numeric token is treated as categorical and expanded
into one indicator column per distinct level, named ``column=level``. Labels
are mapped to 0..C-1 in order of first appearance. Missing or non-finite
values are rejected at load time.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import requests

from .errors import DataError, FetchError
from .fileio import atomic_write_bytes, atomic_write_text
from .rng import generator


@dataclass(frozen=True)
class SplitSpec:
    """Train/test partition parameters: seeded uniform shuffle, train share."""

    train_ratio: float = 0.33
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_ratio < 1.0:
            raise DataError("bad-ratio", f"train_ratio must be in (0,1), got {self.train_ratio}")


class TabularDataset:
    """Numeric feature matrix plus integer class labels.

    ``x`` is (n_samples, d_features) float64 with no non-finite entries and
    ``y`` holds labels in 0..n_classes-1. Instances are immutable after
    construction and safe to share across threads.
    """

    def __init__(self, id: str, feature_names, x, y, n_classes: int):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
            raise DataError("empty-dataset", f"need a non-empty 2-D feature matrix, got shape {x.shape}")
        if y.shape != (x.shape[0],):
            raise DataError("label-shape", f"labels shape {y.shape} does not match {x.shape[0]} rows")
        if n_classes < 2:
            raise DataError("single-class", "a classification dataset needs at least 2 classes")
        if not np.all(np.isfinite(x)):
            raise DataError("non-finite-cell", "feature matrix contains non-finite values")
        if y.min() < 0 or y.max() >= n_classes:
            raise DataError("label-range", f"labels must lie in [0, {n_classes - 1}]")
        names = list(feature_names)
        if len(names) != x.shape[1]:
            raise DataError("feature-names", f"{len(names)} names for {x.shape[1]} columns")
        if len(set(names)) != len(names):
            raise DataError("feature-names", "duplicate feature names")
        self.id = id
        self.feature_names = names
        self.x = x
        self.y = y
        self.n_classes = int(n_classes)
        x.setflags(write=False)
        y.setflags(write=False)

    @property
    def n_samples(self) -> int:
        return self.x.shape[0]

    @property
    def d_features(self) -> int:
        return self.x.shape[1]

    def with_columns(self, indices, feature_names=None) -> "TabularDataset":
        """A view-copy keeping only the given feature columns (order as given)."""
        indices = list(indices)
        names = feature_names if feature_names is not None else [self.feature_names[i] for i in indices]
        return TabularDataset(self.id, names, self.x[:, indices], self.y, self.n_classes)

    def with_matrix(self, x, feature_names) -> "TabularDataset":
        """A copy with a replacement feature matrix (same rows and labels)."""
        return TabularDataset(self.id, feature_names, x, self.y, self.n_classes)


def _is_numeric(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def load_csv(path, label_column: str, id: str | None = None) -> TabularDataset:
    """Load a CSV file into a :class:`TabularDataset`.

    Categorical columns are one-hot encoded (`col=level`, levels sorted),
    numeric columns pass through, labels map to 0..C-1 by first appearance.
    The result is deterministic for identical input bytes.
    """
    path = Path(path)
    if not path.exists():
        raise DataError("missing-file", f"no such file: {path}")
    with path.open("r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataError("empty-dataset", f"{path} has no header row")
    header, data = rows[0], rows[1:]
    if label_column not in header:
        raise DataError("missing-label-column", f"label column {label_column!r} not in header")
    if not data:
        raise DataError("empty-dataset", f"{path} has no data rows")
    width = len(header)
    for i, row in enumerate(data):
        if len(row) != width:
            raise DataError("ragged-rows", f"row {i + 2} has {len(row)} cells, expected {width}")

    label_idx = header.index(label_column)
    feature_cols = [j for j in range(width) if j != label_idx]

    # label mapping by first appearance
    label_map: dict[str, int] = {}
    y = np.empty(len(data), dtype=np.int64)
    for i, row in enumerate(data):
        token = row[label_idx]
        if token not in label_map:
            label_map[token] = len(label_map)
        y[i] = label_map[token]
    if len(label_map) < 2:
        raise DataError("single-class", f"label column {label_column!r} has a single distinct value")

    names: list[str] = []
    columns: list[np.ndarray] = []
    for j in feature_cols:
        tokens = [row[j] for row in data]
        if all(_is_numeric(t) for t in tokens):
            col = np.array([float(t) for t in tokens], dtype=np.float64)
            if not np.all(np.isfinite(col)):
                raise DataError("non-finite-cell", f"column {header[j]!r} contains a non-finite value")
            names.append(header[j])
            columns.append(col)
        else:
            levels = sorted(set(tokens))
            for level in levels:
                names.append(f"{header[j]}={level}")
                columns.append(np.array([1.0 if t == level else 0.0 for t in tokens]))

    x = np.column_stack(columns)
    return TabularDataset(id or path.stem, names, x, y, len(label_map))


def save_csv(ds: TabularDataset, path, label_column: str = "label") -> Path:
    """Write a dataset back to CSV with full-precision feature values."""
    if label_column in ds.feature_names:
        raise DataError("feature-names", f"label column name {label_column!r} collides with a feature")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(ds.feature_names) + [label_column])
    for i in range(ds.n_samples):
        writer.writerow([repr(v) for v in ds.x[i]] + [str(int(ds.y[i]))])
    return atomic_write_text(path, buf.getvalue())


def train_test_split(ds: TabularDataset, spec: SplitSpec):
    """Disjoint (train, test) row partition via a seeded uniform shuffle.

    The train side gets round-half-up(train_ratio * n) rows; both sides
    inherit ``n_classes`` from the parent.
    """
    n = ds.n_samples
    n_train = int(np.floor(spec.train_ratio * n + 0.5))
    if n_train < 1 or n - n_train < 1:
        raise DataError("degenerate-split", f"ratio {spec.train_ratio} leaves an empty side for n={n}")
    perm = generator(spec.seed).permutation(n)
    train_idx = np.sort(perm[:n_train])
    test_idx = np.sort(perm[n_train:])
    train = TabularDataset(f"{ds.id}/train", ds.feature_names, ds.x[train_idx], ds.y[train_idx], ds.n_classes)
    test = TabularDataset(f"{ds.id}/test", ds.feature_names, ds.x[test_idx], ds.y[test_idx], ds.n_classes)
    return train, test


def fetch_dataset(url: str, cache_dir) -> Path:
    """Download ``url`` once into ``cache_dir`` and return the local path.

    The cache is keyed by sha256(url); a sidecar file records the content
    digest so a re-download can be verified. With a warm cache this works
    offline.
    """
    if not url.startswith(("http://", "https://")):
        raise FetchError("bad-url", f"only http(s) urls are supported: {url}")
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    key = hashlib.sha256(url.encode()).hexdigest()
    target = cache_dir / f"{key}.csv"
    digest_file = cache_dir / f"{key}.csv.sha256"
    if target.exists():
        return target
    try:
        resp = requests.get(url, timeout=60)
        resp.raise_for_status()
    except requests.RequestException as exc:
        raise FetchError("fetch-failed", f"could not fetch {url}: {exc}") from exc
    digest = hashlib.sha256(resp.content).hexdigest()
    if digest_file.exists():
        recorded = digest_file.read_text().strip()
        if recorded != digest:
            raise FetchError("checksum-mismatch", f"content of {url} changed (recorded {recorded[:12]}..., got {digest[:12]}...)")
    atomic_write_bytes(target, resp.content)
    atomic_write_text(digest_file, digest + "\n")
    return target


def make_synthetic(n_samples=500, n_features=20, n_informative=5, n_classes=3, seed=0, id="synthetic") -> TabularDataset:
    """A seeded synthetic classification task.

    Classes live in well-separated Gaussian blobs in the informative
    subspace; the remaining features are pure noise.
    """
    rng = generator(seed, "synthetic", n_samples, n_features, n_informative, n_classes)
    centers = rng.normal(0.0, 2.0, size=(n_classes, n_informative))
    y = rng.integers(0, n_classes, size=n_samples)
    x = rng.normal(0.0, 1.0, size=(n_samples, n_features))
    x[:, :n_informative] += centers[y]
    names = [f"f{str(j).zfill(2)}" for j in range(n_features)]
    # guarantee every class appears so n_classes == max label + 1
    y[:n_classes] = np.arange(n_classes)
    return TabularDataset(id, names, x, y, n_classes)
