"""Two-axis hyperparameter sweeps, heatmap artifacts, and pattern verdicts.

A sweep trains one model per grid cell on a shared seeded train/test split and
records the test accuracy. For forests and boosted trees axis1 is the max tree
depth and axis2 the tree count; for MLPs axis1 is the layer count and axis2
the units per layer. Cells are independent: each derives its own seed from
the split seed and its coordinates, so any execution order (or thread count)
produces identical grids.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .datasets import SplitSpec, TabularDataset, train_test_split
from .errors import SweepError
from .fileio import atomic_write_text
from .learners import TrainConfig, accuracy, fit_forest, fit_gbt, fit_mlp
from .rng import derive_seed
from .svgmap import render_heatmap

LEARNERS = ("forest", "gbt", "mlp")

# a cell that blows a resource limit is recorded as failed, not fatal
CELL_FAILURES = (MemoryError, RecursionError, OverflowError, FloatingPointError)


@dataclass(frozen=True)
class GridSpec:
    """Axes and training knobs of one sweep."""

    learner: str
    axis1: tuple  # max_depth (trees) or layer count (mlp)
    axis2: tuple  # tree count or units per layer
    train_ratio: float = 0.33
    seed: int = 0
    train: TrainConfig | None = None  # mlp cells only

    def __post_init__(self):
        if self.learner not in LEARNERS:
            raise SweepError("unknown-learner", f"learner must be one of {LEARNERS}, got {self.learner!r}")
        for name, axis in (("axis1", self.axis1), ("axis2", self.axis2)):
            if len(axis) == 0:
                raise SweepError("empty-axis", f"{name} must be non-empty")
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise SweepError("bad-axis", f"{name} must be strictly increasing")
        object.__setattr__(self, "axis1", tuple(int(v) for v in self.axis1))
        object.__setattr__(self, "axis2", tuple(int(v) for v in self.axis2))


@dataclass
class HeatmapGrid:
    """Test accuracies over the grid; values[i][j] pairs axis2[i] with axis1[j].

    ``None`` marks a failed cell.
    """

    values: list
    axis1: tuple
    axis2: tuple
    axis1_name: str
    axis2_name: str
    dataset_id: str
    learner: str

    @property
    def has_failures(self) -> bool:
        return any(v is None for row in self.values for v in row)


@dataclass
class PatternVerdict:
    """Monotone-ordering verdict for one grid.

    The fractions count adjacent non-decreasing pairs along each axis,
    averaged over lanes; ``expected`` needs both fractions >= tau,
    ``unexpected`` needs both reversed fractions >= tau.
    """

    kind: str  # expected | unexpected | none
    monotone_fraction_axis1: float
    monotone_fraction_axis2: float
    tau: float


def _fit_cell(learner, train_ds, a1, a2, cell_seed, train_cfg):
    if learner == "forest":
        return fit_forest(train_ds, n_trees=a2, max_depth=a1, seed=cell_seed)
    if learner == "gbt":
        return fit_gbt(train_ds, n_trees=a2, max_depth=a1, seed=cell_seed)
    cfg = train_cfg or TrainConfig()
    cfg = TrainConfig(seed=cell_seed, epochs=cfg.epochs, learning_rate=cfg.learning_rate,
                      batch_size=cfg.batch_size, beta1=cfg.beta1, beta2=cfg.beta2, epsilon=cfg.epsilon)
    return fit_mlp(train_ds, (a1, a2), cfg)


def run_sweep(ds: TabularDataset, grid: GridSpec, jobs: int = 1) -> HeatmapGrid:
    """One test accuracy per (axis2, axis1) cell on a shared split."""
    train_ds, test_ds = train_test_split(ds, SplitSpec(grid.train_ratio, grid.seed))

    def cell(i, j):
        cell_seed = derive_seed(grid.seed, "cell", i, j)
        try:
            model = _fit_cell(grid.learner, train_ds, grid.axis1[j], grid.axis2[i], cell_seed, grid.train)
            return accuracy(model, test_ds)
        except CELL_FAILURES:
            return None

    coords = [(i, j) for i in range(len(grid.axis2)) for j in range(len(grid.axis1))]
    values = [[None] * len(grid.axis1) for _ in grid.axis2]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda c: cell(*c), coords))
    else:
        results = [cell(*c) for c in coords]
    for (i, j), v in zip(coords, results):
        values[i][j] = v
    axis1_name = "layers" if grid.learner == "mlp" else "max_depth"
    axis2_name = "units" if grid.learner == "mlp" else "n_trees"
    return HeatmapGrid(values=values, axis1=grid.axis1, axis2=grid.axis2,
                       axis1_name=axis1_name, axis2_name=axis2_name,
                       dataset_id=ds.id, learner=grid.learner)


def _lane_fraction(lanes, reverse: bool):
    """Mean fraction of adjacent ordered pairs per lane; None-lanes skipped."""
    fractions = []
    for lane in lanes:
        if any(v is None for v in lane) or len(lane) < 2:
            continue
        pairs = list(zip(lane[:-1], lane[1:]))
        if reverse:
            good = sum(1 for a, b in pairs if b <= a)
        else:
            good = sum(1 for a, b in pairs if b >= a)
        fractions.append(good / len(pairs))
    if not fractions:
        return None
    return sum(fractions) / len(fractions)


def detect_pattern(grid: HeatmapGrid, tau: float = 0.7) -> PatternVerdict:
    """Classify the grid as expected / unexpected / none ordering."""
    n2, n1 = len(grid.axis2), len(grid.axis1)
    if n1 < 2 and n2 < 2:
        raise SweepError("grid-too-small", "need at least 2 points along one axis")
    rows = grid.values
    cols = [[rows[i][j] for i in range(n2)] for j in range(n1)]
    # an axis of length 1 has no adjacent pairs and is vacuously monotone
    fwd1 = _lane_fraction(rows, reverse=False) if n1 >= 2 else 1.0
    fwd2 = _lane_fraction(cols, reverse=False) if n2 >= 2 else 1.0
    rev1 = _lane_fraction(rows, reverse=True) if n1 >= 2 else 1.0
    rev2 = _lane_fraction(cols, reverse=True) if n2 >= 2 else 1.0
    if fwd1 is None or fwd2 is None:
        raise SweepError("all-lanes-failed", "every lane contains a failed cell")
    if fwd1 >= tau and fwd2 >= tau:
        kind = "expected"
    elif rev1 >= tau and rev2 >= tau:
        kind = "unexpected"
    else:
        kind = "none"
    return PatternVerdict(kind=kind, monotone_fraction_axis1=fwd1,
                          monotone_fraction_axis2=fwd2, tau=tau)


def grid_to_csv(grid: HeatmapGrid) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"{grid.axis2_name}\\{grid.axis1_name}"] + [str(v) for v in grid.axis1])
    for i, a2 in enumerate(grid.axis2):
        writer.writerow([str(a2)] + ["null" if v is None else repr(v) for v in grid.values[i]])
    return buf.getvalue()


def emit_heatmap(grid: HeatmapGrid, out_dir) -> tuple[Path, Path]:
    """Write ``grid.csv`` and ``grid.svg`` under ``out_dir``; byte-deterministic."""
    out_dir = Path(out_dir)
    csv_path = atomic_write_text(out_dir / "grid.csv", grid_to_csv(grid))
    svg = render_heatmap(grid.values, [str(v) for v in grid.axis2], [str(v) for v in grid.axis1],
                         scheme="accuracy",
                         title=f"{grid.dataset_id} {grid.learner} ({grid.axis2_name} x {grid.axis1_name})")
    svg_path = atomic_write_text(out_dir / "grid.svg", svg)
    return csv_path, svg_path
