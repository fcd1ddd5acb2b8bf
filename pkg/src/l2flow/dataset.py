"""Labelled binary datasets: the two-moons generator and CSV I/O."""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class DatasetError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Dataset:
    """``points`` is n x m (one sample per row), ``labels`` holds n values in {-1, +1}."""

    points: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        labels = np.array(self.labels, dtype=float)
        if points.ndim != 2 or points.shape[1] < 1:
            raise DatasetError(f"points must be an n x m array with m >= 1, got shape {points.shape}")
        if labels.shape != (points.shape[0],):
            raise DatasetError(f"expected {points.shape[0]} labels, got shape {labels.shape}")
        if points.shape[0] < 2:
            raise DatasetError("a dataset needs at least two points")
        if not np.all(np.isfinite(points)):
            raise DatasetError("points contain non-finite values")
        bad = np.flatnonzero((labels != 1.0) & (labels != -1.0))
        if bad.size:
            raise DatasetError(f"label {labels[bad[0]]!r} at index {bad[0]} is not -1 or +1")
        if not (np.any(labels == 1.0) and np.any(labels == -1.0)):
            raise DatasetError("both classes must be present")
        points.flags.writeable = False
        labels.flags.writeable = False
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def m(self):
        return self.points.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return np.array_equal(self.points, other.points) and np.array_equal(self.labels, other.labels)

    __hash__ = None


def upper_moon(theta):
    return np.column_stack([np.cos(theta), np.sin(theta)])


def lower_moon(theta):
    return np.column_stack([1.0 - np.cos(theta), 0.5 - np.sin(theta)])


def generate_two_moons(n_per_class=50, noise_std=0.1, seed=0):
    """Two interleaving half circles.

    Class +1 sits on the upper unit half circle around the origin, class -1
    on the lower unit half circle around (1, 0.5).  Angles are evenly spaced
    on [0, pi]; isotropic Gaussian noise with standard deviation
    ``noise_std`` is added to every coordinate.
    """
    if int(n_per_class) != n_per_class or n_per_class < 1:
        raise DatasetError(f"n_per_class must be a positive integer, got {n_per_class!r}")
    if not noise_std >= 0:
        raise DatasetError(f"noise_std must be nonnegative, got {noise_std!r}")
    n_per_class = int(n_per_class)
    theta = np.linspace(0.0, np.pi, n_per_class)
    points = np.vstack([upper_moon(theta), lower_moon(theta)])
    labels = np.concatenate([np.ones(n_per_class), -np.ones(n_per_class)])
    rng = np.random.default_rng(seed)
    if noise_std > 0:
        points = points + rng.normal(scale=noise_std, size=points.shape)
    return Dataset(points, labels)


def _parse_rows(path):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such data file: {path}")
    rows = []
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                values = [float(cell) for cell in row]
            except ValueError as exc:
                raise DatasetError(f"{path}: row {lineno}: cannot parse {row!r}") from exc
            if rows and len(values) != len(rows[0][1]):
                raise DatasetError(
                    f"{path}: row {lineno}: expected {len(rows[0][1])} columns, got {len(values)}"
                )
            rows.append((lineno, values))
    if not rows:
        raise DatasetError(f"{path}: no data rows")
    return rows


def load_csv(path):
    """Read a headerless CSV whose last column is the label (-1 or 1)."""
    rows = _parse_rows(path)
    if len(rows[0][1]) < 2:
        raise DatasetError(f"{path}: need at least one feature column and a label column")
    for lineno, values in rows:
        if values[-1] not in (1.0, -1.0):
            raise DatasetError(f"{path}: row {lineno}: label {values[-1]:g} is not -1 or 1")
    arr = np.array([values for _, values in rows])
    return Dataset(arr[:, :-1], arr[:, -1])


def load_points(path, m):
    """Read rows with ``m`` features and an optional trailing label column.

    Returns ``(points, labels)``; ``labels`` is None for unlabelled files.
    """
    rows = _parse_rows(path)
    width = len(rows[0][1])
    if width == m:
        return np.array([values for _, values in rows]), None
    if width == m + 1:
        ds = load_csv(path)
        return ds.points, ds.labels
    raise DatasetError(f"{path}: rows have {width} columns; model expects {m} features (plus optional label)")


def save_csv(dataset, path):
    with Path(path).open("w", newline="") as fh:
        for x, y in zip(dataset.points, dataset.labels):
            fh.write(",".join(f"{v:.17g}" for v in x) + f",{int(y)}\n")
