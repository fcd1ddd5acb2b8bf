"""Evaluating trained models on points and on regular 2-D grids."""

from dataclasses import dataclass

import numpy as np

from . import _accel


@dataclass(frozen=True, eq=False)
class DecisionGrid:
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray  # values[i, j] is the decision value at (xs[j], ys[i])


def decision_values(model, X):
    """Decision values ``sum_s c_s (k(x, x_s) + 1)`` for each row of ``X``."""
    X = np.ascontiguousarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.shape[1] != model.m:
        raise ValueError(f"dimension mismatch: model has {model.m} features, input has {X.shape[1]}")
    spec = model.kernel
    return _accel.decision_values(
        spec.code, int(spec.degree), float(spec.offset), float(spec.gamma),
        X, np.ascontiguousarray(model.support_points), np.ascontiguousarray(model.coefficients),
    )


def decision_value(model, x):
    x = np.asarray(x, dtype=float).reshape(-1)
    return float(decision_values(model, x[None, :])[0])


def sign_labels(values):
    # sign(0) is taken as +1
    return np.where(np.asarray(values) >= 0, 1, -1)


def predict(model, data):
    """Return ``(labels, accuracy)`` for a Dataset."""
    labels = sign_labels(decision_values(model, data.points))
    accuracy = float(np.mean(labels == data.labels))
    return labels, accuracy


def decision_grid(model, box, resolution):
    """Evaluate on a ``resolution`` x ``resolution`` lattice over ``box = (xmin, xmax, ymin, ymax)``."""
    if model.m != 2:
        raise ValueError(f"decision grids need a 2-D model, this one has {model.m} features")
    if int(resolution) != resolution or resolution < 2:
        raise ValueError("resolution must be an integer >= 2")
    xmin, xmax, ymin, ymax = map(float, box)
    if not (xmin < xmax and ymin < ymax):
        raise ValueError(f"degenerate box {box}")
    xs = np.linspace(xmin, xmax, int(resolution))
    ys = np.linspace(ymin, ymax, int(resolution))
    gx, gy = np.meshgrid(xs, ys)
    lattice = np.column_stack([gx.ravel(), gy.ravel()])
    values = decision_values(model, lattice).reshape(len(ys), len(xs))
    return DecisionGrid(xs=xs, ys=ys, values=values)
