"""Model files and CSV exports."""

import json
from pathlib import Path

import numpy as np

from .dual import TrainedModel
from .kernel import KernelSpec

FORMAT_VERSION = 1


class ModelFileError(ValueError):
    pass


def _fmt(v):
    return f"{v:.17g}"


def model_to_dict(model):
    # json writes floats with repr(), which round-trips binary64 exactly
    return {
        "format_version": FORMAT_VERSION,
        "kernel": model.kernel.to_dict(),
        "support_vectors": model.support_points.tolist(),
        "support_indices": [int(i) for i in model.support_indices],
        "coefficients": model.coefficients.tolist(),
        "theta": float(model.theta),
        "training": model.metadata,
    }


def model_from_dict(d):
    version = d.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFileError(f"unsupported model format_version {version!r}")
    try:
        sv = np.array(d["support_vectors"], dtype=float)
        coef = np.array(d["coefficients"], dtype=float)
        idx = np.array(d["support_indices"], dtype=np.int64)
        kernel = KernelSpec.from_dict(d["kernel"])
        theta = float(d["theta"])
    except (KeyError, TypeError) as exc:
        raise ModelFileError(f"malformed model file: {exc}") from exc
    if sv.ndim != 2 or sv.shape[0] != coef.shape[0] or idx.shape != coef.shape:
        raise ModelFileError("support_vectors, coefficients and support_indices disagree in length")
    return TrainedModel(
        support_points=sv,
        coefficients=coef,
        theta=theta,
        kernel=kernel,
        support_indices=idx,
        metadata=d.get("training", {}),
    )


def save_model(model, path):
    Path(path).write_text(json.dumps(model_to_dict(model), indent=1) + "\n")


def load_model(path):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such model file: {path}")
    try:
        d = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path}: not valid JSON ({exc})") from exc
    return model_from_dict(d)


def write_trajectory_csv(traj, path):
    n = traj.states.shape[1]
    with Path(path).open("w") as fh:
        fh.write(",".join(["t", "f"] + [f"mu_{i}" for i in range(1, n + 1)]) + "\n")
        for t, f, mu in zip(traj.times, traj.objective_values, traj.states):
            fh.write(",".join([_fmt(t), _fmt(f)] + [_fmt(v) for v in mu]) + "\n")


def write_fw_trace_csv(trace, path):
    n = trace.iterates.shape[1]
    with Path(path).open("w") as fh:
        fh.write(",".join(["t", "f", "gap"] + [f"mu_{i}" for i in range(1, n + 1)]) + "\n")
        for t, f, gap, mu in zip(trace.iteration_index, trace.objective_values, trace.gaps, trace.iterates):
            row = [str(int(t)), _fmt(f), _fmt(gap)]
            fh.write(",".join(row + [_fmt(v) for v in mu]) + "\n")


def write_grid_csv(grid, path):
    with Path(path).open("w") as fh:
        fh.write("x,y,value\n")
        for i, y in enumerate(grid.ys):
            for j, x in enumerate(grid.xs):
                fh.write(f"{_fmt(x)},{_fmt(y)},{_fmt(grid.values[i, j])}\n")


def write_predictions_csv(labels, values, path):
    with Path(path).open("w") as fh:
        fh.write("label,decision\n")
        for lab, v in zip(labels, values):
            fh.write(f"{int(lab)},{_fmt(v)}\n")
