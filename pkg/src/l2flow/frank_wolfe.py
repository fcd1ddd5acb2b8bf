"""Frank-Wolfe (conditional gradient) baseline over the probability simplex."""

from dataclasses import dataclass

import numpy as np

from . import _accel
from .dual import as_simplex_point

STEP_RULES = ("standard", "exact_line_search")


@dataclass(frozen=True)
class FWConfig:
    max_iters: int = 200
    gap_tol: float = 0.0
    step_rule: str = "standard"
    # keep every k-th iteration (the last one is always kept)
    record_every: int = 1

    def __post_init__(self):
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError("max_iters must be a positive integer")
        if not self.gap_tol >= 0:
            raise ValueError("gap_tol must be nonnegative")
        if self.step_rule not in STEP_RULES:
            raise ValueError(f"step_rule must be one of {STEP_RULES}, got {self.step_rule!r}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError("record_every must be a positive integer")


@dataclass(frozen=True, eq=False)
class FWTrace:
    iterates: np.ndarray  # row k is mu_t for t = iteration_index[k]
    iteration_index: np.ndarray
    objective_values: np.ndarray
    gaps: np.ndarray  # gradient^T (mu_t - s_t)
    stopped_by: str  # "gap" or "iterations"

    @property
    def final(self):
        return self.iterates[-1]

    @property
    def n_iters(self):
        return int(self.iteration_index[-1])


def lmo_simplex(grad):
    """Index of the simplex vertex minimizing <grad, s> (lowest index on ties, 0-based)."""
    grad = np.asarray(grad, dtype=float)
    if grad.ndim != 1 or grad.size == 0:
        raise ValueError("gradient must be a nonempty vector")
    if not np.all(np.isfinite(grad)):
        raise ValueError("gradient contains non-finite values")
    return int(np.argmin(grad))


def solve(p, config=None, start=None):
    """Run Frank-Wolfe from the uniform point (or ``start``, a test hook).

    The standard rule uses step 2/(t+2) with the complementary weight
    formed as t/(t+2) so early iterates come out exact.
    """
    config = config or FWConfig()
    n = p.n
    mu0 = np.full(n, 1.0 / n) if start is None else as_simplex_point(start, n).copy()
    idx, iterates, fvals, gaps = _accel.frank_wolfe(
        np.ascontiguousarray(p.H),
        np.ascontiguousarray(mu0),
        int(config.max_iters),
        float(config.gap_tol),
        config.step_rule == "exact_line_search",
        int(config.record_every),
    )
    stopped_by = "gap" if gaps[-1] <= config.gap_tol else "iterations"
    return FWTrace(
        iterates=np.asarray(iterates),
        iteration_index=np.asarray(idx),
        objective_values=np.asarray(fvals),
        gaps=np.asarray(gaps),
        stopped_by=stopped_by,
    )
