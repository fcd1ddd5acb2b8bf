"""The L2-SVM dual over the probability simplex and model extraction.

The dual reads ``min_{mu in simplex} 1/2 mu^T H mu`` with
``H = K * y y^T + y y^T + I / C``.
"""

from dataclasses import dataclass, field

import numpy as np

from .kernel import KernelSpec, gram_matrix

SUM_TOL = 1e-9


class InfeasiblePointError(ValueError):
    pass


def as_simplex_point(mu, n=None, strict=False):
    """Validate ``mu`` as a point of the standard simplex and return it as an array."""
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1:
        raise InfeasiblePointError(f"expected a vector, got shape {mu.shape}")
    if n is not None and mu.shape[0] != n:
        raise ValueError(f"dimension mismatch: expected {n} multipliers, got {mu.shape[0]}")
    if not np.all(np.isfinite(mu)):
        raise InfeasiblePointError("multipliers contain non-finite values")
    if strict and np.any(mu <= 0):
        raise InfeasiblePointError("point is not in the open simplex")
    if np.any(mu < 0):
        raise InfeasiblePointError(f"negative multiplier {mu.min():g}")
    if abs(mu.sum() - 1.0) > SUM_TOL:
        raise InfeasiblePointError(f"multipliers sum to {mu.sum():.17g}, not 1")
    return mu


@dataclass(frozen=True, eq=False)
class DualProblem:
    H: np.ndarray
    C: float
    labels: np.ndarray
    kernel: KernelSpec
    points: np.ndarray = field(repr=False)

    @property
    def n(self):
        return self.H.shape[0]

    @classmethod
    def from_arrays(cls, points, labels, kernel, C):
        if not (np.isfinite(C) and C > 0):
            raise ValueError(f"C must be positive, got {C!r}")
        points = np.array(points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        y = np.array(labels, dtype=float)
        if y.shape != (points.shape[0],):
            raise ValueError("labels and points disagree in length")
        K = gram_matrix(kernel, points)
        yy = np.outer(y, y)
        H = K * yy + yy
        H[np.diag_indices_from(H)] += 1.0 / C
        for a in (H, y, points):
            a.flags.writeable = False
        return cls(H=H, C=float(C), labels=y, kernel=kernel, points=points)

    @classmethod
    def from_matrix(cls, H):
        """Wrap a bare symmetric positive-definite matrix (no data attached)."""
        H = np.array(H, dtype=float)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise ValueError(f"H must be square, got shape {H.shape}")
        if not np.array_equal(H, H.T):
            raise ValueError("H must be symmetric")
        H.flags.writeable = False
        return cls(H=H, C=np.inf, labels=np.ones(H.shape[0]), kernel=None, points=None)


def build(data, kernel, C):
    return DualProblem.from_arrays(data.points, data.labels, kernel, C)


def objective(p, mu):
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (p.n,):
        raise ValueError(f"dimension mismatch: expected {p.n} multipliers, got shape {mu.shape}")
    return 0.5 * float(mu @ (p.H @ mu))


def gradient(p, mu):
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (p.n,):
        raise ValueError(f"dimension mismatch: expected {p.n} multipliers, got shape {mu.shape}")
    return p.H @ mu


@dataclass(frozen=True, eq=False)
class TrainedModel:
    """Everything needed to evaluate ``sum_s c_s (k(x, x_s) + 1)``."""

    support_points: np.ndarray
    coefficients: np.ndarray
    theta: float
    kernel: KernelSpec
    support_indices: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def m(self):
        return self.support_points.shape[1]

    @property
    def n_support(self):
        return self.coefficients.shape[0]


class EmptySupportError(ValueError):
    pass


def extract_model(p, mu, tau=1e-5, metadata=None):
    """Build the classifier from a solved multiplier vector.

    With ``tau > 0`` entries at or below ``tau`` are dropped and the rest
    renormalized to sum 1 before coefficients and bias are formed, so the
    stored model is self-consistent.  With ``tau == 0`` every strictly
    positive entry is kept and nothing is rescaled.
    """
    mu = as_simplex_point(mu, p.n)
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    support = np.flatnonzero(mu > tau)
    if support.size == 0:
        raise EmptySupportError(f"no multiplier exceeds tau={tau:g} (max is {mu.max():g})")
    if tau > 0:
        kept = np.zeros_like(mu)
        kept[support] = mu[support]
        mu = kept / kept.sum()
    ymu = p.labels * mu
    theta = -float(ymu.sum())
    return TrainedModel(
        support_points=p.points[support].copy(),
        coefficients=ymu[support].copy(),
        theta=theta,
        kernel=p.kernel,
        support_indices=support,
        metadata=dict(metadata or {}),
    )
