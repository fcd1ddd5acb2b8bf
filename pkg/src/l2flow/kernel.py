"""Mercer kernels and the kernel matrices built from them."""

from dataclasses import dataclass

import numpy as np

from . import _accel

FAMILIES = {"linear": _accel.LINEAR, "polynomial": _accel.POLYNOMIAL, "gaussian": _accel.GAUSSIAN}
ALIASES = {"poly": "polynomial", "rbf": "gaussian"}


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus parameters.

    linear: <x, x'>; polynomial: (<x, x'> + offset) ** degree;
    gaussian: exp(-gamma * |x - x'|^2), i.e. gamma = 1 / (2 sigma^2).
    Parameters that do not belong to the family are ignored.
    """

    family: str = "polynomial"
    degree: int = 3
    offset: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        family = ALIASES.get(self.family, self.family)
        if family not in FAMILIES:
            raise ValueError(f"unknown kernel family {self.family!r}; choose from {sorted(FAMILIES)}")
        object.__setattr__(self, "family", family)
        if family == "polynomial":
            if int(self.degree) != self.degree or self.degree < 1:
                raise ValueError(f"polynomial degree must be an integer >= 1, got {self.degree!r}")
            object.__setattr__(self, "degree", int(self.degree))
            if not np.isfinite(self.offset):
                raise ValueError("polynomial offset must be finite")
        if family == "gaussian" and not (np.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gaussian gamma must be positive, got {self.gamma!r}")

    @property
    def code(self):
        return FAMILIES[self.family]

    def _args(self):
        return self.code, int(self.degree), float(self.offset), float(self.gamma)

    def to_dict(self):
        if self.family == "linear":
            return {"family": "linear"}
        if self.family == "polynomial":
            return {"family": "polynomial", "degree": self.degree, "offset": self.offset}
        return {"family": "gaussian", "gamma": self.gamma}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def _points(data):
    X = data.points if hasattr(data, "points") else data
    X = np.ascontiguousarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    return X


def _vector(x, m):
    x = np.ascontiguousarray(x, dtype=float).reshape(-1)
    if x.shape[0] != m:
        raise ValueError(f"dimension mismatch: expected {m} features, got {x.shape[0]}")
    return x


def eval_kernel(spec, x, x_prime):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    x_prime = _vector(x_prime, x.shape[0])
    return float(_accel.cross_kernel(*spec._args(), x[None, :], x_prime[None, :])[0, 0])


def gram_matrix(spec, data):
    """n x n kernel matrix of a Dataset (or an n x m array); exactly symmetric."""
    return _accel.gram(*spec._args(), _points(data))


def cross_kernel_matrix(spec, A, B):
    """Kernel values between rows of ``A`` (q x m) and rows of ``B`` (n x m)."""
    A, B = _points(A), _points(B)
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]} features")
    return _accel.cross_kernel(*spec._args(), A, B)


def kernel_vector(spec, data, x):
    X = _points(data)
    x = _vector(x, X.shape[1])
    return _accel.cross_kernel(*spec._args(), x[None, :], X)[0]
