"""Gradient flow of the L2-SVM dual on the open probability simplex.

The flow is ``mu' = -(D - mu mu^T) H mu`` with ``D = diag(mu)``, which is the
replicator-type system ``mu_i' = mu_i (mu^T H mu - (H mu)_i)``.  It keeps
``1^T mu`` constant, never leaves the open simplex, and decreases
``f(mu) = 1/2 mu^T H mu`` along its trajectories.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .dual import as_simplex_point, objective

METHODS = ("rk45_adaptive", "rk4_fixed")


class FlowDivergenceError(ArithmeticError):
    """The integrated state became non-finite or the step size collapsed."""

    def __init__(self, message, last_time):
        super().__init__(f"{message} (last valid time t={last_time:.17g})")
        self.last_time = last_time


@dataclass(frozen=True)
class FlowConfig:
    t_end: float = 50.0
    method: str = "rk45_adaptive"
    dt: float = 1e-2
    tol_step: float = 1e-10
    stop_tol: float = 1e-8
    floor: float = 1e-12
    record_every: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        for name in ("dt", "tol_step", "stop_tol", "floor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.method == "rk4_fixed" and not self.dt < self.t_end:
            raise ValueError("dt must be smaller than t_end")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError("record_every must be a positive integer")


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # one row per recorded time
    objective_values: np.ndarray
    terminated_by: str  # "equilibrium" or "horizon"
    n_steps: int = 0
    n_rejected: int = 0

    @property
    def final(self):
        return self.states[-1]

    @property
    def t_final(self):
        return float(self.times[-1])


def rhs(p, mu):
    """Right-hand side ``mu * (mu^T H mu - H mu)``."""
    mu = np.ascontiguousarray(mu, dtype=float)
    if mu.shape != (p.n,):
        raise ValueError(f"dimension mismatch: expected {p.n} multipliers, got shape {mu.shape}")
    return _accel.replicator_rhs(p.H, mu)


def step_rk4(p, mu, dt):
    """One classical Runge-Kutta step, no positivity safeguard applied."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    mu = np.ascontiguousarray(mu, dtype=float)
    k1 = _accel.replicator_rhs(p.H, mu)
    out = mu + (dt / 6.0) * _rk4_increment(p.H, mu, k1, dt)
    if not np.all(np.isfinite(out)):
        raise FlowDivergenceError("non-finite RK4 stage", 0.0)
    return out


def safeguard(mu, floor):
    """Clamp entries below ``floor`` up to it, then renormalize to sum 1."""
    mu = np.maximum(mu, floor)
    mu = mu / mu.sum()
    # dividing by a sum slightly above 1 can push clamped entries under the floor
    return np.maximum(mu, floor)


# Dormand-Prince 5(4) tableau
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# fifth- minus fourth-order weights
_E = (
    71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40,
)


def _dopri_step(H, mu, k1, h):
    f = _accel.replicator_rhs
    ks = [k1]
    for i in range(1, 7):
        y = mu.copy()
        for a, k in zip(_A[i], ks):
            if a:
                y += (h * a) * k
        ks.append(f(H, y))
    y_new = y  # stage 7 evaluates at the 5th-order solution (FSAL)
    err = sum((h * e) * k for e, k in zip(_E, ks) if e)
    return y_new, err


def _initial_step(mu, k1, t_end, tol):
    d0 = np.max(np.abs(mu))
    d1 = np.max(np.abs(k1))
    if d1 < 1e-14:
        return min(t_end, 1.0)
    return min(t_end, 0.1 * (tol + d0) / d1)


def integrate(p, config=None, start=None):
    """Integrate the flow from the uniform point (or ``start``, a test hook).

    Stops at the first recorded state with ``max|rhs| < stop_tol`` or when
    ``t`` reaches ``t_end``.  After each accepted step the state is clamped
    to ``floor`` and renormalized.
    """
    config = config or FlowConfig()
    n = p.n
    if config.floor * n >= 1.0:
        raise ValueError(f"floor={config.floor:g} is too large for n={n}")
    if start is None:
        mu = np.full(n, 1.0 / n)
    else:
        mu = safeguard(as_simplex_point(start, n), config.floor)
    H = p.H

    times, states, fvals = [0.0], [mu], [objective(p, mu)]
    t = 0.0
    k1 = _accel.replicator_rhs(H, mu)
    n_steps = n_rejected = 0
    if not np.all(np.isfinite(k1)):
        raise FlowDivergenceError("non-finite right-hand side at the start point", t)
    if np.max(np.abs(k1)) < config.stop_tol:
        return Trajectory(np.array(times), np.array(states), np.array(fvals), "equilibrium")

    adaptive = config.method == "rk45_adaptive"
    tol = config.tol_step
    h = _initial_step(mu, k1, config.t_end, tol) if adaptive else config.dt
    terminated_by = "horizon"
    while t < config.t_end:
        h_try = min(h, config.t_end - t)
        if adaptive:
            y_new, err = _dopri_step(H, mu, k1, h_try)
            scale = tol + tol * np.maximum(np.abs(mu), np.abs(y_new))
            err_norm = np.max(np.abs(err) / scale)
            if not math.isfinite(err_norm) or not np.all(np.isfinite(y_new)):
                err_norm = math.inf
            if err_norm > 1.0:
                n_rejected += 1
                factor = 0.2 if not math.isfinite(err_norm) else max(0.2, 0.9 * err_norm ** -0.2)
                h = h_try * factor
                if h < 1e-14 * max(1.0, t):
                    raise FlowDivergenceError("step size underflow", t)
                continue
            factor = 5.0 if err_norm == 0 else min(5.0, 0.9 * err_norm ** -0.2)
            h = h_try * factor
        else:
            y_new = mu + (h_try / 6.0) * _rk4_increment(H, mu, k1, h_try)
            if not np.all(np.isfinite(y_new)):
                raise FlowDivergenceError("non-finite state", t)

        t = t + h_try if t + h_try < config.t_end else config.t_end
        mu = safeguard(y_new, config.floor)
        k1 = _accel.replicator_rhs(H, mu)
        if not np.all(np.isfinite(k1)):
            raise FlowDivergenceError("non-finite right-hand side", t)
        n_steps += 1
        at_rest = np.max(np.abs(k1)) < config.stop_tol
        if at_rest or t >= config.t_end or n_steps % config.record_every == 0:
            times.append(t)
            states.append(mu)
            fvals.append(objective(p, mu))
        if at_rest:
            terminated_by = "equilibrium"
            break

    return Trajectory(
        times=np.array(times),
        states=np.array(states),
        objective_values=np.array(fvals),
        terminated_by=terminated_by,
        n_steps=n_steps,
        n_rejected=n_rejected,
    )


def _rk4_increment(H, mu, k1, dt):
    f = _accel.replicator_rhs
    k2 = f(H, mu + 0.5 * dt * k1)
    k3 = f(H, mu + 0.5 * dt * k2)
    k4 = f(H, mu + dt * k3)
    return k1 + 2.0 * k2 + 2.0 * k3 + k4
