"""Exact reference solution of the simplex QP by active-set enumeration.

For strictly convex ``1/2 mu^T H mu`` over the simplex the KKT conditions
pick out a unique support S with ``H_SS mu_S = lambda 1``, ``1^T mu_S = 1``,
``mu_S > 0`` and ``(H mu)_i >= lambda`` off S.  Every nonempty S is tried.
"""

import itertools
from dataclasses import dataclass

import numpy as np

MAX_N = 12
KKT_SLACK = 1e-10


class OracleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OracleSolution:
    mu_star: np.ndarray
    f_star: float
    active_support: tuple
    lam: float


def solve_exact(p):
    H = np.asarray(p.H, dtype=float)
    n = H.shape[0]
    if n > MAX_N:
        raise OracleError(f"enumeration is limited to n <= {MAX_N}, got n={n}")
    best = None
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            S = list(S)
            kkt = np.zeros((size + 1, size + 1))
            kkt[:size, :size] = H[np.ix_(S, S)]
            kkt[:size, size] = -1.0
            kkt[size, :size] = 1.0
            rhs = np.zeros(size + 1)
            rhs[size] = 1.0
            try:
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                continue
            mu_S, lam = sol[:size], sol[size]
            if not np.all(mu_S > 0):
                continue
            mu = np.zeros(n)
            mu[S] = mu_S
            g = H @ mu
            off = np.setdiff1d(np.arange(n), S)
            if off.size and np.any(g[off] < lam - KKT_SLACK):
                continue
            f = 0.5 * float(mu @ g)
            # distinct supports only tie on degenerate instances; keep the lower f
            if best is None or f < best.f_star:
                best = OracleSolution(mu_star=mu, f_star=f, active_support=tuple(S), lam=float(lam))
    if best is None:
        raise OracleError("no active set satisfies the KKT conditions; is H positive definite?")
    return best
