"""Hot numeric kernels with a numba path and a pure-numpy path.

The backend is chosen once at import time from ``L2FLOW_BACKEND``
(``numba`` or ``numpy``).  When the variable is unset, numba is used if it
imports cleanly.  Both implementations stay importable as
``NUMPY_KERNELS`` / ``NUMBA_KERNELS`` so tests and benchmarks can compare
them directly.
"""

import os

import numpy as np

try:

    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

# kernel family codes shared by both backends
LINEAR, POLYNOMIAL, GAUSSIAN = 0, 1, 2


# ----------------------------------------------------------------------------
# numpy path
# ----------------------------------------------------------------------------

def _np_apply(code, g_or_d2, degree, offset, gamma):
    if code == LINEAR:
        return g_or_d2
    if code == POLYNOMIAL:
        return (g_or_d2 + offset) ** degree
    return np.exp(-gamma * g_or_d2)


def _np_pair_stat(code, A, B):
    # elementwise product then a reduction along the contiguous last axis;
    # a_k*b_k == b_k*a_k so K_ij and K_ji come out bit-identical
    if code == GAUSSIAN:
        diff = A[:, None, :] - B[None, :, :]
        return (diff * diff).sum(axis=-1)
    return (A[:, None, :] * B[None, :, :]).sum(axis=-1)


def np_cross_kernel(code, degree, offset, gamma, A, B):
    """Kernel matrix between rows of ``A`` (q x m) and rows of ``B`` (n x m)."""
    out = np.empty((A.shape[0], B.shape[0]))
    # chunk the query rows to bound the (chunk, n, m) temporary
    step = max(1, 2_000_000 // max(1, B.shape[0] * A.shape[1]))
    for lo in range(0, A.shape[0], step):
        stat = _np_pair_stat(code, A[lo:lo + step], B)
        out[lo:lo + step] = _np_apply(code, stat, degree, offset, gamma)
    return out


def np_gram(code, degree, offset, gamma, X):
    K = np_cross_kernel(code, degree, offset, gamma, X, X)
    # already symmetric bitwise; mirror the upper triangle anyway
    iu = np.triu_indices(K.shape[0], 1)
    K.T[iu] = K[iu]
    return K


def np_replicator_rhs(H, mu):
    g = H @ mu
    q = mu @ g
    return mu * (q - g)


def np_decision_values(code, degree, offset, gamma, Xq, S, coef):
    Kq = np_cross_kernel(code, degree, offset, gamma, Xq, S)
    return ((Kq + 1.0) * coef).sum(axis=1)


def np_frank_wolfe(H, mu0, max_iters, gap_tol, line_search, record_every):
    n = mu0.shape[0]
    mu = mu0.copy()
    g = H @ mu
    n_rec = max_iters // record_every + 2
    rec_idx = np.empty(n_rec, dtype=np.int64)
    rec_mu = np.empty((n_rec, n))
    rec_f = np.empty(n_rec)
    rec_gap = np.empty(n_rec)
    r = 0
    t = 0
    while True:
        j = int(np.argmin(g))
        mg = mu @ g
        gap = mg - g[j]
        stop = gap <= gap_tol or t == max_iters
        if t % record_every == 0 or stop:
            rec_idx[r] = t
            rec_mu[r] = mu
            rec_f[r] = 0.5 * mg
            rec_gap[r] = gap
            r += 1
        if stop:
            break
        if line_search:
            denom = mg - 2.0 * g[j] + H[j, j]
            if denom > 0.0:
                step = min(max(gap / denom, 0.0), 1.0)
            else:
                step = 1.0
            keep = 1.0 - step
        else:
            step = 2.0 / (t + 2.0)
            keep = t / (t + 2.0)
        mu *= keep
        mu[j] += step
        g = keep * g + step * H[:, j]
        t += 1
    return rec_idx[:r], rec_mu[:r], rec_f[:r], rec_gap[:r]


NUMPY_KERNELS = {
    "gram": np_gram,
    "cross_kernel": np_cross_kernel,
    "replicator_rhs": np_replicator_rhs,
    "decision_values": np_decision_values,
    "frank_wolfe": np_frank_wolfe,
}


# ----------------------------------------------------------------------------
# numba path
# ----------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_pair(code, degree, offset, gamma, a, b):
        s = 0.0
        if code == GAUSSIAN:
            for k in range(a.shape[0]):
                d = a[k] - b[k]
                s += d * d
            return np.exp(-gamma * s)
        for k in range(a.shape[0]):
            s += a[k] * b[k]
        if code == POLYNOMIAL:
            base = s + offset
            v = 1.0
            for _ in range(degree):
                v *= base
            return v
        return s

    @njit(cache=True)
    def nb_gram(code, degree, offset, gamma, X):
        n = X.shape[0]
        K = np.empty((n, n))
        for i in range(n):
            for j in range(i, n):
                v = _nb_pair(code, degree, offset, gamma, X[i], X[j])
                K[i, j] = v
                K[j, i] = v
        return K

    @njit(cache=True)
    def nb_cross_kernel(code, degree, offset, gamma, A, B):
        out = np.empty((A.shape[0], B.shape[0]))
        for i in range(A.shape[0]):
            for j in range(B.shape[0]):
                out[i, j] = _nb_pair(code, degree, offset, gamma, A[i], B[j])
        return out

    @njit(cache=True)
    def nb_replicator_rhs(H, mu):
        n = mu.shape[0]
        g = np.zeros(n)
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += H[i, j] * mu[j]
            g[i] = s
        q = 0.0
        for i in range(n):
            q += mu[i] * g[i]
        out = np.empty(n)
        for i in range(n):
            out[i] = mu[i] * (q - g[i])
        return out

    @njit(cache=True)
    def nb_decision_values(code, degree, offset, gamma, Xq, S, coef):
        out = np.empty(Xq.shape[0])
        for i in range(Xq.shape[0]):
            s = 0.0
            for j in range(S.shape[0]):
                s += (_nb_pair(code, degree, offset, gamma, Xq[i], S[j]) + 1.0) * coef[j]
            out[i] = s
        return out

    @njit(cache=True)
    def nb_frank_wolfe(H, mu0, max_iters, gap_tol, line_search, record_every):
        n = mu0.shape[0]
        mu = mu0.copy()
        g = H @ mu
        n_rec = max_iters // record_every + 2
        rec_idx = np.empty(n_rec, dtype=np.int64)
        rec_mu = np.empty((n_rec, n))
        rec_f = np.empty(n_rec)
        rec_gap = np.empty(n_rec)
        r = 0
        t = 0
        while True:
            j = 0
            mg = 0.0
            for i in range(n):
                mg += mu[i] * g[i]
                if g[i] < g[j]:
                    j = i
            gap = mg - g[j]
            stop = gap <= gap_tol or t == max_iters
            if t % record_every == 0 or stop:
                rec_idx[r] = t
                rec_mu[r] = mu
                rec_f[r] = 0.5 * mg
                rec_gap[r] = gap
                r += 1
            if stop:
                break
            if line_search:
                denom = mg - 2.0 * g[j] + H[j, j]
                if denom > 0.0:
                    step = min(max(gap / denom, 0.0), 1.0)
                else:
                    step = 1.0
                keep = 1.0 - step
            else:
                step = 2.0 / (t + 2.0)
                keep = t / (t + 2.0)
            for i in range(n):
                mu[i] *= keep
                g[i] = keep * g[i] + step * H[i, j]
            mu[j] += step
            t += 1
        return rec_idx[:r], rec_mu[:r], rec_f[:r], rec_gap[:r]

    NUMBA_KERNELS = {
        "gram": nb_gram,
        "cross_kernel": nb_cross_kernel,
        "replicator_rhs": nb_replicator_rhs,
        "decision_values": nb_decision_values,
        "frank_wolfe": nb_frank_wolfe,
    }
else:  # pragma: no cover
    NUMBA_KERNELS = None


def _select_backend():
    requested = os.environ.get("L2FLOW_BACKEND", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(f"L2FLOW_BACKEND must be 'numba' or 'numpy', got {requested!r}")
    if requested == "numpy" or not HAVE_NUMBA:
        if requested == "numba":
            raise ImportError("L2FLOW_BACKEND=numba but numba is not importable")
        return "numpy", NUMPY_KERNELS
    return "numba", NUMBA_KERNELS


BACKEND, _KERNELS = _select_backend()

gram = _KERNELS["gram"]
cross_kernel = _KERNELS["cross_kernel"]
replicator_rhs = _KERNELS["replicator_rhs"]
decision_values = _KERNELS["decision_values"]
frank_wolfe = _KERNELS["frank_wolfe"]
