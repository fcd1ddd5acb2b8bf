"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_backends.py [--n 400] [--repeat 5]

Each kernel is called once before timing so numba compilation is excluded.
The last section runs a full flow integration in two subprocesses, one per
value of L2FLOW_BACKEND.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from l2flow import _accel
from l2flow.dataset import generate_two_moons

FLOW_SNIPPET = """
import time
from l2flow import BACKEND, FlowConfig, KernelSpec, build, generate_two_moons, integrate
p = build(generate_two_moons({half}, 0.1, 7), KernelSpec("polynomial", degree=3), 10.0)
integrate(p, FlowConfig(t_end=1.0))  # warm-up
t0 = time.perf_counter()
traj = integrate(p, FlowConfig(t_end=50.0))
print(BACKEND, time.perf_counter() - t0, traj.n_steps)
"""


def best_of(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=400, help="training points (even)")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        sys.exit("numba is not importable; nothing to compare")

    data = generate_two_moons(args.n // 2, 0.1, 7)
    X, y = data.points, data.labels
    Q = np.random.default_rng(0).uniform(-1.5, 2.5, size=(10_000, 2))
    poly = (_accel.POLYNOMIAL, 3, 1.0, 1.0)
    rbf = (_accel.GAUSSIAN, 1, 0.0, 1.0)
    H = _accel.np_gram(*poly, X) * np.outer(y, y) + np.outer(y, y) + np.eye(len(y)) / 10.0
    mu = np.full(len(y), 1.0 / len(y))
    coef = y * mu

    cases = [
        ("gram poly-3", lambda k: k["gram"](*poly, X)),
        ("gram gaussian", lambda k: k["gram"](*rbf, X)),
        ("decision values 10k", lambda k: k["decision_values"](*poly, Q, X, coef)),
        ("replicator rhs", lambda k: k["replicator_rhs"](H, mu)),
        ("frank-wolfe 2000 it", lambda k: k["frank_wolfe"](H, mu, 2000, 0.0, False, 2000)),
    ]
    print(f"n = {len(y)}, best of {args.repeat}")
    print(f"{'kernel':<22}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, call in cases:
        t_np = best_of(lambda: call(_accel.NUMPY_KERNELS), args.repeat)
        t_nb = best_of(lambda: call(_accel.NUMBA_KERNELS), args.repeat)
        print(f"{name:<22}{1e3 * t_np:>12.3f}{1e3 * t_nb:>12.3f}{t_np / t_nb:>10.1f}")

    print("\nflow integration, t_end = 50")
    for backend in ("numpy", "numba"):
        env = dict(os.environ, L2FLOW_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", FLOW_SNIPPET.format(half=args.n // 2)],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:<8}{float(out[1]):8.3f} s  ({out[2]} steps)")


if __name__ == "__main__":
    main()
