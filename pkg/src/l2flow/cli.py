"""Command line interface: ``l2flow {gen,train,predict,grid,oracle}``.

Exit codes: 0 success, 1 usage or input error, 2 numerical failure.
"""

import argparse
import json
import logging
import sys
import time

import numpy as np

from . import classifier, dataset, dual, flow, frank_wolfe, io, oracle
from .kernel import KernelSpec

log = logging.getLogger("l2flow")

EXIT_USAGE = 1
EXIT_NUMERIC = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {s}")
    return v


def _positive_float(s):
    v = float(s)
    if not (np.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be positive, got {s}")
    return v


def _nonneg_float(s):
    v = float(s)
    if not (np.isfinite(v) and v >= 0):
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {s}")
    return v


def _add_kernel_args(p):
    p.add_argument("--kernel", choices=["linear", "poly", "rbf"], default="poly")
    p.add_argument("--degree", type=_positive_int, default=3, help="polynomial degree")
    p.add_argument("--offset", type=float, default=1.0, help="polynomial offset")
    p.add_argument("--gamma", type=_positive_float, default=1.0,
                   help="rbf width, k = exp(-gamma |x - x'|^2), gamma = 1/(2 sigma^2)")
    p.add_argument("--C", type=_positive_float, default=10.0, help="regularization (> 0)")


def _kernel_from_args(args):
    return KernelSpec(args.kernel, degree=args.degree, offset=args.offset, gamma=args.gamma)


def build_parser():
    parser = _Parser(prog="l2flow", description="L2-SVM training by simplex gradient flow.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a two-moons dataset CSV")
    p.add_argument("--n-per-class", type=_positive_int, default=50)
    p.add_argument("--noise", type=_nonneg_float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="train a model with the flow or Frank-Wolfe solver")
    p.add_argument("--data", required=True)
    p.add_argument("--solver", choices=["flow", "fw"], default="flow")
    _add_kernel_args(p)
    p.add_argument("--t-end", type=_positive_float, default=50.0)
    p.add_argument("--stop-tol", type=_positive_float, default=1e-8)
    p.add_argument("--tol-step", type=_positive_float, default=flow.FlowConfig.tol_step)
    p.add_argument("--dt", type=_positive_float, default=None,
                   help="fixed RK4 step; selects the fixed-step integrator")
    p.add_argument("--floor", type=_positive_float, default=1e-12)
    p.add_argument("--max-iters", type=_positive_int, default=200)
    p.add_argument("--step-rule", choices=["standard", "line-search"], default="standard")
    p.add_argument("--gap-tol", type=_nonneg_float, default=0.0)
    p.add_argument("--tau", type=_nonneg_float, default=1e-5, help="support threshold")
    p.add_argument("--trace", default=None, help="write the trajectory / iterate trace CSV here")
    p.add_argument("--out", required=True)

    p = sub.add_parser("predict", help="predict labels for a CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("grid", help="export decision values on a 2-D lattice")
    p.add_argument("--model", required=True)
    p.add_argument("--xmin", type=float, default=-1.5)
    p.add_argument("--xmax", type=float, default=2.5)
    p.add_argument("--ymin", type=float, default=-1.5)
    p.add_argument("--ymax", type=float, default=1.5)
    p.add_argument("--resolution", type=int, default=100)
    p.add_argument("--out", required=True)

    p = sub.add_parser("oracle", help="exact solution by active-set enumeration (n <= 12)")
    p.add_argument("--data", required=True)
    _add_kernel_args(p)
    return parser


def cmd_gen(args):
    ds = dataset.generate_two_moons(args.n_per_class, args.noise, args.seed)
    dataset.save_csv(ds, args.out)
    print(f"wrote {ds.n} points to {args.out}")


def train_model(data, args):
    """Train from parsed arguments; returns ``(model, final_mu, trace_writer)``."""
    problem = dual.build(data, _kernel_from_args(args), args.C)
    t0 = time.perf_counter()
    if args.solver == "flow":
        method = "rk4_fixed" if args.dt is not None else "rk45_adaptive"
        config = flow.FlowConfig(
            t_end=args.t_end, method=method, dt=args.dt or 1e-2, tol_step=args.tol_step,
            stop_tol=args.stop_tol, floor=args.floor,
        )
        traj = flow.integrate(problem, config)
        mu = traj.final
        info = {"terminated_by": traj.terminated_by, "t_final": traj.t_final, "steps": traj.n_steps,
                "method": method}
        write_trace = lambda path: io.write_trajectory_csv(traj, path)  # noqa: E731
    else:
        rule = "exact_line_search" if args.step_rule == "line-search" else "standard"
        config = frank_wolfe.FWConfig(max_iters=args.max_iters, gap_tol=args.gap_tol, step_rule=rule)
        trace = frank_wolfe.solve(problem, config)
        mu = trace.final
        info = {"terminated_by": trace.stopped_by, "iterations": trace.n_iters,
                "final_gap": float(trace.gaps[-1]), "step_rule": rule}
        write_trace = lambda path: io.write_fw_trace_csv(trace, path)  # noqa: E731
    elapsed = time.perf_counter() - t0
    meta = {"solver": args.solver, "C": args.C, "tau": args.tau, "n_train": data.n,
            "final_objective": dual.objective(problem, mu), "seconds": elapsed, **info}
    model = dual.extract_model(problem, mu, tau=args.tau, metadata=meta)
    return model, mu, write_trace


def cmd_train(args):
    data = dataset.load_csv(args.data)
    model, _, write_trace = train_model(data, args)
    io.save_model(model, args.out)
    if args.trace:
        write_trace(args.trace)
    meta = model.metadata
    print(f"final objective: {meta['final_objective']:.17g}")
    print(f"support vectors: {model.n_support} of {data.n}")
    print(f"terminated by: {meta['terminated_by']}")


def cmd_predict(args):
    model = io.load_model(args.model)
    X, y = dataset.load_points(args.data, model.m)
    values = classifier.decision_values(model, X)
    labels = classifier.sign_labels(values)
    io.write_predictions_csv(labels, values, args.out)
    if y is not None:
        print(f"accuracy: {np.mean(labels == y):.6f}")


def cmd_grid(args):
    if not (args.xmin < args.xmax and args.ymin < args.ymax):
        raise UsageError("grid box is degenerate: need xmin < xmax and ymin < ymax")
    if args.resolution < 2:
        raise UsageError("--resolution must be at least 2")
    model = io.load_model(args.model)
    grid = classifier.decision_grid(model, (args.xmin, args.xmax, args.ymin, args.ymax), args.resolution)
    io.write_grid_csv(grid, args.out)
    print(f"wrote {grid.values.size} grid values to {args.out}")


def cmd_oracle(args):
    data = dataset.load_csv(args.data)
    sol = oracle.solve_exact(dual.build(data, _kernel_from_args(args), args.C))
    print(json.dumps({
        "f_star": sol.f_star,
        "lambda": sol.lam,
        "support_indices": list(sol.active_support),
        "mu_star": sol.mu_star.tolist(),
    }, indent=1))


COMMANDS = {"gen": cmd_gen, "train": cmd_train, "predict": cmd_predict, "grid": cmd_grid, "oracle": cmd_oracle}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (flow.FlowDivergenceError, dual.InfeasiblePointError, oracle.OracleError) as exc:
        print(f"l2flow {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ValueError, OSError) as exc:
        print(f"l2flow {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
