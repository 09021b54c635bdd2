"""Compare the compiled and pure-python kernel backends on one problem.

Run as `python -m parconcord.backend_bench [--p P] [--n N] ...`.  Reports
per-iteration wall time for both solvers under each available backend and
checks that the backends agree at convergence.
"""

import argparse

from ._backend import available_backends
from .datagen import ar2_precision, sample_mvn
from .model import SolverConfig, center_columns, compute_gram, max_abs_diff
from .solver import cd_fit, pcd_fit


def main(argv=None):
    parser = argparse.ArgumentParser(prog="parconcord.backend_bench")
    parser.add_argument("--p", type=int, default=300)
    parser.add_argument("--n", type=int, default=200)
    parser.add_argument("--lambda", dest="lam", type=float, default=0.3)
    parser.add_argument("--delta-tol", type=float, default=1e-5)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    data = center_columns(sample_mvn(ar2_precision(args.p), args.n, seed=args.seed))
    gram = compute_gram(data)
    config = SolverConfig(
        lam=args.lam, delta_tol=args.delta_tol, workers=args.workers
    )
    estimates = {}
    print(f"p={args.p} n={args.n} lambda={args.lam:g} workers={args.workers}")
    for backend in available_backends():
        for name, fit in (("cd", cd_fit), ("pcd", pcd_fit)):
            report = fit(gram, config, backend=backend)
            per_iter = sum(report.wall_time_per_iteration) / report.iterations
            estimates[(backend, name)] = report.estimate
            print(
                f"{backend:>8} {name:>4}: {per_iter * 1e3:8.2f} ms/iteration, "
                f"{report.iterations} iterations, {report.edge_count} edges"
            )
    backends = available_backends()
    if len(backends) == 2:
        for name in ("cd", "pcd"):
            gap = max_abs_diff(
                estimates[(backends[0], name)], estimates[(backends[1], name)]
            )
            print(f"backend gap ({name}): {gap:.3e}")


if __name__ == "__main__":
    main()
