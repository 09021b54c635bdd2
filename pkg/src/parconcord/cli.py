"""Command line interface: generate synthetic problems, fit them, benchmark.

Exit codes: 0 on success, 1 on usage or file-format errors, 2 when a fit
hits its iteration cap (the partial estimate is still written).
The environment variable PARCONCORD_MAX_WORKERS caps any requested worker
count.
"""

import argparse
import os
import sys

from . import bench, fileio
from ._backend import available_backends
from .datagen import NotPositiveDefinite, ar2_precision, sample_mvn, scale_free_precision
from .model import DimensionError, SolverConfig, center_columns, compute_gram
from .solver import NotConverged, cd_fit, pcd_fit


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.exit(f"{self.prog}: error: {message}")


def _cap_workers(requested):
    cap = os.environ.get("PARCONCORD_MAX_WORKERS")
    if cap:
        try:
            return max(1, min(requested, int(cap)))
        except ValueError:
            sys.exit(f"PARCONCORD_MAX_WORKERS must be an integer, got {cap!r}")
    return requested


def _build_parser():
    parser = _Parser(prog="parconcord")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample a synthetic problem from a truth")
    gen.add_argument("--truth", choices=("ar2", "scale_free"), required=True)
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--alpha", type=float, default=2.3,
                     help="degree exponent for scale_free")
    gen.add_argument("--out", required=True, help="problem file path")
    gen.add_argument("--truth-out", default=None,
                     help="truth sidecar path (default: OUT.truth)")

    fit = sub.add_parser("fit", help="estimate a precision matrix from a problem file")
    fit.add_argument("--in", dest="infile", required=True)
    fit.add_argument("--out", required=True, help="estimate file path")
    fit.add_argument("--lambda", dest="lam", type=float, required=True)
    fit.add_argument("--delta-tol", type=float, default=1e-5)
    fit.add_argument("--max-iter", type=int, default=500)
    fit.add_argument("--solver", choices=("cd", "pcd"), default="pcd")
    fit.add_argument("--workers", type=int, default=1)
    fit.add_argument("--backend", choices=available_backends(), default=None)

    bn = sub.add_parser("bench", help="compare CD and PCD over a grid")
    bn.add_argument("--p", required=True, help="comma-separated sizes")
    bn.add_argument("--n", required=True, help="comma-separated sample counts")
    bn.add_argument("--lambda", dest="lam", required=True,
                    help="comma-separated penalties")
    bn.add_argument("--reps", type=int, default=10)
    bn.add_argument("--workers", type=int, default=1)
    bn.add_argument("--delta-tol", type=float, default=1e-5)
    bn.add_argument("--max-iter", type=int, default=500)
    bn.add_argument("--truth", choices=("ar2", "scale_free"), default="ar2")
    bn.add_argument("--seed", type=int, default=0)
    bn.add_argument("--out", default=None, help="CSV output path")
    bn.add_argument("--backend", choices=available_backends(), default=None)
    return parser


def _cmd_generate(args):
    try:
        if args.truth == "ar2":
            truth = ar2_precision(args.p)
        else:
            truth = scale_free_precision(args.p, alpha=args.alpha, seed=args.seed)
        data = sample_mvn(truth, args.n, seed=args.seed)
    except (DimensionError, ValueError, NotPositiveDefinite) as exc:
        sys.exit(f"parconcord generate: {exc}")
    fileio.write_problem(args.out, data)
    truth_path = args.truth_out or f"{args.out}.truth"
    fileio.write_estimate(truth_path, truth.omega_true, 0.0, 0, 0.0)
    print(f"wrote {args.out} ({data.n} rows, p={data.p}) and {truth_path}")
    print(f"truth edges={truth.edge_total}")
    return 0


def _cmd_fit(args):
    try:
        data = fileio.read_problem(args.infile)
    except (OSError, fileio.FileFormatError) as exc:
        sys.exit(f"parconcord fit: {exc}")
    if not data.centered:
        data = center_columns(data)
    try:
        gram = compute_gram(data)
        config = SolverConfig(
            lam=args.lam,
            delta_tol=args.delta_tol,
            max_outer_iterations=args.max_iter,
            workers=_cap_workers(args.workers),
        )
    except ValueError as exc:
        sys.exit(f"parconcord fit: {exc}")
    fit = cd_fit if args.solver == "cd" else pcd_fit
    code = 0
    try:
        report = fit(gram, config, backend=args.backend)
    except NotConverged as exc:
        report = exc.report
        code = 2
    fileio.write_estimate(
        args.out, report.estimate, args.lam, report.iterations, report.final_delta
    )
    seconds = sum(report.wall_time_per_iteration)
    print(
        f"iterations={report.iterations}, delta={report.final_delta:.3e}, "
        f"edges={report.edge_count}, seconds={seconds:.3f}"
    )
    return code


def _parse_grid(text, caster, what):
    try:
        return [caster(part) for part in text.split(",") if part.strip()]
    except ValueError:
        sys.exit(f"parconcord bench: cannot parse {what} list {text!r}")


def _cmd_bench(args):
    ps = _parse_grid(args.p, int, "p")
    ns = _parse_grid(args.n, int, "n")
    lams = _parse_grid(args.lam, float, "lambda")
    if not ps or not ns or not lams:
        sys.exit("parconcord bench: empty grid")
    cells = [(n, p, lam) for n in ns for p in ps for lam in lams]
    report = bench.run_bench(
        cells,
        reps=args.reps,
        workers=_cap_workers(args.workers),
        delta_tol=args.delta_tol,
        max_outer_iterations=args.max_iter,
        truth_kind=args.truth,
        base_seed=args.seed,
        backend=args.backend,
    )
    print(report.table())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.csv())
        print(f"wrote {args.out}")
    return 2 if report.failures else 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "generate":
        code = _cmd_generate(args)
    elif args.command == "fit":
        code = _cmd_fit(args)
    else:
        code = _cmd_bench(args)
    return code


if __name__ == "__main__":
    sys.exit(main())
