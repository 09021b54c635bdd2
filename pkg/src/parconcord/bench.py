"""Benchmark harness comparing the serial and schedule-parallel solvers.

Each cell of the (n, p, lambda) grid is run reps times on freshly sampled
synthetic data; both solvers see the same data.  Reported times sum the
per-iteration wall times from the fit reports, so data generation, Gram
construction and file I/O never enter the measurement.  Failures (a solver
hitting its iteration cap, or the two solvers disagreeing on the edge
count by more than 0.5%) are recorded and the run continues.
"""

import math
from dataclasses import dataclass

from .datagen import ar2_precision, sample_mvn, scale_free_precision
from .model import SolverConfig, center_columns, compute_gram
from .solver import NotConverged, cd_fit, pcd_fit

CSV_HEADER = "name,n,p,lambda,time_mean,time_se,iters_mean,edges_mean,reps"


@dataclass(frozen=True)
class BenchRow:
    """Aggregated results for one solver on one grid cell."""

    name: str
    n: int
    p: int
    lam: float
    time_mean: float
    time_se: float
    iters_mean: float
    edges_mean: float
    reps: int

    def csv_line(self):
        return (
            f"{self.name},{self.n},{self.p},{self.lam:g},"
            f"{self.time_mean:.6g},{self.time_se:.6g},"
            f"{self.iters_mean:.6g},{self.edges_mean:.6g},{self.reps}"
        )


@dataclass(frozen=True)
class BenchReport:
    """All rows plus recorded per-cell failures (messages, run continued)."""

    rows: tuple
    failures: tuple

    def csv(self):
        return "\n".join([CSV_HEADER] + [r.csv_line() for r in self.rows]) + "\n"

    def speedup(self, n, p, lam):
        """CD over PCD mean-time ratio for one cell; >1 means PCD is faster."""
        cd = self._row("cd", n, p, lam)
        pcd = self._row("pcd", n, p, lam)
        if cd is None or pcd is None or pcd.time_mean == 0.0:
            return math.nan
        return cd.time_mean / pcd.time_mean

    def _row(self, name, n, p, lam):
        for r in self.rows:
            if (r.name, r.n, r.p, r.lam) == (name, n, p, lam):
                return r
        return None

    def table(self):
        lines = []
        cells = []
        for r in self.rows:
            key = (r.n, r.p, r.lam)
            if key not in cells:
                cells.append(key)
        header = (
            f"{'n':>6} {'p':>6} {'lambda':>7} "
            f"{'cd_time':>10} {'pcd_time':>10} {'speedup':>8} "
            f"{'cd_iters':>8} {'pcd_iters':>9} {'cd_edges':>9} {'pcd_edges':>9}"
        )
        lines.append(header)
        for n, p, lam in cells:
            cd = self._row("cd", n, p, lam)
            pcd = self._row("pcd", n, p, lam)
            ratio = self.speedup(n, p, lam)
            lines.append(
                f"{n:>6} {p:>6} {lam:>7g} "
                f"{_time_cell(cd):>10} {_time_cell(pcd):>10} "
                f"{ratio:>7.2f}x "
                f"{_num_cell(cd, 'iters_mean'):>8} {_num_cell(pcd, 'iters_mean'):>9} "
                f"{_num_cell(cd, 'edges_mean'):>9} {_num_cell(pcd, 'edges_mean'):>9}"
            )
        for msg in self.failures:
            lines.append(f"FAILURE: {msg}")
        return "\n".join(lines)


def _time_cell(row):
    if row is None:
        return "-"
    return f"{row.time_mean:.3f}s"


def _num_cell(row, attr):
    if row is None:
        return "-"
    return f"{getattr(row, attr):.1f}"


def _mean_se(values):
    k = len(values)
    mean = sum(values) / k
    if k < 2:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (k - 1)
    return mean, math.sqrt(var / k)


def run_bench(
    cells,
    reps=10,
    workers=1,
    delta_tol=1e-5,
    max_outer_iterations=500,
    truth_kind="ar2",
    base_seed=0,
    backend=None,
):
    """Run the CD/PCD comparison over cells, a list of (n, p, lam) triples."""
    rows = []
    failures = []
    for cell_idx, (n, p, lam) in enumerate(cells):
        results = {"cd": [], "pcd": []}
        for rep in range(reps):
            seed = base_seed + 1000 * cell_idx + rep
            if truth_kind == "ar2":
                truth = ar2_precision(p)
            elif truth_kind == "scale_free":
                truth = scale_free_precision(p, seed=seed)
            else:
                raise ValueError(f"unknown truth kind {truth_kind!r}")
            data = center_columns(sample_mvn(truth, n, seed=seed))
            gram = compute_gram(data)
            for name, fit, cfg_workers in (
                ("cd", cd_fit, 1),
                ("pcd", pcd_fit, workers),
            ):
                config = SolverConfig(
                    lam=lam,
                    delta_tol=delta_tol,
                    max_outer_iterations=max_outer_iterations,
                    workers=cfg_workers,
                )
                try:
                    report = fit(gram, config, backend=backend)
                except NotConverged as exc:
                    failures.append(
                        f"{name} n={n} p={p} lam={lam:g} rep={rep}: {exc}"
                    )
                    continue
                results[name].append(report)
        for name in ("cd", "pcd"):
            done = results[name]
            if not done:
                continue
            times = [sum(r.wall_time_per_iteration) for r in done]
            iters = [float(r.iterations) for r in done]
            edges = [float(r.edge_count) for r in done]
            tm, se = _mean_se(times)
            rows.append(
                BenchRow(
                    name=name,
                    n=n,
                    p=p,
                    lam=lam,
                    time_mean=tm,
                    time_se=se,
                    iters_mean=_mean_se(iters)[0],
                    edges_mean=_mean_se(edges)[0],
                    reps=len(done),
                )
            )
        cd_rows = results["cd"]
        pcd_rows = results["pcd"]
        if cd_rows and pcd_rows:
            ce = sum(r.edge_count for r in cd_rows) / len(cd_rows)
            pe = sum(r.edge_count for r in pcd_rows) / len(pcd_rows)
            scale = max(ce, pe, 1.0)
            if abs(ce - pe) / scale > 0.005:
                failures.append(
                    f"edge-count mismatch n={n} p={p} lam={lam:g}: "
                    f"cd {ce:.1f} vs pcd {pe:.1f}"
                )
    return BenchReport(rows=tuple(rows), failures=tuple(failures))
