"""Replication runner, data-length sweeps and the timing benchmark.

Every cell is seeded from ``(base_seed, replication)`` so results are
reproducible bit for bit; workers only change wall time, never the numbers.
"""
from __future__ import annotations

import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from ..dynamics import KuramotoParams, PdgParams, simulate_kuramoto, simulate_pdg
from ..metrics import REPORT_FIELDS, score
from ..netgen import generate
from ..solvers import MethodOptions, fit, initial_estimator
from .cases import CaseSpec, gen_case
from .network import NEEDS_INIT, data_length, reconstruct_nodes

METRICS = ("mse", "ucr", "mcc", "mcca", "tpr", "tnr", "ppv", "srel", "srnl")
THREADS_ENV = "SIGLASSO_THREADS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _map(fn, items, workers: Optional[int]):
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass
class SweepResult:
    """Tidy per-replication rows plus aggregation helpers.

    Each row carries ``method``, the cell keys, ``replication``, ``seed``,
    ``failed`` and the metrics; ``elapsed_seconds`` is kept in the rows but
    written to a separate timing file.
    """

    rows: list
    replications: int
    cell_keys: tuple
    seeds: list = field(default_factory=list)

    def aggregate(self) -> list[dict]:
        groups: dict = {}
        for row in self.rows:
            key = (row["method"],) + tuple(row[k] for k in self.cell_keys)
            groups.setdefault(key, []).append(row)
        out = []
        for key, rows in groups.items():
            ok = [r for r in rows if not r["failed"]]
            agg = {"method": key[0]}
            agg.update(zip(self.cell_keys, key[1:]))
            agg["replications"] = len(rows)
            agg["failed"] = len(rows) - len(ok)
            for m in METRICS:
                vals = np.array([r[m] for r in ok], dtype=np.float64)
                agg[m] = float(vals.mean()) if vals.size else float("nan")
                agg[m + "_se"] = (float(vals.std(ddof=1) / np.sqrt(vals.size))
                                  if vals.size > 1 else 0.0)
            agg["seeds"] = " ".join(str(r["seed"]) for r in rows)
            out.append(agg)
        return out

    def mean(self, method: str, metric: str, **cell) -> float:
        for agg in self.aggregate():
            if agg["method"] == method and all(agg[k] == v for k, v in cell.items()):
                return agg[metric]
        raise KeyError((method, cell))


def _metric_row(report) -> dict:
    return {k: v for k, v in report.as_row().items() if k in REPORT_FIELDS}


def _failed_row() -> dict:
    row = {k: float("nan") for k in METRICS}
    row.update({k: 0 for k in ("tp", "fn_", "ucp", "fp", "tn", "ucn")})
    return row


def _case_task(task) -> list[dict]:
    spec, methods, seed, rep, options, tau = task
    problem, truth = gen_case(spec, seed)
    init = None
    if any(m in NEEDS_INIT for m in methods):
        init = initial_estimator(problem, "lasso", folds=options.folds, seed=seed,
                                 n_lambdas=options.n_lambdas, config=options.solver)
    rows = []
    for m in methods:
        base = {"method": m, "n": spec.n, "p": spec.p, "p1": spec.p1,
                "sigma": spec.sigma, "error_model": spec.error_model,
                "zero_columns": spec.zero_columns, "replication": rep,
                "seed": seed}
        try:
            sol = fit(problem, m, beta_init=init, options=options, seed=seed)
            base.update(_metric_row(score(sol.beta, truth, tau)))
            base.update(failed=False, error="", iterations=sol.iterations,
                        elapsed_seconds=sol.elapsed_seconds)
        except Exception as exc:  # a failing cell must not abort the sweep
            base.update(_failed_row())
            base.update(failed=True, error=f"{type(exc).__name__}: {exc}",
                        iterations=0, elapsed_seconds=float("nan"))
        rows.append(base)
    return rows


CASE_KEYS = ("n", "p", "p1", "sigma", "error_model", "zero_columns")


def run_replications(spec: CaseSpec, methods: Sequence[str], R: int,
                     base_seed: int = 0, options: Optional[MethodOptions] = None,
                     workers: Optional[int] = None, tau: float = 0.1) -> SweepResult:
    """Replicate one linear-regression cell ``R`` times (seeds base_seed+1..R)."""
    if R < 1:
        raise ValueError("R must be >= 1")
    options = options or MethodOptions()
    tasks = [(spec, tuple(methods), base_seed + r, r, options, tau)
             for r in range(1, R + 1)]
    rows = [row for chunk in _map(_case_task, tasks, workers) for row in chunk]
    return SweepResult(rows, R, CASE_KEYS, [t[2] for t in tasks])


def _simulate(dynamics: str, net, params, seed):
    if dynamics == "pdg":
        return simulate_pdg(net, params, seed)
    if dynamics == "kuramoto":
        return simulate_kuramoto(net, params, seed)
    raise ValueError(f"unknown dynamics {dynamics!r}")


def _delta_task(task) -> list[dict]:
    (family, dynamics, params, deltas, methods, seed, rep, N, avg_degree,
     rewire_p, options, tau) = task
    net = generate(family, N, avg_degree, seed=[seed, rep, 0], rewire_p=rewire_p)
    L_max = max(data_length(d, N) for d in deltas)
    traj = _simulate(dynamics, net, replace(params, L=L_max), [seed, rep, 1])
    rows = []
    for delta in deltas:
        L = data_length(delta, N)
        fits = reconstruct_nodes(traj.head(L), methods, options,
                                 seed=[seed, rep], errors="flag")
        for m in methods:
            base = {"method": m, "family": family, "dynamics": dynamics,
                    "delta": float(delta), "L": L, "N": N,
                    "avg_degree": avg_degree, "replication": rep, "seed": seed}
            sols = fits.solutions[m]
            if any(s is None for s in sols):
                base.update(_failed_row())
                base.update(failed=True, elapsed_seconds=float("nan"))
            else:
                base.update(_metric_row(fits.report(m, tau)))
                base.update(failed=False,
                            elapsed_seconds=sum(s.elapsed_seconds for s in sols))
            rows.append(base)
    return rows


DELTA_KEYS = ("family", "dynamics", "delta")
# sweep defaults: fitness noise variance 0.1, Kuramoto runs of 5 Euler steps
SWEEP_PDG_NOISE = float(np.sqrt(0.1))
SWEEP_KURAMOTO_RESTART = 5
DELTA_GRID = tuple(round(0.1 * i, 1) for i in range(1, 11))


def sweep_delta(family: str, dynamics: str, params=None,
                delta_grid: Sequence[float] = DELTA_GRID,
                methods: Sequence[str] = ("sigl", "asigl", "slprod", "slmin"),
                R: int = 20, seed: int = 0, N: int = 100, avg_degree: int = 6,
                rewire_p: float = 0.1, options: Optional[MethodOptions] = None,
                workers: Optional[int] = None, tau: float = 0.1) -> SweepResult:
    """Reconstruction accuracy against ``delta = L / N``.

    Each replication draws one network and one trajectory of length
    ``ceil(max(delta) * N)``; shorter data lengths use its prefix, which is
    exactly the trajectory the same seed would give for that length.
    Metrics pool the confusion counts of all nodes.  Without ``params`` PDG
    uses fitness noise variance 0.1 and Kuramoto restarts from random phases
    every 5 steps (a single strongly coupled run phase-locks and leaves the
    regression unidentifiable).
    """
    if not delta_grid or min(delta_grid) <= 0:
        raise ValueError("delta grid must be non-empty and positive")
    if params is None:
        params = (PdgParams(noise_sigma=SWEEP_PDG_NOISE) if dynamics == "pdg"
                  else KuramotoParams(restart_every=SWEEP_KURAMOTO_RESTART))
    options = options or MethodOptions()
    tasks = [(family, dynamics, params, tuple(delta_grid), tuple(methods), seed,
              r, N, avg_degree, rewire_p, options, tau) for r in range(1, R + 1)]
    rows = [row for chunk in _map(_delta_task, tasks, workers) for row in chunk]
    return SweepResult(rows, R, DELTA_KEYS, [seed] * R)


def bench_timing(scenarios: Sequence[CaseSpec], repetitions: int = 5,
                 methods: Sequence[str] = ("sigl", "asigl", "slprod", "slmin"),
                 seed: int = 0, options: Optional[MethodOptions] = None) -> list[dict]:
    """Median wall time of each method per scenario.

    Data generation and the shared lasso initial estimate are excluded; the
    cross-validation of SigL and ASigL is included.
    """
    options = options or MethodOptions()
    out = []
    for spec in scenarios:
        times = {m: [] for m in methods}
        for rep in range(repetitions):
            problem, _ = gen_case(spec, seed + rep)
            init = initial_estimator(problem, "lasso", folds=options.folds,
                                     seed=seed + rep, n_lambdas=options.n_lambdas,
                                     config=options.solver)
            for m in methods:
                sol = fit(problem, m, beta_init=init, options=options,
                          seed=seed + rep)
                times[m].append(sol.elapsed_seconds)
        for m in methods:
            out.append({"scenario": spec.label(), "n": spec.n, "p": spec.p,
                        "p1": spec.p1, "method": m,
                        "median_seconds": statistics.median(times[m]),
                        "min_seconds": min(times[m]),
                        "max_seconds": max(times[m]),
                        "repetitions": repetitions})
    return out


TIMING_FIELDS = ("elapsed_seconds",)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    return v


def write_csv(rows: Sequence[dict], path, exclude: Sequence[str] = ()) -> None:
    """Tidy CSV with floats written via ``repr`` (round-trip exact)."""
    import csv

    fields = [k for k in (rows[0] if rows else {}) if k not in exclude]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for row in rows:
            w.writerow([_fmt(row.get(k, "")) for k in fields])


def write_result(result: SweepResult, out_dir, stem: str) -> dict:
    """Write ``<stem>.csv``, ``<stem>_summary.csv`` and ``<stem>_timing.csv``.

    The first two contain no timing so identical seeds give identical bytes.
    """
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"rows": out / f"{stem}.csv", "summary": out / f"{stem}_summary.csv",
             "timing": out / f"{stem}_timing.csv"}
    write_csv(result.rows, paths["rows"], exclude=TIMING_FIELDS)
    write_csv(result.aggregate(), paths["summary"])
    keys = ("method", *result.cell_keys, "replication", "elapsed_seconds")
    write_csv([{k: r[k] for k in keys} for r in result.rows], paths["timing"])
    return {k: str(v) for k, v in paths.items()}


def write_manifest(path, config: dict, outputs: Optional[dict] = None) -> None:
    import json

    doc = {"config": config, "outputs": outputs or {}}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
