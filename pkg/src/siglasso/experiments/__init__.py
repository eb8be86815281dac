"""Simulation studies: synthetic regressions, network sweeps and timing."""
from .cases import ERROR_MODELS, CaseSpec, correlated_design, draw_errors, gen_case
from .network import NEEDS_INIT, NodeFits, data_length, reconstruct_nodes, symmetrize
from .runner import (DELTA_GRID, METRICS, SweepResult, bench_timing,
                     default_workers, run_replications, sweep_delta, write_csv,
                     write_manifest, write_result)

__all__ = [
    "DELTA_GRID", "ERROR_MODELS", "METRICS", "NEEDS_INIT", "CaseSpec",
    "NodeFits", "SweepResult", "bench_timing", "correlated_design",
    "data_length", "default_workers", "draw_errors", "gen_case",
    "reconstruct_nodes", "run_replications", "sweep_delta", "symmetrize",
    "write_csv", "write_manifest", "write_result",
]
