"""Command-line entry point: ``siglasso <command> ...``.

Exit status is 0 on success, 1 for usage errors (bad flags or parameter
values) and 2 for data errors (unreadable or inconsistent input files).

Settings resolve as command-line flag, then ``--config`` JSON, then the
built-in default.  The JSON may hold global keys (``seed``, ``threads``,
``out_dir``) and one object per command, e.g.
``{"seed": 3, "case": {"reps": 20, "methods": "slprod,sigl"}}``.  The
effective settings are written to ``manifest.json`` in the output directory.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .errors import SignalLassoError, SpecInvalid

DEFAULTS = {
    "global": {"seed": 0, "threads": None, "out_dir": "."},
    "solve": {"method": "slprod", "lam": None, "auto": False, "lam2": 0.0,
              "alpha": None, "intercept": False, "folds": 5},
    "simulate": {"family": "er", "N": 100, "k": 6, "rewire_p": 0.1, "L": 100,
                 "noise_sigma": 0.0, "K": 0.1, "mutation_rate": 0.05,
                 "c": 10.0, "h": 0.01, "restart_every": None},
    "case": {"n": 100, "p": 30, "p1": 6, "sigma": 0.4, "reps": 100,
             "methods": "slprod,slmin,sigl,asigl", "error_model": None,
             "rho": 0.5, "design_corr": 0.5, "zero_columns": 0, "folds": 5,
             "tau": 0.1},
    "sweep-delta": {"family": "er", "dynamics": "pdg", "N": 100, "k": 6,
                    "rewire_p": 0.1, "deltas": "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0",
                    "reps": 20, "methods": "sigl,asigl,slprod,slmin",
                    "noise_sigma": None, "c": 10.0, "h": 0.01,
                    "restart_every": 5, "folds": 5,
                    "tau": 0.1},
    "bench": {"n": 150, "p": 150, "p1": 6, "sigma": 0.4, "repetitions": 5,
              "methods": "sigl,asigl,slprod,slmin", "folds": 5},
    "reconstruct": {"fitness": None, "matrix": None, "truth": None,
                    "method": "slprod", "deltas": None, "rule": "or",
                    "tau": 0.1, "folds": 5},
}
CASE_ERRORS = {"I": "gaussian", "II": "exponential", "III": "ar1"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _csv_list(text: str, cast=str) -> list:
    try:
        return [cast(x.strip()) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    glob = _Parser(add_help=False)
    glob.add_argument("--seed", type=int, default=S, help="base random seed")
    glob.add_argument("--threads", type=int, default=S,
                      help="worker processes (default: $SIGLASSO_THREADS or 1)")
    glob.add_argument("--config", default=S, help="JSON file overriding defaults")
    glob.add_argument("--out-dir", dest="out_dir", default=S,
                      help="directory for outputs")

    p = _Parser(prog="siglasso", parents=[glob],
                description="Signal lasso estimation and network reconstruction.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[glob], help="fit one regression")
    s.add_argument("x_csv")
    s.add_argument("y_csv")
    s.add_argument("--method", default=S, choices=("lasso", "sigl", "asigl", "slprod", "slmin"))
    g = s.add_mutually_exclusive_group()
    g.add_argument("--lambda", dest="lam", type=float, default=S)
    g.add_argument("--auto", action="store_true", default=S,
                   help="lambda large enough for exact 0/1 output")
    s.add_argument("--lambda2", dest="lam2", type=float, default=S)
    s.add_argument("--alpha", type=float, default=S)
    s.add_argument("--intercept", action="store_true", default=S)
    s.add_argument("--folds", type=int, default=S)

    s = sub.add_parser("simulate", parents=[glob], help="simulate network dynamics")
    s.add_argument("dynamics", choices=("pdg", "kuramoto"))
    s.add_argument("--family", choices=("er", "ba", "ws"), default=S)
    s.add_argument("--N", type=int, default=S)
    s.add_argument("--k", type=int, default=S, help="average degree")
    s.add_argument("--rewire-p", dest="rewire_p", type=float, default=S)
    s.add_argument("--L", type=int, default=S, help="rounds or Euler steps")
    s.add_argument("--noise-sigma", dest="noise_sigma", type=float, default=S)
    s.add_argument("--K", type=float, default=S, help="Fermi temperature")
    s.add_argument("--mutation-rate", dest="mutation_rate", type=float, default=S)
    s.add_argument("--c", type=float, default=S, help="Kuramoto coupling")
    s.add_argument("--h", type=float, default=S, help="Euler step")
    s.add_argument("--restart-every", dest="restart_every", type=int, default=S,
                   help="Kuramoto: fresh random phases every this many steps")

    s = sub.add_parser("case", parents=[glob], help="linear-regression simulation study")
    s.add_argument("case", choices=tuple(CASE_ERRORS))
    for name, typ in (("n", int), ("p", int), ("p1", int), ("sigma", float),
                      ("reps", int), ("rho", float), ("folds", int), ("tau", float)):
        s.add_argument(f"--{name}", type=typ, default=S)
    s.add_argument("--design-corr", dest="design_corr", type=float, default=S)
    s.add_argument("--zero-columns", dest="zero_columns", type=int, default=S)
    s.add_argument("--error-model", dest="error_model",
                   choices=("gaussian", "exponential", "gamma", "ar1"), default=S)
    s.add_argument("--methods", default=S, help="comma-separated methods")

    s = sub.add_parser("sweep-delta", parents=[glob], help="accuracy against data length")
    s.add_argument("--family", choices=("er", "ba", "ws"), default=S)
    s.add_argument("--dynamics", choices=("pdg", "kuramoto"), default=S)
    for name, typ in (("N", int), ("k", int), ("reps", int), ("c", float),
                      ("h", float), ("folds", int), ("tau", float)):
        s.add_argument(f"--{name}", type=typ, default=S)
    s.add_argument("--rewire-p", dest="rewire_p", type=float, default=S)
    s.add_argument("--noise-sigma", dest="noise_sigma", type=float, default=S)
    s.add_argument("--restart-every", dest="restart_every", type=int, default=S)
    s.add_argument("--deltas", default=S, help="comma-separated L/N values")
    s.add_argument("--methods", default=S)

    s = sub.add_parser("bench", parents=[glob], help="timing benchmark")
    for name, typ in (("n", int), ("p", int), ("p1", int), ("sigma", float),
                      ("repetitions", int), ("folds", int)):
        s.add_argument(f"--{name}", type=typ, default=S)
    s.add_argument("--methods", default=S)

    s = sub.add_parser("reconstruct", parents=[glob], help="reconstruct recorded data")
    s.add_argument("strategy_csv")
    s.add_argument("--fitness", default=S, help="separate round,node,fitness CSV")
    s.add_argument("--matrix", default=S, help="payoff matrix JSON")
    s.add_argument("--truth", default=S, help="true edge list for scoring")
    s.add_argument("--method", choices=("lasso", "sigl", "asigl", "slprod", "slmin"), default=S)
    s.add_argument("--deltas", default=S)
    s.add_argument("--rule", choices=("or", "and"), default=S)
    s.add_argument("--tau", type=float, default=S)
    s.add_argument("--folds", type=int, default=S)
    return p


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults, the JSON config file and explicit flags."""
    cmd = args.command
    cfg = dict(DEFAULTS["global"])
    cfg.update(DEFAULTS[cmd])
    flags = vars(args)
    if "config" in flags:
        try:
            doc = json.loads(Path(flags["config"]).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read config {flags['config']}: {exc.strerror}") from None
        except ValueError as exc:
            raise UsageError(f"config {flags['config']} is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise UsageError("config file must hold a JSON object")
        known = set(cfg)
        for key, val in doc.items():
            if key in DEFAULTS and key != "global":
                if key == cmd:
                    cfg.update(val)
            elif key == "global":
                cfg.update(val)
            else:
                cfg[key] = val
        unknown = set(cfg) - known
        if unknown:
            raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    cfg.update({k: v for k, v in flags.items() if k not in ("config",)})
    if cfg.get("threads") is None:
        from .experiments import default_workers
        cfg["threads"] = default_workers()
    return cfg


def _options(cfg):
    from .solvers import MethodOptions
    return MethodOptions(folds=int(cfg["folds"]))


def _methods(cfg):
    from .solvers import METHODS
    ms = _csv_list(cfg["methods"])
    bad = [m for m in ms if m not in METHODS]
    if bad or not ms:
        raise UsageError(f"unknown method(s) {bad}; choose from {', '.join(METHODS)}")
    return ms


def _cmd_solve(cfg, out: Path) -> dict:
    from .problem import AUTO, Kind, PenaltySpec, load_problem_csv
    from .solvers import fit, initial_estimator, solve

    problem = load_problem_csv(cfg["x_csv"], cfg["y_csv"], bool(cfg["intercept"]))
    method = cfg["method"]
    lam = AUTO if cfg["auto"] else cfg["lam"]
    if lam is None:
        sol = fit(problem, method, options=_options(cfg), seed=cfg["seed"])
    else:
        kw = {}
        if method == "sigl":
            kw["lam2"] = float(cfg["lam2"])
        if method == "asigl":
            if cfg["alpha"] is None:
                raise UsageError("asigl with a fixed lambda needs --alpha")
            init = initial_estimator(problem, "lasso", folds=int(cfg["folds"]),
                                     seed=cfg["seed"])
            kw.update(alpha=float(cfg["alpha"]), weights2=np.abs(init))
        spec = PenaltySpec(Kind(method), lam, **kw)
        sol = solve(problem, spec)
    path = out / "beta.csv"
    np.savetxt(path, sol.beta, fmt="%.17g")
    return {"beta": str(path), "intercept": sol.intercept,
            "iterations": sol.iterations, "converged": sol.converged,
            "penalty": sol.spec.describe() if sol.spec is not None else None}


def _cmd_simulate(cfg, out: Path) -> dict:
    from .dynamics import (KuramotoParams, PdgParams, dump_kuramoto, dump_pdg,
                           simulate_kuramoto, simulate_pdg)
    from .netgen import generate, write_edgelist

    seed = cfg["seed"]
    net = generate(cfg["family"], cfg["N"], cfg["k"], seed=[seed, 0],
                   rewire_p=cfg["rewire_p"])
    path = out / "trajectory.csv"
    if cfg["dynamics"] == "pdg":
        params = PdgParams(K=cfg["K"], mutation_rate=cfg["mutation_rate"],
                           noise_sigma=cfg["noise_sigma"], L=cfg["L"])
        dump_pdg(simulate_pdg(net, params, [seed, 1]), path)
    else:
        params = KuramotoParams(c=cfg["c"], h=cfg["h"], noise_sigma=cfg["noise_sigma"],
                                L=cfg["L"], restart_every=cfg["restart_every"])
        dump_kuramoto(simulate_kuramoto(net, params, [seed, 1]), path)
    write_edgelist(net, out / "network.edgelist")
    return {"trajectory": str(path), "network": str(out / "network.edgelist"),
            "edges": net.n_edges}


def _cmd_case(cfg, out: Path) -> dict:
    from .experiments import CaseSpec, run_replications, write_result

    error_model = cfg["error_model"] or CASE_ERRORS[cfg["case"]]
    spec = CaseSpec(cfg["n"], cfg["p"], cfg["p1"], cfg["sigma"],
                    design_corr=cfg["design_corr"], error_model=error_model,
                    rho=cfg["rho"] if error_model == "ar1" else 0.0,
                    zero_columns=cfg["zero_columns"])
    res = run_replications(spec, _methods(cfg), cfg["reps"], cfg["seed"],
                           _options(cfg), cfg["threads"], cfg["tau"])
    files = write_result(res, out, "results")
    _print_summary(res.aggregate(), ("method", "mse", "ucr", "mcc", "mcca", "failed"))
    return files


def _cmd_sweep(cfg, out: Path) -> dict:
    from .dynamics import KuramotoParams, PdgParams
    from .experiments import sweep_delta, write_result

    noise = cfg["noise_sigma"]
    if cfg["dynamics"] == "pdg":
        params = PdgParams(noise_sigma=float(np.sqrt(0.1)) if noise is None else noise)
    else:
        params = KuramotoParams(c=cfg["c"], h=cfg["h"], noise_sigma=noise or 0.0,
                                restart_every=cfg["restart_every"])
    deltas = _csv_list(cfg["deltas"], float)
    res = sweep_delta(cfg["family"], cfg["dynamics"], params, deltas, _methods(cfg),
                      cfg["reps"], cfg["seed"], cfg["N"], cfg["k"], cfg["rewire_p"],
                      _options(cfg), cfg["threads"], cfg["tau"])
    files = write_result(res, out, "sweep")
    _print_summary(res.aggregate(), ("method", "delta", "mcca", "ucr", "failed"))
    return files


def _cmd_bench(cfg, out: Path) -> dict:
    from .experiments import CaseSpec, bench_timing, write_csv

    spec = CaseSpec(cfg["n"], cfg["p"], cfg["p1"], cfg["sigma"])
    rows = bench_timing([spec], cfg["repetitions"], _methods(cfg), cfg["seed"],
                        _options(cfg))
    path = out / "bench_timing.csv"
    write_csv(rows, path)
    _print_summary(rows, ("scenario", "method", "median_seconds"))
    return {"timing": str(path)}


def _cmd_reconstruct(cfg, out: Path) -> dict:
    from .experiments import write_csv
    from .ingest import load_experiment, reconstruct_recorded
    from .netgen import write_edgelist

    exp = load_experiment(cfg["strategy_csv"], cfg["fitness"], cfg["matrix"],
                          cfg["truth"])
    deltas = _csv_list(cfg["deltas"], float) if cfg["deltas"] else None
    res = reconstruct_recorded(exp, cfg["method"], _options(cfg), cfg["seed"],
                               deltas, cfg["tau"], cfg["rule"])
    files = {"estimate": str(out / "estimate.edgelist")}
    write_edgelist(res.estimate, out / "estimate.edgelist")
    if res.report is not None:
        write_csv([res.report.as_row()], out / "metrics.csv")
        files["metrics"] = str(out / "metrics.csv")
        print(f"MCCa {res.report.mcca:.4f}  UCR {res.report.ucr:.4f}")
    if res.sweep:
        write_csv(res.sweep, out / "delta_sweep.csv")
        files["sweep"] = str(out / "delta_sweep.csv")
    print(f"{res.estimate.n_edges} edges estimated among {exp.N} players")
    return files


COMMANDS = {"solve": _cmd_solve, "simulate": _cmd_simulate, "case": _cmd_case,
            "sweep-delta": _cmd_sweep, "bench": _cmd_bench,
            "reconstruct": _cmd_reconstruct}


def _print_summary(rows, cols) -> None:
    for row in rows:
        parts = []
        for c in cols:
            v = row[c]
            parts.append(f"{c}={v:.4g}" if isinstance(v, float) else f"{c}={v}")
        print("  ".join(parts))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        out = Path(cfg["out_dir"])
        out.mkdir(parents=True, exist_ok=True)
        os.environ.setdefault("SIGLASSO_THREADS", str(cfg["threads"]))
        outputs = COMMANDS[args.command](cfg, out)
        from .experiments import write_manifest
        write_manifest(out / "manifest.json", cfg, outputs)
    except (UsageError, SpecInvalid) as exc:
        parser.print_usage(sys.stderr)
        print(f"siglasso: error: {exc}", file=sys.stderr)
        return 1
    except (SignalLassoError, OSError, ValueError) as exc:
        print(f"siglasso: data error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
