"""Loading recorded game experiments and reconstructing their networks.

File layout
-----------
strategy CSV
    ``round,node,strategy`` (an optional ``fitness`` column may sit in the
    same file), rounds and nodes numbered from 0.
fitness CSV
    ``round,node,fitness``; only needed when the strategy file lacks fitness.
matrix JSON
    ``{"actions": ["C", "D", "P"], "payoff": [[...], ...]}`` with row ``a``
    and column ``b`` the payoff of an ``a``-player against a ``b``-player.
truth
    whitespace edge list as written by :func:`siglasso.netgen.write_edgelist`.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .dynamics.pdg import PdgTrajectory, dilemma_matrix
from .errors import AlphabetMismatch, ParseError, ShapeMismatch
from .experiments.network import data_length, reconstruct_nodes, symmetrize
from .metrics import MetricsReport
from .netgen import Adjacency, read_edgelist
from .solvers import MethodOptions

# prisoner's dilemma with a punishment option, actions (C, D, P)
TREATMENT_I = np.array([[2.0, -2.0, -5.0],
                        [4.0, 0.0, -3.0],
                        [2.0, -2.0, -5.0]])
TREATMENT_I_ACTIONS = ("C", "D", "P")
# standard prisoner's dilemma, actions (C, D)
TREATMENT_II = np.array([[4.0, -2.0],
                         [6.0, 0.0]])
TREATMENT_II_ACTIONS = ("C", "D")


def read_long_table(path, actions: Sequence[str],
                    need: Sequence[str] = ("strategy", "fitness")) -> tuple:
    """Read a ``round,node,...`` table into ``L x N`` arrays, one per column.

    ``strategy`` is mapped to action indices (int8); other columns are read
    as floats.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    if not text.strip():
        raise ParseError(f"{path}: empty file")
    reader = csv.DictReader(text.splitlines())
    cols = set(reader.fieldnames or ())
    missing = {"round", "node", *need} - cols
    if missing:
        raise ParseError(f"{path}: missing column(s) {', '.join(sorted(missing))}")
    index = {a: k for k, a in enumerate(actions)}
    cells: dict = {}
    for line, rec in enumerate(reader, start=2):
        try:
            key = (int(rec["round"]), int(rec["node"]))
        except (TypeError, ValueError):
            raise ParseError(f"{path}:{line}: round/node must be integers") from None
        if key[0] < 0 or key[1] < 0:
            raise ParseError(f"{path}:{line}: negative round or node")
        if key in cells:
            raise ShapeMismatch(f"{path}:{line}: duplicate entry for round {key[0]}, node {key[1]}")
        vals = []
        for name in need:
            raw = (rec[name] or "").strip()
            if name == "strategy":
                if raw not in index:
                    raise AlphabetMismatch(
                        f"{path}:{line}: strategy {raw!r} not in alphabet {list(actions)}")
                vals.append(index[raw])
            else:
                try:
                    vals.append(float(raw))
                except ValueError:
                    raise ParseError(f"{path}:{line}: {name} {raw!r} is not a number") from None
        cells[key] = vals
    if not cells:
        raise ParseError(f"{path}: no data rows")
    L = 1 + max(k[0] for k in cells)
    N = 1 + max(k[1] for k in cells)
    if len(cells) != L * N:
        absent = sorted({(t, i) for t in range(L) for i in range(N)} - cells.keys())
        raise ShapeMismatch(f"{path}: {len(absent)} missing (round, node) entries, "
                            f"first {absent[0]}")
    out = []
    for k, name in enumerate(need):
        a = np.empty((L, N), dtype=np.int8 if name == "strategy" else np.float64)
        for (t, i), vals in cells.items():
            a[t, i] = vals[k]
        out.append(a)
    return tuple(out)


def read_matrix_json(path) -> tuple[tuple, np.ndarray]:
    try:
        doc = json.loads(Path(path).read_text())
        actions = tuple(str(a) for a in doc["actions"])
        M = np.array(doc["payoff"], dtype=np.float64)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{path}: bad payoff matrix file ({exc})") from None
    if M.shape != (len(actions), len(actions)):
        raise AlphabetMismatch(f"{path}: payoff matrix is {M.shape} but there are "
                               f"{len(actions)} actions")
    if len(set(actions)) != len(actions):
        raise AlphabetMismatch(f"{path}: duplicate action labels")
    return actions, M


def write_matrix_json(actions: Sequence[str], payoff, path) -> None:
    doc = {"actions": list(actions), "payoff": np.asarray(payoff).tolist()}
    Path(path).write_text(json.dumps(doc) + "\n")


@dataclass(frozen=True, eq=False)
class RecordedExperiment:
    """Strategies and fitness of ``N`` players over ``L`` rounds."""

    strategies: np.ndarray
    fitness: np.ndarray
    payoff_matrix: np.ndarray
    actions: tuple
    truth: Optional[Adjacency] = None

    def __post_init__(self):
        M = np.asarray(self.payoff_matrix, dtype=np.float64)
        if M.shape != (len(self.actions), len(self.actions)):
            raise AlphabetMismatch("payoff matrix dimension must equal the alphabet size")
        if self.strategies.shape != self.fitness.shape:
            raise ShapeMismatch(f"strategies {self.strategies.shape} vs fitness "
                                f"{self.fitness.shape}")
        if self.strategies.size and (self.strategies.min() < 0
                                     or self.strategies.max() >= len(self.actions)):
            raise AlphabetMismatch("strategy index outside the alphabet")
        if self.truth is not None and self.truth.n != self.N:
            raise ShapeMismatch(f"truth network has {self.truth.n} nodes, data has {self.N}")
        object.__setattr__(self, "payoff_matrix", M)

    @property
    def L(self) -> int:
        return self.strategies.shape[0]

    @property
    def N(self) -> int:
        return self.strategies.shape[1]

    def pair_payoff(self, t: int, i: int, j: int) -> float:
        """``s_i(t)' M s_j(t)`` with one-hot strategy vectors."""
        return float(self.payoff_matrix[self.strategies[t, i], self.strategies[t, j]])

    def as_trajectory(self) -> PdgTrajectory:
        return PdgTrajectory(self.strategies, self.fitness, self.payoff_matrix,
                             self.actions, self.truth)

    def head(self, L: int) -> "RecordedExperiment":
        return RecordedExperiment(self.strategies[:L], self.fitness[:L],
                                  self.payoff_matrix, self.actions, self.truth)


def from_trajectory(traj: PdgTrajectory) -> RecordedExperiment:
    return RecordedExperiment(np.asarray(traj.strategies), np.asarray(traj.fitness),
                              traj.payoff, tuple(traj.actions), traj.adjacency)


def load_experiment(strategy_csv, fitness_csv=None, matrix_json=None,
                    truth_edgelist=None) -> RecordedExperiment:
    """Load and validate a recorded experiment.

    Without ``matrix_json`` the two-action dilemma ``(C, D)`` with R=1,
    T=1.15, S=P=0 is assumed.
    """
    if matrix_json is None:
        actions, M = ("C", "D"), dilemma_matrix()
    else:
        actions, M = read_matrix_json(matrix_json)
    if fitness_csv is None:
        strategies, fitness = read_long_table(strategy_csv, actions,
                                              need=("strategy", "fitness"))
    else:
        (strategies,) = read_long_table(strategy_csv, actions, need=("strategy",))
        (fitness,) = read_long_table(fitness_csv, actions, need=("fitness",))
        if fitness.shape != strategies.shape:
            raise ShapeMismatch(f"strategy table is {strategies.shape}, fitness "
                                f"table is {fitness.shape} (rounds x nodes)")
    truth = None
    if truth_edgelist is not None:
        try:
            truth = read_edgelist(truth_edgelist, n=strategies.shape[1])
        except (OSError, ValueError) as exc:
            raise ParseError(f"{truth_edgelist}: {exc}") from None
    return RecordedExperiment(strategies, fitness, M, actions, truth)


def dump_experiment(exp: RecordedExperiment, strategy_csv, matrix_json=None,
                    truth_edgelist=None) -> None:
    """Write ``exp`` in the layout read by :func:`load_experiment`."""
    from .dynamics.pdg import dump_pdg
    from .netgen import write_edgelist

    dump_pdg(exp.as_trajectory(), strategy_csv)
    if matrix_json is not None:
        write_matrix_json(exp.actions, exp.payoff_matrix, matrix_json)
    if truth_edgelist is not None and exp.truth is not None:
        write_edgelist(exp.truth, truth_edgelist)


@dataclass
class RecordedReconstruction:
    estimate: Adjacency
    directed: np.ndarray
    solutions: list
    report: Optional[MetricsReport] = None
    sweep: list = field(default_factory=list)


def reconstruct_recorded(exp: RecordedExperiment, method: str = "slprod",
                         options: Optional[MethodOptions] = None, seed=0,
                         deltas: Optional[Sequence[float]] = None,
                         tau: float = 0.1, rule: str = "or") -> RecordedReconstruction:
    """Reconstruct the interaction network behind ``exp``.

    Every player's fitness is regressed on its pair payoffs against all
    others; the directed estimates are merged with ``rule``.  With a truth
    network the pooled metrics are reported, and with ``deltas`` the first
    ``ceil(delta * N)`` rounds are used for each entry of a data-length sweep.
    """
    fits = reconstruct_nodes(exp.as_trajectory(), (method,), options, seed=seed)
    B = fits.directed(method, exp.N)
    out = RecordedReconstruction(symmetrize(B, tau, rule), B, fits.solutions[method])
    if exp.truth is not None:
        out.report = fits.report(method, tau)
    for delta in deltas or ():
        L = data_length(delta, exp.N)
        if L > exp.L:
            raise ShapeMismatch(f"delta={delta} needs {L} rounds, only {exp.L} recorded")
        sub = reconstruct_nodes(exp.head(L).as_trajectory(), (method,), options,
                                seed=seed)
        row = {"delta": float(delta), "L": L}
        if exp.truth is not None:
            row.update(sub.report(method, tau).as_row())
        row["edges"] = symmetrize(sub.directed(method, exp.N), tau, rule).n_edges
        out.sweep.append(row)
    return out
