"""Ground-truth networks: Erdos-Renyi, Barabasi-Albert and Watts-Strogatz.

All generators take an explicit seed and draw from their own
``numpy.random.Generator``, so they are pure functions of their arguments.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegreeOutOfRange, ParseError


@dataclass(frozen=True)
class Adjacency:
    """Undirected simple graph on nodes ``0..n-1``; edges stored as ``(i, j)``, i < j."""

    n: int
    edges: frozenset

    def __post_init__(self):
        clean = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) outside 0..{self.n - 1}")
            clean.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_matrix(cls, a) -> "Adjacency":
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency matrix must have a zero diagonal")
        i, j = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], frozenset(zip(i.tolist(), j.tolist())))

    @property
    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        if self.edges:
            e = np.array(sorted(self.edges))
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        return self.matrix.sum(axis=1).astype(np.int64)

    def neighbors(self) -> list[np.ndarray]:
        a = self.matrix
        return [np.flatnonzero(a[i]) for i in range(self.n)]


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def gen_er(n: int, avg_degree: float, seed=None) -> Adjacency:
    """G(n, p) with ``p = avg_degree / (n - 1)``."""
    if n < 1 or not 0 <= avg_degree <= n - 1:
        raise DegreeOutOfRange(
            f"average degree {avg_degree} impossible with n = {n}")
    prob = avg_degree / (n - 1) if n > 1 else 0.0
    iu, ju = np.triu_indices(n, 1)
    keep = _rng(seed).random(iu.shape[0]) < prob
    return Adjacency(n, frozenset(zip(iu[keep].tolist(), ju[keep].tolist())))


def gen_ba(n: int, avg_degree: int, seed=None) -> Adjacency:
    """Preferential attachment with ``m = avg_degree / 2`` links per new node.

    Growth starts from a complete graph on ``m`` nodes, so the result has
    exactly ``m(m-1)/2 + m(n-m)`` edges.
    """
    if avg_degree < 2 or avg_degree % 2:
        raise DegreeOutOfRange("BA average degree must be even and >= 2")
    m = avg_degree // 2
    if n <= m:
        raise DegreeOutOfRange(f"BA needs n > m = {m}, got n = {n}")
    rng = _rng(seed)
    edges = {(i, j) for i in range(m) for j in range(i + 1, m)}
    # each node appears once per incident edge; uniform draws from this list
    # are degree-proportional
    stubs = [v for e in edges for v in e]
    for new in range(m, n):
        if new == m:
            targets = list(range(m))
        else:
            chosen = set()
            while len(chosen) < m:
                chosen.add(stubs[int(rng.integers(len(stubs)))])
            targets = sorted(chosen)
        for t in targets:
            edges.add((t, new))
            stubs.extend((t, new))
    return Adjacency(n, frozenset(edges))


def gen_ws(n: int, avg_degree: int, rewire_p: float = 0.1, seed=None) -> Adjacency:
    """Ring lattice with ``avg_degree/2`` neighbours per side, then rewiring.

    Each lattice edge ``(i, i+d)`` has its far end moved to a uniformly chosen
    node with probability ``rewire_p``, skipping self-loops and duplicates, so
    the edge count stays ``n * avg_degree / 2``.
    """
    if avg_degree % 2 or avg_degree < 0 or avg_degree >= n:
        raise DegreeOutOfRange(
            f"WS average degree must be even and < n, got {avg_degree}")
    if not 0.0 <= rewire_p <= 1.0:
        raise DegreeOutOfRange(f"rewiring probability {rewire_p} not in [0, 1]")
    rng = _rng(seed)
    half = avg_degree // 2
    adj = [set() for _ in range(n)]
    for i in range(n):
        for d in range(1, half + 1):
            j = (i + d) % n
            adj[i].add(j)
            adj[j].add(i)
    for d in range(1, half + 1):
        for i in range(n):
            j = (i + d) % n
            if rng.random() >= rewire_p or j not in adj[i]:
                continue
            if len(adj[i]) >= n - 1:
                continue
            while True:
                w = int(rng.integers(n))
                if w != i and w not in adj[i]:
                    break
            adj[i].discard(j)
            adj[j].discard(i)
            adj[i].add(w)
            adj[w].add(i)
    edges = {(min(i, j), max(i, j)) for i in range(n) for j in adj[i]}
    return Adjacency(n, frozenset(edges))


def generate(family: str, n: int, avg_degree, seed=None, rewire_p: float = 0.1) -> Adjacency:
    family = family.lower()
    if family == "er":
        return gen_er(n, avg_degree, seed)
    if family == "ba":
        return gen_ba(n, int(avg_degree), seed)
    if family == "ws":
        return gen_ws(n, int(avg_degree), rewire_p, seed)
    raise ValueError(f"unknown network family {family!r}")


def write_edgelist(adj: Adjacency, path) -> None:
    """One ``i j`` pair per line (0-indexed); a header comment records n."""
    lines = [f"# n {adj.n}"] + [f"{i} {j}" for i, j in sorted(adj.edges)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_edgelist(path, n: int | None = None) -> Adjacency:
    edges = []
    declared = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "n":
                declared = int(parts[1])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected 'i j', got {raw!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
    if n is None:
        n = declared
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Adjacency(n, frozenset(edges))
