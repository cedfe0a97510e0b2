"""Digraph and graph containers plus the elementary queries everything else uses.

Vertices are dense 0-based integers.  Digraphs store per-vertex out-head
lists in which repeats and self-loops are allowed; undirected graphs store
sorted, duplicate-free, loop-free neighbor lists, so every iteration order
in the package is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class Digraph:
    """Out-arc multiset per vertex; loops and repeated heads permitted."""

    n: int
    out: list[list[int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if len(self.out) != self.n:
            raise ValueError("out-list count must equal n")
        for v, heads in enumerate(self.out):
            for h in heads:
                if not 0 <= h < self.n:
                    raise ValueError(f"head {h} of vertex {v} outside [0, {self.n})")

    def arcs(self) -> list[tuple[int, int]]:
        return [(v, h) for v in range(self.n) for h in self.out[v]]

    def arc_count(self) -> int:
        return sum(len(heads) for heads in self.out)

    def in_degrees(self) -> np.ndarray:
        heads = [h for hs in self.out for h in hs]
        return np.bincount(np.asarray(heads, dtype=np.int64), minlength=self.n)


@dataclass
class Graph:
    """Simple undirected graph; adjacency lists are sorted and symmetric."""

    n: int
    adj: list[list[int]]
    _csr: tuple[np.ndarray, np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency list count must equal n")

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop {u} not allowed in a Graph")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside [0, {n})")
            adj[u].add(v)
            adj[v].add(u)
        return Graph(n, [sorted(s) for s in adj])

    def has_edge(self, u: int, v: int) -> bool:
        a, b = (u, v) if len(self.adj[u]) <= len(self.adj[v]) else (v, u)
        lst = self.adj[a]
        i = np.searchsorted(lst, b) if len(lst) > 8 else None
        if i is None:
            return b in lst
        return i < len(lst) and lst[i] == b

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays for numeric kernels; built lazily."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self.adj[v])
            indices = np.fromiter(
                (u for a in self.adj for u in a), dtype=np.int64, count=indptr[-1]
            )
            object.__setattr__(self, "_csr", (indptr, indices))
        return self._csr


def underlying_graph(d: Digraph) -> Graph:
    """Collapse arcs to undirected edges: drop loops, merge multi-arcs."""
    pairs = [(v, h) for v in range(d.n) for h in d.out[v] if v != h]
    if not pairs:
        return Graph(d.n, [[] for _ in range(d.n)])
    arr = np.asarray(pairs, dtype=np.int64)
    both = np.concatenate([arr, arr[:, ::-1]])
    order = np.lexsort((both[:, 1], both[:, 0]))
    both = both[order]
    keep = np.ones(len(both), dtype=bool)
    keep[1:] = np.any(both[1:] != both[:-1], axis=1)
    both = both[keep]
    adj: list[list[int]] = [[] for _ in range(d.n)]
    starts = np.searchsorted(both[:, 0], np.arange(d.n + 1))
    for v in range(d.n):
        adj[v] = both[starts[v] : starts[v + 1], 1].tolist()
    return Graph(d.n, adj)


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest contained vertex."""
    seen = bytearray(g.n)
    comps: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = 1
        stack = [s]
        comp = [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = 1
                    comp.append(u)
                    stack.append(u)
        comp.sort()
        comps.append(comp)
    return comps


def degree_stats(g: Graph) -> tuple[int, int, dict[int, int]]:
    """(min degree, max degree, degree histogram)."""
    degs = [len(a) for a in g.adj]
    hist: dict[int, int] = {}
    for d in degs:
        hist[d] = hist.get(d, 0) + 1
    return min(degs), max(degs), hist


# Text edge-list format: first line "n <count>", then one arc/edge per line.

def write_digraph(d: Digraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"n {d.n}\n")
        for v in range(d.n):
            for h in d.out[v]:
                f.write(f"{v} {h}\n")


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"n {g.n}\n")
        for u, v in g.edges():
            f.write(f"{u} {v}\n")


def _read_pairs(path) -> tuple[int, list[tuple[int, int]]]:
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2 or header[0] != "n":
            raise ValueError(f"bad header in {path!r}: expected 'n <count>'")
        n = int(header[1])
        pairs = []
        for line in f:
            line = line.strip()
            if not line:
                continue
            a, b = line.split()
            pairs.append((int(a), int(b)))
    return n, pairs


def read_digraph(path) -> Digraph:
    n, pairs = _read_pairs(path)
    out: list[list[int]] = [[] for _ in range(n)]
    for t, h in pairs:
        out[t].append(h)
    return Digraph(n, out)


def read_graph(path) -> Graph:
    n, pairs = _read_pairs(path)
    for u, v in pairs:
        if not u < v:
            raise ValueError(f"graph edge lines need u < v, got {u} {v}")
    return Graph.from_edges(n, pairs)
