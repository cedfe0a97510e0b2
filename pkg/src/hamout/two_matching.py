"""Maximum simple 2-matchings and the exhaustive dual certificate.

A simple 2-matching is any edge subset with all degrees at most two, read as
a spanning collection of vertex-disjoint paths and cycles (isolated vertices
count as length-0 paths).  The maximum one is found exactly by the standard
reduction to maximum matching: each vertex becomes two copies, each edge a
two-node gadget, and a maximum matching of the gadget graph has size
|E| + (maximum 2-matching size).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .matching import max_cardinality_matching


@dataclass
class TwoMatching:
    n: int
    edges: frozenset[tuple[int, int]]
    components: list[tuple[str, list[int]]]  # ("path"|"cycle", ordered vertices)
    kappa: int
    rho: int
    path_vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.edges)


def two_matching_from_edges(n: int, edges) -> TwoMatching:
    """Classify a degree-<=2 edge set into its path/cycle components."""
    adj: list[list[int]] = [[] for _ in range(n)]
    eset: set[tuple[int, int]] = set()
    for u, v in edges:
        e = (u, v) if u < v else (v, u)
        if e in eset:
            continue
        eset.add(e)
        adj[u].append(v)
        adj[v].append(u)
    for v in range(n):
        if len(adj[v]) > 2:
            raise ValueError(f"vertex {v} has degree {len(adj[v])} > 2")
        adj[v].sort()

    visited = bytearray(n)
    components: list[tuple[str, list[int]]] = []
    # Paths first, walked from their smallest-id endpoint.
    for v in range(n):
        if visited[v] or len(adj[v]) > 1:
            continue
        seq = [v]
        visited[v] = 1
        prev, cur = v, (adj[v][0] if adj[v] else -1)
        while cur != -1:
            seq.append(cur)
            visited[cur] = 1
            nxts = [w for w in adj[cur] if w != prev]
            prev, cur = cur, (nxts[0] if nxts else -1)
        components.append(("path", seq))
    # What remains are cycles; start each at its smallest vertex.
    for v in range(n):
        if visited[v]:
            continue
        seq = [v]
        visited[v] = 1
        prev, cur = v, adj[v][0]
        while cur != v:
            seq.append(cur)
            visited[cur] = 1
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
        components.append(("cycle", seq))

    components.sort(key=lambda c: min(c[1]))
    rho = sum(1 for kind, _ in components if kind == "path")
    path_vertices = frozenset(v for kind, seq in components if kind == "path" for v in seq)
    return TwoMatching(
        n=n,
        edges=frozenset(eset),
        components=components,
        kappa=len(components),
        rho=rho,
        path_vertices=path_vertices,
    )


def greedy_two_matching(g: Graph) -> list[tuple[int, int]]:
    """Deterministic maximal 2-matching; a warm start for the exact solver.

    Scarce (low-degree) vertices get first pick, which keeps the leftover
    deficiency small.  Capacity never comes back, so one sweep is maximal.
    """
    cap = [2] * g.n
    eset: set[tuple[int, int]] = set()
    order = sorted(range(g.n), key=lambda v: (len(g.adj[v]), v))
    for u in order:
        if cap[u] == 0:
            continue
        for v in sorted(g.adj[u], key=lambda w: (len(g.adj[w]), w)):
            if cap[u] == 0:
                break
            e = (u, v) if u < v else (v, u)
            if cap[v] > 0 and e not in eset:
                eset.add(e)
                cap[u] -= 1
                cap[v] -= 1
    return sorted(eset)


def max_simple_two_matching(g: Graph) -> TwoMatching:
    """Exact maximum simple 2-matching via the edge-gadget matching reduction."""
    edges = g.edges()
    m = len(edges)
    n = g.n
    if m == 0:
        return two_matching_from_edges(n, [])

    # Gadget: copies 2v, 2v+1 per vertex; nodes a=2n+2i, b=a+1 per edge i.
    size = 2 * n + 2 * m
    adj: list[list[int]] = [[] for _ in range(size)]
    for i, (u, v) in enumerate(edges):
        a = 2 * n + 2 * i
        b = a + 1
        adj[a] = [b, 2 * u, 2 * u + 1]
        adj[b] = [a, 2 * v, 2 * v + 1]
        adj[2 * u].append(a)
        adj[2 * u + 1].append(a)
        adj[2 * v].append(b)
        adj[2 * v + 1].append(b)

    # Warm start: map a greedy 2-matching into the gadget graph.
    mate = [-1] * size
    warm = set(greedy_two_matching(g))
    for i, (u, v) in enumerate(edges):
        a = 2 * n + 2 * i
        b = a + 1
        if (u, v) in warm:
            cu = 2 * u if mate[2 * u] == -1 else 2 * u + 1
            cv = 2 * v if mate[2 * v] == -1 else 2 * v + 1
            mate[a] = cu
            mate[cu] = a
            mate[b] = cv
            mate[cv] = b
        else:
            mate[a] = b
            mate[b] = a

    mate = max_cardinality_matching(size, adj, mate)

    selected = []
    for i, e in enumerate(edges):
        a = 2 * n + 2 * i
        b = a + 1
        if mate[a] != b and mate[a] != -1 and mate[b] != -1:
            selected.append(e)
    return two_matching_from_edges(n, selected)


@dataclass
class DualCertificate:
    """Minimizer of |V| + |U| - |S| + sum_X floor(e(X,S)/2) over disjoint U, S
    with S independent, X ranging over components outside U and S."""

    U: frozenset[int]
    S: frozenset[int]
    value: int


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def tutte_berge_min(g: Graph, size_cap: int = 14) -> DualCertificate:
    """Exhaustive minimization of the 2-matching duality bound (tiny graphs only)."""
    n = g.n
    if n > size_cap:
        raise ValueError(f"n={n} exceeds exhaustive cap {size_cap}")
    nbr = [0] * n
    for v in range(n):
        for u in g.adj[v]:
            nbr[v] |= 1 << u
    full = (1 << n) - 1

    best_value = n  # U = S = empty
    best_pair = (0, 0)

    def value_of(u_mask: int, s_mask: int, base: int) -> int:
        rest = full & ~u_mask & ~s_mask
        total = base
        r = rest
        while r:
            comp = r & -r
            frontier = comp
            while frontier:
                nxt = 0
                for w in _bits(frontier):
                    nxt |= nbr[w]
                frontier = nxt & rest & ~comp
                comp |= frontier
            e_cross = 0
            for w in _bits(comp):
                e_cross += (nbr[w] & s_mask).bit_count()
            total += e_cross >> 1
            r &= ~comp
            if total >= best_value:  # floor sums only grow
                return total
        return total

    # Enumerate independent S (DFS over vertex ids), then U over the complement.
    stack = [(0, 0, 0)]  # (next vertex, s_mask, blocked mask)
    while stack:
        i, s_mask, blocked = stack.pop()
        if i == n:
            s_size = s_mask.bit_count()
            comp_mask = full & ~s_mask
            u_mask = comp_mask
            while True:
                base = n + u_mask.bit_count() - s_size
                if base < best_value:
                    val = value_of(u_mask, s_mask, base)
                    if val < best_value:
                        best_value = val
                        best_pair = (u_mask, s_mask)
                if u_mask == 0:
                    break
                u_mask = (u_mask - 1) & comp_mask
            continue
        stack.append((i + 1, s_mask, blocked))
        if not (blocked >> i) & 1:
            stack.append((i + 1, s_mask | (1 << i), blocked | nbr[i]))

    u_mask, s_mask = best_pair
    return DualCertificate(
        U=frozenset(_bits(u_mask)),
        S=frozenset(_bits(s_mask)),
        value=best_value,
    )
