"""Cycle-building pipelines.

``run_extension_rotation`` follows the reservoir procedure: starting from a
2-matching of the working graph it merges cycle components over known edges,
extends a longest path via rotations, and when every reachable endpoint's
neighborhood lies inside the path it walks the endpoints in seeded random
order, querying reserve membership and revealing withheld arcs one at a
time — a withheld arc is drawn into the edge set only when it closes the
current spanning path into a cycle.

``run_practical`` drops the reservoir and runs the same rotation machinery
over the full edge set with restarts; it is the desk-scale workhorse.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph
from .rotation import compute_end_set
from .sampler import SplitSample
from .two_matching import TwoMatching, two_matching_from_edges


def verify_hamilton_cycle(g: Graph, cyc) -> bool:
    """True iff ``cyc`` visits every vertex exactly once along edges of g."""
    cyc = [int(v) for v in cyc]
    if len(cyc) != g.n or g.n < 3:
        return False
    if any(not 0 <= v < g.n for v in cyc) or len(set(cyc)) != g.n:
        return False
    return all(g.has_edge(cyc[i], cyc[(i + 1) % g.n]) for i in range(g.n))


@dataclass
class PipelineStats:
    iterations: int = 0
    rotations: int = 0
    arcs_used: int = 0
    arcs_revealed: int = 0
    queries: int = 0
    end_sizes: list[int] = field(default_factory=list)

    @property
    def max_end_size(self) -> int:
        return max(self.end_sizes, default=0)


@dataclass
class HamiltonResult:
    outcome: str  # "cycle" | "fail"
    cycle: list[int] | None
    reason: str | None
    stats: PipelineStats
    state: "PipelineState | None" = None

    @property
    def is_cycle(self) -> bool:
        return self.outcome == "cycle"


@dataclass
class PipelineState:
    """Deferred-decision bookkeeping for a reservoir run.

    ``checked`` is the ordered list of vertices whose reserve membership has
    been queried; ``in_set``/``out_set`` split them (``out_set`` starts as the
    restored vertices, whose arcs were spent before the procedure began).
    ``revealed`` maps a reserve vertex to its withheld head once drawn;
    ``used_arc_tails`` are the reveals whose edge closed a cycle.
    """

    checked: list[int] = field(default_factory=list)
    checked_set: set[int] = field(default_factory=set)
    in_set: set[int] = field(default_factory=set)
    out_set: set[int] = field(default_factory=set)
    revealed: dict[int, int] = field(default_factory=dict)
    used_arc_tails: set[int] = field(default_factory=set)
    added_edges: list[tuple[int, int]] = field(default_factory=list)
    final_matching: TwoMatching | None = None
    trace: list[dict] = field(default_factory=list)


def _walk_components(n: int, adj: list[list[int]]) -> list[tuple[str, list[int]]]:
    """Path/cycle components of a degree-<=2 adjacency structure."""
    visited = bytearray(n)
    comps: list[tuple[str, list[int]]] = []
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
        comps.append(("path", seq))
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
        comps.append(("cycle", seq))
    return comps


def _cut(adj, a, b):
    adj[a].remove(b)
    adj[b].remove(a)


def _link(adj, a, b):
    adj[a].append(b)
    adj[b].append(a)


def _replace_path_edges(f_adj, old_seq, new_seq):
    for a, b in zip(old_seq, old_seq[1:]):
        _cut(f_adj, a, b)
    for a, b in zip(new_seq, new_seq[1:]):
        _link(f_adj, a, b)


def run_extension_rotation(
    s: SplitSample,
    f0: TwoMatching,
    seed: int,
    max_iterations: int | None = None,
) -> HamiltonResult:
    """Reservoir-based cycle construction starting from the 2-matching f0."""
    n = s.n
    g = s.working_graph
    if f0.n != n:
        raise ValueError("f0 covers a different vertex count")
    for u, v in f0.edges:
        if not g.has_edge(u, v):
            raise ValueError(f"f0 edge ({u},{v}) is not a working-graph edge")

    e_adj = [list(a) for a in g.adj]
    eg = Graph(n, e_adj)
    e_set = {(min(u, v), max(u, v)) for u, v in g.edges()}
    f_adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in f0.edges:
        _link(f_adj, u, v)

    rng = np.random.default_rng(seed)
    reserve_set = set(s.reserve)
    st = PipelineState(out_set=set(s.restored))
    stats = PipelineStats()
    cap = max_iterations if max_iterations is not None else 50 * n

    def fail(reason: str) -> HamiltonResult:
        st.trace.append({"ev": "fail", "reason": reason})
        st.final_matching = _snapshot(n, f_adj)
        return HamiltonResult("fail", None, reason, stats, st)

    def query(x: int) -> bool:
        if x not in st.checked_set:
            st.checked.append(x)
            st.checked_set.add(x)
            member = x in reserve_set and x not in s.restored
            (st.in_set if member else st.out_set).add(x)
            stats.queries += 1
            st.trace.append({"ev": "query", "x": x, "member": member})
        return x in st.in_set

    while True:
        comps = _walk_components(n, f_adj)
        kappa = len(comps)
        rho = sum(1 for kind, _ in comps if kind == "path")
        if kappa + rho <= 1:
            cycle = comps[0][1]
            if not verify_hamilton_cycle(eg, cycle):
                raise AssertionError("internal error: final cycle failed verification")
            st.trace.append({"ev": "cycle"})
            st.final_matching = _snapshot(n, f_adj)
            return HamiltonResult("cycle", cycle, None, stats, st)
        if stats.iterations >= cap:
            return fail("budget")
        stats.iterations += 1

        comp_id = [0] * n
        for ci, (_, seq) in enumerate(comps):
            for v in seq:
                comp_id[v] = ci

        if rho == 0:
            # Every component is a cycle: bridge two of them over a known edge.
            pair = None
            for x in range(n):
                for y in e_adj[x]:
                    if comp_id[y] != comp_id[x]:
                        pair = (x, y)
                        break
                if pair:
                    break
            if pair is None:
                return fail("cycles-disconnected")
            x, y = pair
            _cut(f_adj, x, min(f_adj[x]))
            _cut(f_adj, y, min(f_adj[y]))
            _link(f_adj, x, y)
            st.trace.append({"ev": "merge_cycles", "x": x, "y": y})
            continue

        paths = [seq for kind, seq in comps if kind == "path"]
        pseq = max(paths, key=lambda q: (len(q), -min(q)))
        x_set = set(pseq)
        path_covered = {v for kind, seq in comps if kind == "path" for v in seq}

        if len(pseq) == 1:
            # An isolated vertex cannot rotate; treat it as its own closure.
            st_a = st_b = None
            ends = [pseq[0]]
            witness_of = {pseq[0]: pseq}
        else:
            st_a = compute_end_set(eg, pseq)
            st_b = compute_end_set(eg, pseq[::-1])
            stats.rotations += len(st_a.pred) + len(st_b.pred)
            ends = sorted(st_a.end_set | st_b.end_set)
            witness_of = None
        stats.end_sizes.append(len(ends))

        def witness(x: int) -> list[int]:
            if witness_of is not None:
                return witness_of[x]
            if st_a is not None and x in st_a.end_set:
                return st_a.witness_path(x)
            return st_b.witness_path(x)

        in_x = bytearray(n)
        for v in x_set:
            in_x[v] = 1

        absorb = None  # (x, y) with y on a cycle component
        merge = None  # (x, y) with y on another path component
        for x in ends:
            for y in e_adj[x]:
                if in_x[y]:
                    continue
                if y not in path_covered:
                    absorb = (x, y)
                    break
                if merge is None:
                    merge = (x, y)
            if absorb:
                break

        if absorb is not None:
            x, y = absorb
            w = witness(x)
            ny = min(f_adj[y])
            _cut(f_adj, y, ny)
            _replace_path_edges(f_adj, pseq, w)
            _link(f_adj, x, y)
            st.trace.append({"ev": "absorb_cycle", "x": x, "y": y})
            continue

        if merge is not None:
            x, y = merge
            w = witness(x)
            dseq = comps[comp_id[y]][1]
            j = dseq.index(y)
            left, right = dseq[:j], dseq[j + 1 :]
            # absorb the longer side; tie goes to the side with the smaller far end
            take_left = len(left) > len(right) or (
                len(left) == len(right) and left and left[0] < right[-1]
            )
            if not left:
                take_left = False
            if not right:
                take_left = True
            absorbed = left[::-1] if take_left else right
            remainder = right if take_left else left
            if left:
                if take_left:
                    pass  # edge (left[-1], y) survives inside the absorbed side
                else:
                    _cut(f_adj, y, left[-1])
            if right:
                if take_left:
                    _cut(f_adj, y, right[0])
                else:
                    pass
            _replace_path_edges(f_adj, pseq, w)
            _link(f_adj, x, y)
            st.trace.append(
                {
                    "ev": "absorb_path" if not remainder else "split_path",
                    "x": x,
                    "y": y,
                    "remainder": len(remainder),
                }
            )
            continue

        # Every reachable endpoint sees only the path: walk them in random
        # order, querying the reserve and revealing withheld arcs.
        order = rng.permutation(len(ends))
        closed = False
        for idx in order:
            x = ends[int(idx)]
            if not query(x):
                continue
            if x not in st.revealed:
                st.revealed[x] = s.held_head(x)
                stats.arcs_revealed += 1
                st.trace.append({"ev": "reveal", "x": x, "head": st.revealed[x]})
            yx = st.revealed[x]
            wx = witness(x)[::-1]
            st_x = compute_end_set(eg, wx)
            stats.rotations += len(st_x.pred)
            if yx in st_x.end_set:
                wcyc = st_x.witness_path(yx)
                _replace_path_edges(f_adj, pseq, wcyc)
                _link(f_adj, x, yx)
                e = (min(x, yx), max(x, yx))
                new_edge = e not in e_set
                if new_edge:
                    e_set.add(e)
                    bisect.insort(e_adj[e[0]], e[1])
                    bisect.insort(e_adj[e[1]], e[0])
                    st.added_edges.append(e)
                if x not in st.used_arc_tails:
                    st.used_arc_tails.add(x)
                    stats.arcs_used += 1
                st.trace.append(
                    {"ev": "close", "x": x, "head": yx, "new_edge": new_edge}
                )
                closed = True
                break
        if not closed:
            return fail("no-closing-arc")


def _snapshot(n: int, f_adj) -> TwoMatching:
    edges = [(v, u) for v in range(n) for u in f_adj[v] if v < u]
    return two_matching_from_edges(n, edges)


def check_reservoir_discipline(result: HamiltonResult, s: SplitSample) -> bool:
    """Audit a finished reservoir run against the deferred-decision rules."""
    st = result.state
    if st is None:
        return False
    reserve_hidden = set(s.reserve) - set(s.restored)
    # membership bookkeeping is consistent
    if st.in_set != {x for x in st.checked if x in reserve_hidden}:
        return False
    if st.out_set != set(s.restored) | {x for x in st.checked if x not in reserve_hidden}:
        return False
    if st.in_set & st.out_set:
        return False
    if len(st.checked) != len(st.checked_set):
        return False
    # reveals: only for queried members, once each, with the sample's heads
    reveal_events = [ev for ev in st.trace if ev["ev"] == "reveal"]
    if len(reveal_events) != len({ev["x"] for ev in reveal_events}):
        return False
    for x, head in st.revealed.items():
        if x not in st.in_set or head != s.held_head(x):
            return False
    queried_before: set[int] = set()
    for ev in st.trace:
        if ev["ev"] == "query":
            queried_before.add(ev["x"])
        elif ev["ev"] == "reveal" and ev["x"] not in queried_before:
            return False
    # every edge added to the edge set is a revealed withheld arc
    for u, v in st.added_edges:
        ok = (st.revealed.get(u) == v and u in st.in_set) or (
            st.revealed.get(v) == u and v in st.in_set
        )
        if not ok:
            return False
    if not st.used_arc_tails <= set(st.revealed):
        return False
    if result.stats.arcs_used > len(st.in_set):
        return False
    return True


def run_practical(
    g: Graph,
    seed: int,
    restart_budget: int = 24,
    closure_budget: int | None = None,
) -> HamiltonResult:
    """Rotation heuristic over the full edge set: greedy growth, endpoint
    closure, cycle-extension, seeded restarts.  Fails when the budgets run out."""
    n = g.n
    stats = PipelineStats()
    if n < 3:
        return HamiltonResult("fail", None, "too-small", stats)
    rng = np.random.default_rng(seed)
    budget = closure_budget if closure_budget is not None else 64 + 8 * restart_budget

    def spent() -> bool:
        return len(stats.end_sizes) >= budget

    def closure(path, stop=None):
        state = compute_end_set(g, path, stop=stop)
        stats.rotations += len(state.pred)
        stats.end_sizes.append(len(state.end_set))
        return state

    def grow(path: list[int], in_path: bytearray) -> None:
        while True:
            moved = False
            for at_front in (False, True):
                tip = path[0] if at_front else path[-1]
                options = [u for u in g.adj[tip] if not in_path[u]]
                if options:
                    pick = options[int(rng.integers(len(options)))]
                    in_path[pick] = 1
                    if at_front:
                        path.insert(0, pick)
                    else:
                        path.append(pick)
                    moved = True
            if not moved:
                return

    for _ in range(restart_budget):
        if spent():
            break
        stats.iterations += 1
        start = int(rng.integers(n))
        path = [start]
        in_path = bytearray(n)
        in_path[start] = 1
        reanchors = 0
        while not spent():
            grow(path, in_path)
            if len(path) == n:
                closed = None
                state = None
                for anchored in (path, path[::-1]):
                    anchor = anchored[0]
                    state = closure(anchored, stop=lambda y: g.has_edge(y, anchor))
                    if state.stopped_at is not None:
                        closed = state.witness_path(state.stopped_at)
                        break
                if closed is not None:
                    assert verify_hamilton_cycle(g, closed)
                    return HamiltonResult("cycle", closed, None, stats)
                # spanning but unclosable from these anchors: re-anchor at a
                # random reachable endpoint a few times, then restart
                reanchors += 1
                ends = sorted(state.end_set)
                if reanchors > 6 or not ends:
                    break
                path = state.witness_path(ends[int(rng.integers(len(ends)))])[::-1]
                in_path = bytearray(n)
                for v in path:
                    in_path[v] = 1
                continue
            progressed = False
            for anchored in (path, path[::-1]):
                anchor = anchored[0]
                # an endpoint with a neighbor off the path extends it
                state = closure(
                    anchored,
                    stop=lambda y: any(not in_path[u] for u in g.adj[y]),
                )
                if state.stopped_at is not None:
                    y = state.stopped_at
                    path = state.witness_path(y)
                    out = [u for u in g.adj[y] if not in_path[u]]
                    pick = out[int(rng.integers(len(out)))]
                    path.append(pick)
                    in_path[pick] = 1
                    progressed = True
                    break
                # otherwise close a non-spanning cycle and reopen it at a
                # vertex that has an outside neighbor
                state = closure(anchored, stop=lambda y: g.has_edge(y, anchor))
                if state.stopped_at is not None:
                    cyc = state.witness_path(state.stopped_at)
                    for i, u in enumerate(cyc):
                        out = [w for w in g.adj[u] if not in_path[w]]
                        if not out:
                            continue
                        path = cyc[i + 1 :] + cyc[: i + 1]
                        pick = out[int(rng.integers(len(out)))]
                        path.append(pick)
                        in_path[pick] = 1
                        progressed = True
                        break
                if progressed:
                    break
            if not progressed:
                break
    return HamiltonResult("fail", None, "budget", stats)
