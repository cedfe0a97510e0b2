"""Rotation machinery: single rotations, endpoint-set closure, growth traces.

Given a path with a fixed first endpoint, a rotation picks an edge from the
other endpoint to an interior vertex and re-routes, producing a new spanning
path of the same vertex set with a new endpoint.  ``compute_end_set`` closes
under rotations breadth-first, keeping one witness path per reachable
endpoint; everything downstream (the pipeline, the diagnostics, the tests)
consumes that closure.

Paths are kept as numpy index arrays so that the per-rotation copy-and-
reverse is vectorized; the closure at n=1000 stays in the milliseconds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph


def rotate(path, chord, g: Graph | None = None) -> list[int]:
    """Apply one rotation and return the new vertex sequence.

    ``chord`` must join the non-fixed endpoint to an interior vertex; when a
    host graph is supplied the chord must be one of its edges.
    """
    path = list(path)
    if len(path) < 2:
        raise ValueError("path too short to rotate")
    a, b = chord
    endpoint = path[-1]
    if a == endpoint:
        pivot = b
    elif b == endpoint:
        pivot = a
    else:
        raise ValueError(f"chord {chord} not incident to the non-fixed endpoint")
    if g is not None and not g.has_edge(a, b):
        raise ValueError(f"chord {chord} is not a graph edge")
    try:
        i = path.index(pivot)
    except ValueError:
        raise ValueError(f"pivot {pivot} not on the path") from None
    if i == 0:
        raise ValueError("pivot is the fixed endpoint: that edge closes a cycle")
    return path[: i + 1] + path[i + 1 :][::-1]


@dataclass
class RotationState:
    """Closure of rotations from one fixed endpoint.

    ``levels[i]`` lists the endpoints first reached by exactly i rotations
    (level 0 is the input path's own free endpoint).  ``pred`` maps each
    reached endpoint to (parent endpoint, pivot vertex), and ``witness_path``
    reconstructs a full spanning path for any member of ``end_set``.
    """

    anchor: int
    path: list[int]
    vertex_set: frozenset[int]
    end_set: frozenset[int]
    pred: dict[int, tuple[int, int]]
    levels: list[list[int]]
    _witness: dict[int, np.ndarray]
    stopped_at: int | None = None

    def witness_path(self, endpoint: int) -> list[int]:
        if endpoint not in self._witness:
            raise KeyError(f"{endpoint} is not a reachable endpoint")
        return self._witness[endpoint].tolist()


def compute_end_set(g: Graph, path, anchor: int | None = None, stop=None) -> RotationState:
    """Breadth-first rotation closure with ``anchor`` (default: first vertex) fixed.

    With ``stop`` given, the closure halts as soon as a discovered endpoint
    satisfies it (recorded in ``stopped_at``); heuristic callers use this to
    avoid closing the whole set when any witness will do.
    """
    path = [int(v) for v in path]
    length = len(path)
    if length == 0:
        raise ValueError("empty path")
    if anchor is None:
        anchor = path[0]
    if path[0] != anchor:
        raise ValueError("path must start at the fixed endpoint")
    if len(set(path)) != length:
        raise ValueError("not a valid path: repeated vertex")
    for v in path:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside graph")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"not a valid path: ({a},{b}) is not an edge")

    xverts = np.asarray(path, dtype=np.int64)
    if length == 1:
        return RotationState(
            anchor=anchor,
            path=path,
            vertex_set=frozenset(path),
            end_set=frozenset(),
            pred={},
            levels=[[]],
            _witness={},
        )

    # Work in X-local indices: vertex xverts[i] has local id i along the input path.
    loc = {int(v): i for i, v in enumerate(path)}
    ladj: list[list[int]] = [
        [loc[u] for u in g.adj[v] if u in loc] for v in path
    ]

    arr0 = np.arange(length, dtype=np.int32)  # local path = identity
    pos0 = np.arange(length, dtype=np.int32)
    seen = bytearray(length)
    seen[length - 1] = 1
    pred: dict[int, tuple[int, int]] = {}
    witness: dict[int, np.ndarray] = {path[-1]: xverts.copy()}
    levels: list[list[int]] = [[path[-1]]]
    frontier = [(length - 1, arr0, pos0)]
    stopped_at = None
    if stop is not None and stop(path[-1]):
        stopped_at = path[-1]
        frontier = []

    while frontier:
        nxt: list[tuple[int, np.ndarray, np.ndarray]] = []
        for y_loc, arr, pos in frontier:
            y_global = path[y_loc]
            for u_loc in ladj[y_loc]:
                i = pos[u_loc]
                if i == 0:
                    continue  # edge back to the anchor closes a cycle
                w_loc = arr[i + 1]
                if seen[w_loc]:
                    continue
                seen[w_loc] = 1
                new_arr = np.empty_like(arr)
                new_arr[: i + 1] = arr[: i + 1]
                new_arr[i + 1 :] = arr[:i:-1]
                new_pos = pos.copy()
                new_pos[new_arr[i + 1 :]] = np.arange(i + 1, length, dtype=np.int32)
                w_global = path[w_loc]
                pred[w_global] = (y_global, path[u_loc])
                witness[w_global] = xverts[new_arr]
                nxt.append((int(w_loc), new_arr, new_pos))
                if stop is not None and stop(w_global):
                    stopped_at = w_global
                    break
            if stopped_at is not None:
                break
        if stopped_at is not None:
            nxt.sort(key=lambda item: path[item[0]])
            levels.append([path[w] for w, _, _ in nxt])
            break
        if not nxt:
            break
        nxt.sort(key=lambda item: path[item[0]])
        levels.append([path[w] for w, _, _ in nxt])
        frontier = nxt

    return RotationState(
        anchor=anchor,
        path=path,
        vertex_set=frozenset(path),
        end_set=frozenset(witness),
        pred=pred,
        levels=levels,
        _witness=witness,
        stopped_at=stopped_at,
    )


def check_posa_condition(g: Graph, path, s) -> bool:
    """Boundary condition: any path vertex outside ``s`` with a neighbor in
    ``s`` must itself have a path-neighbor in ``s``."""
    sset = set(s)
    pverts = set(path)
    if not sset <= pverts:
        raise ValueError("s must be a subset of the path's vertices")
    length = len(path)
    for i, v in enumerate(path):
        if v in sset:
            continue
        if any(u in sset for u in g.adj[v]):
            left = i > 0 and path[i - 1] in sset
            right = i < length - 1 and path[i + 1] in sset
            if not (left or right):
                return False
    return True


def growth_trace(state: RotationState) -> list[tuple[int, int]]:
    """Per-level (|T_i|, slack) where slack = max(0, 2|T_i| - |T_{i+1}|)."""
    sizes = [len(level) for level in state.levels]
    trace = []
    for i, size in enumerate(sizes):
        nxt = sizes[i + 1] if i + 1 < len(sizes) else 0
        trace.append((size, max(0, 2 * size - nxt)))
    return trace


def stage2_partition(path, end_set):
    """Split the endpoint set by its runs along the path.

    Returns (singles, runs, run_boundary, single_boundary): endpoints whose
    maximal run of consecutive path positions has length one vs. longer, and
    the path-neighbors bordering each kind.
    """
    sset = set(end_set)
    length = len(path)
    in_s = [v in sset for v in path]
    singles: set[int] = set()
    runs: set[int] = set()
    i = 0
    while i < length:
        if not in_s[i]:
            i += 1
            continue
        j = i
        while j + 1 < length and in_s[j + 1]:
            j += 1
        members = {path[t] for t in range(i, j + 1)}
        if i == j:
            singles |= members
        else:
            runs |= members
        i = j + 1
    single_boundary = set()
    run_boundary = set()
    for i, v in enumerate(path):
        for j in (i - 1, i + 1):
            if 0 <= j < length:
                if path[j] in singles:
                    single_boundary.add(v)
                if path[j] in runs and v not in sset:
                    run_boundary.add(v)
    return singles, runs, run_boundary, single_boundary


def check_singleton_separation(g: Graph, path, end_set) -> bool:
    """No edge may join a singleton-run endpoint to any member of the endpoint
    set (a consequence of the boundary condition for closed endpoint sets)."""
    singles, _, _, _ = stage2_partition(path, end_set)
    sset = set(end_set)
    for u in singles:
        for w in g.adj[u]:
            if w in sset:
                return False
    return True
