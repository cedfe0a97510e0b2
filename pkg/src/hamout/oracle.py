"""Brute-force ground truths for small instances.

These run inside property-test loops, so every routine keeps a hard size cap
chosen to finish in well under a second at the cap.
"""

from __future__ import annotations

from .graphs import Graph, connected_components


def _adj_masks(g: Graph, vertices=None) -> tuple[list[int], dict[int, int]]:
    verts = list(range(g.n)) if vertices is None else sorted(vertices)
    index = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for v in verts:
        for u in g.adj[v]:
            if u in index:
                masks[index[v]] |= 1 << index[u]
    return masks, index


def brute_hamiltonian(g: Graph) -> bool:
    """Exact Hamiltonicity: bitmask DP up to n=20, pruned backtracking to 40."""
    n = g.n
    if n > 40:
        raise ValueError(f"n={n} beyond oracle cap 40")
    if n == 1:
        return False
    if n == 2:
        return False
    if min(len(a) for a in g.adj) < 2:
        return False
    if len(connected_components(g)) != 1:
        return False
    if n <= 20:
        return _hamiltonian_dp(g)
    return _hamiltonian_backtrack(g)


def _hamiltonian_dp(g: Graph) -> bool:
    n = g.n
    masks, _ = _adj_masks(g)
    # dp[visited] = bitset of reachable endpoints of paths from vertex 0
    size = 1 << n
    dp = [0] * size
    dp[1] = 1  # path = just vertex 0
    adj0 = masks[0]
    for visited in range(1, size):
        ends = dp[visited]
        if not ends:
            continue
        if visited == size - 1:
            if ends & adj0:
                return True
            continue
        while ends:
            vbit = ends & -ends
            ends ^= vbit
            v = vbit.bit_length() - 1
            ext = masks[v] & ~visited
            while ext:
                wbit = ext & -ext
                ext ^= wbit
                dp[visited | wbit] |= wbit
    return False


def _hamiltonian_backtrack(g: Graph) -> bool:
    n = g.n
    masks, _ = _adj_masks(g)
    full = (1 << n) - 1
    seen_states: set[tuple[int, int]] = set()

    def connected_enough(visited: int, cur: int) -> bool:
        # every unvisited vertex must keep degree >= 2 into unvisited+cur+start
        rest = full & ~visited
        allowed = rest | (1 << cur) | 1
        r = rest
        while r:
            b = r & -r
            r ^= b
            v = b.bit_length() - 1
            if (masks[v] & allowed).bit_count() < 2:
                return False
        return True

    def dfs(cur: int, visited: int) -> bool:
        if visited == full:
            return bool(masks[cur] & 1)
        key = (cur, visited)
        if key in seen_states:
            return False
        if not connected_enough(visited, cur):
            seen_states.add(key)
            return False
        ext = masks[cur] & ~visited
        while ext:
            b = ext & -ext
            ext ^= b
            if dfs(b.bit_length() - 1, visited | b):
                return True
        seen_states.add(key)
        return False

    return dfs(0, 1)


def brute_max_two_matching(g: Graph) -> int:
    """Exact maximum size over all degree-<=2 edge subsets (|E| <= 24)."""
    edges = g.edges()
    m = len(edges)
    if m > 24:
        raise ValueError(f"|E|={m} beyond oracle cap 24")
    cap = [2] * g.n
    best = 0

    def dfs(i: int, count: int) -> None:
        nonlocal best
        if count + (m - i) <= best:
            return
        if i == m:
            best = max(best, count)
            return
        u, v = edges[i]
        if cap[u] > 0 and cap[v] > 0:
            cap[u] -= 1
            cap[v] -= 1
            dfs(i + 1, count + 1)
            cap[u] += 1
            cap[v] += 1
        dfs(i + 1, count)

    dfs(0, 0)
    return best


def brute_spanning_path_endpoints(g: Graph, vertices, start: int) -> set[int]:
    """All y such that g restricted to ``vertices`` has a Hamilton path start->y.

    Exhaustive DFS over (visited set, endpoint) states, memoized as a bitmask
    DP so repeat states are not re-explored.  |vertices| <= 15.
    """
    verts = sorted(vertices)
    if len(verts) > 15:
        raise ValueError(f"|X|={len(verts)} beyond oracle cap 15")
    if start not in set(verts):
        raise ValueError("start vertex must belong to the vertex set")
    masks, index = _adj_masks(g, verts)
    nloc = len(verts)
    s = index[start]
    size = 1 << nloc
    dp = [0] * size
    dp[1 << s] = 1 << s
    full = size - 1
    for visited in range(size):
        ends = dp[visited]
        if not ends or not (visited >> s) & 1:
            continue
        while ends:
            vbit = ends & -ends
            ends ^= vbit
            v = vbit.bit_length() - 1
            ext = masks[v] & ~visited
            while ext:
                wbit = ext & -ext
                ext ^= wbit
                dp[visited | wbit] |= wbit
    result = set()
    final = dp[full]
    while final:
        b = final & -final
        final ^= b
        i = b.bit_length() - 1
        if i != s or nloc == 1:
            result.add(verts[i])
    return result
