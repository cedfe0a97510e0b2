"""Maximum cardinality matching in general graphs (Edmonds' blossom search).

Array-based and iterative; one alternating BFS per exposed vertex with
blossom contraction tracked through a ``base`` array.  A root that admits no
augmenting path now never will, so each exposed vertex is searched once.
Callers can pass a warm-start matching to cut the number of searches.
"""

from __future__ import annotations


def _lca(mate, p, base, mark, stamp, a, b):
    x = base[a]
    while True:
        mark[x] = stamp
        mx = mate[x]
        if mx == -1:
            break
        x = base[p[mx]]
    y = base[b]
    while mark[y] != stamp:
        y = base[p[mate[y]]]
    return y


def _mark_blossom(mate, p, base, bmark, stamp, v, b, child):
    while base[v] != b:
        bmark[base[v]] = stamp
        bmark[base[mate[v]]] = stamp
        p[v] = child
        child = mate[v]
        v = p[child]


def max_cardinality_matching(
    n: int, adj: list[list[int]], mate: list[int] | None = None
) -> list[int]:
    """Return the mate array of a maximum matching (-1 marks exposed vertices).

    ``adj`` must be symmetric.  ``mate``, when given, must be a valid matching;
    it is not mutated.
    """
    if mate is None:
        mate = [-1] * n
    else:
        mate = list(mate)
    # Greedy completion of the warm start.
    for v in range(n):
        if mate[v] == -1:
            for u in adj[v]:
                if mate[u] == -1:
                    mate[v] = u
                    mate[u] = v
                    break

    p = [-1] * n
    base = list(range(n))
    lca_mark = [0] * n
    bloss_mark = [0] * n
    stamp = 0

    def find_augmenting(root: int) -> int:
        nonlocal stamp
        for i in range(n):
            p[i] = -1
            base[i] = i
        in_queue = bytearray(n)
        in_queue[root] = 1
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for u in adj[v]:
                if base[u] == base[v] or mate[v] == u:
                    continue
                if u == root or (mate[u] != -1 and p[mate[u]] != -1):
                    # u is an outer vertex: contract the blossom through v-u.
                    stamp += 1
                    cur = _lca(mate, p, base, lca_mark, stamp, v, u)
                    stamp += 1
                    _mark_blossom(mate, p, base, bloss_mark, stamp, v, cur, u)
                    _mark_blossom(mate, p, base, bloss_mark, stamp, u, cur, v)
                    for i in range(n):
                        if bloss_mark[base[i]] == stamp:
                            base[i] = cur
                            if not in_queue[i]:
                                in_queue[i] = 1
                                queue.append(i)
                elif p[u] == -1:
                    p[u] = v
                    if mate[u] == -1:
                        return u
                    w = mate[u]
                    if not in_queue[w]:
                        in_queue[w] = 1
                        queue.append(w)
        return -1

    for v in range(n):
        if mate[v] == -1:
            end = find_augmenting(v)
            if end != -1:
                while end != -1:
                    pv = p[end]
                    ppv = mate[pv]
                    mate[end] = pv
                    mate[pv] = end
                    end = ppv
    return mate
