"""Samplers for the m-out random digraph and its reserve-split decomposition.

The split sampler draws a digraph in which a random set of k = ceil(n/sqrt(log n))
vertices ("the reserve") place only two out-arcs, everyone else places three,
and a separate k-tuple of uniform heads determines the withheld third arcs.
Reserve vertices that end up with no incoming arc get their third arc restored
immediately; the rest of the withheld arcs stay hidden until the cycle-closing
stage of the pipeline asks for them one at a time.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field

import numpy as np

from .constants import reserved_count
from .graphs import Digraph, Graph, underlying_graph


def derive_seed(master_seed: int, *parts: int) -> int:
    """Stable 64-bit stream seed from a master seed and integer coordinates.

    blake2b over the packed inputs, so re-ordering or parallelizing trials can
    never change which stream a trial sees.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<q", master_seed))
    for p in parts:
        h.update(struct.pack("<q", p))
    return int.from_bytes(h.digest(), "little")


def sample_m_out(n: int, m: int, seed: int) -> Digraph:
    """Each vertex independently draws m uniform heads (with replacement)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    rng = np.random.default_rng(seed)
    heads = rng.integers(0, n, size=(n, m), dtype=np.int64)
    return Digraph(n, [row.tolist() for row in heads])


@dataclass
class SplitSample:
    """A split draw: base digraph, reserve bookkeeping, and derived objects.

    ``base`` has out-degree 2 exactly on ``reserve`` and 3 elsewhere.
    ``reserve_heads[i]`` is the withheld head of ``reserve[i]`` (sorted order).
    ``restored`` are the reserve vertices with no incoming base arc; their
    third arc is added back up front (``restored_arcs``), while ``held_arcs``
    stay out of the working digraph until revealed.
    """

    n: int
    k: int
    seed: int
    base: Digraph
    reserve: list[int]
    reserve_heads: np.ndarray
    restored: frozenset[int]
    restored_arcs: list[tuple[int, int]]
    held_arcs: list[tuple[int, int]]
    working: Digraph
    working_graph: Graph
    held_edges: set[tuple[int, int]]
    _head_of: dict[int, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._head_of is None:
            object.__setattr__(
                self,
                "_head_of",
                {v: int(h) for v, h in zip(self.reserve, self.reserve_heads)},
            )

    def held_head(self, v: int) -> int:
        """Head of the withheld third arc of reserve vertex v."""
        if v not in self._head_of or v in self.restored:
            raise KeyError(f"vertex {v} has no withheld arc")
        return self._head_of[v]

    def reassembled(self) -> Digraph:
        """base + restored + held arcs: a digraph with all out-degrees 3."""
        out = [list(heads) for heads in self.base.out]
        for v, h in self.restored_arcs:
            out[v].append(h)
        for v, h in self.held_arcs:
            out[v].append(h)
        return Digraph(self.n, out)


def sample_split(n: int, seed: int) -> SplitSample:
    if n < 3:
        raise ValueError(f"need n >= 3 for a split sample, got {n}")
    k = reserved_count(n)
    rng = np.random.default_rng(seed)

    # Fisher-Yates prefix: the first k entries of a seeded permutation.
    reserve = sorted(int(v) for v in rng.permutation(n)[:k])
    in_reserve = np.zeros(n, dtype=bool)
    in_reserve[reserve] = True

    heads = rng.integers(0, n, size=(n, 3), dtype=np.int64)
    out = [
        heads[v, :2].tolist() if in_reserve[v] else heads[v].tolist()
        for v in range(n)
    ]
    base = Digraph(n, out)

    reserve_heads = rng.integers(0, n, size=k, dtype=np.int64)

    indeg = base.in_degrees()
    restored = frozenset(v for v in reserve if indeg[v] == 0)
    restored_arcs = []
    held_arcs = []
    for v, h in zip(reserve, reserve_heads):
        (restored_arcs if v in restored else held_arcs).append((v, int(h)))

    working_out = [list(hs) for hs in base.out]
    for v, h in restored_arcs:
        working_out[v].append(h)
    working = Digraph(n, working_out)
    working_graph = underlying_graph(working)
    held_edges = {
        (min(v, h), max(v, h)) for v, h in held_arcs if v != h
    }

    return SplitSample(
        n=n,
        k=k,
        seed=seed,
        base=base,
        reserve=reserve,
        reserve_heads=reserve_heads,
        restored=restored,
        restored_arcs=restored_arcs,
        held_arcs=held_arcs,
        working=working,
        working_graph=working_graph,
        held_edges=held_edges,
    )
