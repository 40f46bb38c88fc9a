"""Vertices that can reach a target, found by BFS on the reverse adjacency."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .graph import DirectedGraph


@dataclass(frozen=True)
class ReachSet:
    """Every vertex with a directed path to ``target`` (target excluded).

    ``members`` is sorted ascending.
    """

    target: int
    members: tuple
    rv_seconds: float = 0.0

    @property
    def size(self) -> int:
        return len(self.members)

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self._lookup

    def __len__(self) -> int:
        return len(self.members)


def compute_rv(g: DirectedGraph, r: int) -> ReachSet:
    """BFS from ``r`` over the in-neighbour lists. Weights play no part."""
    t0 = time.perf_counter()
    radj = g.in_lists
    seen = bytearray(g.n)
    seen[r] = 1
    found = []
    queue = deque((r,))
    while queue:
        v = queue.popleft()
        for u in radj[v]:
            if not seen[u]:
                seen[u] = 1
                found.append(u)
                queue.append(u)
    found.sort()
    return ReachSet(r, tuple(found), time.perf_counter() - t0)


def rv_ratio(rs: ReachSet, g: DirectedGraph) -> float:
    return rs.size / g.n
