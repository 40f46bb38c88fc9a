"""Shortest-path DAGs rooted at a single source.

Per-vertex state is kept in dicts keyed by the vertices the traversal actually
reaches, so building an SPD costs time proportional to the part of the graph
it touches rather than to ``n``.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass

from .graph import DirectedGraph

INF = math.inf

# Relative tolerance used to decide that two weighted path lengths are equal.
TIE_RTOL = 1e-9


def same_length(a: float, b: float) -> bool:
    return abs(a - b) <= TIE_RTOL * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class ShortestPathDag:
    """All shortest paths out of ``source``.

    ``dist``, ``sigma`` and ``preds`` only hold entries for reachable vertices;
    use the accessor methods to get the unreachable defaults (``inf``, ``0``,
    no predecessors). ``order`` is the settle order, which is a topological
    order of the predecessor DAG.

    Path counts are floats. Counts above 2**53 are no longer exact.
    """

    source: int
    n: int
    dist: dict
    sigma: dict
    preds: dict
    order: list

    def distance(self, v: int) -> float:
        return self.dist.get(v, INF)

    def path_count(self, v: int) -> float:
        return self.sigma.get(v, 0.0)

    def predecessors(self, v: int) -> list:
        return self.preds.get(v, [])

    def reaches(self, v: int) -> bool:
        return v in self.dist

    def __len__(self) -> int:
        return len(self.order)


def build_spd_unweighted(g: DirectedGraph, s: int) -> ShortestPathDag:
    """BFS shortest-path DAG; edge weights, if any, are ignored."""
    adj = g.out_lists
    dist = {s: 0}
    sigma = {s: 1.0}
    preds: dict[int, list[int]] = {s: []}
    order = []
    queue = deque((s,))
    pop, push, settle = queue.popleft, queue.append, order.append
    while queue:
        v = pop()
        settle(v)
        dnext = dist[v] + 1
        sv = sigma[v]
        for w in adj[v]:
            dw = dist.get(w)
            if dw is None:
                dist[w] = dnext
                sigma[w] = sv
                preds[w] = [v]
                push(w)
            elif dw == dnext:
                sigma[w] += sv
                preds[w].append(v)
    return ShortestPathDag(s, g.n, dist, sigma, preds, order)


def build_spd_weighted(g: DirectedGraph, s: int) -> ShortestPathDag:
    """Dijkstra shortest-path DAG for positive edge weights.

    Two tentative lengths within ``TIE_RTOL`` (relative) count as equal, so
    both predecessors are kept and their path counts are added. On graphs
    without weights every edge has length 1.
    """
    adj = g.out_lists
    wts = g.weight_lists
    if wts is None:
        wts = [[1.0] * len(row) for row in adj]
    tentative = {s: 0.0}
    sigma = {s: 1.0}
    preds: dict[int, list[int]] = {s: []}
    dist: dict[int, float] = {}
    order = []
    heap = [(0.0, s)]
    while heap:
        d, v = heapq.heappop(heap)
        if v in dist or d != tentative[v]:
            continue
        dist[v] = d
        order.append(v)
        sv = sigma[v]
        for w, wt in zip(adj[v], wts[v]):
            if w in dist:
                continue
            alt = d + wt
            cur = tentative.get(w)
            if cur is None or (alt < cur and not same_length(alt, cur)):
                tentative[w] = alt
                sigma[w] = sv
                preds[w] = [v]
                heapq.heappush(heap, (alt, w))
            elif same_length(alt, cur):
                sigma[w] += sv
                preds[w].append(v)
    return ShortestPathDag(s, g.n, dist, sigma, preds, order)


def build_spd(g: DirectedGraph, s: int) -> ShortestPathDag:
    """Weighted SPD when ``g`` carries weights, BFS SPD otherwise."""
    if g.weighted:
        return build_spd_weighted(g, s)
    return build_spd_unweighted(g, s)
