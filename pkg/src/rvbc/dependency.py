"""Brandes dependency accumulation and all-vertices betweenness."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .graph import DirectedGraph
from .spd import ShortestPathDag, build_spd


@dataclass(frozen=True)
class DependencyVector:
    """Dependencies of one source on every vertex it reaches.

    ``delta`` is keyed by reachable vertices only; everything else has
    dependency 0. The source itself is always reported as 0.
    """

    source: int
    n: int
    delta: dict

    def __getitem__(self, v: int) -> float:
        return self.delta.get(v, 0.0)

    def as_array(self) -> np.ndarray:
        out = np.zeros(self.n)
        if self.delta:
            keys = np.fromiter(self.delta.keys(), dtype=np.int64, count=len(self.delta))
            vals = np.fromiter(self.delta.values(), dtype=np.float64, count=len(self.delta))
            out[keys] = vals
        return out


def accumulate(spd: ShortestPathDag) -> DependencyVector:
    """Back-propagate dependencies over the settle order, last vertex first."""
    sigma = spd.sigma
    preds = spd.preds
    delta = dict.fromkeys(spd.order, 0.0)
    for w in reversed(spd.order):
        coeff = (1.0 + delta[w]) / sigma[w]
        for v in preds[w]:
            delta[v] += sigma[v] * coeff
    delta[spd.source] = 0.0
    return DependencyVector(spd.source, spd.n, delta)


def dependency_on_target(spd: ShortestPathDag, r: int) -> float:
    if r == spd.source or not spd.reaches(r):
        return 0.0
    return accumulate(spd)[r]


def source_dependency(g: DirectedGraph, s: int, r: int) -> float:
    """Dependency of source ``s`` on vertex ``r``."""
    return dependency_on_target(build_spd(g, s), r)


def target_dependencies(g: DirectedGraph, sources: Sequence[int], r: int,
                        compiled: bool = True) -> list[float]:
    """Dependency on ``r`` of each source in ``sources`` (same order).

    Unweighted graphs go through the compiled fused kernel when numba is
    available; otherwise each source gets a full SPD and accumulation.
    """
    kernel = _kernels.dependencies_unweighted
    if compiled and kernel is not None and not g.weighted and len(sources):
        arr = np.asarray(sources, dtype=np.int64)
        return kernel(g.fwd_ptr, g.fwd_idx, arr, int(r)).tolist()
    return [source_dependency(g, s, r) for s in sources]


def _partial_betweenness(g: DirectedGraph, sources: Sequence[int],
                         compiled: bool = True) -> np.ndarray:
    kernel = _kernels.betweenness_unweighted
    if compiled and kernel is not None and not g.weighted:
        return kernel(g.fwd_ptr, g.fwd_idx, np.asarray(sources, dtype=np.int64))
    bc = np.zeros(g.n)
    for s in sources:
        dv = accumulate(build_spd(g, s))
        for v, d in dv.delta.items():
            bc[v] += d
    return bc


def betweenness_all(g: DirectedGraph, workers: int = 1,
                    sources: Optional[Iterable[int]] = None,
                    compiled: bool = True) -> np.ndarray:
    """Raw (unnormalized) betweenness of every vertex.

    ``sources`` restricts the outer sum (default: all vertices). With
    ``workers > 1`` the sources are split into contiguous chunks that run in
    separate processes; partial vectors are summed in chunk order, so the
    result for a given worker count is reproducible. ``compiled=False``
    forces the SPD-and-accumulate path even on unweighted graphs.
    """
    srcs = list(range(g.n)) if sources is None else list(sources)
    if workers <= 1 or len(srcs) < 2:
        return _partial_betweenness(g, srcs, compiled)
    chunks = [c.tolist() for c in np.array_split(np.asarray(srcs), workers) if len(c)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_partial_betweenness, [g] * len(chunks), chunks,
                              [compiled] * len(chunks)))
    total = np.zeros(g.n)
    for part in parts:
        total += part
    return total


def top_vertices(bc: np.ndarray, k: int = 1) -> list[int]:
    """Dense indices of the ``k`` highest scores, ties broken by index."""
    order = np.lexsort((np.arange(len(bc)), -bc))
    return order[:k].tolist()
