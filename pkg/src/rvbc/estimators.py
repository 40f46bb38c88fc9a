"""Single-vertex betweenness: exact, sampled, and the threshold dispatcher.

All estimators share one shape: find the vertices that can reach the
target, then sum the dependencies of (some of) them on the target. Sources
outside that set never have a shortest path through the target, so they are
skipped entirely.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .dependency import target_dependencies
from .graph import DirectedGraph
from .reachability import ReachSet, compute_rv

EXACT = "exact"
APPROXIMATE = "approximate"
DEFAULT_TAU = 1000


@dataclass(frozen=True)
class BcEstimate:
    target: int
    score: float
    mode: str
    samples_used: int
    rv_size: int
    rv_seconds: float
    compute_seconds: float
    rng_seed: Optional[int] = None

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def to_dict(self, label: Optional[int] = None) -> dict:
        """JSON-ready record; ``label`` replaces the dense target id."""
        return {
            "target": self.target if label is None else label,
            "score": self.score,
            "mode": self.mode,
            "rv_size": self.rv_size,
            "samples": self.samples_used,
            "rv_seconds": self.rv_seconds,
            "compute_seconds": self.compute_seconds,
            "seed": self.rng_seed,
        }


@dataclass(frozen=True)
class SamplingPlan:
    epsilon: float
    delta: float
    K: float
    rv_size: int
    required_samples: int

    def failure_bound(self, samples: Optional[int] = None) -> float:
        """Hoeffding bound on P(|estimate - BC| > epsilon) for ``samples`` draws."""
        t = self.required_samples if samples is None else samples
        return hoeffding_bound(t, self.epsilon, self.K, self.rv_size)


def sampler(seed: int) -> np.random.Generator:
    """Seeded generator on the Philox counter-based bit generator.

    ``Generator.integers`` draws bounded integers by rejection, so indices
    are exactly uniform.
    """
    return np.random.Generator(np.random.Philox(seed))


def dependencies_on(g: DirectedGraph, sources: Iterable[int], r: int,
                    workers: int = 1) -> dict[int, float]:
    """Dependency on ``r`` of each distinct source, optionally on a process pool."""
    distinct = sorted(set(sources))
    if workers <= 1 or len(distinct) < 2 * workers:
        return dict(zip(distinct, target_dependencies(g, distinct, r)))
    chunks = [c.tolist() for c in np.array_split(np.asarray(distinct), workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(target_dependencies, [g] * len(chunks), chunks, [r] * len(chunks))
        values = [x for part in parts for x in part]
    return dict(zip(distinct, values))


def exact_from_rv(g: DirectedGraph, rs: ReachSet, workers: int = 1) -> BcEstimate:
    """Exact score given an already computed reach set.

    Sources are summed in ascending order whatever the worker count.
    """
    t0 = time.perf_counter()
    deps = dependencies_on(g, rs.members, rs.target, workers)
    score = math.fsum(deps[s] for s in rs.members)
    return BcEstimate(rs.target, score, EXACT, 0, rs.size, rs.rv_seconds,
                      time.perf_counter() - t0)


def sample_from_rv(g: DirectedGraph, rs: ReachSet, samples: int, seed: int,
                   workers: int = 1) -> BcEstimate:
    """Uniform-with-replacement estimate from an already computed reach set."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    t0 = time.perf_counter()
    if rs.size == 0:
        return BcEstimate(rs.target, 0.0, APPROXIMATE, 0, 0, rs.rv_seconds, 0.0, seed)
    # The whole draw happens before any work, so parallelism cannot change it.
    picks = sampler(seed).integers(0, rs.size, size=samples)
    members = rs.members
    drawn = [members[i] for i in picks.tolist()]
    deps = dependencies_on(g, drawn, rs.target, workers)
    total = math.fsum(deps[s] for s in drawn)
    score = (rs.size / samples) * total
    return BcEstimate(rs.target, score, APPROXIMATE, samples, rs.size, rs.rv_seconds,
                      time.perf_counter() - t0, seed)


def _sink_estimate(r: int, mode: str, seed: Optional[int] = None) -> BcEstimate:
    # Out-degree 0: no shortest path leaves r, so the score is 0 and the reach
    # set is never computed (rv_size is reported as 0).
    return BcEstimate(r, 0.0, mode, 0, 0, 0.0, 0.0, seed)


def ebcd(g: DirectedGraph, r: int, workers: int = 1) -> BcEstimate:
    """Exact betweenness of ``r`` summing only over sources that reach it."""
    if g.out_degree(r) == 0:
        return _sink_estimate(r, EXACT)
    return exact_from_rv(g, compute_rv(g, r), workers)


def abcd(g: DirectedGraph, r: int, T: int, seed: int, workers: int = 1) -> BcEstimate:
    """Unbiased estimate of the betweenness of ``r`` from ``T`` sampled sources.

    Sources are drawn uniformly with replacement from the vertices that reach
    ``r`` and the summed dependencies are scaled by ``|RV(r)| / T``.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    if g.out_degree(r) == 0:
        return _sink_estimate(r, APPROXIMATE, seed)
    return sample_from_rv(g, compute_rv(g, r), T, seed, workers)


def bcd(g: DirectedGraph, r: int, tau: int = DEFAULT_TAU, seed: int = 0,
        samples: Optional[int] = None, epsilon: Optional[float] = None,
        delta: Optional[float] = None, K: Optional[float] = None,
        workers: int = 1) -> BcEstimate:
    """Exact when at most ``tau`` vertices reach ``r``, sampled otherwise.

    The sampled branch uses ``samples`` draws if given; else, when both
    ``epsilon`` and ``delta`` are given, the Hoeffding sample count (``K``
    defaults to ``n - 2``); else ``tau`` draws.
    """
    if tau < 1:
        raise ValueError("tau must be >= 1")
    if g.out_degree(r) == 0:
        return _sink_estimate(r, EXACT)
    rs = compute_rv(g, r)
    if rs.size <= tau:
        return exact_from_rv(g, rs, workers)
    if samples is None:
        if epsilon is not None and delta is not None:
            k = default_k(g) if K is None else K
            samples = required_samples(epsilon, delta, k, rs.size).required_samples
        else:
            samples = tau
    return sample_from_rv(g, rs, samples, seed, workers)


def default_k(g: DirectedGraph) -> float:
    """Largest possible dependency of one source on one vertex: ``n - 2``."""
    return float(max(g.n - 2, 1))


def hoeffding_bound(T: int, epsilon: float, K: float, rv_size: int) -> float:
    """2 exp(-2 T (epsilon / (K |RV|))^2)."""
    if rv_size == 0:
        return 0.0
    return min(1.0, 2.0 * math.exp(-2.0 * T * (epsilon / (K * rv_size)) ** 2))


def required_samples(epsilon: float, delta: float, K: float, rv_size: int) -> SamplingPlan:
    """Smallest T with ln(2/delta) K^2 |RV|^2 / (2 epsilon^2) <= T."""
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if not K > 0:
        raise ValueError("K must be > 0")
    if rv_size < 0:
        raise ValueError("rv_size must be >= 0")
    bound = math.log(2.0 / delta) * K * K * rv_size * rv_size / (2.0 * epsilon * epsilon)
    # shave a few ulps so closed forms that land on an integer are not bumped up
    t = max(1, math.ceil(bound * (1.0 - 4 * np.finfo(float).eps)))
    return SamplingPlan(epsilon, delta, K, rv_size, t)


def uniform_source_baseline(g: DirectedGraph, r: int, T: int, seed: int) -> BcEstimate:
    """Estimate from ``T`` sources drawn uniformly from all vertices but ``r``.

    No reachability pruning: the scale factor is ``n - 1``.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    t0 = time.perf_counter()
    if g.n < 2:
        return BcEstimate(r, 0.0, APPROXIMATE, 0, 0, 0.0, 0.0, seed)
    picks = sampler(seed).integers(0, g.n - 1, size=T).tolist()
    drawn = [p + 1 if p >= r else p for p in picks]
    deps = dependencies_on(g, drawn, r)
    total = math.fsum(deps[s] for s in drawn)
    score = ((g.n - 1) / T) * total
    return BcEstimate(r, score, APPROXIMATE, T, g.n - 1, 0.0, time.perf_counter() - t0, seed)


def empirical_error(approx: float, exact: float) -> Optional[float]:
    """Relative error in percent; ``None`` when undefined (exact 0, approx not)."""
    if exact == 0:
        return 0.0 if approx == 0 else None
    return abs(approx - exact) / abs(exact) * 100.0
