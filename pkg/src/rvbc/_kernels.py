"""Compiled single-target dependency kernel for unweighted graphs.

Fuses BFS and the backward sweep and only returns the dependency on one
target. Scratch arrays are allocated once per call and reset vertex by
vertex, so each source costs time proportional to what its BFS touches.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - the pure-Python path takes over
    njit = None


def _dependencies_unweighted(ptr, idx, sources, r):
    n = len(ptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.float64)
    delta = np.zeros(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    out = np.zeros(len(sources), dtype=np.float64)
    for k in range(len(sources)):
        s = sources[k]
        if s == r:
            continue
        head = 0
        tail = 1
        order[0] = s
        dist[s] = 0
        sigma[s] = 1.0
        while head < tail:
            v = order[head]
            head += 1
            dn = dist[v] + 1
            sv = sigma[v]
            for e in range(ptr[v], ptr[v + 1]):
                w = idx[e]
                if dist[w] < 0:
                    dist[w] = dn
                    order[tail] = w
                    tail += 1
                    sigma[w] = sv
                elif dist[w] == dn:
                    sigma[w] += sv
        dr = dist[r]
        if dr > 0:
            # only vertices at least as deep as r can feed its dependency
            for i in range(tail - 1, -1, -1):
                v = order[i]
                if dist[v] < dr:
                    break
                dn = dist[v] + 1
                acc = 0.0
                for e in range(ptr[v], ptr[v + 1]):
                    w = idx[e]
                    if dist[w] == dn:
                        acc += (1.0 + delta[w]) / sigma[w]
                delta[v] = sigma[v] * acc
            out[k] = delta[r]
        for i in range(tail):
            v = order[i]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
    return out


def _betweenness_unweighted(ptr, idx, sources):
    n = len(ptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.float64)
    delta = np.zeros(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    bc = np.zeros(n, dtype=np.float64)
    for k in range(len(sources)):
        s = sources[k]
        head = 0
        tail = 1
        order[0] = s
        dist[s] = 0
        sigma[s] = 1.0
        while head < tail:
            v = order[head]
            head += 1
            dn = dist[v] + 1
            sv = sigma[v]
            for e in range(ptr[v], ptr[v + 1]):
                w = idx[e]
                if dist[w] < 0:
                    dist[w] = dn
                    order[tail] = w
                    tail += 1
                    sigma[w] = sv
                elif dist[w] == dn:
                    sigma[w] += sv
        for i in range(tail - 1, 0, -1):
            v = order[i]
            dn = dist[v] + 1
            acc = 0.0
            for e in range(ptr[v], ptr[v + 1]):
                w = idx[e]
                if dist[w] == dn:
                    acc += (1.0 + delta[w]) / sigma[w]
            delta[v] = sigma[v] * acc
            bc[v] += delta[v]
        for i in range(tail):
            v = order[i]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
    return bc


if njit is not None:
    dependencies_unweighted = njit(cache=True, nogil=True)(_dependencies_unweighted)
    betweenness_unweighted = njit(cache=True, nogil=True)(_betweenness_unweighted)
else:  # pragma: no cover
    dependencies_unweighted = None
    betweenness_unweighted = None
