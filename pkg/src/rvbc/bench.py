"""Experiment harness: per-vertex runs over a graph, set reports, gadgets.

A run loads a graph once, picks vertices (explicit labels or a seeded random
set), runs the threshold dispatcher on each and, when asked, scores the
results against exact all-vertices betweenness.
"""

from __future__ import annotations

import io
import json
import math
import time
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Sequence

import numpy as np

from .dependency import betweenness_all
from .estimators import (
    APPROXIMATE, DEFAULT_TAU, EXACT, BcEstimate, bcd, ebcd, empirical_error, sampler,
)
from .graph import DirectedGraph, load_edge_list

GADGET_TARGET = 0
FORMATS = ("tsv", "json")


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


@dataclass
class ExperimentConfig:
    graph: str
    vertices: Optional[Sequence[int]] = None
    random_set: Optional[int] = None
    weighted: bool = False
    tau: int = DEFAULT_TAU
    samples: Optional[int] = None
    seed: int = 0
    k: Optional[float] = None
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    fmt: str = "tsv"
    oracle: bool = False
    include_sinks: bool = False
    workers: int = 1

    def validate(self) -> None:
        if (self.vertices is None) == (self.random_set is None):
            raise ConfigError("give exactly one of a vertex list or a random-set size")
        if self.vertices is not None and len(self.vertices) == 0:
            raise ConfigError("vertex list is empty")
        if self.random_set is not None and self.random_set < 1:
            raise ConfigError("random-set size must be >= 1")
        if self.tau < 1:
            raise ConfigError("tau must be >= 1")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if (self.epsilon is None) != (self.delta is None):
            raise ConfigError("epsilon and delta go together")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ConfigError("epsilon must be > 0")
        if self.delta is not None and not 0 < self.delta < 1:
            raise ConfigError("delta must lie in (0, 1)")
        if self.k is not None and not self.k > 0:
            raise ConfigError("K must be > 0")
        if self.seed < 0:
            raise ConfigError("seed must be >= 0")
        if self.fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


@dataclass(frozen=True)
class VertexRow:
    """One vertex of a set experiment, in original labels.

    Timings are rounded to milliseconds. ``exact`` is ``None`` without the
    oracle; ``error`` is then ``None`` too, and is also ``None`` when the
    error is undefined (exact score 0, estimate non-zero).
    """

    vertex: int
    score: float
    mode: str
    samples: int
    rv_size: int
    rv_ratio: float
    compute_seconds: float
    rv_seconds: float
    seed: Optional[int] = None
    exact: Optional[float] = None
    error: Optional[float] = None

    @classmethod
    def from_estimate(cls, est: BcEstimate, label: int, n: int,
                      exact: Optional[float] = None) -> "VertexRow":
        error = None if exact is None else empirical_error(est.score, exact)
        return cls(label, est.score, est.mode, est.samples_used, est.rv_size,
                   est.rv_size / n, round(est.compute_seconds, 3),
                   round(est.rv_seconds, 3), est.rng_seed, exact, error)

    @property
    def error_text(self) -> str:
        if self.exact is None:
            return "NA"
        return "undefined" if self.error is None else repr(self.error)


def _stats(values: list) -> tuple:
    if not values:
        return (None, None, None)
    return (sum(values) / len(values), max(values), min(values))


@dataclass(frozen=True)
class SetReport:
    graph: str
    n: int
    rows: tuple = field(default_factory=tuple)

    def aggregates(self) -> dict:
        errs = [r.error for r in self.rows if r.error is not None]
        avg, mx, mn = _stats(errs)
        ravg, rmx, rmn = _stats([r.rv_size for r in self.rows])
        return {
            "avg_error": avg,
            "max_error": mx,
            "min_error": mn,
            "total_compute_seconds": round(sum(r.compute_seconds for r in self.rows), 3),
            "total_rv_seconds": round(sum(r.rv_seconds for r in self.rows), 3),
            "avg_rv_size": ravg,
            "max_rv_size": rmx,
            "min_rv_size": rmn,
        }

    def to_json(self) -> str:
        doc = {
            "graph": self.graph,
            "n": self.n,
            "rows": [{f.name: getattr(r, f.name) for f in fields(VertexRow)} for r in self.rows],
            "aggregates": self.aggregates(),
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SetReport":
        doc = json.loads(text)
        rows = tuple(VertexRow(**r) for r in doc["rows"])
        return cls(doc["graph"], doc["n"], rows)

    TSV_COLUMNS = ("vertex", "bc", "rv_size", "rv_ratio", "mode", "samples",
                   "time", "time_rv", "error_pct", "score", "seed")

    def to_tsv(self) -> str:
        out = io.StringIO()
        out.write(f"# graph={self.graph}\tn={self.n}\n")
        out.write("\t".join(self.TSV_COLUMNS) + "\n")
        for r in self.rows:
            cells = [
                str(r.vertex),
                "NA" if r.exact is None else repr(r.exact),
                str(r.rv_size),
                repr(r.rv_ratio),
                "E" if r.mode == EXACT else "A",
                str(r.samples),
                f"{r.compute_seconds:.3f}",
                f"{r.rv_seconds:.3f}",
                r.error_text,
                repr(r.score),
                "NA" if r.seed is None else str(r.seed),
            ]
            out.write("\t".join(cells) + "\n")
        agg = self.aggregates()
        out.write("# " + "\t".join(f"{k}={_fmt(v)}" for k, v in agg.items()) + "\n")
        return out.getvalue()

    @classmethod
    def from_tsv(cls, text: str) -> "SetReport":
        lines = text.splitlines()
        meta = dict(kv.split("=", 1) for kv in lines[0][2:].split("\t"))
        header = lines[1].split("\t")
        rows = []
        for line in lines[2:]:
            if not line or line.startswith("#"):
                continue
            c = dict(zip(header, line.split("\t")))
            exact = None if c["bc"] == "NA" else float(c["bc"])
            err = None if c["error_pct"] in ("NA", "undefined") else float(c["error_pct"])
            rows.append(VertexRow(
                int(c["vertex"]), float(c["score"]),
                EXACT if c["mode"] == "E" else APPROXIMATE,
                int(c["samples"]), int(c["rv_size"]), float(c["rv_ratio"]),
                float(c["time"]), float(c["time_rv"]),
                None if c["seed"] == "NA" else int(c["seed"]), exact, err))
        return cls(meta["graph"], int(meta["n"]), tuple(rows))

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_tsv()


def _fmt(v) -> str:
    if v is None:
        return "NA"
    return repr(v)


def pick_vertices(g: DirectedGraph, k: int, seed: int, include_sinks: bool = False) -> list[int]:
    """Seeded random set of ``k`` distinct dense vertices.

    Sinks are left out unless ``include_sinks``: their score is always 0.
    """
    pool = np.arange(g.n)
    if not include_sinks:
        pool = pool[np.diff(g.fwd_ptr) > 0]
    if k > len(pool):
        raise ConfigError(f"random set of {k} requested but only {len(pool)} candidates")
    return sampler(seed).choice(pool, size=k, replace=False).tolist()


def run_vertex_experiment(cfg: ExperimentConfig,
                          graph: Optional[DirectedGraph] = None) -> SetReport:
    """Run the dispatcher on every selected vertex; rows run one after another.

    Row ``i`` uses seed ``cfg.seed + i``.
    """
    cfg.validate()
    g = load_edge_list(cfg.graph, weighted=cfg.weighted) if graph is None else graph
    if cfg.vertices is not None:
        targets = [g.index_of(v) for v in cfg.vertices]
    else:
        targets = pick_vertices(g, cfg.random_set, cfg.seed, cfg.include_sinks)
    truth = betweenness_all(g, workers=cfg.workers) if cfg.oracle else None
    rows = []
    for i, r in enumerate(targets):
        est = bcd(g, r, tau=cfg.tau, seed=cfg.seed + i, samples=cfg.samples,
                  epsilon=cfg.epsilon, delta=cfg.delta, K=cfg.k, workers=cfg.workers)
        exact = None if truth is None else float(truth[r])
        rows.append(VertexRow.from_estimate(est, g.label_of(r), g.n, exact))
    return SetReport(str(cfg.graph), g.n, tuple(rows))


def generate_gadget(kind: str, n: int) -> DirectedGraph:
    """The two ``n + 2``-vertex graphs contrasting reach-set size and SPD size.

    In both the target is vertex 0.

    ``fan``: ``n`` sources each with a single edge into the target, which
    points to one sink. ``n`` vertices reach the target and each SPD has
    three vertices.

    ``broom``: a directed path of ``n/2`` vertices ends in the target, which
    points to ``n/2 + 1`` sinks. ``n/2`` vertices reach the target and every
    SPD spans at least the ``n/2 + 1`` sinks.
    """
    if n < 2:
        raise ValueError("gadget size must be >= 2")
    if kind == "fan":
        edges = [(GADGET_TARGET, 1)] + [(s, GADGET_TARGET) for s in range(2, n + 2)]
    elif kind == "broom":
        if n % 2:
            raise ValueError("broom size must be even")
        half = n // 2
        edges = [(i, i + 1) for i in range(1, half)] + [(half, GADGET_TARGET)]
        edges += [(GADGET_TARGET, t) for t in range(half + 1, n + 2)]
    else:
        raise ValueError(f"unknown gadget kind {kind!r}")
    return DirectedGraph.from_edges(edges, n=n + 2)


def timing_scaling_report(kind: str, sizes: Sequence[int], repeats: int = 3) -> list[tuple[int, float]]:
    """Best-of-``repeats`` exact-score wall time on gadgets of each size."""
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    ebcd(generate_gadget(kind, sizes[0]), GADGET_TARGET)  # warm the compiled kernel
    table = []
    for n in sizes:
        g = generate_gadget(kind, n)
        g.in_lists
        best = math.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            ebcd(g, GADGET_TARGET)
            best = min(best, time.perf_counter() - t0)
        table.append((n, best))
    return table


def loglog_slope(table: Sequence[tuple[int, float]]) -> Optional[float]:
    """Least-squares slope of log(seconds) against log(n); ``None`` for one row."""
    if len(table) < 2:
        return None
    x = np.log([row[0] for row in table])
    y = np.log([row[1] for row in table])
    return float(np.polyfit(x, y, 1)[0])


def replace_timings(report: SetReport, value: float = 0.0) -> SetReport:
    """Copy of ``report`` with every timing field set to ``value``."""
    rows = tuple(replace(r, compute_seconds=value, rv_seconds=value) for r in report.rows)
    return replace(report, rows=rows)
