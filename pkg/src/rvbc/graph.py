"""Immutable directed graphs in compressed adjacency form.

Both the forward and the reverse adjacency are materialized at build time.
Vertex labels from input files may be arbitrary integers; they are always
remapped to dense indices ``0..n-1`` (sorted by label), and the mapping is
kept on the graph so results can be reported in original labels.
"""

from __future__ import annotations

import gzip
import io
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Iterator, Optional, Sequence, Union

import numpy as np

PathLike = Union[str, os.PathLike]


class GraphFormatError(ValueError):
    """Raised when edge-list input cannot be turned into a valid graph."""


class UnknownVertexError(KeyError):
    """Raised when an original vertex label is not present in a graph."""


@dataclass(frozen=True)
class EdgeListSource:
    """Where an edge list comes from and how to read it.

    Exactly one of ``path`` and ``text`` must be set.
    """

    path: Optional[PathLike] = None
    text: Optional[str] = None
    weighted: bool = False
    comment: str = "#"

    def __post_init__(self):
        if (self.path is None) == (self.text is None):
            raise ValueError("EdgeListSource needs exactly one of path or text")

    def open(self) -> IO[str]:
        if self.text is not None:
            return io.StringIO(self.text)
        path = os.fspath(self.path)
        if path.endswith(".gz"):
            return gzip.open(path, "rt", encoding="utf-8", newline=None)
        return open(path, "r", encoding="utf-8", newline=None)


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """A simple directed graph (no self-loops, no parallel edges).

    ``fwd_ptr``/``fwd_idx`` hold the out-neighbours of every vertex in CSR
    layout, sorted ascending within each row; ``rev_ptr``/``rev_idx`` hold the
    in-neighbours the same way. ``weights`` is aligned with ``fwd_idx`` or is
    ``None`` for unweighted graphs. ``labels[v]`` is the original label of the
    dense vertex ``v``.
    """

    fwd_ptr: np.ndarray
    fwd_idx: np.ndarray
    rev_ptr: np.ndarray
    rev_idx: np.ndarray
    labels: np.ndarray
    weights: Optional[np.ndarray] = None
    _index: dict = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.fwd_ptr) - 1

    @property
    def m(self) -> int:
        return len(self.fwd_idx)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def out_degree(self, v: int) -> int:
        return int(self.fwd_ptr[v + 1] - self.fwd_ptr[v])

    def in_degree(self, v: int) -> int:
        return int(self.rev_ptr[v + 1] - self.rev_ptr[v])

    def successors(self, v: int) -> np.ndarray:
        return self.fwd_idx[self.fwd_ptr[v]:self.fwd_ptr[v + 1]]

    def predecessors(self, v: int) -> np.ndarray:
        return self.rev_idx[self.rev_ptr[v]:self.rev_ptr[v + 1]]

    def out_weights(self, v: int) -> np.ndarray:
        if self.weights is None:
            return np.ones(self.out_degree(v))
        return self.weights[self.fwd_ptr[v]:self.fwd_ptr[v + 1]]

    # Python-list views for the traversal hot loops; built once per graph.
    @cached_property
    def out_lists(self) -> list[list[int]]:
        return _split(self.fwd_ptr, self.fwd_idx)

    @cached_property
    def in_lists(self) -> list[list[int]]:
        return _split(self.rev_ptr, self.rev_idx)

    @cached_property
    def weight_lists(self) -> Optional[list[list[float]]]:
        if self.weights is None:
            return None
        return _split(self.fwd_ptr, self.weights)

    def index_of(self, label: int) -> int:
        """Dense index of an original vertex label."""
        index = self._index
        if index is None:
            index = {int(lab): i for i, lab in enumerate(self.labels.tolist())}
            object.__setattr__(self, "_index", index)
        try:
            return index[int(label)]
        except KeyError:
            raise UnknownVertexError(label) from None

    def label_of(self, v: int) -> int:
        return int(self.labels[v])

    def edges(self) -> Iterator[tuple]:
        """Yield ``(u, v)`` or ``(u, v, w)`` in dense indices, row-major."""
        out = self.out_lists
        wl = self.weight_lists
        for u in range(self.n):
            if wl is None:
                for v in out[u]:
                    yield (u, v)
            else:
                for v, w in zip(out[u], wl[u]):
                    yield (u, v, w)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(e[0], e[1]) for e in self.edges()}

    def strip_weights(self) -> "DirectedGraph":
        return DirectedGraph(self.fwd_ptr, self.fwd_idx, self.rev_ptr,
                             self.rev_idx, self.labels, None)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Sequence],
        n: Optional[int] = None,
        weighted: Optional[bool] = None,
        labels: Optional[Sequence[int]] = None,
    ) -> "DirectedGraph":
        """Build a graph from dense ``(u, v)`` or ``(u, v, w)`` tuples.

        Vertices are ``0..n-1``; ``n`` defaults to one more than the largest
        endpoint. Self-loops are dropped and duplicates collapse onto the
        first occurrence (keeping its weight).
        """
        edges = list(edges)
        if weighted is None:
            weighted = bool(edges) and len(edges[0]) == 3
        src = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
        dst = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges))
        w = None
        if weighted:
            w = np.fromiter((e[2] for e in edges), dtype=np.float64, count=len(edges))
        if n is None:
            n = int(max(src.max(initial=-1), dst.max(initial=-1))) + 1
        if len(edges) and (min(src.min(), dst.min()) < 0
                           or max(src.max(), dst.max()) >= n):
            raise GraphFormatError("edge endpoint outside 0..n-1")
        if labels is None:
            labels = np.arange(n, dtype=np.int64)
        return _build(n, src, dst, w, np.asarray(labels, dtype=np.int64))


def _split(ptr: np.ndarray, values: np.ndarray) -> list[list]:
    flat = values.tolist()
    bounds = ptr.tolist()
    return [flat[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)]


def _csr(n: int, rows: np.ndarray, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # rows/cols must already be sorted by (row, col)
    counts = np.bincount(rows, minlength=n)
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr, cols.astype(np.int64, copy=False)


def _build(n: int, src: np.ndarray, dst: np.ndarray, w: Optional[np.ndarray],
           labels: np.ndarray) -> DirectedGraph:
    if w is not None and len(w) and not np.all(w > 0):
        raise GraphFormatError("edge weights must be strictly positive")
    keep = src != dst
    src, dst = src[keep], dst[keep]
    if w is not None:
        w = w[keep]
    # np.unique reports the first occurrence of each key, so the first
    # weight seen for a duplicated edge wins.
    key = src * n + dst
    _, first = np.unique(key, return_index=True)
    src, dst = src[first], dst[first]
    if w is not None:
        w = np.ascontiguousarray(w[first], dtype=np.float64)
    fwd_ptr, fwd_idx = _csr(n, src, dst)
    order = np.lexsort((src, dst))
    rev_ptr, rev_idx = _csr(n, dst[order], src[order])
    return DirectedGraph(fwd_ptr, fwd_idx, rev_ptr, rev_idx, labels, w)


def parse_edge_lines(lines: Iterable[str], weighted: bool = False,
                     comment: str = "#"):
    """Parse edge-list lines into label arrays (and weights).

    Returns ``(src_labels, dst_labels, weights_or_None)``. Errors carry the
    1-based line number.
    """
    arity = 3 if weighted else 2
    src: list[int] = []
    dst: list[int] = []
    wts: list[float] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(comment):
            continue
        parts = line.split()
        if len(parts) != arity:
            raise GraphFormatError(
                f"line {lineno}: expected {arity} fields, got {len(parts)}: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: bad vertex label in {line!r}") from None
        if weighted:
            try:
                wv = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad weight in {line!r}") from None
            if not wv > 0 or wv == float("inf"):
                raise GraphFormatError(f"line {lineno}: weight must be positive and finite, got {parts[2]}")
            wts.append(wv)
        src.append(u)
        dst.append(v)
    return (np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64),
            np.asarray(wts, dtype=np.float64) if weighted else None)


def load_edge_list(src: Union[EdgeListSource, PathLike], weighted: bool = False,
                   comment: str = "#") -> DirectedGraph:
    """Load a whitespace-separated edge list (``u v`` or ``u v w`` per line).

    Accepts an :class:`EdgeListSource` or a plain path (``.gz`` is read
    transparently). Labels are remapped densely in ascending label order.
    """
    if not isinstance(src, EdgeListSource):
        src = EdgeListSource(path=src, weighted=weighted, comment=comment)
    with src.open() as fh:
        s, d, w = parse_edge_lines(fh, src.weighted, src.comment)
    if len(s) == 0:
        raise GraphFormatError("edge list contains no edges")
    labels, inverse = np.unique(np.concatenate([s, d]), return_inverse=True)
    inverse = inverse.reshape(-1)
    k = len(s)
    return _build(len(labels), inverse[:k], inverse[k:], w, labels)


def load_edge_text(text: str, weighted: bool = False, comment: str = "#") -> DirectedGraph:
    return load_edge_list(EdgeListSource(text=text, weighted=weighted, comment=comment))


def write_edge_list(g: DirectedGraph, out: Union[PathLike, IO[str]]) -> None:
    """Write ``g`` as an edge list in original labels.

    Vertices without any incident edge are written as a self-loop line so
    that reloading reproduces the same vertex set (the loader drops the loop
    but keeps the vertex).
    """
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
        return
    labels = g.labels.tolist()
    for e in g.edges():
        if g.weighted:
            out.write(f"{labels[e[0]]} {labels[e[1]]} {e[2]!r}\n")
        else:
            out.write(f"{labels[e[0]]} {labels[e[1]]}\n")
    for v in range(g.n):
        if g.out_degree(v) == 0 and g.in_degree(v) == 0:
            lab = labels[v]
            out.write(f"{lab} {lab} 1.0\n" if g.weighted else f"{lab} {lab}\n")


def reverse_view(g: DirectedGraph) -> DirectedGraph:
    """The reverse graph: every edge flipped, weights dropped."""
    return DirectedGraph(g.rev_ptr, g.rev_idx, g.fwd_ptr, g.fwd_idx, g.labels, None)


def out_degree(g: DirectedGraph, v: int) -> int:
    return g.out_degree(v)


def in_degree(g: DirectedGraph, v: int) -> int:
    return g.in_degree(v)
