"""Compact immutable graphs with SNAP-style edge-list I/O.

A :class:`Graph` is a simple graph (no self-loops, no parallel edges)
stored as a CSR adjacency structure over dense node ids ``0..n-1``.
Undirected edges appear in both endpoint lists; directed graphs store
sorted out-neighbor lists plus in-degree counts.  Graphs are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

import math
from typing import IO, Iterator

import numpy as np

__all__ = [
    "Graph",
    "EdgeListError",
    "parse_edge_list",
    "write_edge_list",
    "underlying_undirected",
    "floor_sqrt_edges",
]


class EdgeListError(ValueError):
    """Malformed or empty edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Graph:
    """Simple graph over dense ids with sorted CSR neighbor lists.

    Build instances with :meth:`from_edges` (or :func:`parse_edge_list`),
    which normalizes the input: self-loops and duplicate edges are
    dropped (and counted), and in undirected mode ``(u, v)`` / ``(v, u)``
    collapse to a single edge stored in both endpoint lists.
    """

    def __init__(self, n, indptr, indices, directed, in_degree=None,
                 original_ids=None, loops_dropped=0, duplicates_dropped=0):
        self.n = int(n)
        self.directed = bool(directed)
        self._indptr = indptr
        self._indices = indices
        self._out_degree = np.diff(indptr)
        if directed:
            self.m = int(len(indices))
            self._in_degree = in_degree
            self.degrees = self._out_degree + in_degree
        else:
            self.m = int(len(indices)) // 2
            self._in_degree = None
            self.degrees = self._out_degree
        self.original_ids = original_ids
        self.loops_dropped = int(loops_dropped)
        self.duplicates_dropped = int(duplicates_dropped)
        for arr in (self._indptr, self._indices, self.degrees):
            arr.flags.writeable = False
        self._projection = None

    @classmethod
    def from_edges(cls, n, src, dst, directed=False, original_ids=None):
        """Build a normalized graph from parallel endpoint arrays.

        ``src``/``dst`` hold dense ids in ``[0, n)``; order and
        duplication are arbitrary.  Returns the deduplicated loop-free
        graph with drop counts recorded on the instance.
        """
        n = int(n)
        if n <= 0:
            raise ValueError("graph needs at least one node")
        if n >= 2 ** 31:
            raise ValueError("node count exceeds supported range")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if src.shape != dst.shape:
            raise ValueError("src/dst length mismatch")
        if len(src) and (src.min() < 0 or dst.min() < 0
                         or src.max() >= n or dst.max() >= n):
            raise ValueError("endpoint id out of range")

        loops = src == dst
        loops_dropped = int(np.count_nonzero(loops))
        src, dst = src[~loops], dst[~loops]

        if directed:
            keys = src * n + dst
        else:
            keys = np.minimum(src, dst) * n + np.maximum(src, dst)
        keys = np.unique(keys)
        duplicates_dropped = len(src) - len(keys)
        a = (keys // n).astype(np.int32)
        b = (keys % n).astype(np.int32)

        if directed:
            # keys are already row-major sorted, so per-row lists come
            # out ascending without an extra sort
            indices = b
            indptr = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(np.bincount(a, minlength=n), out=indptr[1:])
            in_degree = np.bincount(b, minlength=n).astype(np.int64)
            return cls(n, indptr, indices, True, in_degree=in_degree,
                       original_ids=original_ids,
                       loops_dropped=loops_dropped,
                       duplicates_dropped=duplicates_dropped)

        rows = np.concatenate([a, b])
        cols = np.concatenate([b, a])
        order = np.lexsort((cols, rows))
        indices = cols[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(n, indptr, indices, False,
                   original_ids=original_ids,
                   loops_dropped=loops_dropped,
                   duplicates_dropped=duplicates_dropped)

    def neighbors(self, v):
        """Sorted out-neighbors of ``v`` (all neighbors if undirected)."""
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def degree(self, v):
        """Total degree of ``v`` (out + in when directed)."""
        return int(self.degrees[v])

    def out_degree(self, v):
        return int(self._out_degree[v])

    def has_edge(self, u, v):
        """True if edge ``{u, v}`` (arc ``u -> v`` when directed) exists."""
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def edge_arrays(self):
        """Endpoint arrays, one entry per edge (per arc when directed).

        Undirected edges are reported once with ``src < dst``.
        """
        rows = np.repeat(np.arange(self.n, dtype=np.int32),
                         self._out_degree)
        cols = self._indices
        if self.directed:
            return rows, cols
        keep = rows < cols
        return rows[keep], cols[keep]

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        src, dst = self.edge_arrays()
        for u, v in zip(src.tolist(), dst.tolist()):
            yield u, v

    def csr(self):
        """Raw ``(indptr, indices)`` of the adjacency structure."""
        return self._indptr, self._indices

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


def parse_edge_list(source, directed=False, comment="#") -> Graph:
    """Parse a SNAP-style edge list into a normalized :class:`Graph`.

    ``source`` is a path, an open text file, or an iterable of lines.
    Every non-comment line must hold exactly two non-negative integer
    ids.  Ids are compacted to ``0..n-1`` in order of first appearance
    (nodes mentioned only on dropped self-loop or duplicate lines still
    count); the original ids are kept on ``graph.original_ids``.

    Raises :class:`EdgeListError` with the offending line number for
    malformed lines, and for entirely empty input.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "rt", encoding="utf-8") as fh:
            return parse_edge_list(fh, directed=directed, comment=comment)

    ids: dict[int, int] = {}
    src: list[int] = []
    dst: list[int] = []
    for lineno, raw in enumerate(source, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith(comment):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise EdgeListError(
                f"expected two ids, got {len(parts)} tokens", line=lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(
                f"non-integer id in {stripped!r}", line=lineno) from None
        if a < 0 or b < 0:
            raise EdgeListError("negative id", line=lineno)
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        src.append(u)
        dst.append(v)
    if not ids:
        raise EdgeListError("empty edge list: no edges or nodes found")

    original = np.fromiter(ids.keys(), dtype=np.int64, count=len(ids))
    return Graph.from_edges(len(ids), np.array(src, dtype=np.int64),
                            np.array(dst, dtype=np.int64),
                            directed=directed, original_ids=original)


def write_edge_list(g: Graph, out: IO[str] | str) -> None:
    """Write ``g`` in the edge-list format :func:`parse_edge_list` reads.

    Emits a ``# n=<n> m=<m> directed=<0|1>`` header, then one ``v v``
    line per node in id order, then one line per edge.  The node
    manifest lines parse as (dropped) self-loops, which pins the node
    set and its first-appearance order so that a write/parse round trip
    reproduces ``(n, m, edge set)`` exactly, isolated nodes included.
    """
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "wt", encoding="utf-8") as fh:
            write_edge_list(g, fh)
            return
    if g.original_ids is not None:
        label = g.original_ids
    else:
        label = np.arange(g.n, dtype=np.int64)
    out.write(f"# n={g.n} m={g.m} directed={int(g.directed)}\n")
    out.writelines(f"{v} {v}\n" for v in label.tolist())
    src, dst = g.edge_arrays()
    ls, ld = label[src], label[dst]
    out.writelines(f"{u} {v}\n" for u, v in zip(ls.tolist(), ld.tolist()))


def underlying_undirected(g: Graph) -> Graph:
    """Undirected projection: ``{u, v}`` exists iff ``u->v`` or ``v->u``.

    Undirected input is returned unchanged.  The projection is cached
    on the graph, so repeated calls are free.
    """
    if not g.directed:
        return g
    if g._projection is None:
        src, dst = g.edge_arrays()
        g._projection = Graph.from_edges(
            g.n, src, dst, directed=False, original_ids=g.original_ids)
    return g._projection


def floor_sqrt_edges(g: Graph) -> int:
    """``floor(sqrt(m))``, the canonical club size for a sweep."""
    if g.m < 1:
        raise ValueError("graph has no edges")
    return math.isqrt(g.m)
