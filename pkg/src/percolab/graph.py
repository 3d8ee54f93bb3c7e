"""Immutable simple undirected graphs on vertices ``0..n-1``.

Storage is CSR: ``indptr``/``indices`` hold sorted neighbor lists and
``edge_ids`` maps every adjacency slot back to the index of its edge in the
canonical (lexicographically sorted) edge array.  All arrays are read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "VertexSequence",
    "external_neighborhood",
    "edge_count_between",
    "validate_sequence",
    "load_edge_list",
    "save_edge_list",
    "read_edge_list",
    "write_edge_list",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Simple undirected graph.

    Build with :meth:`from_edges`; instances are never mutated afterwards.
    """

    __slots__ = ("n", "edges", "indptr", "indices", "edge_ids")

    def __init__(self, n: int, edges: np.ndarray, indptr, indices, edge_ids):
        self.n = n
        self.edges = edges
        self.indptr = indptr
        self.indices = indices
        self.edge_ids = edge_ids

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] | np.ndarray = (),
                   *, dedupe: bool = False) -> "Graph":
        """Build a graph from unordered vertex pairs.

        Self-loops and ids outside ``0..n-1`` raise ``ValueError``; so do
        duplicate pairs unless ``dedupe`` is set.
        """
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        e = np.asarray(edges if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if e.size == 0:
            e = np.empty((0, 2), dtype=np.int64)
        if e.ndim != 2 or e.shape[1] != 2:
            raise ValueError("edges must be pairs")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError(f"vertex id out of range for n={n}")
        if np.any(e[:, 0] == e[:, 1]):
            raise ValueError("self-loop")
        e = np.sort(e, axis=1)
        order = np.lexsort((e[:, 1], e[:, 0]))
        e = e[order]
        if len(e) > 1:
            dup = np.all(e[1:] == e[:-1], axis=1)
            if dup.any():
                if not dedupe:
                    u, v = e[1:][dup][0]
                    raise ValueError(f"duplicate edge ({u}, {v})")
                e = e[np.concatenate(([True], ~dup))]
        return cls._from_canonical(n, e)

    @classmethod
    def _from_canonical(cls, n: int, e: np.ndarray) -> "Graph":
        # e is sorted, deduplicated, u < v
        m = len(e)
        idx_dtype = np.int32 if n < 2**31 and m < 2**31 else np.int64
        eid = np.arange(m, dtype=idx_dtype)
        src = np.concatenate((e[:, 0], e[:, 1]))
        dst = np.concatenate((e[:, 1], e[:, 0]))
        eids = np.concatenate((eid, eid))
        order = np.lexsort((dst, src))
        deg = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        return cls(
            n,
            _frozen(np.ascontiguousarray(e, dtype=np.int64)),
            _frozen(indptr),
            _frozen(dst[order].astype(idx_dtype)),
            _frozen(eids[order]),
        )

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._from_canonical(int(n), np.empty((0, 2), dtype=np.int64))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def incident_edge_ids(self, v: int) -> np.ndarray:
        return self.edge_ids[self.indptr[v]:self.indptr[v + 1]]

    def edge_index(self, u: int, v: int) -> int:
        """Index of edge ``{u, v}`` in :attr:`edges`, or -1 if absent."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            return -1
        nb = self.neighbors(u)
        i = int(np.searchsorted(nb, v))
        if i < len(nb) and nb[i] == v:
            return int(self.edge_ids[self.indptr[u] + i])
        return -1

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) >= 0

    def edge_subgraph(self, mask_or_ids) -> "Graph":
        """Spanning subgraph keeping the selected edges (boolean mask or ids)."""
        sel = np.asarray(mask_or_ids)
        if sel.dtype == bool:
            kept = self.edges[sel]
        else:
            kept = self.edges[np.unique(sel.astype(np.int64))]
        return Graph._from_canonical(self.n, kept)

    def induced_subgraph(self, vertices) -> "Graph":
        """Induced subgraph relabelled to ``0..len(vertices)-1`` in ascending id order."""
        keep = np.unique(np.asarray(vertices, dtype=np.int64))
        if keep.size and (keep[0] < 0 or keep[-1] >= self.n):
            raise ValueError("vertex id out of range")
        relabel = np.full(self.n, -1, dtype=np.int64)
        relabel[keep] = np.arange(len(keep))
        e = relabel[self.edges]
        e = e[(e >= 0).all(axis=1)] if len(e) else e
        return Graph._from_canonical(len(keep), e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __getstate__(self):
        return (self.n, self.edges)

    def __setstate__(self, state):
        n, e = state
        g = Graph._from_canonical(n, np.array(e, dtype=np.int64).reshape(-1, 2))
        for name in self.__slots__:
            object.__setattr__(self, name, getattr(g, name))


@dataclass(frozen=True)
class VertexSequence:
    """A path or cycle given by its vertices in order.

    ``length`` counts edges: a path on ``k`` vertices has length ``k - 1``,
    a cycle on ``k`` vertices has length ``k``.
    """

    vertices: tuple[int, ...]
    kind: str = "path"

    def __post_init__(self):
        if self.kind not in ("path", "cycle"):
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @property
    def length(self) -> int:
        k = len(self.vertices)
        if self.kind == "cycle":
            return k
        return max(k - 1, 0)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def _as_vertex_array(G: Graph, S) -> np.ndarray:
    s = np.unique(np.asarray(list(S) if not isinstance(S, np.ndarray) else S, dtype=np.int64))
    if s.size and (s[0] < 0 or s[-1] >= G.n):
        raise ValueError(f"vertex id out of range for n={G.n}")
    return s


def external_neighborhood(G: Graph, S) -> tuple[int, ...]:
    """Vertices outside ``S`` with at least one neighbor in ``S``."""
    s = _as_vertex_array(G, S)
    if s.size == 0:
        return ()
    parts = [G.indices[G.indptr[v]:G.indptr[v + 1]] for v in s]
    nb = np.unique(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)
    nb = nb[~np.isin(nb, s, assume_unique=True)]
    return tuple(int(v) for v in nb)


def edge_count_between(G: Graph, A, B) -> int:
    """Number of edges with one endpoint in ``A`` and the other in ``B``.

    ``A`` and ``B`` must be disjoint.
    """
    a = _as_vertex_array(G, A)
    b = _as_vertex_array(G, B)
    if np.intersect1d(a, b).size:
        raise ValueError("vertex sets must be disjoint")
    if a.size == 0 or b.size == 0:
        return 0
    in_b = np.zeros(G.n, dtype=bool)
    in_b[b] = True
    return int(sum(in_b[G.neighbors(v)].sum() for v in a))


def validate_sequence(G: Graph, seq: VertexSequence) -> bool:
    """True iff ``seq`` is a genuine path/cycle of ``G`` with no repeated vertex."""
    vs = seq.vertices
    if not vs:
        return False
    if any(v < 0 or v >= G.n for v in vs):
        return False
    if len(set(vs)) != len(vs):
        return False
    if any(not G.has_edge(u, v) for u, v in zip(vs, vs[1:])):
        return False
    if seq.kind == "cycle":
        return len(vs) >= 3 and G.has_edge(vs[-1], vs[0])
    return True


def save_edge_list(G: Graph) -> str:
    """Canonical edge-list text: ``n=<count>`` then one ``u v`` line per edge."""
    lines = [f"n={G.n}"]
    lines.extend(f"{u} {v}" for u, v in G.edges.tolist())
    return "\n".join(lines) + "\n"


def load_edge_list(text: str) -> Graph:
    """Parse the edge-list format written by :func:`save_edge_list`.

    Lines starting with ``#`` and blank lines are skipped.  Pairs may be given
    in either orientation and in any order.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            key, sep, val = line.partition("=")
            if not sep or key.strip() != "n":
                raise ValueError(f"line {lineno}: expected 'n=<count>', got {raw!r}")
            try:
                n = int(val)
            except ValueError:
                raise ValueError(f"line {lineno}: bad vertex count {val!r}") from None
            if n < 0:
                raise ValueError(f"line {lineno}: negative vertex count")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: malformed edge line {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: malformed edge line {raw!r}") from None
        if u == v:
            raise ValueError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {lineno}: vertex id out of range for n={n}")
        edges.append((u, v))
    if n is None:
        raise ValueError("missing 'n=<count>' header")
    return Graph.from_edges(n, edges)


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return load_edge_list(fh.read())


def write_edge_list(G: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(save_edge_list(G))
