"""Exact longest path and longest cycle by dynamic programming over subsets.

``reach[mask]`` is a bitmask of the vertices ``v`` such that some path visits
exactly ``mask`` and ends at ``v``.  For cycles the path is additionally
anchored at the lowest vertex of ``mask``.  Both tables are filled one
popcount layer at a time with numpy, so ``n = 20`` takes a few seconds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, VertexSequence

__all__ = ["OracleLimit", "longest_path_exact", "longest_cycle_exact"]


@dataclass(frozen=True)
class OracleLimit:
    max_vertices: int = 20


DEFAULT_LIMIT = OracleLimit()


def _adj_masks(G: Graph) -> list[int]:
    out = []
    for v in range(G.n):
        m = 0
        for u in G.neighbors(v).tolist():
            m |= 1 << u
        out.append(m)
    return out


def _check(G: Graph, limit: OracleLimit) -> None:
    if G.n > limit.max_vertices:
        raise ValueError(f"oracle limited to {limit.max_vertices} vertices, graph has {G.n}")


def _layers(n: int):
    masks = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        pc += (masks >> v) & 1
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(n + 2))
    return masks, order, bounds


def _fill(n, adj, anchored):
    masks, order, bounds = _layers(n)
    reach = np.zeros(1 << n, dtype=np.int64)
    adj_arr = np.array(adj, dtype=np.int64)
    low = np.zeros(1 << n, dtype=np.int64)
    if anchored:
        low[1:] = (masks[1:] & -masks[1:])
    for v in range(n):
        reach[1 << v] = 1 << v
    for size in range(2, n + 1):
        layer = order[bounds[size]:bounds[size + 1]]
        for v in range(n):
            bit = 1 << v
            sel = layer[(layer & bit) != 0]
            if anchored:
                sel = sel[low[sel] != bit]
            if sel.size == 0:
                continue
            ok = (reach[sel ^ bit] & adj_arr[v]) != 0
            reach[sel[ok]] |= bit
    return reach, masks


def _backtrack(reach, adj, mask, end):
    seq = [end]
    while mask != (1 << end):
        prev_mask = mask ^ (1 << end)
        cands = int(reach[prev_mask]) & adj[end]
        u = (cands & -cands).bit_length() - 1
        seq.append(u)
        mask, end = prev_mask, u
    return seq[::-1]


def longest_path_exact(G: Graph, limit: OracleLimit = DEFAULT_LIMIT) -> VertexSequence:
    """A maximum-length path (in edges); a single vertex when ``G`` has no edges."""
    _check(G, limit)
    if G.n == 0:
        return VertexSequence((), "path")
    adj = _adj_masks(G)
    reach, masks = _fill(G.n, adj, anchored=False)
    nz = np.flatnonzero(reach)
    sizes = np.zeros(len(nz), dtype=np.int64)
    for v in range(G.n):
        sizes += (nz >> v) & 1
    mask = int(nz[np.argmax(sizes)])
    r = int(reach[mask])
    end = (r & -r).bit_length() - 1
    return VertexSequence(tuple(_backtrack(reach, adj, mask, end)), "path")


def longest_cycle_exact(G: Graph, limit: OracleLimit = DEFAULT_LIMIT) -> VertexSequence | None:
    """A maximum-length cycle, or ``None`` for a forest."""
    _check(G, limit)
    if G.n < 3:
        return None
    adj = _adj_masks(G)
    reach, masks = _fill(G.n, adj, anchored=True)
    low = masks & -masks
    anchor = np.zeros(len(masks), dtype=np.int64)
    for v in range(G.n):
        anchor[low == (1 << v)] = adj[v]
    closing = reach & anchor & ~low
    cand = np.flatnonzero(closing)
    if cand.size == 0:
        return None
    sizes = np.zeros(len(cand), dtype=np.int64)
    for v in range(G.n):
        sizes += (cand >> v) & 1
    ok = sizes >= 3
    if not ok.any():
        return None
    cand, sizes = cand[ok], sizes[ok]
    mask = int(cand[np.argmax(sizes)])
    c = int(closing[mask])
    end = (c & -c).bit_length() - 1
    return VertexSequence(tuple(_backtrack(reach, adj, mask, end)), "cycle")
