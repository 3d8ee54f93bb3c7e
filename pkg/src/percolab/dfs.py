"""Depth-first exploration of a percolated graph by deferred decisions.

The explorer keeps processed vertices ``W``, an active stack ``A`` and
unvisited vertices ``U``.  The top of the stack queries its edges into ``U``
in order; each query reveals one Bernoulli(p) coin.  A positive answer pushes
the discovered vertex, an exhausted vertex moves to ``W``, and an empty stack
takes the first unvisited vertex.  The coin of edge ``e`` is counter ``e`` of
the supplied :class:`~percolab.rng.RngStream`, so the explored graph has the
law of ``G_p`` and :func:`complete_exposure` extends it to the same sample
:func:`~percolab.percolation.percolate` would draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .graph import Graph, VertexSequence
from .rng import RngStream, as_stream

__all__ = [
    "Theorem2Params",
    "theorem2_params",
    "DfsTrace",
    "run_dfs",
    "max_stack_path",
    "complete_exposure",
    "replay",
]

U_STATE, A_STATE, W_STATE = 0, 1, 2


def _exact(x) -> Fraction:
    return Fraction(x).limit_denominator(10**9)


@dataclass(frozen=True)
class Theorem2Params:
    """Query budget and targets for the long-path argument.

    ``n1`` (query budget) and ``path_target`` round up, ``positive_target``
    rounds down.
    """

    k: int
    d: int
    epsilon: float
    n1_exact: Fraction
    positive_target_exact: Fraction
    path_target_exact: Fraction
    n1: int
    positive_target: int
    path_target: int

    @property
    def p(self) -> float:
        return (1 + self.epsilon) / self.d

    @property
    def expected_positives(self) -> Fraction:
        """Mean number of positive answers within the budget, ``eps*k*d/2``."""
        eps = _exact(self.epsilon)
        return eps * self.k * self.d / 2


def theorem2_params(k: int, d: int, epsilon: float) -> Theorem2Params:
    if k < 1 or d < 1:
        raise ValueError("k and d must be >= 1")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    eps = _exact(epsilon)
    n1 = eps * k * d * d / (2 * (1 + eps))
    pos = (1 - eps / 5) * eps * k * d / 2
    path = eps * eps * k * d / 10
    return Theorem2Params(k, d, epsilon, n1, pos, path,
                          math.ceil(n1), math.floor(pos), math.ceil(path))


@dataclass(frozen=True)
class DfsTrace:
    """Record of one exploration.

    Per-query arrays are aligned: query ``i`` asked about edge
    ``query_edge[i] = {query_a[i], query_u[i]}`` and got ``query_bit[i]``;
    ``size_w[i], size_a[i], size_u[i]`` are the set sizes right after it.
    Full sets can be rebuilt with :func:`replay`.
    """

    n: int
    p: float
    rng: RngStream
    order: np.ndarray
    query_a: np.ndarray
    query_u: np.ndarray
    query_edge: np.ndarray
    query_bit: np.ndarray
    size_w: np.ndarray
    size_a: np.ndarray
    size_u: np.ndarray
    max_stack: VertexSequence
    budget: int
    n2: int | None
    terminated: str                 # "budget-exhausted" | "exploration-complete"

    @property
    def n_queries(self) -> int:
        return len(self.query_bit)

    @property
    def positive_count(self) -> int:
        return int(self.query_bit.sum())

    def positive_edges(self) -> np.ndarray:
        """Edge ids answered positively."""
        return self.query_edge[self.query_bit]


def _sorted_adjacency(G: Graph, order):
    n = G.n
    if order is None:
        return np.arange(n), G.indices, G.edge_ids
    order = np.asarray(order, dtype=np.int64)
    if order.shape != (n,) or not np.array_equal(np.sort(order), np.arange(n)):
        raise ValueError("order must be a permutation of 0..n-1")
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    row = np.repeat(np.arange(n), G.degrees)
    perm = np.lexsort((rank[G.indices], row))
    return order, G.indices[perm], G.edge_ids[perm]


def run_dfs(G: Graph, p: float, rng, order=None, query_budget: int = 0,
            params: Theorem2Params | None = None) -> DfsTrace:
    """Explore ``G_p`` depth-first, revealing coins only when queried.

    ``order`` is the vertex ordering used both for picking new roots and for
    scanning neighbors (default: identity).  ``query_budget`` caps the number
    of coins revealed (0 means unlimited).  With ``params`` the first query
    count at which ``|A u W|`` reaches ``params.positive_target`` is stored
    as ``n2``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    if query_budget < 0:
        raise ValueError("query_budget must be >= 0")
    stream = as_stream(rng)
    n = G.n
    order, nbrs, eids = _sorted_adjacency(G, order)
    order_list = order.tolist()
    indptr = G.indptr
    ptr = indptr[:-1].tolist()
    ends = indptr[1:].tolist()
    state = np.zeros(n, dtype=np.int8)
    budget = query_budget if query_budget else math.inf
    target = params.positive_target if params is not None else None

    stack: list[int] = []
    n_w = 0
    n_u = n
    nq = 0
    n2 = 0 if target is not None and target <= 0 else None
    best_len = 0
    best_path: tuple[int, ...] = ()
    pending = False
    root_i = 0
    log_a, log_u, log_e, log_b, log_sw, log_sa, log_su = [], [], [], [], [], [], []
    terminated = "exploration-complete"

    while True:
        if not stack:
            while root_i < n and state[order_list[root_i]] != U_STATE:
                root_i += 1
            if root_i == n:
                break
            if nq >= budget:
                terminated = "budget-exhausted"
                break
            v = order_list[root_i]
            state[v] = A_STATE
            stack.append(v)
            n_u -= 1
            if 1 > best_len:
                best_len, pending = 1, True
            if target is not None and n2 is None and n - n_u >= target:
                n2 = nq
            continue
        if nq >= budget:
            terminated = "budget-exhausted"
            break
        a = stack[-1]
        pos = ptr[a]
        end = ends[a]
        found = -1
        chunk = 16
        while pos < end and nq < budget:
            hi = min(end, pos + chunk)
            seg = nbrs[pos:hi]
            cand = np.flatnonzero(state[seg] == U_STATE)
            if cand.size == 0:
                pos = hi
                chunk *= 2
                continue
            room = budget - nq
            cut = cand.size > room
            if cut:
                cand = cand[:int(room)]
            e = eids[pos + cand]
            bits = stream.bernoulli(e, p)
            hit = np.flatnonzero(bits)
            if hit.size:
                j = int(hit[0]) + 1
                cand, e, bits = cand[:j], e[:j], bits[:j]
            q = cand.size
            log_a.append(np.full(q, a, dtype=np.int32))
            log_u.append(seg[cand].astype(np.int32))
            log_e.append(e.astype(np.int64))
            log_b.append(bits)
            sw = np.full(q, n_w, dtype=np.int32)
            sa = np.full(q, len(stack), dtype=np.int32)
            su = np.full(q, n_u, dtype=np.int32)
            if hit.size:
                sa[-1] += 1
                su[-1] -= 1
            log_sw.append(sw)
            log_sa.append(sa)
            log_su.append(su)
            nq += q
            if hit.size:
                found = int(seg[cand[-1]])
                pos += int(cand[-1]) + 1
                break
            if cut:
                pos += int(cand[-1]) + 1
                break
            pos = hi
            chunk *= 2
        ptr[a] = pos
        if found >= 0:
            state[found] = A_STATE
            stack.append(found)
            n_u -= 1
            if len(stack) > best_len:
                best_len, pending = len(stack), True
            if target is not None and n2 is None and n - n_u >= target:
                n2 = nq
        elif pos >= end:
            if pending:
                best_path, pending = tuple(stack), False
            stack.pop()
            state[a] = W_STATE
            n_w += 1
    if pending:
        best_path = tuple(stack)

    def cat(parts, dtype):
        return np.concatenate(parts).astype(dtype, copy=False) if parts else np.empty(0, dtype=dtype)

    return DfsTrace(
        n=n, p=p, rng=stream, order=order,
        query_a=cat(log_a, np.int32), query_u=cat(log_u, np.int32),
        query_edge=cat(log_e, np.int64), query_bit=cat(log_b, bool),
        size_w=cat(log_sw, np.int32), size_a=cat(log_sa, np.int32), size_u=cat(log_su, np.int32),
        max_stack=VertexSequence(best_path, "path"),
        budget=int(query_budget), n2=n2, terminated=terminated,
    )


def max_stack_path(trace: DfsTrace) -> VertexSequence:
    """Longest stack seen during the run; a path of positively answered edges."""
    return trace.max_stack


def complete_exposure(G: Graph, trace: DfsTrace, p: float, rng=None) -> Graph:
    """Reveal every edge the exploration never queried.

    Queried edges keep their recorded answers; the rest are sampled with
    probability ``p`` from ``rng`` (default: the trace's own stream, in which
    case the result equals ``percolate(G, p, trace.rng)``).
    """
    if p != trace.p:
        raise ValueError(f"p={p} does not match the trace's p={trace.p}")
    stream = trace.rng if rng is None else as_stream(rng)
    keep = np.zeros(G.m, dtype=bool)
    queried = np.zeros(G.m, dtype=bool)
    queried[trace.query_edge] = True
    keep[trace.query_edge] = trace.query_bit
    rest = np.flatnonzero(~queried)
    keep[rest] = stream.bernoulli(rest.astype(np.uint64), p)
    return G.edge_subgraph(keep)


def replay(G: Graph, trace: DfsTrace) -> Iterator[tuple[int, np.ndarray, list[int]]]:
    """Re-run the exploration from the logged answers.

    Yields ``(i, state, stack)`` after query ``i`` where ``state[v]`` is 0, 1
    or 2 for U, A, W.  ``state`` and ``stack`` are live objects, mutated by
    later steps; copy them if they must be kept.  Raises ``AssertionError``
    if the log is inconsistent with ``G`` and the exploration rules.
    """
    n = G.n
    order = trace.order.tolist()
    rank = [0] * n
    for i, v in enumerate(order):
        rank[v] = i
    adj = [sorted(G.neighbors(v).tolist(), key=rank.__getitem__) for v in range(n)]
    state = np.zeros(n, dtype=np.int8)
    stack: list[int] = []
    ptr = [0] * n
    qa, qu, qb = trace.query_a.tolist(), trace.query_u.tolist(), trace.query_bit.tolist()
    i = 0
    root_i = 0
    total = len(qb)
    while i < total:
        if not stack:
            while root_i < n and state[order[root_i]] != U_STATE:
                root_i += 1
            assert root_i < n, "log continues after exploration completed"
            v = order[root_i]
            state[v] = A_STATE
            stack.append(v)
            continue
        a = stack[-1]
        nb = adj[a]
        while ptr[a] < len(nb) and state[nb[ptr[a]]] != U_STATE:
            ptr[a] += 1
        if ptr[a] == len(nb):
            stack.pop()
            state[a] = W_STATE
            continue
        u = nb[ptr[a]]
        ptr[a] += 1
        assert (qa[i], qu[i]) == (a, u), f"query {i}: log has {(qa[i], qu[i])}, rules give {(a, u)}"
        if qb[i]:
            state[u] = A_STATE
            stack.append(u)
        yield i, state, stack
        i += 1
