"""Long cycles by two-round exposure.

Round one explores ``G_{p1}`` depth-first and keeps the longest stack as a
path ``P``.  ``P`` is cut into consecutive blocks of ``block_len`` edges.  An
off-path vertex is *good* when it is adjacent in the host graph to enough
distinct blocks.  Round two sprinkles ``G_{p2}`` on the edges from each good
vertex into the first and last thirds of its incident blocks.  A vertex with
a retained edge into both thirds closes a cycle through the stretch of ``P``
between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dfs import run_dfs
from .graph import Graph, VertexSequence, validate_sequence
from .percolation import split_probability
from .rng import RngStream, as_stream

__all__ = [
    "Theorem3Params",
    "theorem3_params",
    "BlockDecomposition",
    "decompose_blocks",
    "GoodVertexRecord",
    "classify_vertices",
    "block_incidence_counts",
    "CycleResult",
    "sprinkle_and_connect",
    "find_long_cycle",
    "ROUND1",
    "ROUND2",
]

ROUND1 = 1
ROUND2 = 2

FOUND = "cycle found"
NO_PATH = "no path"
NO_GOOD = "no good vertex"
NO_SUCCESS = "no successful vertex"


def _exact(x) -> Fraction:
    return Fraction(x).limit_denominator(10**9)


# absorbs binary noise in float inputs (e.g. c = k*d/n computed in floats)
_TOL = Fraction(1, 10**9)


def _floor(x: Fraction) -> int:
    return math.floor(x + _TOL)


def _ceil(x: Fraction) -> int:
    return math.ceil(x - _TOL)


@dataclass(frozen=True)
class Theorem3Params:
    c: float
    d: float
    epsilon: float
    n: int
    alpha: float
    p: float
    p1: float
    p2: float
    block_len: int
    r_nominal: int
    good_threshold: int
    cycle_target: int

    @property
    def degenerate_r(self) -> bool:
        """True when the nominal block count rounds down to zero."""
        return self.r_nominal < 1


def theorem3_params(c: float, d: float, epsilon: float, n: int) -> Theorem3Params:
    """Derived quantities for the cycle construction.

    ``alpha = c*eps^2/40``, ``p = (1+eps)/d``, ``p1 = (1+eps/2)/d``, block
    length ``floor(c*n/d)``, nominal block count ``floor(alpha*d/c)``, good
    threshold ``ceil(alpha*d/2)`` and cycle target ``ceil(alpha*c*n/6)``.
    A nominal block count of zero is flagged by ``degenerate_r``, not raised.
    """
    if not 0 < c < 1:
        raise ValueError("c must lie in (0, 1)")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if d <= 0 or n < 1:
        raise ValueError("d and n must be positive")
    cq, dq, eq = _exact(c), _exact(d), _exact(epsilon)
    block_len = _floor(cq * n / dq)
    if block_len < 1:
        raise ValueError(f"degenerate block length floor(c*n/d) = {block_len}")
    alpha = cq * (eq / 2) ** 2 / 10
    p = (1 + eq) / dq
    p1 = (1 + eq / 2) / dq
    if p > 1:
        raise ValueError(f"p = (1+eps)/d = {float(p)} exceeds 1")
    return Theorem3Params(
        c=c, d=d, epsilon=epsilon, n=n,
        alpha=float(alpha), p=float(p), p1=float(p1),
        p2=split_probability(float(p), float(p1)),
        block_len=block_len,
        r_nominal=_floor(alpha * dq / cq),
        good_threshold=_ceil(alpha * dq / 2),
        cycle_target=_ceil(alpha * cq * n / 6),
    )


@dataclass(frozen=True)
class BlockDecomposition:
    """Consecutive disjoint blocks cut from the start of ``path``.

    Block ``i`` covers path positions ``i*(block_len+1)`` up to
    ``(i+1)*(block_len+1) - 1``; any remaining tail vertices are unassigned.
    """

    path: VertexSequence
    block_len: int
    n_blocks: int

    @property
    def block_size(self) -> int:
        return self.block_len + 1

    @property
    def blocks(self) -> list[tuple[int, ...]]:
        s = self.block_size
        vs = self.path.vertices
        return [vs[i * s:(i + 1) * s] for i in range(self.n_blocks)]

    @property
    def leftover(self) -> int:
        return len(self.path) - self.n_blocks * self.block_size

    def position_index(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Arrays ``(block_of, pos_of)`` over all ``n`` vertices.

        ``block_of[v]`` is the block id or -1; ``pos_of[v]`` is the path
        position of ``v`` or -1 when ``v`` is off the path.
        """
        vs = np.asarray(self.path.vertices, dtype=np.int64)
        pos_of = np.full(n, -1, dtype=np.int64)
        pos_of[vs] = np.arange(len(vs))
        block_of = np.full(n, -1, dtype=np.int64)
        covered = self.n_blocks * self.block_size
        block_of[vs[:covered]] = np.arange(covered) // self.block_size
        return block_of, pos_of


def decompose_blocks(P: VertexSequence, block_len: int) -> BlockDecomposition:
    if P.kind != "path":
        raise ValueError("blocks are cut from a path")
    if block_len < 1:
        raise ValueError("block_len must be >= 1")
    r = len(P) // (block_len + 1)
    if r < 1:
        raise ValueError(f"path with {P.length} edges is shorter than one block of {block_len}")
    return BlockDecomposition(P, block_len, r)


@dataclass
class GoodVertexRecord:
    vertex: int
    blocks: tuple[int, ...]         # B_v, ascending
    good: bool
    successful: bool = False
    v_first: int | None = None
    v_last: int | None = None

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def zone(self) -> int:
        """Number of blocks in each end zone, ``floor(b_v/3)``."""
        return self.b // 3


def classify_vertices(G: Graph, decomp: BlockDecomposition,
                      good_threshold: int) -> list[GoodVertexRecord]:
    """Block incidence (in the host graph) for every vertex off the path."""
    block_of, pos_of = decomp.position_index(G.n)
    out = []
    for v in np.flatnonzero(pos_of < 0).tolist():
        bl = np.unique(block_of[G.neighbors(v)])
        bl = tuple(bl[bl >= 0].tolist())
        out.append(GoodVertexRecord(v, bl, len(bl) >= good_threshold))
    return out


def block_incidence_counts(G: Graph, decomp: BlockDecomposition) -> np.ndarray:
    """For each block, how many off-path vertices have a neighbor in it."""
    block_of, pos_of = decomp.position_index(G.n)
    counts = np.zeros(decomp.n_blocks, dtype=np.int64)
    for blk in decomp.blocks:
        nb = np.unique(np.concatenate([G.neighbors(v) for v in blk]))
        counts[block_of[blk[0]]] = int((pos_of[nb] < 0).sum())
    return counts


@dataclass
class CycleResult:
    outcome: str
    cycle: VertexSequence | None = field(default=None, repr=False)
    path_length: int = 0
    r_nominal: int = 0
    r_used: int = 0
    g: int = 0
    n_successful: int = 0
    cycle_length: int = 0
    records: list[GoodVertexRecord] = field(default_factory=list, repr=False)
    path: VertexSequence | None = field(default=None, repr=False)
    round1_edges: np.ndarray | None = field(default=None, repr=False)
    round2_edges: np.ndarray | None = field(default=None, repr=False)

    @property
    def found(self) -> bool:
        return self.outcome == FOUND

    @property
    def success_rate(self) -> float:
        """Fraction of good vertices that were successful."""
        return self.n_successful / self.g if self.g else 0.0


def sprinkle_and_connect(G: Graph, decomp: BlockDecomposition,
                         records: list[GoodVertexRecord], p2: float, rng) -> CycleResult:
    """Second exposure round and cycle assembly.

    Each good vertex with ``f = floor(b_v/3) >= 1`` samples its host edges
    into the first ``f`` and last ``f`` blocks of ``B_v``.  The coin of edge
    ``e`` is counter ``e`` of ``rng``, so an edge shared by several zones is
    sampled once.  Among successful vertices the longest resulting cycle
    wins, ties going to the smallest vertex id.
    """
    if not 0.0 <= p2 <= 1.0:
        raise ValueError(f"probability {p2} outside [0, 1]")
    stream = as_stream(rng)
    block_of, pos_of = decomp.position_index(G.n)
    path = decomp.path.vertices
    g = sum(r.good for r in records)
    positives = []
    best = None                     # (length, vertex, pos_f, pos_l)
    n_succ = 0
    for rec in records:
        rec.successful, rec.v_first, rec.v_last = False, None, None
        f = rec.zone
        if not rec.good or f < 1:
            continue
        nb = G.neighbors(rec.vertex)
        eid = G.incident_edge_ids(rec.vertex)
        nb_block = block_of[nb]
        first = np.isin(nb_block, rec.blocks[:f])
        last = np.isin(nb_block, rec.blocks[-f:])
        zone = first | last
        coins = stream.bernoulli(eid[zone].astype(np.uint64), p2)
        positives.append(eid[zone][coins])
        hit_f = nb[zone][coins & first[zone]]
        hit_l = nb[zone][coins & last[zone]]
        if hit_f.size == 0 or hit_l.size == 0:
            continue
        pf = int(pos_of[hit_f].min())
        pl = int(pos_of[hit_l].max())
        rec.successful = True
        rec.v_first, rec.v_last = path[pf], path[pl]
        n_succ += 1
        length = pl - pf + 2
        if best is None or length > best[0] or (length == best[0] and rec.vertex < best[1]):
            best = (length, rec.vertex, pf, pl)
    r2 = np.unique(np.concatenate(positives)) if positives else np.empty(0, dtype=np.int64)
    res = CycleResult(
        outcome=NO_SUCCESS if best is None else FOUND,
        path_length=decomp.path.length, r_used=decomp.n_blocks, g=g,
        n_successful=n_succ, records=records, path=decomp.path, round2_edges=r2,
    )
    if best is not None:
        length, v, pf, pl = best
        res.cycle = VertexSequence((v,) + path[pf:pl + 1], "cycle")
        res.cycle_length = res.cycle.length
    return res


def find_long_cycle(G: Graph, params: Theorem3Params, seed: int, stream: int = 0) -> CycleResult:
    """Run both exposure rounds on ``G`` and return the best cycle found.

    Round one uses ``RngStream(seed, stream).child(ROUND1)`` with an
    unlimited query budget; round two uses ``child(ROUND2)``.  The whole
    round-one path is blocked.  A returned cycle is checked edge by edge
    against the union of both rounds' positive answers.
    """
    if params.n != G.n:
        raise ValueError(f"params are for n={params.n}, graph has n={G.n}")
    base = RngStream(seed, stream)
    trace = run_dfs(G, params.p1, base.child(ROUND1))
    path = trace.max_stack
    r1 = np.unique(trace.positive_edges())
    if path.length < params.block_len:
        return CycleResult(NO_PATH, path_length=path.length, r_nominal=params.r_nominal,
                           path=path, round1_edges=r1)
    decomp = decompose_blocks(path, params.block_len)
    records = classify_vertices(G, decomp, params.good_threshold)
    if not any(r.good for r in records):
        return CycleResult(NO_GOOD, path_length=path.length, r_nominal=params.r_nominal,
                           r_used=decomp.n_blocks, records=records, path=path, round1_edges=r1)
    res = sprinkle_and_connect(G, decomp, records, params.p2, base.child(ROUND2))
    res.r_nominal = params.r_nominal
    res.round1_edges = r1
    if res.found:
        union = G.edge_subgraph(np.union1d(r1, res.round2_edges))
        if not validate_sequence(union, res.cycle):
            raise RuntimeError("assembled cycle is not a cycle of the two-round union")
    return res
