"""Bond percolation, the two-round probability split and a Chernoff bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .rng import RngStream, as_stream

__all__ = [
    "PercolationParams",
    "percolate",
    "retained_mask",
    "split_probability",
    "graph_union",
    "chernoff_tail",
]


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")


def retained_mask(G: Graph, p: float, rng) -> np.ndarray:
    """Boolean mask over ``G.edges``; edge ``i`` uses counter ``i`` of ``rng``."""
    _check_p(p)
    return as_stream(rng).bernoulli(np.arange(G.m, dtype=np.uint64), p)


def percolate(G: Graph, p: float, rng) -> Graph:
    """Keep each edge of ``G`` independently with probability ``p``."""
    return G.edge_subgraph(retained_mask(G, p, rng))


def split_probability(p: float, p1: float) -> float:
    """Second-round probability ``p2`` with ``1 - p = (1 - p1)(1 - p2)``."""
    if not (0.0 <= p1 <= 1.0 and 0.0 <= p <= 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    if p1 > p:
        raise ValueError(f"p1={p1} exceeds p={p}")
    if p1 == p:
        return 0.0
    if p == 1.0:
        raise ValueError("p = 1 requires p1 = 1")
    return (p - p1) / (1.0 - p1)


def graph_union(G1: Graph, G2: Graph) -> Graph:
    if G1.n != G2.n:
        raise ValueError(f"vertex counts differ ({G1.n} vs {G2.n})")
    return Graph.from_edges(G1.n, np.concatenate((G1.edges, G2.edges)), dedupe=True)


def chernoff_tail(n: int, p: float, t: float) -> float:
    """Upper bound ``2 exp(-t^2 / (3 n p))`` on ``P(|Bin(n,p) - np| > t)``.

    Valid for ``0 <= t <= np/2``; other ``t`` raise ``ValueError``.
    """
    _check_p(p)
    mean = n * p
    if t < 0 or t > mean / 2:
        raise ValueError(f"t={t} outside admissible range [0, {mean / 2}]")
    if t == 0:
        return 2.0
    return 2.0 * math.exp(-t * t / (3.0 * mean))


@dataclass(frozen=True)
class PercolationParams:
    """Supercritical retention probability and its two-round split."""

    p: float
    epsilon: float
    d: float
    p1: float
    p2: float

    @classmethod
    def from_supercritical(cls, epsilon: float, d: float) -> "PercolationParams":
        if epsilon <= 0 or d <= 0:
            raise ValueError("epsilon and d must be positive")
        p = (1 + epsilon) / d
        p1 = (1 + epsilon / 2) / d
        if p > 1:
            raise ValueError(f"p = (1+eps)/d = {p} exceeds 1")
        return cls(p, epsilon, d, p1, split_probability(p, p1))

    def identity_error(self) -> float:
        """Relative error of ``(1-p1)(1-p2) = 1-p``."""
        lhs = (1 - self.p1) * (1 - self.p2)
        rhs = 1 - self.p
        return abs(lhs - rhs) / max(abs(rhs), 1e-300) if rhs else abs(lhs)
