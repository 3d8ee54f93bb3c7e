"""Host-graph families: cliques, unbalanced complete bipartite graphs,
random regular graphs, C4-free polarity graphs and disjoint cliques, plus
delta-core extraction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

__all__ = [
    "GeneratorSpec",
    "generate",
    "clique",
    "complete_bipartite",
    "random_regular",
    "polarity_graph",
    "projective_points",
    "disjoint_cliques",
    "core_vertices",
    "extract_min_degree_subgraph",
]

MAX_RESTARTS = 10_000


def clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs n >= 1")
    u, v = np.triu_indices(n, k=1)
    return Graph._from_canonical(n, np.column_stack((u, v)).astype(np.int64))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with sides ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise ValueError("both sides of a complete bipartite graph must be non-empty")
    u = np.repeat(np.arange(a), b)
    v = np.tile(np.arange(a, a + b), a)
    return Graph._from_canonical(a + b, np.column_stack((u, v)).astype(np.int64))


def disjoint_cliques(size: int, count: int) -> Graph:
    if size < 1 or count < 1:
        raise ValueError("clique size and count must be positive")
    base = clique(size).edges
    offs = (np.arange(count) * size)[:, None, None]
    return Graph._from_canonical(size * count, (base[None] + offs).reshape(-1, 2))


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Simple d-regular graph from the pairing model.

    The whole pairing is redrawn whenever it produces a loop or a repeated
    pair; after ``MAX_RESTARTS`` failures a ``RuntimeError`` is raised.
    """
    if d < 0 or n < 1:
        raise ValueError("need n >= 1 and d >= 0")
    if d >= n:
        raise ValueError(f"degree {d} must be smaller than n={n}")
    if (n * d) % 2:
        raise ValueError(f"n*d must be even (n={n}, d={d})")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(MAX_RESTARTS):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        pairs.sort(axis=1)
        codes = pairs[:, 0] * n + pairs[:, 1]
        if len(np.unique(codes)) != len(codes):
            continue
        return Graph.from_edges(n, pairs)
    raise RuntimeError(f"no simple pairing found after {MAX_RESTARTS} restarts (n={n}, d={d})")


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def projective_points(q: int) -> np.ndarray:
    """Normalised representatives of the points of PG(2, q), q prime.

    Each row has its first non-zero coordinate equal to 1.
    """
    pts = [(1, y, z) for y in range(q) for z in range(q)]
    pts += [(0, 1, z) for z in range(q)]
    pts.append((0, 0, 1))
    return np.array(pts, dtype=np.int64)


def polarity_graph(q: int) -> Graph:
    """Erdos-Renyi polarity graph ER_q on the q^2+q+1 points of PG(2, q).

    Points ``u != v`` are adjacent when ``u . v = 0 (mod q)``.  Absolute
    points (``u . u = 0``) lose only their loop, so degrees are q or q+1.
    """
    if not _is_prime(q):
        raise ValueError(f"q={q} is not prime")
    pts = projective_points(q)
    dots = (pts @ pts.T) % q
    u, v = np.nonzero(np.triu(dots == 0, k=1))
    return Graph._from_canonical(len(pts), np.column_stack((u, v)).astype(np.int64))


def core_vertices(G: Graph, delta: int) -> np.ndarray:
    """Vertices of the delta-core (sorted original ids)."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    deg = G.degrees.astype(np.int64).copy()
    alive = np.ones(G.n, dtype=bool)
    queue = deque(np.flatnonzero(deg < delta).tolist())
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for u in G.neighbors(v).tolist():
            if alive[u]:
                deg[u] -= 1
                if deg[u] == delta - 1:
                    queue.append(u)
    return np.flatnonzero(alive)


def extract_min_degree_subgraph(G: Graph, delta: int) -> Graph:
    """Delete vertices of degree < delta until none remain.

    The survivors form the maximal induced subgraph of minimum degree
    >= delta (possibly empty), relabelled in ascending id order.  Use
    :func:`core_vertices` for the original ids.
    """
    return G.induced_subgraph(core_vertices(G, delta))


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one of the generator families.

    ``family`` is one of ``clique``, ``complete-bipartite``, ``random-regular``,
    ``polarity`` or ``disjoint-cliques``; only the matching fields are read.
    """

    family: str
    n: int | None = None
    a: int | None = None
    b: int | None = None
    d: int | None = None
    q: int | None = None
    size: int | None = None
    count: int | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        fam = _ALIASES.get(self.family, self.family)
        if fam not in _FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        object.__setattr__(self, "family", fam)
        for name in _FAMILIES[fam]:
            val = getattr(self, name)
            if val is None:
                raise ValueError(f"family {fam!r} needs parameter {name!r}")
            if val < 1 and not (fam == "random-regular" and name == "d" and val == 0):
                raise ValueError(f"parameter {name} must be positive")
        if fam == "random-regular":
            if self.d >= self.n:
                raise ValueError("random-regular requires d < n")
            if (self.n * self.d) % 2:
                raise ValueError("random-regular requires n*d even")

    def describe(self) -> str:
        args = ",".join(f"{k}={getattr(self, k)}" for k in _FAMILIES[self.family])
        return f"{self.family}({args})"


_FAMILIES = {
    "clique": ("n",),
    "complete-bipartite": ("a", "b"),
    "random-regular": ("n", "d"),
    "polarity": ("q",),
    "disjoint-cliques": ("size", "count"),
}
_ALIASES = {"bipartite": "complete-bipartite", "regular": "random-regular"}


def generate(spec: GeneratorSpec) -> Graph:
    fam = spec.family
    if fam == "clique":
        return clique(spec.n)
    if fam == "complete-bipartite":
        return complete_bipartite(spec.a, spec.b)
    if fam == "random-regular":
        return random_regular(spec.n, spec.d, spec.seed)
    if fam == "polarity":
        return polarity_graph(spec.q)
    return disjoint_cliques(spec.size, spec.count)
