"""Vertex-expansion certification at a single set size.

A graph is a (k, d)-expander when every vertex set of size exactly ``k`` has
an external neighborhood of at least ``k*d`` vertices.  ``d`` may be
fractional; the bound actually tested is ``|N(S)| >= ceil(k*d)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Rational

import numpy as np

from .graph import Graph
from .rng import RngStream

__all__ = [
    "ExpansionVerdict",
    "expansion_threshold",
    "verify_exact",
    "refute_stochastic",
    "expansion_profile",
]

DEFAULT_BUDGET = 10**7


def _exact(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(x).limit_denominator(10**9)


def expansion_threshold(k: int, d) -> int:
    """Smallest admissible ``|N(S)|`` for a set of size ``k``."""
    return math.ceil(k * _exact(d))


@dataclass(frozen=True)
class ExpansionVerdict:
    mode: str                       # "exact" | "stochastic"
    k: int
    d: Fraction
    result: str                     # "certified" | "refuted" | "inconclusive"
    witness: tuple[int, ...] | None
    sets_examined: int
    min_ratio_seen: Fraction | None
    threshold: int
    nearby: dict = field(default_factory=dict)

    def as_record(self) -> str:
        """Single-line ``key=value`` rendering used by the CLI."""
        w = "-" if self.witness is None else ",".join(map(str, self.witness))
        mr = "-" if self.min_ratio_seen is None else str(self.min_ratio_seen)
        return (f"mode={self.mode} k={self.k} d={self.d} threshold={self.threshold} "
                f"result={self.result} sets_examined={self.sets_examined} "
                f"min_ratio_seen={mr} witness={w}")


def _masks(G: Graph) -> list[int]:
    out = []
    for v in range(G.n):
        m = 0
        for u in G.neighbors(v).tolist():
            m |= 1 << u
        out.append(m)
    return out


def _check_k(G: Graph, k: int) -> None:
    if not 1 <= k <= G.n:
        raise ValueError(f"set size k={k} must lie in 1..{G.n}")


def verify_exact(G: Graph, k: int, d, budget: int = DEFAULT_BUDGET) -> ExpansionVerdict:
    """Enumerate every size-``k`` set.

    Refutations carry the lexicographically least set among those with the
    smallest external neighborhood.  Raises ``ValueError`` when ``C(n, k)``
    exceeds ``budget``.
    """
    _check_k(G, k)
    total = math.comb(G.n, k)
    if total > budget:
        raise ValueError(f"C({G.n},{k}) = {total} exceeds budget {budget}; use refute_stochastic")
    dq = _exact(d)
    need = expansion_threshold(k, dq)
    nb = _masks(G)
    best = None
    best_set = None
    for S in combinations(range(G.n), k):
        smask = 0
        acc = 0
        for v in S:
            smask |= 1 << v
            acc |= nb[v]
        size = (acc & ~smask).bit_count()
        if best is None or size < best:
            best, best_set = size, S
    ratio = Fraction(best, k)
    if best < need:
        return ExpansionVerdict("exact", k, dq, "refuted", best_set, total, ratio, need)
    return ExpansionVerdict("exact", k, dq, "certified", None, total, ratio, need)


def _local_search(nb, n, k, start, max_steps):
    """Steepest-descent single swaps minimising ``|N(S)|``.

    Returns ``(size, set, evaluated)``.
    """
    S = list(start)
    smask = 0
    for v in S:
        smask |= 1 << v

    def size_of(members_mask, acc):
        return (acc & ~members_mask).bit_count()

    acc = 0
    for v in S:
        acc |= nb[v]
    cur = size_of(smask, acc)
    evaluated = 1
    for _ in range(max_steps):
        # prefix/suffix ORs give the neighborhood of S minus one member cheaply
        pre = [0] * (k + 1)
        suf = [0] * (k + 1)
        for i in range(k):
            pre[i + 1] = pre[i] | nb[S[i]]
            suf[k - 1 - i] = suf[k - i] | nb[S[k - 1 - i]]
        best = (cur, None, None)
        for i, s in enumerate(S):
            rest_acc = pre[i] | suf[i + 1]
            rest_mask = smask & ~(1 << s)
            for v in range(n):
                if (smask >> v) & 1:
                    continue
                val = ((rest_acc | nb[v]) & ~(rest_mask | (1 << v))).bit_count()
                evaluated += 1
                if val < best[0]:
                    best = (val, i, v)
        if best[1] is None:
            break
        cur, i, v = best
        smask = (smask & ~(1 << S[i])) | (1 << v)
        S[i] = v
    return cur, tuple(sorted(S)), evaluated


def _stochastic_min(G, nb, k, trials, gen, need=None):
    best = None
    best_set = None
    examined = 0
    verts = np.arange(G.n)
    for _ in range(trials):
        start = gen.choice(verts, size=k, replace=False).tolist()
        size, S, ev = _local_search(nb, G.n, k, start, 10 * k)
        examined += ev
        if best is None or size < best or (size == best and S < best_set):
            best, best_set = size, S
        if need is not None and best < need:
            break
    return best, best_set, examined


def refute_stochastic(G: Graph, k: int, d, trials: int, seed: int,
                      probe_nearby: bool = False) -> ExpansionVerdict:
    """Search for a size-``k`` set expanding by less than ``d``.

    Random starting sets are improved by steepest-descent swaps (at most
    ``10*k`` per restart).  The verdict is ``refuted`` with a witness or
    ``inconclusive``; sampling can never certify.  With ``probe_nearby`` the
    minimum ratios seen at sizes ``k-1`` and ``k+1`` are reported in
    ``nearby`` (diagnostic only, they do not affect the verdict).
    """
    _check_k(G, k)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    dq = _exact(d)
    need = expansion_threshold(k, dq)
    nb = _masks(G)
    gen = RngStream(seed, k).generator()
    best, best_set, examined = _stochastic_min(G, nb, k, trials, gen, need)
    nearby = {}
    if probe_nearby:
        for kk in (k - 1, k + 1):
            if 1 <= kk <= G.n:
                b, _, _ = _stochastic_min(G, nb, kk, trials, RngStream(seed, kk).generator())
                nearby[kk] = Fraction(b, kk)
    ratio = Fraction(best, k)
    if best < need:
        return ExpansionVerdict("stochastic", k, dq, "refuted", best_set, examined, ratio, need, nearby)
    return ExpansionVerdict("stochastic", k, dq, "inconclusive", None, examined, ratio, need, nearby)


def expansion_profile(G: Graph, k: int, samples: int, seed: int) -> list[int]:
    """``|N(S)|`` for ``samples`` uniformly random size-``k`` sets."""
    _check_k(G, k)
    gen = RngStream(seed, 0x9E0F11E).generator()
    out = []
    mark = np.zeros(G.n, dtype=bool)
    for _ in range(samples):
        S = gen.choice(G.n, size=k, replace=False)
        mark[:] = False
        for v in S:
            mark[G.neighbors(v)] = True
        mark[S] = False
        out.append(int(mark.sum()))
    return out
