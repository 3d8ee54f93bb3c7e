import itertools

import numpy as np
import pytest

from percolab.generators import clique, complete_bipartite
from percolab.graph import Graph, validate_sequence
from percolab.oracle import OracleLimit, longest_cycle_exact, longest_path_exact

from _helpers import cycle_graph, gnp, path_graph, petersen, random_tree


def brute_longest_path(G):
    best = 0
    adj = [set(G.neighbors(v).tolist()) for v in range(G.n)]

    def extend(v, seen, length):
        nonlocal best
        best = max(best, length)
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                extend(u, seen, length + 1)
                seen.remove(u)

    for v in range(G.n):
        extend(v, {v}, 0)
    return best


def brute_longest_cycle(G):
    best = 0
    for k in range(G.n, 2, -1):
        for S in itertools.combinations(range(G.n), k):
            first = S[0]
            for perm in itertools.permutations(S[1:]):
                cyc = (first,) + perm
                if all(G.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + (first,))):
                    return k
    return best


def test_path_examples():
    assert longest_path_exact(path_graph(5)).length == 4
    assert longest_path_exact(clique(4)).length == 3
    seq = longest_path_exact(complete_bipartite(3, 8))
    assert seq.length == 6 and validate_sequence(complete_bipartite(3, 8), seq)


def test_cycle_examples():
    assert longest_cycle_exact(cycle_graph(5)).length == 5
    assert longest_cycle_exact(random_tree(12, np.random.default_rng(1))) is None
    c = longest_cycle_exact(petersen())
    assert c.length == 9 and validate_sequence(petersen(), c)


def test_limit():
    with pytest.raises(ValueError):
        longest_path_exact(clique(21))
    with pytest.raises(ValueError):
        longest_cycle_exact(clique(6), OracleLimit(5))


def test_degenerate_inputs():
    assert longest_path_exact(Graph.empty(1)).length == 0
    assert longest_cycle_exact(clique(2)) is None
    assert longest_cycle_exact(clique(3)).length == 3


def test_against_brute_force():
    rng = np.random.default_rng(8)
    for _ in range(40):
        n = int(rng.integers(1, 8))
        G = gnp(n, float(rng.uniform(0.1, 0.9)), rng)
        P = longest_path_exact(G)
        assert validate_sequence(G, P) and P.length == brute_longest_path(G)
        C = longest_cycle_exact(G)
        want = brute_longest_cycle(G)
        if want == 0:
            assert C is None
        else:
            assert validate_sequence(G, C) and C.length == want


def test_relabeling_invariance():
    rng = np.random.default_rng(2)
    for _ in range(15):
        G = gnp(10, 0.35, rng)
        perm = rng.permutation(10)
        H = Graph.from_edges(10, perm[G.edges]) if G.m else Graph.empty(10)
        assert longest_path_exact(G).length == longest_path_exact(H).length
        cg, ch = longest_cycle_exact(G), longest_cycle_exact(H)
        assert (cg is None) == (ch is None)
        if cg is not None:
            assert cg.length == ch.length
