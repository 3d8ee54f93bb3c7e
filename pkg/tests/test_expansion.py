import itertools
from fractions import Fraction

import numpy as np
import pytest

from percolab.expansion import (expansion_profile, expansion_threshold, refute_stochastic,
                                verify_exact)
from percolab.generators import clique, complete_bipartite
from percolab.graph import Graph, external_neighborhood

from _helpers import cycle_graph, gnp


def brute_min_neighborhood(G, k):
    return min(len(external_neighborhood(G, S)) for S in itertools.combinations(range(G.n), k))


def test_exact_examples():
    v = verify_exact(clique(5), 1, 4)
    assert v.result == "certified" and v.sets_examined == 5 and v.witness is None

    v = verify_exact(cycle_graph(6), 2, 2)
    assert v.result == "refuted"
    assert v.witness == (0, 1)
    assert len(external_neighborhood(cycle_graph(6), v.witness)) == 2 < 4

    v = verify_exact(cycle_graph(6), 2, 1)
    assert v.result == "certified" and v.min_ratio_seen == 1


def test_exact_budget():
    with pytest.raises(ValueError, match="budget"):
        verify_exact(clique(30), 10, 1, budget=1000)
    with pytest.raises(ValueError):
        verify_exact(clique(3), 4, 1)


def test_exact_witness_is_lexicographically_least():
    G = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5), (1, 2)])
    v = verify_exact(G, 2, 5)
    mins = [S for S in itertools.combinations(range(6), 2)
            if len(external_neighborhood(G, S)) == brute_min_neighborhood(G, 2)]
    assert v.witness == min(mins)


def test_rational_threshold():
    assert expansion_threshold(10, Fraction(29, 10)) == 29
    assert expansion_threshold(10, 2.9) == 29
    assert expansion_threshold(3, 1.5) == 5


def test_stochastic_examples():
    v = refute_stochastic(cycle_graph(6), 2, 2, trials=50, seed=0)
    assert v.result == "refuted" and len(external_neighborhood(cycle_graph(6), v.witness)) < 4

    v = refute_stochastic(clique(5), 1, 4, trials=20, seed=3)
    assert v.result == "inconclusive" and v.min_ratio_seen == 4

    v = refute_stochastic(complete_bipartite(3, 8), 1, 9, trials=5, seed=1)
    assert v.result == "refuted" and v.witness[0] >= 3


def test_stochastic_nearby_probe():
    v = refute_stochastic(cycle_graph(8), 2, 1, trials=10, seed=0, probe_nearby=True)
    assert set(v.nearby) == {1, 3}
    assert v.nearby[1] == 2


def test_verdicts_match_brute_force_small_graphs():
    rng = np.random.default_rng(11)
    for _ in range(60):
        n = int(rng.integers(2, 9))
        G = gnp(n, float(rng.uniform(0.2, 0.9)), rng)
        k = int(rng.integers(1, n + 1))
        d = float(rng.choice([0.5, 1, 1.5, 2, 3]))
        v = verify_exact(G, k, d)
        truth = brute_min_neighborhood(G, k) >= expansion_threshold(k, d)
        assert (v.result == "certified") == truth
        s = refute_stochastic(G, k, d, trials=5, seed=int(rng.integers(1 << 30)))
        assert s.result in ("refuted", "inconclusive")
        if s.result == "refuted":
            assert not truth
            assert len(external_neighborhood(G, s.witness)) < expansion_threshold(k, d)


def test_profile_examples():
    assert set(expansion_profile(clique(10), 2, 30, seed=1)) == {8}
    assert set(expansion_profile(Graph.empty(6), 3, 10, seed=1)) == {0}
    vals = expansion_profile(cycle_graph(6), 2, 100, seed=2)
    assert set(vals) <= {2, 3, 4} and len(vals) == 100
    assert vals == expansion_profile(cycle_graph(6), 2, 100, seed=2)


def test_k300_is_a_10_29_expander_on_samples():
    G = clique(300)
    assert set(expansion_profile(G, 10, 50, seed=0)) == {290}
    assert refute_stochastic(G, 10, 29, trials=2, seed=0).result == "inconclusive"
