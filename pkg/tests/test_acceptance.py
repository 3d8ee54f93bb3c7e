"""Exit criteria, one test per criterion.

Each test reports a PASS/FAIL line that is printed in the terminal summary.
Monte Carlo thresholds were fixed from pilot runs on seeds disjoint from
the ones used here (see README).
"""

import dataclasses
import math
import time

import numpy as np
import pytest

from percolab import cli
from percolab.cycles import find_long_cycle, theorem3_params
from percolab.dfs import max_stack_path, run_dfs, theorem2_params
from percolab.expansion import (expansion_profile, expansion_threshold, refute_stochastic,
                                verify_exact)
from percolab.generators import (clique, complete_bipartite, core_vertices, disjoint_cliques,
                                 polarity_graph, random_regular)
from percolab.graph import external_neighborhood, validate_sequence
from percolab.harness import corollary_pipeline
from percolab.oracle import longest_cycle_exact, longest_path_exact
from percolab.percolation import chernoff_tail, retained_mask, split_probability
from percolab.rng import RngStream

from _helpers import check_trace, cycle_graph, gnp, petersen


def _random_host(rng):
    fam = rng.integers(6)
    if fam == 0:
        return clique(int(rng.integers(1, 61)))
    if fam == 1:
        a = int(rng.integers(1, 20))
        return complete_bipartite(a, int(rng.integers(1, 200 - a)))
    if fam == 2:
        n = int(rng.integers(6, 201))
        d = int(rng.integers(1, 6))
        if n * d % 2:
            n -= 1
        return random_regular(n, d, int(rng.integers(1 << 30)))
    if fam == 3:
        return polarity_graph(int(rng.choice([2, 3, 5, 7, 11, 13])))
    if fam == 4:
        return disjoint_cliques(int(rng.integers(1, 15)), int(rng.integers(1, 13)))
    n = int(rng.integers(1, 201))
    return gnp(n, float(rng.uniform(0, min(1.0, 8 / max(n, 1)))), rng)


def test_1_dfs_invariants(acceptance_report):
    rng = np.random.default_rng(20261016)
    t0 = time.perf_counter()
    violations = 0
    for trial in range(1000):
        G = _random_host(rng)
        assert G.n <= 200
        p = float(rng.choice([0.0, 1.0, rng.uniform()]))
        order = rng.permutation(G.n) if rng.random() < 0.5 else None
        budget = int(rng.integers(0, 3 * G.m + 2)) if rng.random() < 0.3 else 0
        tr = run_dfs(G, p, RngStream(trial, 1), order=order, query_budget=budget)
        try:
            best = check_trace(G, tr)
            assert len(max_stack_path(tr)) == best
            assert validate_sequence(G.edge_subgraph(tr.positive_edges()), max_stack_path(tr))
        except AssertionError:
            violations += 1
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 60
    acceptance_report(1, ok, f"1000 traces, {violations} violations, {elapsed:.1f}s (< 60s)")
    assert ok


def test_2_percolation_marginals(acceptance_report):
    G = random_regular(50, 4, seed=3)
    assert G.m == 100
    m = 10_000
    worst = {}
    for p in (0.1, 0.5):
        counts = np.zeros(G.m)
        for t in range(m):
            counts += retained_mask(G, p, RngStream(t, 77))
        dev = np.abs(counts / m - p) / (4 * math.sqrt(p * (1 - p) / m))
        worst[p] = float(dev.max())
    grid_err = 0.0
    for p in np.linspace(0.0, 0.99, 10):
        for frac in np.linspace(0.0, 1.0, 10):
            p1 = p * frac
            p2 = split_probability(p, p1)
            grid_err = max(grid_err, abs((1 - p1) * (1 - p2) - (1 - p)))
    ok = all(v <= 1 for v in worst.values()) and grid_err <= 1e-12
    acceptance_report(2, ok, f"max deviation / 4 sigma: {worst}; split identity error {grid_err:.1e}")
    assert ok


def test_3_long_path_k300(acceptance_report):
    G = clique(300)
    k, d, eps = 10, 29, 0.3
    assert set(expansion_profile(G, k, 20, seed=1)) == {290}
    pr = theorem2_params(k, d, eps)
    assert (pr.n1, pr.path_target) == (971, 3)
    p = 1.3 / 29
    mean = pr.n1 * p
    t = mean / 2                        # widest band the tail bound admits
    t0 = time.perf_counter()
    long_enough = in_band = 0
    trials = 500
    for i in range(trials):
        tr = run_dfs(G, p, RngStream(2026, i), query_budget=pr.n1, params=pr)
        assert tr.n_queries == pr.n1
        long_enough += max_stack_path(tr).length >= pr.path_target
        in_band += abs(tr.positive_count - mean) <= t
    elapsed = time.perf_counter() - t0
    f_path, f_band = long_enough / trials, in_band / trials
    ok = f_path >= 0.99 and f_band >= 0.99 and elapsed < 60
    acceptance_report(3, ok, f"path >= 3 in {f_path:.3f}, positives within "
                      f"{mean:.2f} +/- {t:.2f} in {f_band:.3f} (tail bound "
                      f"{chernoff_tail(pr.n1, p, t):.3f}), {elapsed:.1f}s")
    assert ok


def test_4_long_cycle_k4000(acceptance_report):
    t0 = time.perf_counter()
    G = clique(4000)
    pr = theorem3_params(0.2, 40, 0.5, 4000)
    assert pr.block_len == 20
    trials = 50
    good = 0
    below_target = 0
    for i in range(trials):
        res = find_long_cycle(G, pr, seed=4000, stream=i)
        if not res.found:
            continue
        union = G.edge_subgraph(np.union1d(res.round1_edges, res.round2_edges))
        valid = validate_sequence(union, res.cycle)
        below_target += res.cycle_length < pr.cycle_target
        good += valid and res.cycle_length >= 80
    elapsed = time.perf_counter() - t0
    freq = good / trials
    ok = freq >= 0.95 and below_target == 0 and elapsed < 120
    acceptance_report(4, ok, f"validated cycle >= 80 in {freq:.2f} of {trials}, "
                      f"{below_target} below target, {elapsed:.1f}s (< 120s)")
    assert ok


def test_5_oracle_dominance(acceptance_report):
    rng = np.random.default_rng(5)
    bad = 0
    cycles_seen = 0
    for i in range(200):
        n = int(rng.integers(4, 13))
        G = gnp(n, float(rng.uniform(0.15, 0.8)), rng)
        best_path = longest_path_exact(G)
        best_cycle = longest_cycle_exact(G)
        bad += not validate_sequence(G, best_path)
        bad += best_cycle is not None and not validate_sequence(G, best_cycle)
        tr = run_dfs(G, float(rng.uniform()), RngStream(i, 5))
        bad += max_stack_path(tr).length > best_path.length
        pr = theorem3_params(0.5, n / 2, 0.5, n)          # block length 1
        pr = dataclasses.replace(pr, p1=float(rng.uniform(0.3, 1)), p2=float(rng.uniform(0.3, 1)))
        res = find_long_cycle(G, pr, seed=i)
        if res.found:
            cycles_seen += 1
            bad += best_cycle is None or res.cycle_length > best_cycle.length
    k38 = longest_path_exact(complete_bipartite(3, 8)).length
    pet = longest_cycle_exact(petersen()).length
    ok = bad == 0 and k38 == 6 and pet == 9
    acceptance_report(5, ok, f"{bad} dominance violations over 200 graphs "
                      f"({cycles_seen} pipeline cycles); K_3,8 path {k38}; Petersen cycle {pet}")
    assert ok


def test_6_expansion_certification(acceptance_report):
    k5 = verify_exact(clique(5), 1, 4)
    c6 = verify_exact(cycle_graph(6), 2, 2)
    witness_ok = (c6.result == "refuted"
                  and len(external_neighborhood(cycle_graph(6), c6.witness)) < 4)
    rng = np.random.default_rng(6)
    contradictions = 0
    for i in range(100):
        n = int(rng.integers(2, 11))
        G = gnp(n, float(rng.uniform(0.1, 0.9)), rng)
        k = int(rng.integers(1, n + 1))
        d = float(rng.choice([0.5, 1, 1.5, 2, 2.5, 3]))
        ex = verify_exact(G, k, d)
        st = refute_stochastic(G, k, d, trials=10, seed=i)
        if st.result == "certified":
            contradictions += 1
        if st.result == "refuted":
            rechecked = len(external_neighborhood(G, st.witness)) < expansion_threshold(k, d)
            contradictions += ex.result != "refuted" or not rechecked
    ok = k5.result == "certified" and witness_ok and contradictions == 0
    acceptance_report(6, ok, f"K_5 {k5.result}; C_6 {c6.result} witness {c6.witness}; "
                      f"{contradictions} exact/stochastic contradictions")
    assert ok


def test_7_unbalanced_bipartite_obstruction(acceptance_report):
    lengths = {d: longest_path_exact(complete_bipartite(d, 4 * d)).length for d in (2, 3)}
    ok = lengths == {2: 4, 3: 6}
    acceptance_report(7, ok, f"longest path in K_d,4d: {lengths} (expected 2d)")
    assert ok


def test_8_corollary_pipeline(acceptance_report):
    H = polarity_graph(11)
    A = np.zeros((H.n, H.n), dtype=np.int64)
    A[H.edges[:, 0], H.edges[:, 1]] = 1
    A[H.edges[:, 1], H.edges[:, 0]] = 1
    common = A @ A
    np.fill_diagonal(common, 0)
    c4_free = H.n == 133 and common.max() <= 1
    intact = len(core_vertices(H, math.floor(H.m / H.n))) == H.n
    K_factor, eps = 6.0, 0.5
    recs = [corollary_pipeline(11, eps, K_factor, seed=s) for s in range(50)]
    hits = sum(r.outcome == "cycle found" and r.cycle_len >= 0.1 * r.n for r in recs)
    freq = hits / 50
    ok = c4_free and intact and freq >= 0.8
    acceptance_report(8, ok, f"ER_11 C4-free={c4_free}, core intact={intact}; "
                      f"cycle >= 0.1n in {freq:.2f} of 50 seeds (K={K_factor}, eps={eps})")
    assert ok


def test_9_experiment_determinism(tmp_path, acceptance_report):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("mode=path-theorem\nfamily=regular\nn=200\ndegree=6\ngen_seed=3\n"
                   "k=5\nd=5\neps=0.3\ntrials=24\nseed=11\n")
    outs = []
    for workers in ("1", "3"):
        out = tmp_path / f"w{workers}.csv"
        assert cli.main(["experiment", "--config", str(cfg), "--workers", workers,
                         "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0].splitlines()) == 25
    acceptance_report(9, ok, "experiment CSV byte-identical for 1 and 3 workers")
    assert ok
