"""
Long paths from a budgeted depth-first search
=============================================

K_300 is a (10, 29)-expander: any 10 vertices have exactly 290 outside
neighbours.  At p = 1.3/29 we let the exploration spend 971 coin flips and
look at the longest stack it built.
"""
# %%
import numpy as np

from percolab import clique, expansion_profile, run_dfs, theorem2_params
from percolab.rng import RngStream

G = clique(300)
print("sampled |N(S)| for |S| = 10:", set(expansion_profile(G, 10, 20, seed=0)))

params = theorem2_params(k=10, d=29, epsilon=0.3)
print(params)

# %%
# One exploration.  The trace keeps every query and the W/A/U sizes after it.
trace = run_dfs(G, params.p, RngStream(seed=1), query_budget=params.n1, params=params)
print("queries:", trace.n_queries, "positives:", trace.positive_count)
print("longest stack (edges):", trace.max_stack.length, "target:", params.path_target)
print("|A u W| reached", params.positive_target, "after", trace.n2, "queries")

# %%
# Repeat over 200 seeds.
lengths = np.array([
    run_dfs(G, params.p, RngStream(1, i), query_budget=params.n1).max_stack.length
    for i in range(200)
])
print("path length quantiles (5%, 50%, 95%):", np.percentile(lengths, [5, 50, 95]))
print("fraction reaching the target:", (lengths >= params.path_target).mean())
