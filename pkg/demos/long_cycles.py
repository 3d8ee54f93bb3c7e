"""
Long cycles by sprinkling
=========================

First round: DFS on G_{p1} gives a long path, which is cut into blocks of
c*n/d edges.  Second round: off-path vertices adjacent to many blocks
try to reach both an early and a late block through G_{p2}.
"""
# %%
from collections import Counter

import numpy as np

from percolab import clique, find_long_cycle, theorem3_params, validate_sequence

n = 1500
G = clique(n)
params = theorem3_params(c=0.2, d=40, epsilon=0.5, n=n)
print(params)
print("nominal block count rounds to zero:", params.degenerate_r)

# %%
res = find_long_cycle(G, params, seed=7)
print(res)
union = G.edge_subgraph(np.union1d(res.round1_edges, res.round2_edges))
print("cycle valid in G_p1 u G_p2:", validate_sequence(union, res.cycle))
print("share of good vertices that succeeded:", round(res.success_rate, 3))

# %%
# Outcomes over 20 seeds.
results = [find_long_cycle(G, params, seed=7, stream=i) for i in range(20)]
print(Counter(r.outcome for r in results))
print("cycle lengths:", sorted(r.cycle_length for r in results))
