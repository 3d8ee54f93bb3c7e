"""
C4-free polarity graphs
=======================

ER_q has q^2+q+1 vertices and about q^3/2 edges with no 4-cycle.  We
percolate at p = K/sqrt(n) and measure how often the two-round
construction returns a cycle of length at least n/10, as K varies.
"""
# %%
from percolab import extract_min_degree_subgraph, polarity_graph
from percolab.harness import corollary_pipeline

q = 11
H = polarity_graph(q)
print(H, "degrees:", sorted(set(H.degrees.tolist())))
print("core at half the average degree keeps", extract_min_degree_subgraph(H, H.m // H.n).n,
      "vertices")

# %%
for K in (3, 4, 5, 6, 8):
    recs = [corollary_pipeline(q, eps_density=0.5, K_factor=K, seed=s) for s in range(40)]
    freq = sum(r.success for r in recs) / len(recs)
    print(f"K={K}: p={recs[0].p:.3f}, d={recs[0].d:.2f} "
          f"(measured expansion {recs[0].extra['d_measured']:.2f}), success {freq:.2f}")
