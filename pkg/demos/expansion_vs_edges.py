"""
Why vertex expansion
====================

K_{d,4d} has edge expansion of order d for small sets, but every path
alternates between the sides, so no path is longer than 2d.  A
vertex-expansion check sees the problem at once: a single big-side vertex
has only d neighbours.
"""
# %%
from percolab import complete_bipartite, longest_path_exact, refute_stochastic, verify_exact

for d in (2, 3):
    G = complete_bipartite(d, 4 * d)
    path = longest_path_exact(G)
    print(f"K_{d},{4 * d}: longest path has {path.length} edges:", path.vertices)

# %%
G = complete_bipartite(3, 12)
print(verify_exact(G, k=1, d=3).as_record())
print(verify_exact(G, k=1, d=4).as_record())
print(refute_stochastic(G, k=2, d=4, trials=20, seed=0).as_record())
