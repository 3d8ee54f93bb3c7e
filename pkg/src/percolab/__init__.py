"""Percolation on vertex-expanders: long paths by deferred-decision DFS and
long cycles by two-round exposure, with generators, expansion checks, an
exact oracle and a Monte Carlo harness."""

from .cycles import (BlockDecomposition, CycleResult, GoodVertexRecord, Theorem3Params,
                     classify_vertices, decompose_blocks, find_long_cycle,
                     sprinkle_and_connect, theorem3_params)
from .dfs import (DfsTrace, Theorem2Params, complete_exposure, max_stack_path, run_dfs,
                  theorem2_params)
from .expansion import ExpansionVerdict, expansion_profile, refute_stochastic, verify_exact
from .generators import (GeneratorSpec, clique, complete_bipartite, disjoint_cliques,
                         extract_min_degree_subgraph, generate, polarity_graph, random_regular)
from .graph import (Graph, VertexSequence, edge_count_between, external_neighborhood,
                    load_edge_list, save_edge_list, validate_sequence)
from .oracle import longest_cycle_exact, longest_path_exact
from .percolation import (PercolationParams, chernoff_tail, graph_union, percolate,
                          split_probability)
from .rng import RngStream

__version__ = "0.1.0"
