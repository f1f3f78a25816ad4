"""Exact K_r-Cover: delete at most k vertices so that no r-clique remains."""

from krcover.annotated import AnnotatedInstance, Context, find_lush_clique, is_solution, kernelize, validate_context
from krcover.branching import clique_branch, petal_pick, strip_to_level
from krcover.cliques import count_small_cliques, enumerate_cliques, find_p_clique, greedy_kr_cover, maximal_hyperedge_matching
from krcover.graph import Graph, Hypergraph, common_neighborhood, degeneracy_ordering, delete_vertices, induced_subgraph, is_clique
from krcover.oracle import oracle_all_cliques, oracle_solve
from krcover.solver import PROFILES, ClassProfile, SolveReport, derive_schedule, solve, verify
from krcover.treewidth import TreeDecomposition, decompose, solve_annotated_dp, validate_decomposition

__all__ = [
    "AnnotatedInstance", "ClassProfile", "Context", "Graph", "Hypergraph", "PROFILES", "SolveReport",
    "TreeDecomposition", "clique_branch", "common_neighborhood", "count_small_cliques", "decompose",
    "degeneracy_ordering", "delete_vertices", "derive_schedule", "enumerate_cliques", "find_lush_clique",
    "find_p_clique", "greedy_kr_cover", "induced_subgraph", "is_clique", "is_solution", "kernelize",
    "maximal_hyperedge_matching", "oracle_all_cliques", "oracle_solve", "petal_pick", "solve",
    "solve_annotated_dp", "strip_to_level", "validate_context", "validate_decomposition", "verify",
]
