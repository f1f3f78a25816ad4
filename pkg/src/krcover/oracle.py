"""Brute-force ground truth for K_r-Cover and its annotated variant.

Nothing here touches the clique engine or the solver pipeline: clique tests
are done directly against the adjacency sets, so the oracle can anchor the
equivalence checks of everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from krcover.annotated import AnnotatedInstance
from krcover.errors import InstanceTooLarge
from krcover.graph import Graph, VertexSet

MAX_N = 25
MAX_K = 8
MAX_N_SUBSETS = 20


@dataclass(frozen=True)
class OracleResult:
    decision: bool
    min_size: int | None
    solution: VertexSet | None


def _first_clique(g: Graph, size: int, removed: frozenset[int]) -> tuple[int, ...] | None:
    """Lexicographically first ``size``-clique avoiding ``removed``."""

    def search(prefix: list[int], cand: list[int]):
        if len(prefix) == size:
            return tuple(prefix)
        for idx, v in enumerate(cand):
            if len(cand) - idx < size - len(prefix):
                return None
            nxt = [u for u in cand[idx + 1:] if g.has_edge(u, v)]
            found = search(prefix + [v], nxt)
            if found is not None:
                return found
        return None

    return search([], [v for v in range(g.n) if v not in removed])


def oracle_solve(inst: AnnotatedInstance, max_n: int | None = MAX_N, max_k: int | None = MAX_K) -> OracleResult:
    """Exact answer by bounded search tree with iterative deepening.

    At each node the first unhit annotation (or, failing that, the first
    surviving r-clique) is picked and each of its vertices is tried in turn.
    The first budget that succeeds is the optimum.
    """
    g = inst.g
    if max_n is not None and g.n > max_n:
        raise InstanceTooLarge(f"oracle capped at n={max_n}, got {g.n}")
    if max_k is not None and inst.k > max_k:
        raise InstanceTooLarge(f"oracle capped at k={max_k}, got {inst.k}")
    dsets = sorted((frozenset(d) for d in inst.d), key=sorted)

    def target(removed: frozenset[int]):
        for d in dsets:
            if removed.isdisjoint(d):
                return sorted(d)
        return _first_clique(g, inst.r, removed)

    def branch(removed: frozenset[int], budget: int):
        hit = target(removed)
        if hit is None:
            return removed
        if budget == 0:
            return None
        for v in hit:
            found = branch(removed | {v}, budget - 1)
            if found is not None:
                return found
        return None

    for budget in range(inst.k + 1):
        found = branch(frozenset(), budget)
        if found is not None:
            return OracleResult(True, len(found), tuple(sorted(found)))
    return OracleResult(False, None, None)


def oracle_min_by_subsets(inst: AnnotatedInstance, max_size: int | None = None) -> OracleResult:
    """Second, independent oracle: try every vertex subset by size.

    ``max_size`` defaults to n, so ``min_size`` is the unconstrained
    optimum; ``decision`` still compares against ``inst.k``.
    """
    g = inst.g
    if g.n > MAX_N_SUBSETS:
        raise InstanceTooLarge(f"subset oracle capped at n={MAX_N_SUBSETS}, got {g.n}")
    targets = [frozenset(d) for d in inst.d]
    targets += [frozenset(s) for s in oracle_all_cliques(g, inst.r)]
    limit = g.n if max_size is None else min(max_size, g.n)
    for size in range(limit + 1):
        for s in combinations(range(g.n), size):
            chosen = set(s)
            if all(not chosen.isdisjoint(t) for t in targets):
                return OracleResult(size <= inst.k, size, s)
    return OracleResult(False, None, None)


def oracle_all_cliques(g: Graph, i: int) -> list[VertexSet]:
    """All ``i``-subsets that are cliques, lexicographic."""
    if g.n > MAX_N_SUBSETS:
        raise InstanceTooLarge(f"subset clique listing capped at n={MAX_N_SUBSETS}")
    return [s for s in combinations(range(g.n), i) if all(g.has_edge(a, b) for a, b in combinations(s, 2))]
