"""Small-clique enumeration, greedy K_r packing, and p-clique search
against a known K_r-cover."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from krcover.errors import GraphError, NotACoverError
from krcover.graph import Graph, Hypergraph, VertexSet, degeneracy_ordering, vertex_set


@dataclass(frozen=True)
class CliqueList:
    order: int
    cliques: tuple[VertexSet, ...]

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


def iter_cliques(g: Graph, size: int, candidates: Iterable[int] | None = None) -> Iterator[VertexSet]:
    """Yield every ``size``-clique inside ``candidates`` (default: all of g).

    Cliques come out as sorted tuples in lexicographic order, each exactly
    once. Generation is lazy so callers can stop at the first hit.
    """
    if size < 0:
        raise GraphError("clique size must be nonnegative")
    cand = set(range(g.n)) if candidates is None else set(candidates)
    if size == 0:
        yield ()
        return
    if len(cand) < size:
        return
    nbrs = g.nbrs

    def extend(clique: list[int], pool: list[int]) -> Iterator[VertexSet]:
        need = size - len(clique)
        if need == 0:
            yield tuple(sorted(clique))
            return
        for idx, v in enumerate(pool):
            if len(pool) - idx < need:
                return
            nv = nbrs[v]
            rest = [u for u in pool[idx + 1:] if u in nv]
            if len(rest) < need - 1:
                continue
            clique.append(v)
            yield from extend(clique, rest)
            clique.pop()

    yield from extend([], sorted(cand))


def has_clique(g: Graph, size: int, candidates: Iterable[int] | None = None) -> bool:
    return next(iter_cliques(g, size, candidates), None) is not None


def enumerate_cliques(g: Graph, i: int) -> CliqueList:
    """All ``i``-cliques of ``g`` in lexicographic order.

    Vertices are processed in degeneracy order and each clique is grown only
    inside forward neighborhoods, so the work is O(i * d^(i-1) * n).
    """
    if i < 1:
        raise GraphError("clique order must be at least 1")
    order, _ = degeneracy_ordering(g)
    pos = [0] * g.n
    for idx, v in enumerate(order):
        pos[v] = idx
    forward = [frozenset(u for u in g.adj[v] if pos[u] > pos[v]) for v in range(g.n)]
    found: list[VertexSet] = []

    def grow(clique: list[int], cand: frozenset[int]) -> None:
        if len(clique) == i:
            found.append(tuple(sorted(clique)))
            return
        if len(cand) < i - len(clique):
            return
        for u in cand:
            clique.append(u)
            grow(clique, cand & forward[u])
            clique.pop()

    for v in order:
        grow([v], forward[v])
    found.sort()
    return CliqueList(i, tuple(found))


def count_small_cliques(g: Graph, r: int) -> int:
    """Number of cliques with 1 <= size < r."""
    if r < 2:
        raise GraphError("r must be at least 2")
    return sum(len(enumerate_cliques(g, i)) for i in range(1, r))


def greedy_kr_cover(g: Graph, r: int) -> VertexSet:
    """Union of a maximal packing of disjoint r-cliques (an r-approximation)."""
    if r < 2:
        raise GraphError("r must be at least 2")
    used: set[int] = set()
    for clique in enumerate_cliques(g, r):
        if used.isdisjoint(clique):
            used.update(clique)
    return tuple(sorted(used))


def is_kr_free_after(g: Graph, m: Iterable[int], r: int) -> bool:
    """True iff ``g - m`` has no r-clique."""
    ms = set(m)
    return not has_clique(g, r, (v for v in range(g.n) if v not in ms))


def find_p_clique(g: Graph, m: Iterable[int], p: int, r: int) -> VertexSet | None:
    """A p-clique of ``g`` or None, using that ``m`` is a K_r-cover.

    Every p-clique meets ``m`` in at least p-r+1 vertices, so it suffices to
    try each (p-r+1)-clique S of g[m] and look for an (r-1)-clique among the
    common neighbours of S. The first hit in lexicographic seed order wins.
    """
    if p <= r:
        raise GraphError("find_p_clique needs p > r")
    m = vertex_set(g, m)
    if not is_kr_free_after(g, m, r):
        raise NotACoverError("m is not a K_r-cover of g")
    _, d = degeneracy_ordering(g)
    if d + 1 < p:
        return None
    seed_size = p - r + 1
    for seed in enumerate_cliques_within(g, seed_size, m):
        common = set(g.nbrs[seed[0]])
        for v in seed[1:]:
            common &= g.nbrs[v]
        rest = next(iter_cliques(g, r - 1, common), None)
        if rest is not None:
            return tuple(sorted(seed + rest))
    return None


def enumerate_cliques_within(g: Graph, size: int, within: Iterable[int]) -> list[VertexSet]:
    """Lexicographic list of ``size``-cliques with all vertices in ``within``."""
    return list(iter_cliques(g, size, within))


def maximal_hyperedge_matching(h: Hypergraph | Iterable[Iterable[int]]) -> Hypergraph:
    """First-fit maximal matching over hyperedges in lexicographic order."""
    edges = sorted({tuple(sorted(e)) for e in h})
    used: set[int] = set()
    chosen = []
    for e in edges:
        if used.isdisjoint(e):
            chosen.append(e)
            used.update(e)
    return Hypergraph(chosen)

