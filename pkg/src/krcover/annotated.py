"""Annotated K_r-Cover instances, contexts, lush cliques and the kernel.

An annotated instance ``(G, D, k)`` asks for at most ``k`` vertices that hit
every r-clique of ``G`` and every set in ``D`` (each a clique with fewer
than r vertices). A context pairs it with a K_r-cover ``M`` of ``G`` that
contains every annotated vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from krcover.cliques import has_clique, is_kr_free_after, iter_cliques
from krcover.errors import GraphError, PreconditionError
from krcover.graph import Graph, Hypergraph, VertexSet, induced_subgraph, is_clique, vertex_set


@dataclass(frozen=True)
class AnnotatedInstance:
    g: Graph
    d: Hypergraph
    k: int
    r: int

    def __post_init__(self):
        if self.k < 0:
            raise GraphError("budget k must be nonnegative")
        if self.r < 2:
            raise GraphError("r must be at least 2")
        for e in self.d:
            vertex_set(self.g, e)
            if len(e) >= self.r or not is_clique(self.g, e):
                raise GraphError(f"annotation {e} is not a clique of order < r")

    @classmethod
    def plain(cls, g: Graph, k: int, r: int) -> "AnnotatedInstance":
        return cls(g, Hypergraph(), k, r)


@dataclass(frozen=True)
class Context:
    instance: AnnotatedInstance
    m: frozenset[int]

    @property
    def g(self) -> Graph:
        return self.instance.g

    @property
    def d(self) -> Hypergraph:
        return self.instance.d

    @property
    def k(self) -> int:
        return self.instance.k

    @property
    def r(self) -> int:
        return self.instance.r

    def replace(self, *, d: Hypergraph | None = None, m: Iterable[int] | None = None) -> "Context":
        inst = self.instance
        if d is not None:
            inst = AnnotatedInstance(inst.g, d, inst.k, inst.r)
        return Context(inst, self.m if m is None else frozenset(m))


def make_context(g: Graph, m: Iterable[int], k: int, r: int, d: Iterable[Iterable[int]] = ()) -> Context:
    return Context(AnnotatedInstance(g, Hypergraph(d), k, r), frozenset(vertex_set(g, m)))


def context_violations(c: Context) -> list[str]:
    """Human-readable list of broken context invariants (empty when valid)."""
    problems = []
    if any(not 0 <= v < c.g.n for v in c.m):
        problems.append("M contains out-of-range vertices")
        return problems
    if not is_kr_free_after(c.g, c.m, c.r):
        problems.append("G - M contains an r-clique")
    stray = c.d.vertices() - c.m
    if stray:
        problems.append(f"annotated vertices outside M: {sorted(stray)}")
    return problems


def validate_context(c: Context) -> bool:
    return not context_violations(c)


def _contains_annotation(d: Hypergraph, x: Iterable[int]) -> bool:
    xs = set(x)
    return any(xs.issuperset(e) for e in d)


def _petal_pool(c: Context, x: VertexSet) -> set[int]:
    common = set(c.g.nbrs[x[0]])
    for v in x[1:]:
        common &= c.g.nbrs[v]
    return common - c.m


def is_lush(c: Context, x: Iterable[int]) -> bool:
    x = vertex_set(c.g, x)
    if not x or len(x) >= c.r or not set(x) <= c.m or not is_clique(c.g, x):
        return False
    if _contains_annotation(c.d, x):
        return False
    return has_clique(c.g, c.r - len(x), _petal_pool(c, x))


def find_lush_clique(c: Context, i: int) -> VertexSet | None:
    """Lexicographically smallest lush i-clique, or None.

    None certifies that an i-stripped context is (i+1)-stripped.
    """
    if not 1 <= i < c.r:
        raise GraphError(f"clique order {i} outside 1..{c.r - 1}")
    for x in iter_cliques(c.g, i, c.m):
        if _contains_annotation(c.d, x):
            continue
        if has_clique(c.g, c.r - i, _petal_pool(c, x)):
            return x
    return None


def petal_hypergraph(c: Context, x: VertexSet) -> Hypergraph:
    """All r-petals of ``x`` lying entirely outside M."""
    return Hypergraph(iter_cliques(c.g, c.r - len(x), _petal_pool(c, x)))


def is_stripped(c: Context, level: int) -> bool:
    """True iff the context has no lush i-clique for any i < level."""
    return all(find_lush_clique(c, i) is None for i in range(1, min(level, c.r)))


def kernelize(c: Context, debug: bool = False) -> AnnotatedInstance:
    """Restrict an r-stripped context to ``G[M]``.

    Kernel vertex j is the j-th smallest vertex of M; ``lift_kernel_solution``
    maps kernel solutions back into the context graph.
    """
    if debug:
        if not validate_context(c):
            raise PreconditionError("; ".join(context_violations(c)))
        if not is_stripped(c, c.r):
            raise PreconditionError("context is not r-stripped")
    ms = sorted(c.m)
    index = {v: j for j, v in enumerate(ms)}
    return AnnotatedInstance(induced_subgraph(c.g, ms), c.d.remap(index), c.k, c.r)


def lift_kernel_solution(c: Context, s: Iterable[int]) -> VertexSet:
    ms = sorted(c.m)
    return tuple(sorted(ms[j] for j in s))


def is_solution(inst: AnnotatedInstance, s: Iterable[int]) -> bool:
    s = vertex_set(inst.g, s)
    if len(s) > inst.k:
        return False
    chosen = set(s)
    if any(chosen.isdisjoint(e) for e in inst.d):
        return False
    return is_kr_free_after(inst.g, chosen, inst.r)
