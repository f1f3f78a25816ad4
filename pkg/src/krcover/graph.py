"""Simple undirected graphs and vertex-set hypergraphs.

Vertex sets are plain sorted tuples of ints throughout the package. A
``Graph`` is immutable; every operation that changes the vertex set builds
a new graph whose ``labels`` map its ids back to the ids of the root graph
it was derived from.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from krcover.errors import GraphError

VertexSet = tuple  # sorted, duplicate-free tuple[int, ...]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "nbrs", "labels", "_m")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[int] | None = None,
    ):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in sets[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            sets[u].add(v)
            sets[v].add(u)
        self._init(n, [frozenset(s) for s in sets], labels)

    def _init(self, n, nbrs, labels):
        self.n = n
        self.nbrs: tuple[frozenset[int], ...] = tuple(nbrs)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._m = sum(len(s) for s in nbrs) // 2
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise GraphError("labels must name every vertex")
            if len(set(labels)) != n:
                raise GraphError("labels must be injective")
        self.labels: tuple[int, ...] | None = labels

    @classmethod
    def _from_nbrs(cls, nbrs: Sequence[frozenset[int]], labels=None) -> "Graph":
        g = cls.__new__(cls)
        g._init(len(nbrs), nbrs, labels)
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u in range(self.n):
            for v in self.adj[u]:
                if v > u:
                    yield u, v

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]

    def lift(self, s: Iterable[int]) -> VertexSet:
        """Map local vertex ids to root-graph ids."""
        return tuple(sorted(self.label(v) for v in s))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.labels == other.labels

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def vertex_set(g: Graph, s: Iterable[int]) -> VertexSet:
    """Normalize ``s`` into a sorted duplicate-free tuple valid for ``g``."""
    out = tuple(sorted(set(s)))
    if out and (out[0] < 0 or out[-1] >= g.n):
        raise GraphError(f"vertex set {out} out of range for n={g.n}")
    return out


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """``g[s]`` with vertices renumbered in increasing order of their old id."""
    s = vertex_set(g, s)
    index = {v: i for i, v in enumerate(s)}
    nbrs = [frozenset(index[u] for u in g.adj[v] if u in index) for v in s]
    return Graph._from_nbrs(nbrs, labels=[g.label(v) for v in s])


def delete_vertices(g: Graph, x: Iterable[int]) -> Graph:
    x = set(vertex_set(g, x))
    return induced_subgraph(g, (v for v in range(g.n) if v not in x))


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    s = vertex_set(g, s)
    for i, u in enumerate(s):
        nu = g.nbrs[u]
        for v in s[i + 1:]:
            if v not in nu:
                return False
    return True


def common_neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    """Vertices adjacent to every member of ``s`` (never members of ``s``)."""
    s = vertex_set(g, s)
    if not s:
        raise GraphError("common neighborhood of an empty set is undefined")
    common = set(g.nbrs[s[0]])
    for v in s[1:]:
        common &= g.nbrs[v]
    return tuple(sorted(common))


def degeneracy_ordering(g: Graph) -> tuple[list[int], int]:
    """Min-degree peeling order and the degeneracy.

    Ties go to the lowest vertex id so the order is reproducible.
    """
    deg = [len(a) for a in g.adj]
    removed = [False] * g.n
    buckets: list[set[int]] = [set() for _ in range(max(deg, default=0) + 1)]
    for v, dv in enumerate(deg):
        buckets[dv].add(v)
    order: list[int] = []
    d = 0
    lo = 0
    for _ in range(g.n):
        lo = max(lo - 1, 0)
        while not buckets[lo]:
            lo += 1
        v = min(buckets[lo])
        buckets[lo].discard(v)
        removed[v] = True
        order.append(v)
        d = max(d, lo)
        for u in g.adj[v]:
            if not removed[u]:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets[deg[u]].add(u)
    return order, d


class Hypergraph:
    """Duplicate-free collection of nonempty vertex sets.

    Edges are kept as sorted tuples in insertion order. ``add_minimal``
    implements the annotation bookkeeping: a set is skipped when an existing
    edge is a subset of it, and existing supersets of a new edge are dropped.
    """

    __slots__ = ("edges",)

    def __init__(self, edges: Iterable[Iterable[int]] = ()):
        out: list[tuple[int, ...]] = []
        seen: set[tuple[int, ...]] = set()
        for e in edges:
            t = tuple(sorted(set(e)))
            if not t:
                raise GraphError("hyperedges must be nonempty")
            if t not in seen:
                seen.add(t)
                out.append(t)
        self.edges: tuple[tuple[int, ...], ...] = tuple(out)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, e):
        return tuple(sorted(e)) in self.edges

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return set(self.edges) == set(other.edges)

    def __hash__(self):
        return hash(frozenset(self.edges))

    def __repr__(self):
        return f"Hypergraph({list(self.edges)})"

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def is_matching(self) -> bool:
        seen: set[int] = set()
        for e in self.edges:
            if seen.intersection(e):
                return False
            seen.update(e)
        return True

    def add_minimal(self, new_edges: Iterable[Iterable[int]]) -> "Hypergraph":
        edges = list(self.edges)
        for e in new_edges:
            t = tuple(sorted(set(e)))
            st = set(t)
            if any(st.issuperset(d) for d in edges):
                continue
            edges = [d for d in edges if not st.issubset(d)]
            edges.append(t)
        return Hypergraph(edges)

    def remap(self, index: dict[int, int]) -> "Hypergraph":
        return Hypergraph(tuple(index[v] for v in e) for e in self.edges)
