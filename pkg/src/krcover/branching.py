"""Large-clique branching and petal-picking virtual branching.

Both engines are depth-first generators over an explicit stack, so a solver
can stop at the first useful leaf (decision mode) while tests can drain them
completely (audit mode). The ``clique_branch``/``petal_pick``/
``strip_to_level`` wrappers drain the generators into a ``BranchOutput``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from krcover.annotated import (
    Context,
    find_lush_clique,
    is_stripped,
    petal_hypergraph,
)
from krcover.cliques import (
    count_small_cliques,
    enumerate_cliques_within,
    find_p_clique,
    is_kr_free_after,
    maximal_hyperedge_matching,
)
from krcover.errors import GraphError, NotACoverError, PreconditionError
from krcover.graph import Graph, Hypergraph, VertexSet, delete_vertices, induced_subgraph, vertex_set


@dataclass
class BranchStats:
    nodes: int = 0
    leaves: int = 0
    dead: int = 0
    max_depth: int = 0
    max_m: int = 0
    zeta_by_level: dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["zeta_by_level"] = {str(i): z for i, z in sorted(self.zeta_by_level.items())}
        return out


@dataclass(frozen=True)
class TraceStep:
    level: int
    step: str
    x: VertexSet


class TraceLog:
    """Node-by-node record of a branch tree, replayable from text."""

    def __init__(self):
        self.records: list[dict] = []

    def add(self, parent: int, step: str, **fields) -> int:
        nid = len(self.records)
        self.records.append({"id": nid, "parent": parent, "step": step, **fields})
        return nid

    def finish(self, nid: int, outcome: str) -> None:
        self.records[nid]["outcome"] = outcome

    def lines(self) -> list[str]:
        out = []
        for rec in self.records:
            parts = [f"node {rec['id']} parent {rec['parent']} step {rec['step']}"]
            for key, value in rec.items():
                if key in ("id", "parent", "step"):
                    continue
                if isinstance(value, (tuple, list)):
                    value = ",".join(map(str, value)) or "-"
                parts.append(f"{key} {value}")
            out.append(" ".join(parts))
        return out

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines())


class _NullLog:
    def add(self, parent, step, **fields):
        return -1

    def finish(self, nid, outcome):
        pass


@dataclass
class BranchNode:
    context: Context
    pstar: Hypergraph = field(default_factory=Hypergraph)
    trace: tuple[TraceStep, ...] = ()
    node_id: int = -1


@dataclass(frozen=True)
class CliqueFreeInstance:
    """One member of the clique-branching output.

    ``deleted`` is in root-graph ids (through ``graph.labels``); ``m`` is a
    K_r-cover of ``graph`` in its own ids.
    """

    graph: Graph
    k: int
    deleted: VertexSet
    m: VertexSet


@dataclass
class BranchOutput:
    items: list
    stats: BranchStats
    traces: list[tuple[TraceStep, ...]] = field(default_factory=list)


def iter_clique_branch(
    g: Graph,
    k: int,
    m: Iterable[int],
    p: int,
    r: int,
    stats: BranchStats | None = None,
    log: TraceLog | None = None,
) -> Iterator[CliqueFreeInstance]:
    if p <= r:
        raise GraphError("clique branching needs p > r")
    m = vertex_set(g, m)
    if not is_kr_free_after(g, m, r):
        raise NotACoverError("m is not a K_r-cover of g")
    stats = stats if stats is not None else BranchStats()
    log = log if log is not None else _NullLog()
    stack = [(g, k, m, (), 0, -1, "root")]
    while stack:
        cur, budget, cover, deleted, depth, parent, step = stack.pop()
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        stats.max_m = max(stats.max_m, len(cover))
        nid = log.add(parent, step, k=budget, deleted=deleted)
        clique = find_p_clique(cur, cover, p, r)
        if clique is None:
            stats.leaves += 1
            log.finish(nid, "leaf")
            yield CliqueFreeInstance(cur, budget, deleted, cover)
            continue
        children = []
        for size in range(r):
            for keep in combinations(clique, size):
                x = tuple(v for v in clique if v not in keep)
                if len(x) > budget:
                    continue
                child = delete_vertices(cur, x)
                old_to_new = _survivor_index(cur.n, x)
                new_cover = tuple(old_to_new[v] for v in cover if v in old_to_new)
                lifted = tuple(sorted(deleted + cur.lift(x)))
                children.append((child, budget - len(x), new_cover, lifted, depth + 1, nid, "cliquedel"))
        if not children:
            stats.dead += 1
            log.finish(nid, "dead")
            continue
        log.finish(nid, "expanded")
        stack.extend(reversed(children))


def _survivor_index(n: int, x: Iterable[int]) -> dict[int, int]:
    gone = set(x)
    survivors = [v for v in range(n) if v not in gone]
    return {v: j for j, v in enumerate(survivors)}


def clique_branch(g: Graph, k: int, m: Iterable[int], p: int, r: int, log: TraceLog | None = None) -> BranchOutput:
    stats = BranchStats()
    items = list(iter_clique_branch(g, k, m, p, r, stats, log))
    return BranchOutput(items, stats)


def iter_petal_pick(
    i: int,
    lam: int,
    node: BranchNode,
    stats: BranchStats | None = None,
    log: TraceLog | None = None,
    parent: int = -1,
    debug: bool = False,
) -> Iterator[BranchNode]:
    """Turn an i-stripped context into (i+1)-stripped ones.

    Each step finds the smallest lush i-clique X, matches its petals outside
    M greedily, then either absorbs a small matching into M or branches on
    "annotate X" versus "commit the matching as annotations".
    """
    ctx = node.context
    if not 1 <= i < ctx.r:
        raise GraphError(f"petal picking level {i} outside 1..{ctx.r - 1}")
    if lam < 1:
        raise GraphError("lambda must be at least 1")
    if debug and not is_stripped(ctx, i):
        raise PreconditionError(f"context is not {i}-stripped")
    stats = stats if stats is not None else BranchStats()
    log = log if log is not None else _NullLog()
    zeta = len(enumerate_cliques_within(ctx.g, i, ctx.m))
    stats.zeta_by_level[i] = max(stats.zeta_by_level.get(i, 0), zeta)

    stack = [(ctx, node.pstar, node.trace, 0, parent, "enter")]
    while stack:
        cur, pstar, trace, depth, pid, step = stack.pop()
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        stats.max_m = max(stats.max_m, len(cur.m))
        x_rec = trace[-1].x if trace and step != "enter" else ()
        nid = log.add(pid, step, level=i, x=x_rec, m=len(cur.m), d=len(cur.d), pstar=len(pstar))
        if cur.k < len(pstar):
            stats.dead += 1
            log.finish(nid, "dead")
            continue
        x = find_lush_clique(cur, i)
        if x is None:
            stats.leaves += 1
            log.finish(nid, "leaf")
            yield BranchNode(cur, pstar, trace, nid)
            continue
        matching = maximal_hyperedge_matching(petal_hypergraph(cur, x))
        grown = cur.m | matching.vertices()
        if len(matching) <= lam:
            log.finish(nid, "expanded")
            stack.append((cur.replace(m=grown), pstar, trace + (TraceStep(i, "absorb", x),), depth + 1, nid, "absorb"))
            continue
        children = [(
            cur.replace(d=cur.d.add_minimal([x])),
            pstar,
            trace + (TraceStep(i, "annotate", x),),
            depth + 1, nid, "annotate",
        )]
        if cur.k >= len(pstar) + len(matching):
            children.append((
                cur.replace(d=cur.d.add_minimal(matching), m=grown),
                Hypergraph(pstar.edges + matching.edges),
                trace + (TraceStep(i, "commit", x),),
                depth + 1, nid, "commit",
            ))
        else:
            stats.dead += 1
        log.finish(nid, "expanded")
        stack.extend(reversed(children))


def petal_pick(i: int, lam: int, node: BranchNode | Context, log: TraceLog | None = None, debug: bool = False) -> BranchOutput:
    if isinstance(node, Context):
        node = BranchNode(node)
    stats = BranchStats()
    leaves = list(iter_petal_pick(i, lam, node, stats, log, debug=debug))
    return BranchOutput([n.context for n in leaves], stats, [n.trace for n in leaves])


def iter_strip_to_level(
    i: int,
    lam: int,
    c: Context,
    stats: BranchStats | None = None,
    log: TraceLog | None = None,
    debug: bool = False,
    parent: int = -1,
) -> Iterator[BranchNode]:
    """Apply petal picking for levels 1..i-1; leaves are i-stripped."""
    if not 1 <= i <= c.r:
        raise GraphError(f"strip level {i} outside 1..{c.r}")
    stats = stats if stats is not None else BranchStats()

    def level(j: int) -> Iterator[BranchNode]:
        if j == 1:
            yield BranchNode(c, node_id=parent)
            return
        for node in level(j - 1):
            fresh = BranchNode(node.context, Hypergraph(), node.trace)
            yield from iter_petal_pick(j - 1, lam, fresh, stats, log, node.node_id, debug)

    yield from level(i)


def strip_to_level(i: int, lam: int, c: Context, log: TraceLog | None = None, debug: bool = False) -> BranchOutput:
    stats = BranchStats()
    leaves = list(iter_strip_to_level(i, lam, c, stats, log, debug))
    stats.leaves = len(leaves)
    return BranchOutput([n.context for n in leaves], stats, [n.trace for n in leaves])


def strip_bound(m_size: int, levels: int, r: int, lam: int, zeta: int, k: int) -> int:
    """Upper bound on |M'| after ``levels`` rounds of petal picking."""
    return m_size + levels * r * (lam * zeta + k)


def small_clique_count(c: Context) -> int:
    """Number of (<r)-cliques of G[M], the zeta of the multi-level bound."""
    return count_small_cliques(induced_subgraph(c.g, sorted(c.m)), c.r)
