"""Heuristic tree decompositions and the exact annotated K_r-Cover DP."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from krcover.annotated import AnnotatedInstance
from krcover.cliques import has_clique
from krcover.errors import DecompositionError
from krcover.graph import Graph, VertexSet


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[VertexSet, ...]
    tree: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, nb in enumerate(self.tree) for b in nb if a < b]


def decompose(g: Graph) -> TreeDecomposition:
    """Min-fill elimination; ties go to min degree, then lowest id.

    Bag ``j`` holds the j-th eliminated vertex and its neighbours at that
    time. It hangs below the bag of its earliest-eliminated neighbour;
    component roots are chained so the result is one tree.
    """
    n = g.n
    if n == 0:
        return TreeDecomposition(((),), ((),))
    nbrs = [set(a) for a in g.adj]
    alive = set(range(n))
    order: list[int] = []
    elim_nbrs: list[set[int]] = []

    def fill(v: int) -> int:
        nv = sorted(nbrs[v])
        return sum(1 for a, b in combinations(nv, 2) if b not in nbrs[a])

    while alive:
        v = min(alive, key=lambda u: (fill(u), len(nbrs[u]), u))
        nv = nbrs[v]
        for a, b in combinations(sorted(nv), 2):
            nbrs[a].add(b)
            nbrs[b].add(a)
        for u in nv:
            nbrs[u].discard(v)
        alive.discard(v)
        order.append(v)
        elim_nbrs.append(set(nv))
        nbrs[v] = set()

    pos = {v: j for j, v in enumerate(order)}
    bags = tuple(tuple(sorted({order[j]} | elim_nbrs[j])) for j in range(n))
    adj: list[list[int]] = [[] for _ in range(n)]
    prev_root = None
    for j in range(n):
        if elim_nbrs[j]:
            parent = min(pos[u] for u in elim_nbrs[j])
        elif prev_root is not None:
            parent = prev_root
        else:
            parent = None
        if not elim_nbrs[j]:
            prev_root = j
        if parent is not None:
            adj[j].append(parent)
            adj[parent].append(j)
    return TreeDecomposition(bags, tuple(tuple(sorted(a)) for a in adj))


def decomposition_violations(g: Graph, t: TreeDecomposition) -> list[str]:
    problems = []
    nb = len(t.bags)
    if nb == 0 or len(t.tree) != nb:
        return ["decomposition needs one adjacency list per bag and at least one bag"]
    for a, nbrs in enumerate(t.tree):
        for b in nbrs:
            if not 0 <= b < nb or a == b or a not in t.tree[b]:
                return [f"tree adjacency broken at bag {a}"]
    if len(t.tree_edges()) != nb - 1 or len(_reach(t.tree, 0)) != nb:
        problems.append("bag graph is not a tree")
    where: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for i, bag in enumerate(t.bags):
        for v in bag:
            if v not in where:
                return [f"bag {i} names unknown vertex {v}"]
            where[v].append(i)
    missing = [v for v, bs in where.items() if not bs]
    if missing:
        problems.append(f"vertices in no bag: {missing}")
    bagsets = [set(b) for b in t.bags]
    for u, v in g.edges():
        if not any(u in b and v in b for b in bagsets):
            problems.append(f"edge ({u}, {v}) in no bag")
            break
    if not problems:
        for v, bs in where.items():
            allowed = set(bs)
            if len(_reach(t.tree, bs[0], allowed)) != len(bs):
                problems.append(f"bags containing {v} are disconnected")
                break
    return problems


def _reach(tree, start: int, allowed: set[int] | None = None) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in tree[a]:
            if b not in seen and (allowed is None or b in allowed):
                seen.add(b)
                queue.append(b)
    return seen


def validate_decomposition(g: Graph, t: TreeDecomposition) -> bool:
    return not decomposition_violations(g, t)


@dataclass(frozen=True)
class NiceNode:
    kind: str  # leaf | introduce | forget | join
    bag: frozenset[int]
    vertex: int | None = None
    children: tuple[int, ...] = ()


def make_nice(t: TreeDecomposition) -> list[NiceNode]:
    """Nice form, listed children-first; the last node is the (empty) root."""
    nodes: list[NiceNode] = []

    def add(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def chain(idx: int, target: frozenset[int]) -> int:
        bag = nodes[idx].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            idx = add(NiceNode("forget", bag, v, (idx,)))
        for v in sorted(target - bag):
            bag = bag | {v}
            idx = add(NiceNode("introduce", bag, v, (idx,)))
        return idx

    root = len(t.bags) - 1
    parent = {root: None}
    order = [root]
    for a in order:
        for b in t.tree[a]:
            if b not in parent:
                parent[b] = a
                order.append(b)
    built: dict[int, int] = {}
    for a in reversed(order):
        target = frozenset(t.bags[a])
        kids = [b for b in t.tree[a] if parent.get(b) == a]
        if not kids:
            built[a] = chain(add(NiceNode("leaf", frozenset())), target)
            continue
        tops = [chain(built[b], target) for b in kids]
        acc = tops[0]
        for other in tops[1:]:
            acc = add(NiceNode("join", target, None, (acc, other)))
        built[a] = acc
    chain(built[root], frozenset())
    return nodes


@dataclass
class DPResult:
    decision: bool
    solution: VertexSet | None
    minimum: int
    width: int
    max_table: int
    max_bag: int


def solve_annotated_dp(inst: AnnotatedInstance, t: TreeDecomposition) -> DPResult:
    """Minimum annotated K_r-cover by DP over deleted-subsets of each bag.

    A state is the set of deleted bag vertices; its value is the fewest
    deletions in the processed subtree. When vertex v is introduced, the
    kept bag vertices must not form an r-clique through v, and every
    annotation assigned to that node must meet the deleted set. Every clique
    sits inside some bag, so both checks are complete.
    """
    g, r = inst.g, inst.r
    problems = decomposition_violations(g, t)
    if problems:
        raise DecompositionError("; ".join(problems))
    nodes = make_nice(t)
    assigned = _assign_annotations(nodes, inst)

    clique_memo: dict[frozenset[int], bool] = {}

    def kept_clique_through(v: int, kept: frozenset[int]) -> bool:
        cand = kept & g.nbrs[v]
        hit = clique_memo.get(cand)
        if hit is None:
            hit = has_clique(g, r - 1, cand)
            clique_memo[cand] = hit
        return hit

    tables: list[dict[frozenset[int], int]] = []
    back: list[dict[frozenset[int], tuple]] = []
    max_table = 0
    for idx, node in enumerate(nodes):
        table: dict[frozenset[int], int] = {}
        ptr: dict[frozenset[int], tuple] = {}
        if node.kind == "leaf":
            table[frozenset()] = 0
            ptr[frozenset()] = ()
        elif node.kind == "introduce":
            v = node.vertex
            child = tables[node.children[0]]
            dsets = assigned.get(idx, ())
            for s, cost in child.items():
                keep_s = s
                kept = node.bag - keep_s
                if not kept_clique_through(v, kept) and all(not keep_s.isdisjoint(d) for d in dsets):
                    _relax(table, ptr, keep_s, cost, (s,))
                del_s = s | {v}
                if all(not del_s.isdisjoint(d) for d in dsets):
                    _relax(table, ptr, del_s, cost + 1, (s,))
        elif node.kind == "forget":
            v = node.vertex
            for s, cost in tables[node.children[0]].items():
                _relax(table, ptr, s - {v}, cost, (s,))
        else:
            left, right = (tables[c] for c in node.children)
            for s, cost in left.items():
                other = right.get(s)
                if other is not None:
                    _relax(table, ptr, s, cost + other - len(s), (s, s))
        tables.append(table)
        back.append(ptr)
        max_table = max(max_table, len(table))

    width = t.width
    max_bag = max((len(n.bag) for n in nodes), default=0)
    root_table = tables[-1]
    best = root_table.get(frozenset())
    if best is None:
        return DPResult(False, None, -1, width, max_table, max_bag)
    if best > inst.k:
        return DPResult(False, None, best, width, max_table, max_bag)
    chosen: set[int] = set()
    stack = [(len(nodes) - 1, frozenset())]
    while stack:
        idx, s = stack.pop()
        node = nodes[idx]
        if node.kind == "introduce" and node.vertex in s:
            chosen.add(node.vertex)
        for child, cs in zip(node.children, back[idx][s]):
            stack.append((child, cs))
    return DPResult(True, tuple(sorted(chosen)), best, width, max_table, max_bag)


def _relax(table, ptr, state, cost, pointer) -> None:
    old = table.get(state)
    if old is None or cost < old:
        table[state] = cost
        ptr[state] = pointer


def _assign_annotations(nodes: list[NiceNode], inst: AnnotatedInstance) -> dict[int, list[frozenset[int]]]:
    """Give each annotation to the first introduce node, in root-first
    preorder, whose vertex lies in it and whose bag contains it."""
    by_vertex: dict[int, list[frozenset[int]]] = {}
    for d in inst.d:
        fd = frozenset(d)
        for v in d:
            by_vertex.setdefault(v, []).append(fd)
    pending = {frozenset(d) for d in inst.d}
    assigned: dict[int, list[frozenset[int]]] = {}
    stack = [len(nodes) - 1]
    while stack and pending:
        idx = stack.pop()
        node = nodes[idx]
        if node.kind == "introduce":
            for d in by_vertex.get(node.vertex, ()):
                if d in pending and d <= node.bag:
                    pending.discard(d)
                    assigned.setdefault(idx, []).append(d)
        stack.extend(reversed(node.children))
    if pending:
        raise DecompositionError(f"annotations in no bag: {sorted(map(sorted, pending))}")
    return assigned
