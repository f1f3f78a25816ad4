import random

import pytest

from krcover.annotated import AnnotatedInstance, is_solution
from krcover.cliques import enumerate_cliques
from krcover.errors import DecompositionError
from krcover.formats import write_td
from krcover.generators import grid_graph
from krcover.graph import Graph, Hypergraph
from krcover.oracle import oracle_min_by_subsets
from krcover.treewidth import TreeDecomposition, decompose, make_nice, solve_annotated_dp, validate_decomposition

from helpers import gnp, path, petersen, star, triangle


def treewidth_at_most(g: Graph, w: int) -> bool:
    """Exact check: some elimination order keeps every eliminated vertex's
    reach (through already-eliminated vertices) at most w."""
    full = (1 << g.n) - 1

    def reach(elim: int, v: int) -> int:
        seen, frontier, out = 1 << v, [v], 0
        while frontier:
            u = frontier.pop()
            for x in g.adj[u]:
                bit = 1 << x
                if seen & bit:
                    continue
                seen |= bit
                if elim & bit:
                    frontier.append(x)
                else:
                    out |= bit
        return out

    layer = {0}
    for _ in range(g.n):
        nxt = set()
        for s in layer:
            for v in range(g.n):
                if not s >> v & 1 and bin(reach(s, v)).count("1") <= w:
                    nxt.add(s | 1 << v)
        layer = nxt
        if not layer:
            return False
    return full in layer


def random_tree(n: int, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


@pytest.mark.parametrize("g", [path(8), star(6), random_tree(15, 3)])
def test_trees_have_width_one(g):
    t = decompose(g)
    assert validate_decomposition(g, t) and t.width == 1


@pytest.mark.parametrize("n", [1, 2, 5, 7])
def test_complete_graph_width(n):
    assert decompose(Graph.complete(n)).width == n - 1


def test_grid_4x4():
    g = grid_graph(4, 4)
    assert treewidth_at_most(g, 4) and not treewidth_at_most(g, 3)
    t = decompose(g)
    assert validate_decomposition(g, t)
    assert 4 <= t.width <= 6


def test_validate_decomposition_examples():
    g = petersen()
    assert validate_decomposition(g, TreeDecomposition([tuple(range(10))], [[]]))
    missing_edge = TreeDecomposition([(0, 1), (2, 3)], [[1], [0]])
    assert not validate_decomposition(path(4), missing_edge)
    split = TreeDecomposition([(0, 1), (1, 2), (0, 2)], [[1], [0, 2], [1]])
    assert not validate_decomposition(triangle(), split)


@pytest.mark.parametrize("seed", range(100))
def test_decompose_is_valid(seed):
    g = gnp(5 + seed % 15, (0.1, 0.25, 0.4, 0.6)[seed % 4], seed)
    assert validate_decomposition(g, decompose(g))


def test_empty_graph_decomposes():
    t = decompose(Graph(0))
    assert validate_decomposition(Graph(0), t) and t.width == -1


def test_nice_form_shape():
    for node in make_nice(decompose(petersen())):
        kids = node.children
        if node.kind == "leaf":
            assert not node.bag and not kids
        elif node.kind == "join":
            assert len(kids) == 2
        else:
            assert len(kids) == 1


def dp(g, k, r, d=()):
    inst = AnnotatedInstance(g, Hypergraph(d), k, r)
    return inst, solve_annotated_dp(inst, decompose(g))


def test_dp_examples():
    _, res = dp(triangle(), 1, 3)
    assert res.decision and len(res.solution) == 1
    assert not dp(Graph.complete(4), 1, 3)[1].decision
    assert dp(Graph.complete(4), 2, 3)[1].decision
    edge = Graph(2, [(0, 1)])
    assert not dp(edge, 0, 3, [(0, 1)])[1].decision
    inst, res = dp(edge, 1, 3, [(0, 1)])
    assert res.decision and res.solution in ((0,), (1,)) and is_solution(inst, res.solution)


def test_dp_rejects_invalid_decomposition():
    with pytest.raises(DecompositionError):
        solve_annotated_dp(AnnotatedInstance.plain(triangle(), 1, 3), TreeDecomposition([(0, 1)], [[]]))


@pytest.mark.parametrize("seed", range(40))
def test_dp_minimum_matches_subset_oracle(seed):
    rng = random.Random(seed)
    g = gnp(6 + seed % 6, 0.55, seed)
    r = 3 + seed % 2
    smalls = list(enumerate_cliques(g, 1 + seed % (r - 1)))
    d = rng.sample(smalls, min(2, len(smalls)))
    inst, res = dp(g, 4, r, d)
    truth = oracle_min_by_subsets(inst)
    assert res.minimum == truth.min_size
    assert res.decision == truth.decision
    if res.decision:
        assert is_solution(inst, res.solution)
    assert res.max_table <= 2 ** res.max_bag


def test_td_dump_format():
    t = decompose(path(3))
    lines = write_td(t, 3).splitlines()
    assert lines[0] == f"s td {len(t.bags)} 2 3"
    assert all(line.startswith("b ") for line in lines[1:1 + len(t.bags)])
