from itertools import combinations

import pytest

from krcover.annotated import AnnotatedInstance, is_stripped, make_context
from krcover.branching import (
    BranchNode,
    TraceLog,
    clique_branch,
    petal_pick,
    small_clique_count,
    strip_bound,
    strip_to_level,
)
from krcover.cliques import greedy_kr_cover
from krcover.errors import GraphError, NotACoverError, PreconditionError
from krcover.generators import GenSpec, generate
from krcover.graph import Graph, Hypergraph, is_clique
from krcover.oracle import oracle_solve

from helpers import disjoint_cliques, friendship2, petersen


def decides(ctx) -> bool:
    return oracle_solve(AnnotatedInstance(ctx.g, ctx.d, ctx.k, ctx.r), max_n=None, max_k=None).decision


def has_p_clique(g: Graph, p: int) -> bool:
    return any(is_clique(g, s) for s in combinations(range(g.n), p))


def test_clique_branch_on_clique_free_graph_is_identity():
    out = clique_branch(petersen(), 2, (), 4, 3)
    assert len(out.items) == 1
    y = out.items[0]
    assert y.graph.adj == petersen().adj
    assert y.k == 2 and y.deleted == ()


def test_clique_branch_k5():
    g = Graph.complete(5)
    out = clique_branch(g, 2, greedy_kr_cover(g, 3), 4, 3)
    assert out.items
    for y in out.items:
        assert not has_p_clique(y.graph, 4)
        assert not oracle_solve(AnnotatedInstance.plain(y.graph, y.k, 3)).decision
    assert not oracle_solve(AnnotatedInstance.plain(g, 2, 3)).decision


@pytest.mark.parametrize("k", range(5))
def test_clique_branch_two_k4_matches_oracle(k):
    g = disjoint_cliques(2, 4)
    out = clique_branch(g, k, greedy_kr_cover(g, 3), 4, 3)
    for y in out.items:
        assert not has_p_clique(y.graph, 4)
        assert len(y.deleted) + y.k == k
    union = any(oracle_solve(AnnotatedInstance.plain(y.graph, y.k, 3)).decision for y in out.items)
    assert union == oracle_solve(AnnotatedInstance.plain(g, k, 3)).decision
    assert union == (k >= 4)


def test_clique_branch_rejects_bad_cover():
    with pytest.raises(NotACoverError):
        clique_branch(Graph.complete(5), 2, (0,), 4, 3)
    with pytest.raises(GraphError):
        clique_branch(Graph.complete(5), 2, (0, 1, 2), 3, 3)


def f2_context() -> object:
    return make_context(friendship2(), [0], 2, 3)


def test_petal_pick_f2_branches_when_lambda_is_one():
    out = petal_pick(1, 1, f2_context())
    got = [(c.d, c.m) for c in out.items]
    assert got == [
        (Hypergraph([(0,)]), frozenset({0})),
        (Hypergraph([(1, 2), (3, 4)]), frozenset(range(5))),
    ]
    assert [[s.step for s in t] for t in out.traces] == [["annotate"], ["commit"]]
    for c in out.items:
        assert is_stripped(c, 2)
    assert any(decides(c) for c in out.items) == decides(f2_context()) is True


def test_petal_pick_f2_absorbs_when_lambda_is_two():
    out = petal_pick(1, 2, f2_context())
    assert len(out.items) == 1
    c = out.items[0]
    assert c.m == frozenset(range(5)) and len(c.d) == 0
    assert [s.step for s in out.traces[0]] == ["absorb"]


def test_petal_pick_stripped_input_is_returned():
    c = make_context(friendship2(), range(5), 2, 3)
    assert petal_pick(1, 1, c).items == [c]


def test_petal_pick_budget_cut():
    node = BranchNode(f2_context(), Hypergraph([(1,), (2,), (3,)]))
    out = petal_pick(1, 1, node)
    assert out.items == [] and out.stats.dead == 1


def test_petal_pick_debug_checks_strippedness():
    c = make_context(friendship2(), [0], 2, 3)
    with pytest.raises(PreconditionError):
        petal_pick(2, 1, c, debug=True)


def test_strip_to_level_base_case():
    c = f2_context()
    assert strip_to_level(1, 1, c).items == [c]


@pytest.mark.parametrize("lam", [1, 2])
def test_strip_to_level_f2(lam):
    c = f2_context()
    out = strip_to_level(3, lam, c)
    for z in out.items:
        assert is_stripped(z, 3)
    assert any(decides(z) for z in out.items) == decides(c)


def test_strip_to_level_geometric_bound():
    g = generate(GenSpec("geometric-disk", 3, 30, {"radius": 0.12})).graph
    m = greedy_kr_cover(g, 3)
    c = make_context(g, m, 4, 3)
    bound = strip_bound(len(c.m), 3, 3, 2, small_clique_count(c), 4)
    out = strip_to_level(3, 2, c)
    assert out.items
    for z in out.items:
        assert c.m <= z.m and z.k == c.k
        assert len(z.m) <= bound
        assert is_stripped(z, 3)


def test_trace_sets_are_distinct_and_inside_cover():
    for seed in range(30):
        g = generate(GenSpec("gnp", seed, 11, {"p": 0.55})).graph
        c = make_context(g, greedy_kr_cover(g, 3), 3, 3)
        zeta = len(c.m)  # 1-cliques of G[M]
        for lam in (1, 2):
            out = petal_pick(1, lam, c)
            for z, trace in zip(out.items, out.traces):
                xs = [s.x for s in trace]
                assert len(set(xs)) == len(xs)
                assert all(set(x) <= c.m for x in xs)
                assert len(z.m) <= len(c.m) + 3 * (lam * zeta + c.k)


def test_trace_log_lines():
    log = TraceLog()
    strip_to_level(2, 1, f2_context(), log=log)
    lines = log.lines()
    assert lines[0].startswith("node 0 parent -1 step enter")
    steps = [line.split()[5] for line in lines]
    assert steps == ["enter", "annotate", "commit"]
    assert all(" parent 0 " in line for line in lines[1:])
