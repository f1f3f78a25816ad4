import pytest

from krcover.annotated import (
    AnnotatedInstance,
    context_violations,
    find_lush_clique,
    is_solution,
    is_stripped,
    kernelize,
    lift_kernel_solution,
    make_context,
    validate_context,
)
from krcover.errors import GraphError, PreconditionError
from krcover.graph import Graph, Hypergraph
from krcover.oracle import oracle_solve

from helpers import triangle


def test_validate_context_examples():
    assert validate_context(make_context(triangle(), [0], 1, 3))
    assert not validate_context(make_context(triangle(), [], 1, 3))
    bad = make_context(triangle(), [0], 1, 3, d=[[1]])
    assert not validate_context(bad)
    assert len(context_violations(bad)) == 1


def test_instance_rejects_non_clique_annotation():
    path = Graph(3, [(0, 1), (1, 2)])
    with pytest.raises(GraphError):
        AnnotatedInstance(path, Hypergraph([(0, 2)]), 1, 3)
    with pytest.raises(GraphError):
        AnnotatedInstance(triangle(), Hypergraph([(0, 1, 2)]), 1, 3)


def test_find_lush_clique_examples():
    assert find_lush_clique(make_context(triangle(), [0], 1, 3), 1) == (0,)
    assert find_lush_clique(make_context(triangle(), [0], 1, 3, d=[[0]]), 1) is None
    assert find_lush_clique(make_context(Graph(3), [], 0, 3), 1) is None
    with pytest.raises(GraphError):
        find_lush_clique(make_context(triangle(), [0], 1, 3), 3)


def test_find_lush_clique_picks_smallest():
    k4 = Graph.complete(4)
    c = make_context(k4, [0, 1], 2, 3)
    assert find_lush_clique(c, 1) == (0,)
    assert find_lush_clique(c, 2) == (0, 1)


def test_kernelize_identity():
    c = make_context(triangle(), [0, 1, 2], 1, 3)
    kern = kernelize(c)
    assert kern.g.adj == triangle().adj and kern.g.labels == (0, 1, 2) and kern.k == 1


def test_kernelize_triangle_with_pendant():
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    c = make_context(g, [0, 1, 2], 0, 3)
    assert is_stripped(c, 3)
    kern = kernelize(c, debug=True)
    assert kern.g.n == 3 and kern.g.m == 3
    for k in range(3):
        full = oracle_solve(AnnotatedInstance.plain(g, k, 3)).decision
        small = oracle_solve(AnnotatedInstance(kern.g, kern.d, k, 3)).decision
        assert full == small == (k >= 1)


def test_kernelize_debug_rejects_unstripped():
    with pytest.raises(PreconditionError):
        kernelize(make_context(triangle(), [0], 1, 3), debug=True)


def test_kernel_solution_lifts_by_labels():
    g = Graph(5, [(1, 2), (1, 3), (2, 3)])
    c = make_context(g, [1, 2, 3], 1, 3)
    assert lift_kernel_solution(c, [0]) == (1,)
    assert kernelize(c).g.labels == (1, 2, 3)


def test_is_solution_examples():
    k4 = Graph.complete(4)
    assert is_solution(AnnotatedInstance.plain(k4, 2, 3), [0, 1])
    assert not is_solution(AnnotatedInstance.plain(k4, 1, 3), [0])
    edge = Graph(2, [(0, 1)])
    inst = AnnotatedInstance(edge, Hypergraph([(0, 1)]), 0, 3)
    assert not is_solution(inst, [])
    assert is_solution(inst.__class__(edge, inst.d, 1, 3), [1])
