from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from krcover.annotated import AnnotatedInstance
from krcover.bench import bench_scaling
from krcover.generators import GenSpec, generate, grid_graph
from krcover.graph import Graph
from krcover.oracle import oracle_solve
from krcover.solver import (
    PROFILES,
    ClassProfile,
    ceil_power,
    derive_schedule,
    minimum_cover,
    runtime_exponent,
    solve,
    verify,
)

from helpers import disjoint_cliques, gnp, petersen


def test_schedule_for_sparse_profile():
    s = derive_schedule(PROFILES["generic"], 27, 3)
    assert (s.epsilon, s.delta) == (Fraction(1, 3), Fraction(1, 3))
    assert (s.p, s.lam) == (4, 3)
    assert runtime_exponent(PROFILES["minor-free"], 3) == Fraction(2, 3)


@pytest.mark.parametrize("r", range(3, 7))
def test_pseudo_disk_exponent(r):
    assert runtime_exponent(PROFILES["pseudo-disk"], r) == Fraction(r + 1, r + 2)


@pytest.mark.parametrize("name", sorted(PROFILES))
def test_k_one_clamps(name):
    s = derive_schedule(PROFILES[name], 1, 4)
    assert s.p == 5 and s.lam == 1


@given(
    phi=st.fractions(min_value=0, max_value=6, max_denominator=8),
    gamma=st.fractions(min_value=0, max_value=3, max_denominator=8),
    alpha=st.fractions(min_value=Fraction(1, 64), max_value=Fraction(63, 64), max_denominator=64),
    k=st.integers(min_value=1, max_value=10_000),
)
def test_schedule_always_feasible(phi, gamma, alpha, k):
    s = derive_schedule(ClassProfile("x", phi, gamma, alpha), k, 3)
    assert s.epsilon == s.delta and 0 < s.epsilon < 1
    assert s.p >= 4 and 1 <= s.lam <= k


@pytest.mark.parametrize("k,e,want", [(8, Fraction(1, 3), 2), (9, Fraction(1, 3), 3), (1000, Fraction(1, 3), 10), (2, Fraction(1, 2), 2), (16, Fraction(3, 4), 8)])
def test_ceil_power_is_exact(k, e, want):
    assert ceil_power(k, e) == want


def test_solve_examples():
    rep = solve(grid_graph(5, 5), 0, 3, fallback=False)
    assert rep.decision and rep.solution == ()
    two = disjoint_cliques(2, 3)
    assert not solve(two, 1, 3, fallback=False).decision
    rep = solve(two, 2, 3, fallback=False)
    assert rep.decision and len(rep.solution) == 2 and verify(two, 3, rep.solution, 2)


@pytest.mark.parametrize("name", sorted(PROFILES))
def test_planted_geometric_60(name):
    made = generate(GenSpec("planted", 11, 60, {"s": 5, "r": 3, "base": "geometric", "radius": 0.1}))
    assert verify(made.graph, 3, made.planted, 5)
    rep = solve(made.graph, 5, 3, name, fallback=False)
    assert rep.decision and verify(made.graph, 3, rep.solution, 5)
    assert rep.stats["mode"] == "pipeline"
    assert not solve(made.graph, 4, 3, name, fallback=False, audit=True).decision


@pytest.mark.parametrize("seed", range(25))
def test_profiles_agree(seed):
    g = gnp(14, 0.45, seed)
    for k in (4, 5, 6):
        answers = {solve(g, k, 3, name, fallback=False).decision for name in PROFILES}
        assert len(answers) == 1
        assert answers.pop() == oracle_solve(AnnotatedInstance.plain(g, k, 3), max_n=None).decision


def test_bound_stat_holds():
    g = gnp(16, 0.5, 3)
    rep = solve(g, 6, 3, "generic", fallback=False, audit=True)
    assert rep.stats["bound_violations"] == 0
    assert rep.stats["max_Mprime"] <= rep.stats["max_Mprime_bound"]


def test_fallback_mode():
    rep = solve(Graph.complete(4), 2, 3)
    assert rep.decision and rep.stats["mode"] == "oracle"


def test_minimum_cover():
    assert minimum_cover(disjoint_cliques(3, 4), 3, fallback=False).stats["minimum"] == 6
    assert minimum_cover(petersen(), 3).stats["minimum"] == 0
    rep = minimum_cover(Graph.complete(5), 3)
    assert rep.stats["minimum"] == 3 and len(rep.solution) == 3


def test_report_drops_wall_time():
    rep = solve(petersen(), 0, 3)
    assert "wall_time" in rep.stats
    assert "wall_time" not in rep.to_dict()["stats"]
    assert "wall_time" in rep.to_dict(timing=True)["stats"]


def test_scaling_report_shapes():
    assert bench_scaling("planted-geometric", "pseudo-disk", []) == {"profile": "pseudo-disk", "r": 3, "points": [], "fits": {}}
    one = bench_scaling("planted-geometric", "pseudo-disk", [4])
    assert one["fits"]["log2_leaves"]["degenerate"]
    many = bench_scaling("planted-bipartite", "generic", range(4, 7))
    assert [p["k"] for p in many["points"]] == [4, 5, 6]
    assert not many["fits"]["log2_leaves"]["degenerate"]
