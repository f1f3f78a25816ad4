"""End-to-end K_r-Cover solver.

Pipeline: greedy r-approximate cover, large-clique branching, petal
picking up to level r, kernel restriction to G[M'], then the tree
decomposition DP on every kernel. Class profiles only tune the parameter
schedule; the answer is exact for every input graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from krcover.annotated import (
    AnnotatedInstance,
    is_solution,
    kernelize,
    lift_kernel_solution,
    make_context,
)
from krcover.branching import (
    BranchStats,
    CliqueFreeInstance,
    TraceLog,
    iter_clique_branch,
    iter_strip_to_level,
    small_clique_count,
    strip_bound,
)
from krcover.cliques import greedy_kr_cover
from krcover.errors import GraphError, KrCoverError
from krcover.graph import Graph, VertexSet
from krcover.oracle import oracle_solve
from krcover.treewidth import decompose, solve_annotated_dp

# Instances at or below either threshold go straight to the oracle.
ORACLE_MAX_N = 12
ORACLE_MAX_K = 3


class ScheduleInfeasible(KrCoverError, ValueError):
    pass


@dataclass(frozen=True)
class ClassProfile:
    name: str
    phi: Fraction
    gamma: Fraction
    alpha: Fraction
    skip_clique_branching: bool = False
    phi_tracks_r: bool = False  # phi = r - 2 for this family

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise GraphError("alpha must lie in (0, 1)")
        if self.phi < 0 or self.gamma < 0:
            raise GraphError("phi and gamma must be nonnegative")

    def phi_for(self, r: int) -> Fraction:
        return Fraction(r - 2) if self.phi_tracks_r else Fraction(self.phi)


_HALF = Fraction(1, 2)

PROFILES: dict[str, ClassProfile] = {
    "pseudo-disk": ClassProfile("pseudo-disk", Fraction(0), _HALF, _HALF, phi_tracks_r=True),
    "map": ClassProfile("map", Fraction(0), _HALF, _HALF, phi_tracks_r=True),
    "string-ktt-free": ClassProfile("string-ktt-free", Fraction(0), Fraction(0), _HALF, skip_clique_branching=True),
    "minor-free": ClassProfile("minor-free", Fraction(0), Fraction(0), _HALF, skip_clique_branching=True),
    "generic": ClassProfile("generic", Fraction(0), Fraction(0), _HALF),
}


def get_profile(name: str) -> ClassProfile:
    try:
        return PROFILES[name]
    except KeyError:
        raise GraphError(f"unknown profile {name!r}; choose from {', '.join(PROFILES)}") from None


@dataclass(frozen=True)
class Schedule:
    epsilon: Fraction
    delta: Fraction
    p: int
    lam: int


def ceil_power(k: int, e: Fraction) -> int:
    """Exact ceil(k ** e) for integer k >= 1 and rational e >= 0."""
    num, den = e.numerator, e.denominator
    target = k ** num
    x = max(int(round(k ** float(e))), 0)
    while x ** den < target:
        x += 1
    while x > 0 and (x - 1) ** den >= target:
        x -= 1
    return x


def derive_schedule(profile: ClassProfile, k: int, r: int) -> Schedule:
    if k < 1:
        raise GraphError("the schedule needs k >= 1")
    phi, gamma, alpha = profile.phi_for(r), Fraction(profile.gamma), Fraction(profile.alpha)
    delta = (1 - alpha) / (gamma + alpha * (phi + 1) + 1)
    epsilon = (1 - alpha - delta) / (gamma + alpha + alpha * phi)
    if not 0 < epsilon < 1 or not 0 < delta < 1:
        raise ScheduleInfeasible(f"epsilon={epsilon}, delta={delta}")
    base = ceil_power(k, epsilon)
    return Schedule(epsilon, delta, max(base, r + 1), min(max(base, 1), k))


def runtime_exponent(profile: ClassProfile, r: int) -> Fraction:
    """Exponent of k in the 2^(k^e log k) running time for this profile."""
    phi, gamma, alpha = profile.phi_for(r), Fraction(profile.gamma), Fraction(profile.alpha)
    return (gamma + alpha * (phi + 2)) / (gamma + alpha * (phi + 1) + 1)


@dataclass
class SolveReport:
    decision: bool
    solution: VertexSet | None
    stats: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = False) -> dict:
        stats = dict(self.stats)
        if not timing:
            stats.pop("wall_time", None)
        return {
            "decision": self.decision,
            "certificate": list(self.solution) if self.solution is not None else None,
            "stats": stats,
        }


def verify(g: Graph, r: int, s: Iterable[int], k: int) -> bool:
    return is_solution(AnnotatedInstance.plain(g, k, r), s)


def _oracle_report(g: Graph, k: int, r: int, stats: dict, reason: str) -> SolveReport:
    res = oracle_solve(AnnotatedInstance.plain(g, k, r), max_n=None, max_k=None)
    stats.update(mode="oracle", fallback_reason=reason)
    return SolveReport(res.decision, res.solution, stats)


def solve(
    g: Graph,
    k: int,
    r: int,
    profile: ClassProfile | str = "generic",
    *,
    audit: bool = False,
    fallback: bool = True,
    debug: bool = False,
    log: TraceLog | None = None,
) -> SolveReport:
    """Decide whether at most ``k`` deletions leave ``g`` K_r-free.

    ``audit`` explores every branch instead of stopping at the first
    positive kernel. ``fallback=False`` forces the full pipeline even on
    tiny instances (the tests rely on this).
    """
    if k < 0:
        raise GraphError("k must be nonnegative")
    if r < 2:
        raise GraphError("r must be at least 2")
    if isinstance(profile, str):
        profile = get_profile(profile)
    started = time.perf_counter()
    stats: dict = {"profile": profile.name, "mode": "pipeline", "n": g.n, "k": k, "r": r}
    try:
        report = _solve(g, k, r, profile, audit, fallback, debug, log, stats)
    finally:
        stats["wall_time"] = round(time.perf_counter() - started, 6)
    if report.solution is not None and not verify(g, r, report.solution, k):
        raise RuntimeError("internal error: certificate failed verification")
    return report


def _solve(g, k, r, profile, audit, fallback, debug, log, stats) -> SolveReport:
    if fallback and (g.n <= ORACLE_MAX_N or k <= ORACLE_MAX_K):
        return _oracle_report(g, k, r, stats, "small instance")
    m = greedy_kr_cover(g, r)
    stats["greedy_cover"] = len(m)
    if not m:
        stats["mode"] = "trivial"
        return SolveReport(True, (), stats)
    if len(m) > k * r:
        stats["mode"] = "greedy-bound"
        return SolveReport(False, None, stats)
    try:
        sched = derive_schedule(profile, k, r)
    except ScheduleInfeasible as exc:
        return _oracle_report(g, k, r, stats, f"schedule infeasible: {exc}")
    stats.update(epsilon=str(sched.epsilon), delta=str(sched.delta), p=sched.p, **{"lambda": sched.lam})

    ystats, zstats = BranchStats(), BranchStats()
    if profile.skip_clique_branching:
        ys = iter([CliqueFreeInstance(g, k, (), m)])
    else:
        ys = iter_clique_branch(g, k, m, sched.p, r, ystats, log)

    counts = {"contexts_Y": 0, "contexts_Z": 0, "max_Mprime": 0, "max_Mprime_bound": 0,
              "bound_violations": 0, "max_kernel_width": -1, "max_kernel_size": 0}
    solution: VertexSet | None = None
    for y in ys:
        counts["contexts_Y"] += 1
        root = make_context(y.graph, y.m, y.k, r)
        bound = strip_bound(len(root.m), r, r, sched.lam, small_clique_count(root), y.k)
        counts["max_Mprime_bound"] = max(counts["max_Mprime_bound"], bound)
        for node in iter_strip_to_level(r, sched.lam, root, zstats, log, debug):
            counts["contexts_Z"] += 1
            ctx = node.context
            counts["max_Mprime"] = max(counts["max_Mprime"], len(ctx.m))
            if len(ctx.m) > bound or not root.m <= ctx.m or ctx.k != root.k:
                counts["bound_violations"] += 1
            kernel = kernelize(ctx, debug)
            result = solve_annotated_dp(kernel, decompose(kernel.g))
            counts["max_kernel_width"] = max(counts["max_kernel_width"], result.width)
            counts["max_kernel_size"] = max(counts["max_kernel_size"], kernel.g.n)
            if result.decision and solution is None:
                local = lift_kernel_solution(ctx, result.solution)
                solution = tuple(sorted(y.deleted + y.graph.lift(local)))
                if not audit:
                    break
        if solution is not None and not audit:
            break
    stats.update(counts)
    stats["clique_branch"] = ystats.as_dict()
    stats["petal_pick"] = zstats.as_dict()
    return SolveReport(solution is not None, solution, stats)


def minimum_cover(g: Graph, r: int, profile: ClassProfile | str = "generic", **kwargs) -> SolveReport:
    """Smallest k with a positive answer, by binary search between the
    greedy packing's lower bound and the greedy cover itself."""
    m = greedy_kr_cover(g, r)
    lo, hi = -(-len(m) // r), len(m)
    best = SolveReport(True, m, {"k": hi})
    while lo < hi:
        mid = (lo + hi) // 2
        report = solve(g, mid, r, profile, **kwargs)
        if report.decision:
            hi, best = mid, report
        else:
            lo = mid + 1
    if best.stats.get("k") != hi:
        best = solve(g, hi, r, profile, **kwargs)
    best.stats["minimum"] = hi
    return best

