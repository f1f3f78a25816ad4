"""Benchmark harness: manifest runs with oracle cross-checks, and
leaf-count/width scaling reports.

Manifest (JSON)::

    {"instances": [
        {"id": "tri2", "gen": "disjoint-cliques:count=2,size=3,seed=0",
         "r": 3, "k": [0, 1, 2], "profiles": ["generic"],
         "oracle": true, "fallback": false}
    ]}

``gen`` may also be a dict, or ``graph`` a path to a ``p/e`` file
(relative to the manifest). Set ``KRCOVER_THREADS`` to run instances in
worker processes; records always come back in manifest order.
"""

from __future__ import annotations

import json
import math
import os
import statistics
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from krcover.annotated import AnnotatedInstance
from krcover.errors import GraphError, InstanceTooLarge
from krcover.formats import read_graph_file
from krcover.generators import GenSpec, generate
from krcover.oracle import oracle_solve
from krcover.solver import PROFILES, derive_schedule, get_profile, runtime_exponent, solve

THREADS_ENV = "KRCOVER_THREADS"


def small_suite_specs() -> list[tuple[str, GenSpec]]:
    """Fixed-seed graphs with n <= 12 used by the acceptance suite."""
    specs: list[tuple[str, GenSpec]] = []
    for seed in range(24):
        n = 6 + seed % 7
        prob = (0.35, 0.5, 0.65, 0.8)[seed % 4]
        specs.append((f"gnp-{seed}", GenSpec("gnp", seed, n, {"p": prob})))
    for rows, cols in ((2, 3), (3, 3), (3, 4), (2, 6)):
        specs.append((f"grid-{rows}x{cols}", GenSpec("grid", 0, rows * cols, {"rows": rows, "cols": cols})))
    for count, size in ((2, 3), (3, 3), (2, 4), (3, 4), (2, 5), (1, 6), (2, 6), (4, 3)):
        specs.append((f"cliques-{count}x{size}", GenSpec("disjoint-cliques", 0, None, {"count": count, "size": size})))
    for seed in range(12):
        n = 8 + seed % 5
        s = 1 + seed % 3
        base = "bipartite" if seed % 2 else "geometric"
        params = {"s": s, "r": 3 + seed % 2, "base": base, "radius": 0.25, "p": 0.5}
        specs.append((f"planted-{seed}", GenSpec("planted", seed, n, params)))
    return specs


def small_suite_manifest() -> dict:
    return {
        "instances": [
            {"id": name, "gen": spec.to_dict(), "r": [3, 4], "k": [0, 1, 2, 3, 4],
             "profiles": sorted(PROFILES), "oracle": True, "fallback": False}
            for name, spec in small_suite_specs()
        ]
    }


def _load_graph(entry: dict, root: Path):
    if "graph" in entry:
        return read_graph_file(root / entry["graph"])[0]
    gen = entry.get("gen")
    if gen is None:
        raise GraphError(f"instance {entry.get('id')!r} needs 'gen' or 'graph'")
    spec = GenSpec.parse(gen) if isinstance(gen, str) else GenSpec.from_dict(gen)
    return generate(spec).graph


def _as_list(value) -> list:
    return list(value) if isinstance(value, (list, tuple)) else [value]


def run_entry(entry: dict, root: Path = Path("."), timing: bool = False) -> list[dict]:
    g = _load_graph(entry, root)
    records = []
    for r in _as_list(entry.get("r", 3)):
        for k in _as_list(entry.get("k", 0)):
            truth = None
            if entry.get("oracle", True):
                try:
                    truth = oracle_solve(AnnotatedInstance.plain(g, k, r)).decision
                except InstanceTooLarge:
                    truth = None
            for name in _as_list(entry.get("profiles", ["generic"])):
                report = solve(g, k, r, get_profile(name), fallback=entry.get("fallback", True))
                rec = {
                    "id": entry.get("id"),
                    "profile": name,
                    "r": r,
                    "k": k,
                    "decision": report.decision,
                    "certificate": list(report.solution) if report.solution is not None else None,
                    "stats": report.to_dict(timing)["stats"],
                    "oracle": truth,
                }
                rec["mismatch"] = truth is not None and truth != report.decision
                records.append(rec)
    return records


def run_manifest(manifest: dict, root: Path = Path("."), timing: bool = False, threads: int | None = None) -> list[dict]:
    entries = manifest.get("instances", [])
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    if threads > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run_entry, entries, [root] * len(entries), [timing] * len(entries)))
    else:
        chunks = [run_entry(e, root, timing) for e in entries]
    return [rec for chunk in chunks for rec in chunk]


def write_jsonl_atomic(records: list[dict], path: str | Path) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    os.replace(tmp, path)


def scaling_family(family: str, k: int, r: int = 3, seed: int = 0):
    """Instance of size tied to ``k`` for the scaling benches."""
    if family == "planted-geometric":
        return generate(GenSpec("planted", seed + k, 6 * k, {"s": k, "r": r, "base": "geometric", "radius": 0.12})).graph
    if family == "planted-bipartite":
        return generate(GenSpec("planted", seed + k, 5 * k, {"s": k, "r": r, "base": "bipartite", "p": 0.3, "hub_p": 0.3})).graph
    raise GraphError(f"unknown scaling family {family!r}")


def _fit(xs: list[float], ys: list[float]) -> dict:
    if len(set(xs)) < 2:
        return {"degenerate": True, "points": len(xs)}
    slope, intercept = statistics.linear_regression(xs, ys)
    mean = statistics.fmean(ys)
    ss_tot = sum((y - mean) ** 2 for y in ys)
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    r2 = 1.0 if ss_tot == 0 else 1 - ss_res / ss_tot
    return {"degenerate": False, "points": len(xs), "slope": slope, "intercept": intercept, "r2": r2}


def bench_scaling(family, profile, k_range, r: int = 3, seed: int = 0) -> dict:
    """Measure total leaves and kernel widths over ``k_range``.

    ``family`` is a scaling family name or a callable ``k -> Graph``. The
    report fits log2(leaves) against k^e' log2 k (e' the profile's runtime
    exponent) and kernel width against k^((1 + eps(phi+1)) alpha); it makes
    no pass/fail judgement.
    """
    profile = get_profile(profile) if isinstance(profile, str) else profile
    ks = list(k_range)
    if not ks:
        return {"profile": profile.name, "r": r, "points": [], "fits": {}}
    make = family if callable(family) else (lambda k: scaling_family(family, k, r, seed))
    expo = runtime_exponent(profile, r)
    phi = profile.phi_for(r)
    points = []
    for k in ks:
        g = make(k)
        report = solve(g, k, r, profile, audit=True, fallback=False)
        st = report.stats
        eps = derive_schedule(profile, k, r).epsilon if k >= 1 else None
        points.append({
            "k": k,
            "n": g.n,
            "decision": report.decision,
            "mode": st.get("mode"),
            "contexts_Y": st.get("contexts_Y", 0),
            "leaves": st.get("contexts_Z", 0),
            "max_kernel_width": st.get("max_kernel_width", -1),
            "max_Mprime": st.get("max_Mprime", 0),
            "leaf_x": float(k) ** float(expo) * math.log2(max(k, 2)),
            "width_x": None if eps is None else float(k) ** float((1 + eps * (phi + 1)) * profile.alpha),
        })
    usable = [p for p in points if p["leaves"] > 0]
    leaf_fit = _fit([p["leaf_x"] for p in usable], [math.log2(p["leaves"]) for p in usable])
    wide = [p for p in points if p["width_x"] is not None and p["max_kernel_width"] >= 0]
    width_fit = _fit([p["width_x"] for p in wide], [float(p["max_kernel_width"]) for p in wide])
    return {
        "profile": profile.name,
        "r": r,
        "runtime_exponent": str(expo),
        "points": points,
        "fits": {"log2_leaves": leaf_fit, "kernel_width": width_fit},
    }
