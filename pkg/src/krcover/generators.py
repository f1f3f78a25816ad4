"""Seeded instance generators.

Specs are written ``family:key=value,...`` (or given as dicts), e.g.
``grid:rows=5,cols=5,seed=0`` or ``planted:n=40,s=4,r=3,seed=7``. Every
spec carries a seed; the same spec always yields the same graph.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from krcover.cliques import iter_cliques
from krcover.errors import GraphError
from krcover.graph import Graph, VertexSet

FAMILIES = ("geometric-disk", "grid", "planted", "complete", "gnp", "disjoint-cliques")


@dataclass(frozen=True)
class GenSpec:
    family: str
    seed: int
    n: int | None = None
    params: dict = field(default_factory=dict, hash=False)

    @classmethod
    def parse(cls, text: str, seed: int | None = None) -> "GenSpec":
        family, _, rest = text.partition(":")
        params: dict = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                raise GraphError(f"bad spec item {item!r}; expected key=value")
            params[key.strip()] = _number(value.strip())
        return cls.from_dict({"family": family.strip(), **params}, seed)

    @classmethod
    def from_dict(cls, data: dict, seed: int | None = None) -> "GenSpec":
        data = dict(data)
        family = data.pop("family", None)
        if family not in FAMILIES:
            raise GraphError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
        params = dict(data.pop("params", {}))
        if seed is not None:
            data["seed"] = seed
        if "seed" not in data:
            raise GraphError("generator specs need an explicit seed")
        spec_seed = int(data.pop("seed"))
        n = data.pop("n", None)
        params.update(data)
        return cls(family, spec_seed, None if n is None else int(n), params)

    def to_dict(self) -> dict:
        out = {"family": self.family, "seed": self.seed}
        if self.n is not None:
            out["n"] = self.n
        out.update(sorted(self.params.items()))
        return out

    def label(self) -> str:
        items = ",".join(f"{k}={v}" for k, v in self.to_dict().items() if k != "family")
        return f"{self.family}:{items}"


def _number(text: str):
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


@dataclass(frozen=True)
class Generated:
    graph: Graph
    planted: VertexSet | None = None


def generate(spec: GenSpec) -> Generated:
    p = spec.params
    rng = random.Random(spec.seed)
    fam = spec.family
    if fam == "complete":
        return Generated(Graph.complete(_need_n(spec)))
    if fam == "grid":
        rows, cols = _grid_shape(spec)
        return Generated(grid_graph(rows, cols))
    if fam == "gnp":
        n = _need_n(spec)
        prob = float(p.get("p", 0.5))
        _check_prob(prob)
        return Generated(Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < prob]))
    if fam == "disjoint-cliques":
        count, size = int(p.get("count", 2)), int(p.get("size", 3))
        if count < 0 or size < 1:
            raise GraphError("disjoint-cliques needs count >= 0 and size >= 1")
        edges = [(b + u, b + v) for b in range(0, count * size, size) for u in range(size) for v in range(u + 1, size)]
        return Generated(Graph(count * size, edges))
    if fam == "geometric-disk":
        n = _need_n(spec)
        radius = float(p.get("radius", 0.15))
        return Generated(Graph(n, _disk_edges(_points(rng, n), radius)))
    if fam == "planted":
        return _planted(spec, rng)
    raise GraphError(f"unknown family {fam!r}")


def _need_n(spec: GenSpec) -> int:
    if spec.n is None or spec.n < 0:
        raise GraphError(f"family {spec.family} needs n >= 0")
    return spec.n


def _check_prob(prob: float) -> None:
    if not 0.0 <= prob <= 1.0:
        raise GraphError(f"probability {prob} outside [0, 1]")


def _grid_shape(spec: GenSpec) -> tuple[int, int]:
    if "rows" in spec.params or "cols" in spec.params:
        rows = int(spec.params.get("rows", spec.params.get("cols")))
        cols = int(spec.params.get("cols", rows))
    else:
        side = math.isqrt(_need_n(spec))
        if side * side != spec.n:
            raise GraphError("grid needs rows/cols or a square n")
        rows = cols = side
    if spec.n is not None and spec.n != rows * cols:
        raise GraphError(f"grid {rows}x{cols} does not have n={spec.n} vertices")
    return rows, cols


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def _points(rng: random.Random, n: int) -> list[tuple[float, float]]:
    return [(rng.random(), rng.random()) for _ in range(n)]


def _disk_edges(pts, radius: float) -> list[tuple[int, int]]:
    """Pairs of equal-radius disks that intersect (centres within 2r)."""
    reach = (2 * radius) ** 2
    edges = []
    for u in range(len(pts)):
        xu, yu = pts[u]
        for v in range(u + 1, len(pts)):
            xv, yv = pts[v]
            if (xu - xv) ** 2 + (yu - yv) ** 2 <= reach:
                edges.append((u, v))
    return edges


def _break_cliques(n: int, edges: list[tuple[int, int]], r: int) -> list[tuple[int, int]]:
    """Drop the last edge of every surviving r-clique, in lexicographic order."""
    g = Graph(n, edges)
    alive = set(edges)
    for clique in list(iter_cliques(g, r)):
        pairs = [(a, b) for i, a in enumerate(clique) for b in clique[i + 1:]]
        if all(e in alive for e in pairs):
            alive.discard(pairs[-1])
    return sorted(alive)


def _planted(spec: GenSpec, rng: random.Random) -> Generated:
    """K_r-free base graph plus ``s`` hub vertices; only hubs create r-cliques."""
    p = spec.params
    n = _need_n(spec)
    s = int(p.get("s", 3))
    r = int(p.get("r", 3))
    base_kind = p.get("base", "geometric")
    if not 0 <= s <= n or r < 2:
        raise GraphError("planted needs 0 <= s <= n and r >= 2")
    nb = n - s
    if base_kind == "geometric":
        radius = float(p.get("radius", 0.15))
        pts = _points(rng, n)
        base = _break_cliques(nb, _disk_edges(pts[:nb], radius), r)
        hub_reach = float(p.get("hub_radius", 2.5 * radius))
        extra = []
        for h in range(nb, n):
            for v in range(nb):
                if (pts[h][0] - pts[v][0]) ** 2 + (pts[h][1] - pts[v][1]) ** 2 <= hub_reach ** 2:
                    extra.append((v, h))
    elif base_kind == "bipartite":
        prob = float(p.get("p", 0.4))
        _check_prob(prob)
        half = nb // 2
        base = [(u, v) for u in range(half) for v in range(half, nb) if rng.random() < prob]
        if r == 2:
            base = []
        hub_p = float(p.get("hub_p", 0.6))
        _check_prob(hub_p)
        extra = [(v, h) for h in range(nb, n) for v in range(nb) if rng.random() < hub_p]
    else:
        raise GraphError(f"unknown planted base {base_kind!r}")
    hub_links = [(a, b) for a in range(nb, n) for b in range(a + 1, n) if rng.random() < 0.5]
    perm = list(range(n))
    rng.shuffle(perm)
    edges = sorted(tuple(sorted((perm[a], perm[b]))) for a, b in base + extra + hub_links)
    planted = tuple(sorted(perm[h] for h in range(nb, n)))
    return Generated(Graph(n, edges), planted)
