"""Small named graphs shared by the test modules."""

from krcover.generators import GenSpec, generate
from krcover.graph import Graph


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def friendship2() -> Graph:
    # triangles abc and ade sharing a; a=0 b=1 c=2 d=3 e=4
    return Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def disjoint_cliques(count: int, size: int) -> Graph:
    return generate(GenSpec("disjoint-cliques", 0, None, {"count": count, "size": size})).graph


def gnp(n: int, p: float, seed: int) -> Graph:
    return generate(GenSpec("gnp", seed, n, {"p": p})).graph


def triangle() -> Graph:
    return Graph.complete(3)
