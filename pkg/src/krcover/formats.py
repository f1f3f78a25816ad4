"""Text formats: ``p/e`` graphs with optional ``d`` annotation lines, and
``td``-style tree decomposition dumps.

Graph text::

    c optional comment
    p <n> <m>
    e <u> <v>          (0-based, one line per edge)
    d <v1> <v2> ...    (annotation sets, optional)

``write_graph(parse_graph(t)) == t`` holds for canonical text: no comments,
edges as ``u < v`` in lexicographic order, annotations after the edges.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from krcover.errors import GraphError, ParseError
from krcover.graph import Graph, Hypergraph

if TYPE_CHECKING:
    from krcover.treewidth import TreeDecomposition


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_annotated(text: str) -> tuple[Graph, Hypergraph]:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    annotations: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind, rest = tokens[0], tokens[1:]
        if kind == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(rest) != 2:
                raise ParseError(f"line {lineno}: header must be 'p <n> <m>'")
            n, m = _ints(rest, lineno)
            if n < 0 or m < 0:
                raise ParseError(f"line {lineno}: negative header values")
        elif n is None:
            raise ParseError(f"line {lineno}: '{kind}' line before header")
        elif kind == "e":
            if len(rest) != 2:
                raise ParseError(f"line {lineno}: edge must be 'e <u> <v>'")
            u, v = _ints(rest, lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"line {lineno}: endpoint out of range")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"line {lineno}: multi-edge {key}")
            seen.add(key)
            edges.append(key)
        elif kind == "d":
            vs = _ints(rest, lineno)
            if not vs or any(not 0 <= v < n for v in vs):
                raise ParseError(f"line {lineno}: bad annotation set")
            annotations.append(tuple(vs))
        else:
            raise ParseError(f"line {lineno}: unknown line type {kind!r}")
    if n is None:
        raise ParseError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges), Hypergraph(annotations)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def parse_graph(text: str) -> Graph:
    return parse_annotated(text)[0]


def write_graph(g: Graph, annotations: Iterable[Iterable[int]] = ()) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    lines.extend("d " + " ".join(map(str, sorted(d))) for d in annotations)
    return "\n".join(lines) + "\n"


def read_graph_file(path: str | Path) -> tuple[Graph, Hypergraph]:
    return parse_annotated(Path(path).read_text())


def write_td(td: "TreeDecomposition", n: int) -> str:
    """PACE ``.td`` text; bag ids and vertex ids are 1-based there."""
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i), *(str(v + 1) for v in bag)]))
    for a, b in td.tree_edges():
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"
