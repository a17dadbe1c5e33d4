"""Small families of complexes: exhaustive graph and multigraph lists and named examples."""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement

from .core import MultiComplex, validate
from .encode import from_delta, from_graph, from_multigraph, from_simplicial
from .iso import canonical_form


def _dedup(complexes) -> list[MultiComplex]:
    seen = {}
    for C in complexes:
        seen.setdefault(canonical_form(C), C)
    return [seen[k] for k in sorted(seen)]


def graphs_by_edge_sets(n: int) -> list[MultiComplex]:
    """All simple graphs on n vertices up to isomorphism, from every labelled edge set."""
    pairs = list(combinations(range(1, n + 1), 2))

    def gen():
        for bits in range(1 << len(pairs)):
            yield from_graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])

    return _dedup(gen())


def graphs_by_extension(n: int) -> list[MultiComplex]:
    """Same classes, grown one vertex at a time: attach vertex n to every neighbour subset."""
    if n == 0:
        return [from_graph(0, [])]
    out = []
    for G in graphs_by_extension(n - 1):
        edges = [tuple(f) for f in G.faces]
        for bits in range(1 << (n - 1)):
            out.append(from_graph(n, edges + [(v + 1, n) for v in range(n - 1) if bits >> v & 1]))
    return _dedup(out)


def all_graphs(n: int, method: str = "extend") -> list[MultiComplex]:
    if method == "extend":
        return graphs_by_extension(n)
    if method == "edgesets":
        return graphs_by_edge_sets(n)
    raise ValueError(f"unknown method {method!r}")


def all_multigraphs(n: int, max_edges: int) -> list[MultiComplex]:
    """Multigraphs (loops and parallel edges) on n vertices with at most max_edges edges."""
    kinds = [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    out = []
    for k in range(max_edges + 1):
        for edges in combinations_with_replacement(kinds, k):
            out.append(from_multigraph(n, edges))
    return _dedup(out)


def K(n: int) -> MultiComplex:
    return from_graph(n, list(combinations(range(1, n + 1), 2)))


def path(n: int) -> MultiComplex:
    return from_graph(n, [(i, i + 1) for i in range(1, n)])


def isolated(n: int) -> MultiComplex:
    return from_graph(n, [])


VERTEX = isolated(1)
K2 = K(2)
K3 = K(3)
P3 = path(3)

# vertex 1 carries a loop and is joined to vertex 2 by two parallel edges
LOOP_DOUBLE_EDGE = from_multigraph(2, [(1, 1), (1, 2), (1, 2)])
DOUBLE_LOOP = from_multigraph(1, [(1, 1), (1, 1)])
SIMPLEX2 = from_simplicial(3, [(1, 2, 3), (1, 2), (1, 3), (2, 3)])

# a filled triangle plus a second edge between 1 and 2 that is not under the 2-face
DELTA_EXAMPLE = from_delta(
    3,
    [(1, 2), (1, 2), (2, 3), (1, 3), (1, 2, 3)],
    [(0, 4), (2, 4), (3, 4)],
)
DELTA_EXAMPLE_DIRECT = validate(
    3,
    [[1], [2], [3], [1, 2], [1, 2], [2, 3], [1, 3], [1, 2, 3]],
    [(3, 7), (5, 7), (6, 7)],
)
