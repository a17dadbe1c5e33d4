"""Encoders from graphs, multigraphs, hypergraphs and (colored, Δ-) simplicial
complexes into multi-complexes, plus the edge-subset formula for P_C."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from .core import MultiComplex, _build, _contained, dimension, spanning_complex, validate
from .errors import (
    DimensionTooHigh,
    DuplicateEdge,
    EmptyEdge,
    LoopNotAllowed,
    MalformedIncidence,
    NegativeColor,
    NotDownwardClosed,
    VertexOutOfRange,
)
from .hopf import Element
from .iso import canonical_form


def _check_labels(n: int, labels: Iterable[int], what: str) -> None:
    for v in labels:
        if not 1 <= v <= n:
            raise VertexOutOfRange(f"{what} uses vertex {v} outside 1..{n}")


def _flat(n: int, faces: Sequence[tuple[int, ...]]) -> MultiComplex:
    """Singletons plus ``faces`` with only the forced vertex relations."""
    return _build(n, [tuple(sorted(f)) for f in faces], [0] * len(faces))


def from_graph(n: int, edges: Iterable[Sequence[int]]) -> MultiComplex:
    seen = set()
    out = []
    for e in edges:
        a, b = e
        _check_labels(n, (a, b), f"edge {a}-{b}")
        if a == b:
            raise LoopNotAllowed(f"loop at vertex {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise DuplicateEdge(f"edge {key[0]}-{key[1]} given twice")
        seen.add(key)
        out.append(key)
    return _flat(n, out)


def from_multigraph(n: int, edges: Iterable[Sequence[int]]) -> MultiComplex:
    """Loops become {a,a}; parallel edges become repeated faces."""
    out = []
    for a, b in edges:
        _check_labels(n, (a, b), f"edge {a}-{b}")
        out.append((a, b))
    return _flat(n, out)


def from_hypergraph(n: int, edges: Iterable[Iterable[int]],
                    allow_singleton: bool = False) -> MultiComplex:
    """One face per hyperedge.

    A one-vertex hyperedge {a} would clash with the mandatory singleton, so it
    is rejected unless ``allow_singleton``, in which case it becomes {a,a}.
    """
    out = []
    for e in edges:
        verts = sorted(set(e))
        if not verts:
            raise EmptyEdge("empty hyperedge")
        _check_labels(n, verts, f"hyperedge {verts}")
        if len(verts) == 1:
            if not allow_singleton:
                raise EmptyEdge(f"one-vertex hyperedge {{{verts[0]}}} (enable allow_singleton)")
            verts = verts * 2
        out.append(tuple(verts))
    return _flat(n, out)


def _containment_order(n: int, faces: Sequence[tuple[int, ...]]) -> MultiComplex:
    """Faces ordered by proper multiset containment."""
    lower = [0] * len(faces)
    for j, b in enumerate(faces):
        for i, a in enumerate(faces):
            if len(a) < len(b) and _contained(a, b):
                lower[j] |= 1 << i
    return _build(n, [tuple(sorted(f)) for f in faces], lower)


def _simplices(n: int, faces: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    family = set()
    for f in faces:
        s = tuple(sorted(f))
        if not s:
            raise EmptyEdge("empty simplex")
        if len(set(s)) != len(s):
            raise MalformedIncidence(f"simplex {list(s)} repeats a vertex")
        _check_labels(n, s, f"simplex {list(s)}")
        family.add(s)
    for s in family:
        if len(s) > 2:
            for sub in combinations(s, len(s) - 1):
                if sub not in family:
                    raise NotDownwardClosed(f"{list(sub)} is missing below {list(s)}")
    return sorted((s for s in family if len(s) > 1), key=lambda s: (len(s), s))


def from_simplicial(n: int, faces: Iterable[Iterable[int]]) -> MultiComplex:
    """Abstract simplicial complex on {1..n}, ordered by inclusion.

    Vertices are implicit; listing singletons is allowed.
    """
    return _containment_order(n, _simplices(n, faces))


def from_colored_simplicial(n: int, faces: Iterable[Iterable[int]],
                            colors: Mapping[Union[int, tuple[int, ...]], int]) -> MultiComplex:
    """Simplicial complex with a color count per face.

    A vertex of color k gains k loops {a,a}; a face E of dimension >= 1 and
    color k gains k extra copies of itself.  Everything is ordered by
    containment.
    """
    simp = _simplices(n, faces)
    present = set(simp)
    extra: list[tuple[int, ...]] = []
    for face, k in colors.items():
        if k < 0:
            raise NegativeColor(f"color of {face} is {k}")
        if isinstance(face, int):
            _check_labels(n, (face,), "color")
            extra += [(face, face)] * k
        else:
            s = tuple(sorted(face))
            if len(s) == 1:
                _check_labels(n, s, "color")
                extra += [(s[0], s[0])] * k
            elif s in present:
                extra += [s] * k
            else:
                raise MalformedIncidence(f"color given for {list(s)}, which is not a face")
    return _containment_order(n, simp + extra)


def from_delta(n: int, simplices: Sequence[Sequence[int]],
               parents: Iterable[tuple[int, int]]) -> MultiComplex:
    """Δ-complex given by its simplices of dimension >= 1 and facet relations.

    ``simplices[i]`` is the vertex tuple of simplex ``i`` (repeats allowed, so
    a loop is ``(1, 1)``); ``(i, j)`` in ``parents`` says simplex ``i`` is a
    facet of simplex ``j``.  The face order is generated by these relations and
    the vertex incidences.
    """
    contents = []
    for i, s in enumerate(simplices):
        s = tuple(sorted(s))
        if len(s) < 2:
            raise MalformedIncidence(f"simplex {i} has fewer than 2 vertices")
        _check_labels(n, s, f"simplex {i}")
        contents.append(s)
    pairs = []
    facets = defaultdict(int)
    for i, j in parents:
        if not (0 <= i < len(contents) and 0 <= j < len(contents)):
            raise MalformedIncidence(f"relation ({i}, {j}) names a missing simplex")
        a, b = contents[i], contents[j]
        if len(a) != len(b) - 1 or not _contained(a, b):
            raise MalformedIncidence(f"simplex {i} {list(a)} cannot be a facet of {j} {list(b)}")
        facets[j] += 1
        pairs.append((n + i, n + j))
    for j, k in facets.items():
        if k > len(contents[j]):
            raise MalformedIncidence(f"simplex {j} has {k} facets, more than {len(contents[j])}")
    return validate(n, [(v,) for v in range(1, n + 1)] + contents, pairs)


def pc_dim1(C: MultiComplex) -> Element:
    """P_C as the alternating sum of [C - E] over edge subsets E (dimension <= 1)."""
    if dimension(C) > 1:
        raise DimensionTooHigh(f"complex has dimension {dimension(C)}; need <= 1")
    out: dict = defaultdict(Fraction)
    full = C.full_mask
    for drop in range(full + 1):
        sign = -1 if bin(drop).count("1") % 2 else 1
        out[canonical_form(spanning_complex(C, full ^ drop))] += sign
    return Element(out)
