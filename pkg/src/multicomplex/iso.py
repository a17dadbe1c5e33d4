"""Canonical forms, automorphisms, embeddings and sub-complex multiplicities.

A complex is turned into a coloured digraph whose nodes are its vertices and
its non-singleton faces (arcs carry multiplicities and the face order).  The
canonical form of each path-component is the lexicographically least
encoding over the leaves of an individualization-refinement search tree,
pruned with the automorphisms discovered along the way.  Component forms are
sorted and concatenated; the result is serialized as the key.

Key layout (one byte per number)::

    n, m, then per face: size, labels...; then per face: #lower, lower ids...
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

from .core import (
    LIMITS,
    MultiComplex,
    _build,
    check_size,
    component_masks,
    iter_bits,
    restrict_mask,
    spanning_complex,
)
from .errors import CrossCheckMismatch, ParseError, SizeLimitExceeded

CanonicalKey = bytes
EMPTY_KEY: CanonicalKey = bytes([0, 0])

# arc labels; vertex->face arcs carry +multiplicity, face->vertex -multiplicity
_TO_LOWER = -1000
_TO_UPPER = 1000
_PACK = 1 << 12

# component form: (k, faces, relations) with 1-based labels and 0-based face ids
Form = tuple


class _Digraph:
    __slots__ = ("k", "size", "adj", "face_nodes", "lower_nodes")

    def __init__(self, k: int, faces: Sequence[tuple[int, ...]], lower: Sequence[int]):
        self.k = k
        self.size = k + len(faces)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.size)]
        for f, content in enumerate(faces):
            node = k + f
            for v, mult in Counter(content).items():
                adj[v - 1].append((mult, node))
                adj[node].append((-mult, v - 1))
            for j in iter_bits(lower[f]):
                adj[node].append((_TO_LOWER, k + j))
                adj[k + j].append((_TO_UPPER, node))
        # (label, colour) packed as label * _PACK + colour so signatures sort as ints
        self.adj = [[(lab * _PACK, j) for lab, j in nbrs] for nbrs in adj]
        self.face_nodes = [[v - 1 for v in content] for content in faces]
        self.lower_nodes = [[k + j for j in iter_bits(low)] for low in lower]

    def refine(self, colors: list[int]) -> list[int]:
        return _refine(self.adj, colors)

    def initial_colors(self) -> list[int]:
        sizes = sorted({len(f) for f in self.face_nodes})
        rank = {s: i + 1 for i, s in enumerate(sizes)}
        return [0] * self.k + [rank[len(f)] for f in self.face_nodes]

    def encode(self, colors: Sequence[int]) -> tuple:
        """Encoding of the structure under the discrete labelling ``colors``."""
        k = self.k
        inv = [0] * self.size
        for node, c in enumerate(colors):
            inv[c] = node
        faces = tuple(
            tuple(sorted(colors[v] + 1 for v in self.face_nodes[inv[p] - k]))
            for p in range(k, self.size)
        )
        rels = tuple(sorted(
            (colors[lo] - k, colors[k + f] - k)
            for f, los in enumerate(self.lower_nodes)
            for lo in los
        ))
        return faces, rels


class _Incidence:
    """Vertex-only structure for complexes without relations among
    non-singleton faces (graphs, multigraphs, hypergraphs).  Faces are then
    determined by their contents, so only vertices need labelling."""

    __slots__ = ("k", "size", "faces", "incident")

    def __init__(self, k: int, faces: Sequence[tuple[int, ...]]):
        self.k = k
        self.size = k
        self.faces = [tuple(Counter(v - 1 for v in f).items()) for f in faces]
        incident: list[list[tuple[int, int]]] = [[] for _ in range(k)]
        for fi, items in enumerate(self.faces):
            for v, mult in items:
                incident[v].append((mult, fi))
        self.incident = incident

    def initial_colors(self) -> list[int]:
        return [0] * self.k

    def refine(self, colors: list[int]) -> list[int]:
        ncells = len(set(colors))
        while True:
            fsig = [tuple(sorted([colors[v] * 64 + mult for v, mult in items]))
                    for items in self.faces]
            sigs = [
                (c, tuple(sorted([(mult, fsig[fi]) for mult, fi in inc])))
                for c, inc in zip(colors, self.incident)
            ]
            distinct = sorted(set(sigs))
            if len(distinct) == ncells:
                return colors
            rank = {s: i for i, s in enumerate(distinct)}
            colors = [rank[s] for s in sigs]
            ncells = len(distinct)

    def encode(self, colors: Sequence[int]) -> tuple:
        faces = sorted(
            tuple(sorted([colors[v] + 1 for v, mult in items for _ in range(mult)]))
            for items in self.faces
        )
        return tuple(faces), ()


def _dense(keys: Sequence) -> list[int]:
    rank = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [rank[key] for key in keys]


def _refine(adj, colors: list[int]) -> list[int]:
    ncells = len(set(colors))
    while True:
        sigs = [
            (c, tuple(sorted([base + colors[j] for base, j in nbrs])))
            for c, nbrs in zip(colors, adj)
        ]
        distinct = sorted(set(sigs))
        if len(distinct) == ncells:
            return colors
        rank = {s: i for i, s in enumerate(distinct)}
        colors = [rank[s] for s in sigs]
        ncells = len(distinct)


def _individualize(colors: Sequence[int], v: int) -> list[int]:
    return _dense([(c, 0 if i == v else 1) for i, c in enumerate(colors)])


def _target_cell(colors: Sequence[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for node, c in enumerate(colors):
        cells.setdefault(c, []).append(node)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _orbit_reps_blocked(v: int, done: list[int], gens: list[list[int]], prefix: tuple) -> bool:
    """True if ``v`` shares an orbit with an explored sibling under the known
    automorphisms fixing ``prefix`` pointwise."""
    usable = [g for g in gens if all(g[p] == p for p in prefix)]
    if not usable:
        return False
    parent = list(range(len(usable[0])))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in usable:
        for x, y in enumerate(g):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    rv = find(v)
    return any(find(u) == rv for u in done)


def _search(g: _Digraph, colors: list[int]):
    """Least leaf encoding reachable from the ordered partition ``colors``."""
    state = {"first": None, "first_lab": None, "best": None, "best_lab": None}
    gens: list[list[int]] = []

    def automorphism(lab_a, lab_b):
        inv_a = [0] * g.size
        for node, c in enumerate(lab_a):
            inv_a[c] = node
        return [inv_a[c] for c in lab_b]

    def leaf(lab):
        enc = g.encode(lab)
        if state["first"] is None:
            state.update(first=enc, first_lab=lab, best=enc, best_lab=lab)
        elif enc == state["first"]:
            gens.append(automorphism(state["first_lab"], lab))
        elif enc == state["best"]:
            gens.append(automorphism(state["best_lab"], lab))
        elif enc < state["best"]:
            state.update(best=enc, best_lab=lab)

    def rec(colors, prefix):
        colors = g.refine(colors)
        cell = _target_cell(colors)
        if cell is None:
            leaf(colors)
            return
        done: list[int] = []
        for v in cell:
            if done and _orbit_reps_blocked(v, done, gens, prefix):
                continue
            rec(_individualize(colors, v), prefix + (v,))
            done.append(v)

    rec(colors, ())
    return state["best"], state["best_lab"]


_FORM_CACHE: dict[tuple, Form] = {}


def _component_form(k: int, faces: tuple, lower: tuple) -> Form:
    if not faces:
        return (k, (), ())
    cache_key = (k, faces, lower)
    form = _FORM_CACHE.get(cache_key)
    if form is None:
        if any(lower):
            g = _Digraph(k, faces, lower)
        else:
            g = _Incidence(k, faces)
        enc, _ = _search(g, g.initial_colors())
        form = (k,) + enc
        _FORM_CACHE[cache_key] = form
    return form


def component_forms(C: MultiComplex) -> list[Form]:
    forms = []
    for block in component_masks(C.n, C.supports):
        part = restrict_mask(C, block)
        forms.append(_component_form(part.n, part.faces, part.lower))
    return forms


def _assemble(forms: Sequence[Form]) -> CanonicalKey:
    n = sum(f[0] for f in forms)
    faces: list[tuple[int, ...]] = []
    lowers: list[list[int]] = []
    voff = 0
    for k, cf, rels in forms:
        foff = len(faces)
        faces.extend(tuple(v + voff for v in f) for f in cf)
        lowers.extend([] for _ in cf)
        for lo, hi in rels:
            lowers[foff + hi].append(foff + lo)
        voff += k
    if n > 255 or len(faces) > 255:
        raise SizeLimitExceeded("complex too large to serialize as a key")
    out = [n, len(faces)]
    for f in faces:
        out.append(len(f))
        out.extend(f)
    for low in lowers:
        out.append(len(low))
        out.extend(sorted(low))
    return bytes(out)


def canonical_form(C: MultiComplex) -> CanonicalKey:
    check_size(C)
    return _assemble(sorted(component_forms(C)))


def is_isomorphic(C: MultiComplex, D: MultiComplex) -> bool:
    if (C.n, C.m) != (D.n, D.m):
        return False
    return canonical_form(C) == canonical_form(D)


@lru_cache(maxsize=None)
def key_to_complex(key: CanonicalKey) -> MultiComplex:
    try:
        n, m = key[0], key[1]
        pos = 2
        faces = []
        for _ in range(m):
            size = key[pos]
            faces.append(tuple(key[pos + 1:pos + 1 + size]))
            pos += 1 + size
        lower = []
        for _ in range(m):
            cnt = key[pos]
            mask = 0
            for j in key[pos + 1:pos + 1 + cnt]:
                mask |= 1 << j
            lower.append(mask)
            pos += 1 + cnt
    except IndexError:
        raise ParseError(f"truncated canonical key {key.hex()}") from None
    if pos != len(key):
        raise ParseError(f"trailing bytes in canonical key {key.hex()}")
    return _build(n, faces, lower)


def key_from_hex(text: str) -> CanonicalKey:
    try:
        key = bytes.fromhex(text.strip())
    except ValueError:
        raise ParseError(f"not a hex key: {text!r}") from None
    key_to_complex(key)
    return key


def key_degree(key: CanonicalKey) -> int:
    return key[0]


@lru_cache(maxsize=None)
def key_forms(key: CanonicalKey) -> tuple[Form, ...]:
    """Component forms of a key, in key order."""
    return tuple(component_forms(key_to_complex(key)))


@lru_cache(maxsize=1 << 16)
def key_product(a: CanonicalKey, b: CanonicalKey) -> CanonicalKey:
    """Key of the disjoint union."""
    if a == EMPTY_KEY:
        return b
    if b == EMPTY_KEY:
        return a
    if a[0] + b[0] > LIMITS.max_vertices:
        raise SizeLimitExceeded(
            f"product has {a[0] + b[0]} vertices; the limit is {LIMITS.max_vertices}")
    return _assemble(sorted(key_forms(a) + key_forms(b)))


def key_components(key: CanonicalKey) -> tuple[CanonicalKey, ...]:
    """Keys of the connected components, sorted."""
    return tuple(sorted(_assemble([f]) for f in key_forms(key)))


def clear_caches() -> None:
    _FORM_CACHE.clear()
    key_to_complex.cache_clear()
    key_forms.cache_clear()
    key_product.cache_clear()


# ---------------------------------------------------------------- automorphisms

def _aut_count(g: _Digraph, colors: list[int]) -> int:
    colors = g.refine(colors)
    cell = _target_cell(colors)
    if cell is None:
        return 1
    v = cell[0]
    fixed = _individualize(colors, v)
    ref = _search(g, fixed)[0]
    orbit = 1 + sum(_search(g, _individualize(colors, u))[0] == ref for u in cell[1:])
    return orbit * _aut_count(g, fixed)


def automorphism_count(C: MultiComplex) -> int:
    """Number of automorphisms, counting both vertex and face permutations."""
    check_size(C)
    if C.n == 0:
        return 1
    g = _Digraph(C.n, C.faces, C.lower)
    return _aut_count(g, g.initial_colors())


# ---------------------------------------------------------------- embeddings

def _count_face_maps(C: MultiComplex, D: MultiComplex, images: list[tuple[int, ...]],
                     candidates: dict) -> int:
    mD = D.m
    assigned = [0] * mD

    def rec(i: int, used: int) -> int:
        if i == mD:
            # image must be down-closed in C
            for j in iter_bits(used):
                if C.lower[j] & ~used:
                    return 0
            return 1
        total = 0
        for j in candidates.get(images[i], ()):
            if used >> j & 1:
                continue
            ok = True
            for i2 in range(i):
                j2 = assigned[i2]
                if (D.lower[i] >> i2 & 1) != (C.lower[j] >> j2 & 1):
                    ok = False
                    break
                if (D.lower[i2] >> i & 1) != (C.lower[j2] >> j & 1):
                    ok = False
                    break
            if ok:
                assigned[i] = j
                total += rec(i + 1, used | (1 << j))
        return total

    return rec(0, 0)


def embedding_count(C: MultiComplex, D: MultiComplex) -> int:
    """Injective morphisms D -> C onto sub-complexes of C.

    A morphism is a vertex injection plus an injective matching of D's faces
    to C's faces with the mapped contents, preserving and reflecting the face
    order, whose image is down-closed.  Brute force; no canonical forms used.
    """
    check_size(C)
    check_size(D)
    if D.n > C.n:
        return 0
    candidates: dict[tuple[int, ...], list[int]] = {}
    for j, f in enumerate(C.faces):
        candidates.setdefault(f, []).append(j)
    total = 0
    for f in permutations(range(1, C.n + 1), D.n):
        images = [tuple(sorted(f[v - 1] for v in face)) for face in D.faces]
        counts = Counter(images)
        if any(len(candidates.get(c, ())) < k for c, k in counts.items()):
            continue
        total += _count_face_maps(C, D, images, candidates)
    return total


def multiplicity(C: MultiComplex, D: MultiComplex, cross_check: bool = True) -> int:
    """[C:D], the number of sub-multi-complexes of C isomorphic to D.

    Counted directly over vertex subsets and their spanning sub-complexes; with
    ``cross_check`` the count is compared against embeddings / automorphisms.
    """
    from .poset import down_closed_masks

    check_size(C)
    check_size(D)
    count = 0
    if D.n <= C.n:
        target = canonical_form(D)
        for X in combinations(range(C.n), D.n):
            vmask = sum(1 << v for v in X)
            R = restrict_mask(C, vmask)
            for mask in down_closed_masks(R):
                if bin(mask).count("1") == D.m and canonical_form(spanning_complex(R, mask)) == target:
                    count += 1
    if cross_check:
        emb = embedding_count(C, D)
        aut = automorphism_count(D)
        if count * aut != emb:
            raise CrossCheckMismatch(
                f"[C:D]={count} but embeddings/|Aut(D)| = {emb}/{aut}")
    return count
