"""Multi-complexes: validated construction and structural operations.

A multi-complex on the base set ``{1..n}`` is stored with its ``n`` singleton
faces implicit.  Only the non-singleton faces are kept explicitly, as sorted
label tuples (a label repeats as often as its multiplicity), together with the
strict order among them as one bitmask per face.

Face ids follow the canonical layout: ids ``0..n-1`` are the singletons
``{1}..{n}``; ids ``n..n+m-1`` are the non-singleton faces in canonical order
(sorted content, then down-set signature, then input position).
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    ContainmentViolation,
    CycleInOrder,
    DimensionTooHigh,
    DuplicateSingleton,
    EmptyFace,
    MissingSingleton,
    NotAnEdge,
    NotDownClosed,
    OwnerMismatch,
    SingletonRelationViolation,
    SizeLimitExceeded,
    UnknownFace,
    VertexOutOfRange,
)

Multiset = Union[Sequence[int], Mapping[int, int]]


@dataclass
class Limits:
    max_vertices: int = 16
    max_faces: int = 24


LIMITS = Limits(max_faces=int(os.environ.get("MCX_MAX_FACES", "24")))


def check_size(C: "MultiComplex", what: str = "complex") -> None:
    if C.n > LIMITS.max_vertices:
        raise SizeLimitExceeded(
            f"{what} has {C.n} vertices; the limit is {LIMITS.max_vertices}")
    if C.m > LIMITS.max_faces:
        raise SizeLimitExceeded(
            f"{what} has {C.m} non-singleton faces; the limit is {LIMITS.max_faces} "
            "(set MCX_MAX_FACES to raise it)")


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _remap_mask(mask: int, pos: Mapping[int, int]) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= 1 << pos[i]
    return out


def _contained(a: Sequence[int], b: Sequence[int]) -> bool:
    """Multiset containment, multiplicity-wise."""
    cb = Counter(b)
    return all(cb[x] >= k for x, k in Counter(a).items())


@dataclass(frozen=True)
class MultiComplex:
    n: int
    faces: tuple[tuple[int, ...], ...]
    lower: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.faces)

    @cached_property
    def supports(self) -> tuple[int, ...]:
        """Vertex bitmask (bit ``v-1`` for label ``v``) of each non-singleton face."""
        out = []
        for f in self.faces:
            s = 0
            for v in f:
                s |= 1 << (v - 1)
            out.append(s)
        return tuple(out)

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    @property
    def num_faces(self) -> int:
        """|C|: every face, singletons included."""
        return self.n + self.m

    def face(self, fid: int) -> tuple[int, ...]:
        if 0 <= fid < self.n:
            return (fid + 1,)
        if self.n <= fid < self.n + self.m:
            return self.faces[fid - self.n]
        raise UnknownFace(f"no face with id {fid}")

    def all_faces(self) -> list[tuple[int, ...]]:
        return [(v,) for v in range(1, self.n + 1)] + list(self.faces)

    def leq(self, i: int, j: int) -> bool:
        """Face order on global ids."""
        a, b = self.face(i), self.face(j)
        if i == j:
            return True
        if len(a) == 1:
            return a[0] in b and len(b) > 1
        if len(b) == 1:
            return False
        return bool(self.lower[j - self.n] >> (i - self.n) & 1)

    @cached_property
    def face_dimensions(self) -> tuple[int, ...]:
        """Dimension of each non-singleton face (longest chain ending there)."""
        dims: list[int | None] = [None] * self.m

        def dim(i: int) -> int:
            if dims[i] is None:
                dims[i] = 1 + max((dim(j) for j in iter_bits(self.lower[i])), default=0)
            return dims[i]

        return tuple(dim(i) for i in range(self.m))

    def __str__(self) -> str:
        from .formats import to_text
        return to_text(self)


EMPTY = MultiComplex(0, (), ())
VERTEX = MultiComplex(1, (), ())


def _build(n: int, faces: Sequence[tuple[int, ...]], lower: Sequence[int]) -> MultiComplex:
    """Assemble a complex from trusted parts, putting faces in canonical order."""
    m = len(faces)

    def signature(i: int):
        return (faces[i], tuple(sorted(faces[j] for j in iter_bits(lower[i]))), i)

    order = sorted(range(m), key=signature)
    pos = {old: new for new, old in enumerate(order)}
    return MultiComplex(
        n,
        tuple(faces[i] for i in order),
        tuple(_remap_mask(lower[i], pos) for i in order),
    )


def _as_label_tuple(face: Multiset) -> tuple[int, ...]:
    if isinstance(face, Mapping):
        items = []
        for v, k in face.items():
            if int(k) < 1:
                raise EmptyFace(f"multiplicity of {v} must be >= 1, got {k}")
            items.extend([int(v)] * int(k))
        return tuple(sorted(items))
    return tuple(sorted(int(v) for v in face))


def validate(n: int, faces: Sequence[Multiset],
             order_pairs: Iterable[tuple[int, int]] = ()) -> MultiComplex:
    """Check the multi-complex axioms and return the validated complex.

    ``faces`` lists every face, singletons included; ``order_pairs`` holds
    ``(i, j)`` meaning ``faces[i] <= faces[j]`` by list position.  Singleton
    relations are implied and need not be given.
    """
    if n < 0:
        raise VertexOutOfRange(f"vertex count must be >= 0, got {n}")
    contents = [_as_label_tuple(f) for f in faces]
    for idx, c in enumerate(contents):
        if not c:
            raise EmptyFace(f"face {idx} is empty")
        bad = [v for v in c if not 1 <= v <= n]
        if bad:
            raise VertexOutOfRange(f"face {idx} uses label {bad[0]} outside 1..{n}")

    seen: dict[int, int] = {}
    for idx, c in enumerate(contents):
        if len(c) == 1:
            if c[0] in seen:
                raise DuplicateSingleton(
                    f"singleton {{{c[0]}}} appears twice (faces {seen[c[0]]} and {idx})")
            seen[c[0]] = idx
    missing = [k for k in range(1, n + 1) if k not in seen]
    if missing:
        raise MissingSingleton(f"singleton {{{missing[0]}}} is missing")

    big = [idx for idx, c in enumerate(contents) if len(c) > 1]
    local = {idx: i for i, idx in enumerate(big)}
    m = len(big)
    direct = [0] * m
    for i, j in order_pairs:
        if not (0 <= i < len(contents) and 0 <= j < len(contents)):
            raise UnknownFace(f"order pair ({i}, {j}) refers to a missing face")
        if i == j:
            continue
        a, b = contents[i], contents[j]
        if len(a) == 1:
            if len(b) == 1 or a[0] not in b:
                raise SingletonRelationViolation(
                    f"{{{a[0]}}} <= face {j} asserted but {a[0]} is not in its support")
            continue
        if len(b) == 1 or not _contained(a, b):
            raise ContainmentViolation(
                f"face {i} {list(a)} <= face {j} {list(b)} without multiset containment")
        direct[local[j]] |= 1 << local[i]

    # transitive closure; lower[j] = faces strictly below j
    lower = direct[:]
    for k in range(m):
        bit = 1 << k
        for j in range(m):
            if lower[j] & bit:
                lower[j] |= lower[k]
    for j in range(m):
        if lower[j] >> j & 1:
            raise CycleInOrder(f"face {big[j]} lies strictly below itself")
    return _build(n, [contents[idx] for idx in big], lower)


def relabel(C: MultiComplex, perm: Sequence[int]) -> MultiComplex:
    """Rename vertex ``v`` to ``perm[v-1]``."""
    if sorted(perm) != list(range(1, C.n + 1)):
        raise VertexOutOfRange(f"{list(perm)} is not a permutation of 1..{C.n}")
    faces = [tuple(sorted(perm[v - 1] for v in f)) for f in C.faces]
    return _build(C.n, faces, C.lower)


def disjoint_union(C: MultiComplex, D: MultiComplex) -> MultiComplex:
    shift = C.n
    m = C.m
    faces = C.faces + tuple(tuple(v + shift for v in f) for f in D.faces)
    lower = C.lower + tuple(low << m for low in D.lower)
    # D's faces only use labels > C.n, so canonical order is kept
    return MultiComplex(C.n + D.n, faces, lower)


def vertex_mask(C: MultiComplex, X: Iterable[int]) -> int:
    mask = 0
    for v in X:
        if not 1 <= v <= C.n:
            raise VertexOutOfRange(f"vertex {v} outside 1..{C.n}")
        mask |= 1 << (v - 1)
    return mask


def restrict_mask(C: MultiComplex, vmask: int) -> MultiComplex:
    """Restriction to the vertices in the bitmask ``vmask``."""
    relabel_to = {}
    k = 0
    for v in range(C.n):
        if vmask >> v & 1:
            k += 1
            relabel_to[v + 1] = k
    keep = [i for i, s in enumerate(C.supports) if not s & ~vmask]
    pos = {old: new for new, old in enumerate(keep)}
    faces = tuple(tuple(relabel_to[v] for v in C.faces[i]) for i in keep)
    lower = tuple(_remap_mask(C.lower[i], pos) for i in keep)
    return MultiComplex(k, faces, lower)


def restrict(C: MultiComplex, X: Iterable[int]) -> MultiComplex:
    """Keep the faces supported inside ``X``; labels are renumbered 1..|X| in order."""
    return restrict_mask(C, vertex_mask(C, X))


def component_masks(n: int, supports: Iterable[int]) -> list[int]:
    """Vertex bitmasks of the path-components, ordered by smallest vertex."""
    comps = [1 << v for v in range(n)]
    for s in supports:
        merged = s
        rest = []
        for b in comps:
            if b & s:
                merged |= b
            else:
                rest.append(b)
        rest.append(merged)
        comps = rest
    return sorted(comps, key=lambda b: b & -b)


def connected_components(C: MultiComplex) -> list[tuple[tuple[int, ...], MultiComplex]]:
    out = []
    for b in component_masks(C.n, C.supports):
        verts = tuple(v + 1 for v in iter_bits(b))
        out.append((verts, restrict_mask(C, b)))
    return out


def is_connected(C: MultiComplex) -> bool:
    """Non-empty with a single path-component."""
    return C.n > 0 and len(component_masks(C.n, C.supports)) == 1


def dimension(C: MultiComplex) -> int:
    """Length of the longest chain of faces; -1 for the empty complex."""
    if C.n == 0:
        return -1
    return max(C.face_dimensions, default=0)


def face_dimension(C: MultiComplex, fid: int) -> int:
    C.face(fid)
    if fid < C.n:
        return 0
    return C.face_dimensions[fid - C.n]


@dataclass(frozen=True)
class SubComplexMask:
    """A spanning sub-complex: a down-closed set of non-singleton faces of ``owner``.

    Bit ``i`` of ``included`` stands for face id ``owner.n + i``.
    """

    owner: MultiComplex
    included: int

    def __post_init__(self):
        if self.included < 0 or self.included >> self.owner.m:
            raise UnknownFace(f"mask {self.included:#x} has bits beyond the owner's faces")
        for i in iter_bits(self.included):
            if self.owner.lower[i] & ~self.included:
                raise NotDownClosed(f"face {self.owner.n + i} is included without its down-set")

    @property
    def face_ids(self) -> list[int]:
        return [self.owner.n + i for i in iter_bits(self.included)]

    def complex(self) -> MultiComplex:
        return spanning_complex(self.owner, self.included)

    def __le__(self, other: "SubComplexMask") -> bool:
        _same_owner(self, other)
        return not self.included & ~other.included

    def __len__(self) -> int:
        return bin(self.included).count("1")


def _same_owner(D: SubComplexMask, E: SubComplexMask) -> None:
    if D.owner is not E.owner and D.owner != E.owner:
        raise OwnerMismatch("masks belong to different complexes")


def spanning_complex(C: MultiComplex, mask: int) -> MultiComplex:
    keep = list(iter_bits(mask))
    pos = {old: new for new, old in enumerate(keep)}
    return MultiComplex(
        C.n,
        tuple(C.faces[i] for i in keep),
        tuple(_remap_mask(C.lower[i], pos) for i in keep),
    )


def component_count(C: MultiComplex, mask: int | None = None) -> int:
    """Number of path-components of ``C`` or of its spanning sub-complex ``mask``."""
    sup = C.supports
    if mask is not None:
        sup = [sup[i] for i in iter_bits(mask)]
    return len(component_masks(C.n, sup))


def full_sub(C: MultiComplex) -> SubComplexMask:
    return SubComplexMask(C, C.full_mask)


def intersect_sub(D: SubComplexMask, E: SubComplexMask) -> SubComplexMask:
    _same_owner(D, E)
    return SubComplexMask(D.owner, D.included & E.included)


def generated_sub(C: MultiComplex, S: Iterable[int]) -> SubComplexMask:
    """Smallest spanning sub-complex containing the faces with ids in ``S``."""
    mask = 0
    for fid in S:
        C.face(fid)
        if fid >= C.n:
            i = fid - C.n
            mask |= (1 << i) | C.lower[i]
    return SubComplexMask(C, mask)


def delete_faces(C: MultiComplex, E: Iterable[int]) -> MultiComplex:
    """C - E for a complex of dimension at most 1; ``E`` holds edge face ids."""
    if dimension(C) > 1:
        raise DimensionTooHigh(f"complex has dimension {dimension(C)}; need <= 1")
    drop = 0
    for fid in E:
        C.face(fid)
        if fid < C.n:
            raise NotAnEdge(f"face {fid} is a singleton, not an edge")
        drop |= 1 << (fid - C.n)
    return spanning_complex(C, C.full_mask & ~drop)
