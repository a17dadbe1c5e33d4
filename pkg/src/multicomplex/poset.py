"""The lattice of spanning sub-complexes and its Möbius function."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Union

from .core import LIMITS, MultiComplex, SubComplexMask, iter_bits
from .errors import NotComparable, OwnerMismatch, SizeLimitExceeded

MaskLike = Union[SubComplexMask, int]


def down_closed_masks(C: MultiComplex) -> list[int]:
    """All down-closed sets of non-singleton faces, as bitmasks.

    Faces are visited in a topological order (by face dimension); a face may
    join only once its whole down-set is present, so each ideal is produced
    exactly once.
    """
    if C.m > LIMITS.max_faces:
        raise SizeLimitExceeded(
            f"{C.m} non-singleton faces exceeds the lattice limit {LIMITS.max_faces}")
    order = sorted(range(C.m), key=lambda i: C.face_dimensions[i])
    lower = C.lower
    out: list[int] = []

    def extend(pos: int, mask: int) -> None:
        if pos == len(order):
            out.append(mask)
            return
        i = order[pos]
        extend(pos + 1, mask)
        if not lower[i] & ~mask:
            extend(pos + 1, mask | (1 << i))

    extend(0, 0)
    out.sort(key=lambda x: (bin(x).count("1"), x))
    return out


@dataclass(eq=False)
class SpanningLattice:
    """X_C: spanning sub-complexes of ``owner`` ordered by inclusion."""

    owner: MultiComplex
    masks: list[int]
    _members: frozenset = field(init=False, repr=False)
    _mu_from: dict = field(default_factory=dict, init=False, repr=False)
    _chains_from: dict = field(default_factory=dict, init=False, repr=False)
    _mu_top: dict | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self._members = frozenset(self.masks)

    @property
    def ideals(self) -> list[SubComplexMask]:
        return [SubComplexMask(self.owner, x) for x in self.masks]

    @property
    def top(self) -> int:
        return self.owner.full_mask

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, mask: int) -> bool:
        return mask in self._members

    def interval(self, lo: int, hi: int) -> Iterator[int]:
        """Members F with lo <= F <= hi."""
        rest = hi & ~lo
        sub = rest
        while True:
            F = lo | sub
            if F in self._members:
                yield F
            if sub == 0:
                break
            sub = (sub - 1) & rest

    def mu_from(self, lo: int) -> dict[int, int]:
        """mu(lo, F) for every F >= lo, by mu(lo, F) = -sum_{lo <= G < F} mu(lo, G)."""
        table = self._mu_from.get(lo)
        if table is None:
            table = {lo: 1}
            above = sorted((F for F in self.interval(lo, self.top) if F != lo),
                           key=lambda x: bin(x).count("1"))
            for F in above:
                table[F] = -sum(table[G] for G in self.interval(lo, F) if G != F)
            self._mu_from[lo] = table
        return table

    def mu_to_top(self) -> dict[int, int]:
        """mu(D, top) for every D, by the dual recursion over up-sets."""
        if self._mu_top is None:
            top = self.top
            table = {top: 1}
            for D in sorted(self.masks, key=lambda x: -bin(x).count("1")):
                if D != top:
                    table[D] = -sum(table[F] for F in self.interval(D, top) if F != D)
            self._mu_top = table
        return self._mu_top

    def chain_counts_from(self, lo: int) -> dict[int, list[int]]:
        """For each F >= lo, the number of strict chains lo = x0 < ... < xl = F by length l."""
        table = self._chains_from.get(lo)
        if table is None:
            table = {lo: [1]}
            above = sorted((F for F in self.interval(lo, self.top) if F != lo),
                           key=lambda x: bin(x).count("1"))
            for F in above:
                counts: list[int] = []
                for G in self.interval(lo, F):
                    if G == F:
                        continue
                    for length, c in enumerate(table[G]):
                        if len(counts) <= length + 1:
                            counts.extend([0] * (length + 2 - len(counts)))
                        counts[length + 1] += c
                table[F] = counts
            self._chains_from[lo] = table
        return table


def _lattice_uncached(C: MultiComplex) -> SpanningLattice:
    return SpanningLattice(C, down_closed_masks(C))


_lattice_cached = lru_cache(maxsize=4096)(_lattice_uncached)


def spanning_subcomplexes(C: MultiComplex) -> SpanningLattice:
    return _lattice_cached(C)


def _as_lattice(C: Union[MultiComplex, SpanningLattice]) -> SpanningLattice:
    return C if isinstance(C, SpanningLattice) else spanning_subcomplexes(C)


def _bits(L: SpanningLattice, x: MaskLike) -> int:
    if isinstance(x, SubComplexMask):
        if x.owner is not L.owner and x.owner != L.owner:
            raise OwnerMismatch("mask does not belong to this lattice's complex")
        return x.included
    if x not in L:
        raise NotComparable(f"{x:#x} is not a spanning sub-complex")
    return x


def mobius(C: Union[MultiComplex, SpanningLattice], D: MaskLike, E: MaskLike) -> int:
    """Möbius function mu(D, E) of X_C."""
    L = _as_lattice(C)
    d, e = _bits(L, D), _bits(L, E)
    if d & ~e:
        raise NotComparable("lower mask is not contained in the upper mask")
    return L.mu_from(d)[e]


def mobius_chain_oracle(C: Union[MultiComplex, SpanningLattice], D: MaskLike, E: MaskLike) -> int:
    """Sum of (-1)^length over all strict chains from D to E."""
    L = _as_lattice(C)
    d, e = _bits(L, D), _bits(L, E)
    if d & ~e:
        raise NotComparable("lower mask is not contained in the upper mask")
    counts = L.chain_counts_from(d)[e]
    return sum(c if length % 2 == 0 else -c for length, c in enumerate(counts))


def enumerate_chains(C: Union[MultiComplex, SpanningLattice], D: MaskLike, E: MaskLike):
    """Every strict chain from D to E as a tuple of masks (for small intervals)."""
    L = _as_lattice(C)
    d, e = _bits(L, D), _bits(L, E)

    def walk(chain):
        x = chain[-1]
        if x == e:
            yield tuple(chain)
            return
        for y in L.interval(x, e):
            if y != x:
                yield from walk(chain + [y])

    if not d & ~e:
        yield from walk([d])


def mobius_vector(C: Union[MultiComplex, SpanningLattice]) -> dict[int, int]:
    """mu(D, C) for every spanning sub-complex D (keyed by mask)."""
    return dict(_as_lattice(C).mu_to_top())


def split_mask(C1: MultiComplex, mask: int) -> tuple[int, int]:
    """Masks of D ∩ C1 and D ∩ C2 for D a spanning mask of C1 ⊔ C2."""
    return mask & C1.full_mask, mask >> C1.m
