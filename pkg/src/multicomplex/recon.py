"""Vertex and edge decks of graphs, and exhaustive scans for non-reconstructible pairs.

Deck kinds:

* ``vertex``: the n one-vertex-deleted induced subgraphs;
* ``vertex-full``: G - X for every non-empty X ⊆ V(G) (2^n - 1 cards);
* ``edge``: the |E| one-edge-deleted subgraphs;
* ``edge-full``: G - E for every non-empty E ⊆ E(G) (2^|E| - 1 cards).

The empty deletion is left out of the full decks: it would put G itself in
its own deck and make equal decks trivially force isomorphism.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .core import MultiComplex, dimension, is_connected, restrict_mask, spanning_complex
from .errors import DimensionTooHigh
from .families import all_graphs
from .hopf import Element, is_primitive
from .iso import CanonicalKey, canonical_form

KINDS = ("vertex", "vertex-full", "edge", "edge-full")


@dataclass(frozen=True)
class Deck:
    kind: str
    cards: tuple[CanonicalKey, ...]

    def __len__(self) -> int:
        return len(self.cards)

    def counts(self) -> Counter:
        return Counter(self.cards)


def _cards(G: MultiComplex, kind: str):
    full_v = (1 << G.n) - 1
    full_e = G.full_mask
    if kind == "vertex":
        return (restrict_mask(G, full_v ^ (1 << v)) for v in range(G.n))
    if kind == "vertex-full":
        return (restrict_mask(G, full_v ^ X) for X in range(1, full_v + 1))
    if kind in ("edge", "edge-full"):
        if dimension(G) > 1:
            raise DimensionTooHigh("edge decks need dimension <= 1")
        if kind == "edge":
            return (spanning_complex(G, full_e ^ (1 << i)) for i in range(G.m))
        return (spanning_complex(G, full_e ^ E) for E in range(1, full_e + 1))
    raise ValueError(f"unknown deck kind {kind!r}; expected one of {', '.join(KINDS)}")


def deck(G: MultiComplex, kind: str = "vertex") -> Deck:
    return Deck(kind, tuple(sorted(canonical_form(c) for c in _cards(G, kind))))


def decks_equal(G: MultiComplex, H: MultiComplex, kind: str = "vertex") -> bool:
    return deck(G, kind).cards == deck(H, kind).cards


def difference_is_primitive(G: MultiComplex, H: MultiComplex) -> bool:
    return is_primitive(Element.basis(G) - Element.basis(H))


@dataclass
class ScanReport:
    n: int
    kind: str
    min_edges: int
    graphs: int = 0
    classes: int = 0
    class_sizes: Counter = field(default_factory=Counter)
    pairs: list[tuple[MultiComplex, MultiComplex]] = field(default_factory=list)
    disconnected_unique: bool = True
    pairs_connected: bool = True
    primitive_differences: list[bool] = field(default_factory=list)

    def summary(self) -> str:
        sizes = ", ".join(f"{size}:{k}" for size, k in sorted(self.class_sizes.items()))
        return (f"n={self.n} deck={self.kind} min_edges={self.min_edges}: {self.graphs} graphs, "
                f"{self.classes} deck classes (size:count {sizes}), {len(self.pairs)} pairs; "
                f"disconnected graphs deck-unique: {self.disconnected_unique}")


def _fingerprint(args) -> tuple[CanonicalKey, ...]:
    G, kind = args
    return deck(G, kind).cards


def scan_counterexamples(n: int, kind: str = "vertex", min_edges: int = 0,
                         jobs: int = 1, method: str = "extend") -> ScanReport:
    """Group every simple graph on n vertices by deck; report non-isomorphic pairs sharing one.

    ``method`` picks the graph generator (see ``families.all_graphs``).
    """
    graphs = [G for G in all_graphs(n, method) if G.m >= min_edges]
    work = [(G, kind) for G in graphs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            prints = list(pool.map(_fingerprint, work, chunksize=16))
    else:
        prints = [_fingerprint(w) for w in work]
    groups: dict = defaultdict(list)
    for G, fp in zip(graphs, prints):
        groups[fp].append(G)
    rep = ScanReport(n, kind, min_edges, graphs=len(graphs), classes=len(groups))
    for fp in sorted(groups):
        members = groups[fp]
        rep.class_sizes[len(members)] += 1
        for G, H in combinations(members, 2):
            rep.pairs.append((G, H))
            rep.primitive_differences.append(difference_is_primitive(G, H))
            if not (is_connected(G) and is_connected(H)):
                rep.pairs_connected = False
        if len(members) > 1 and any(not is_connected(G) for G in members):
            rep.disconnected_unique = False
    return rep
