"""Slow, independent reference computations used only by the tests."""

from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations, product

from multicomplex.core import MultiComplex, iter_bits


def _contained(a, b) -> bool:
    ca, cb = Counter(a), Counter(b)
    return all(cb[x] >= k for x, k in ca.items())


def brute_isomorphic(C: MultiComplex, D: MultiComplex) -> bool:
    """Try every vertex bijection and every matching of identical faces."""
    if (C.n, C.m) != (D.n, D.m):
        return False
    for sigma in permutations(range(1, C.n + 1)):
        image = [tuple(sorted(sigma[v - 1] for v in f)) for f in C.faces]
        if Counter(image) != Counter(D.faces):
            continue
        slots = {f: [j for j, g in enumerate(D.faces) if g == f] for f in set(D.faces)}
        groups = {f: [i for i, g in enumerate(image) if g == f] for f in slots}
        choices = [list(permutations(slots[f])) for f in slots]
        for pick in product(*choices):
            target = {}
            for f, perm in zip(slots, pick):
                for i, j in zip(groups[f], perm):
                    target[i] = j
            if all((C.lower[j] >> i & 1) == (D.lower[target[j]] >> target[i] & 1)
                   for i in range(C.m) for j in range(C.m)):
                return True
    return False


def brute_down_sets(C: MultiComplex) -> list[int]:
    return [s for s in range(1 << C.m)
            if all(not C.lower[i] & ~s for i in iter_bits(s))]


def brute_mobius(C: MultiComplex, lo: int, hi: int) -> int:
    """Möbius value straight from the definition, over the explicit down-set list."""
    members = set(brute_down_sets(C))
    memo = {}

    def mu(x, y):
        if (x, y) not in memo:
            if x == y:
                memo[x, y] = 1
            else:
                memo[x, y] = -sum(mu(x, z) for z in members
                                  if z != y and not x & ~z and not z & ~y)
        return memo[x, y]

    return mu(lo, hi)


def graph_automorphisms(n: int, edges) -> int:
    E = {frozenset(e) for e in edges}
    return sum(1 for s in permutations(range(1, n + 1))
               if {frozenset(s[v - 1] for v in e) for e in E} == E)


def graph_subgraph_count(n: int, edges, k: int, h_edges) -> int:
    """Subgraphs of G (any vertex subset, any edge subset) isomorphic to H, by injective maps."""
    E = {frozenset(e) for e in edges}
    HE = [frozenset(e) for e in h_edges]
    maps = 0
    for img in permutations(range(1, n + 1), k):
        if all(frozenset(img[v - 1] for v in e) in E for e in HE):
            maps += 1
    return maps // graph_automorphisms(k, h_edges)


def edge_subset_primitive(n: int, faces) -> Counter:
    """P_C for dimension <= 1 as a Counter over sorted face tuples of C - E (labelled, not up to iso)."""
    out: Counter = Counter()
    for r in range(len(faces) + 1):
        for drop in combinations(range(len(faces)), r):
            rest = tuple(sorted(f for i, f in enumerate(faces) if i not in drop))
            out[rest] += (-1) ** r
    return out
