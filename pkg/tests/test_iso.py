import random

import pytest
from hypothesis import given, strategies as st

from conftest import complexes
from oracles import brute_isomorphic, graph_subgraph_count
from multicomplex.core import EMPTY, disjoint_union, relabel, validate
from multicomplex.families import (
    DELTA_EXAMPLE,
    K2,
    K3,
    LOOP_DOUBLE_EDGE,
    P3,
    SIMPLEX2,
    VERTEX,
    K,
    all_graphs,
    isolated,
)
from multicomplex.encode import from_graph, from_multigraph
from multicomplex.errors import SizeLimitExceeded
from multicomplex.iso import (
    EMPTY_KEY,
    automorphism_count,
    canonical_form,
    embedding_count,
    is_isomorphic,
    key_components,
    key_from_hex,
    key_product,
    key_to_complex,
    multiplicity,
)


def test_empty_key():
    assert canonical_form(EMPTY) == EMPTY_KEY


def test_edge_orientation():
    assert canonical_form(from_graph(2, [(1, 2)])) == canonical_form(from_graph(2, [(2, 1)]))


def test_isomorphism_examples():
    assert is_isomorphic(K3, relabel(K3, [3, 1, 2]))
    assert not is_isomorphic(P3, disjoint_union(K2, VERTEX))
    assert not is_isomorphic(from_multigraph(2, [(1, 2), (1, 2)]), K2)


def test_order_matters():
    # same faces, one relation dropped: not isomorphic
    loose = validate(3, [[1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]], [(3, 6), (4, 6)])
    assert not is_isomorphic(loose, SIMPLEX2)


def test_delta_incomparable_copies():
    # the extra 1-2 edge is not below the 2-face, and that is visible to the key
    tied = validate(3, [[1], [2], [3], [1, 2], [1, 2], [2, 3], [1, 3], [1, 2, 3]],
                    [(3, 7), (4, 7), (5, 7), (6, 7)])
    assert not is_isomorphic(tied, DELTA_EXAMPLE)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_graph_census(n, count):
    assert len(all_graphs(n, "edgesets")) == count
    assert len(all_graphs(n, "extend")) == count


def test_automorphisms():
    assert automorphism_count(VERTEX) == 1
    assert automorphism_count(K3) == 6
    assert automorphism_count(disjoint_union(K2, K2)) == 8
    assert automorphism_count(isolated(6)) == 720
    assert automorphism_count(LOOP_DOUBLE_EDGE) == 2  # swap the parallel edges
    assert automorphism_count(SIMPLEX2) == 6


def test_embeddings():
    assert embedding_count(K3, K2) == 6
    assert embedding_count(K3, EMPTY) == 1
    assert embedding_count(K2, K3) == 0


def test_multiplicity_examples():
    assert multiplicity(K3, K2) == 3
    assert multiplicity(K3, disjoint_union(K2, VERTEX)) == 3
    assert multiplicity(K3, K3) == 1
    assert multiplicity(K2, isolated(2)) == 1
    assert multiplicity(LOOP_DOUBLE_EDGE, K2) == 2


def test_key_helpers():
    k = canonical_form(disjoint_union(K3, K2))
    assert key_product(canonical_form(K2), canonical_form(K3)) == k
    assert key_components(k) == tuple(sorted((canonical_form(K2), canonical_form(K3))))
    assert canonical_form(key_to_complex(k)) == k
    assert key_from_hex(k.hex()) == k


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        canonical_form(isolated(17))
    with pytest.raises(SizeLimitExceeded):
        canonical_form(K(8))  # 28 faces


@given(complexes(max_n=4, max_faces=5), st.randoms(use_true_random=False))
def test_key_invariant_under_relabeling(C, rnd):
    key = canonical_form(C)
    for _ in range(100):
        perm = list(range(1, C.n + 1))
        rnd.shuffle(perm)
        assert canonical_form(relabel(C, perm)) == key


@given(complexes(max_n=3, max_faces=4), complexes(max_n=3, max_faces=4))
def test_key_equality_matches_brute_force(C, D):
    assert is_isomorphic(C, D) == brute_isomorphic(C, D)


@given(complexes(max_n=3, max_faces=4), st.randoms(use_true_random=False))
def test_relabelled_copies_are_isomorphic(C, rnd):
    perm = list(range(1, C.n + 1))
    rnd.shuffle(perm)
    D = relabel(C, perm)
    assert brute_isomorphic(C, D) and is_isomorphic(C, D)


def test_isomorphism_is_an_equivalence():
    rnd = random.Random(7)
    sample = [from_multigraph(3, [tuple(sorted(rnd.sample(range(1, 4), 2))) for _ in range(rnd.randint(0, 3))])
              for _ in range(25)]
    for a in sample:
        assert is_isomorphic(a, a)
        for b in sample:
            assert is_isomorphic(a, b) == is_isomorphic(b, a)
            for c in sample:
                if is_isomorphic(a, b) and is_isomorphic(b, c):
                    assert is_isomorphic(a, c)


@given(complexes(max_n=3, max_faces=4), complexes(max_n=3, max_faces=3))
def test_multiplicity_cross_check(C, D):
    m = multiplicity(C, D, cross_check=False)
    assert m * automorphism_count(D) == embedding_count(C, D)


def test_automorphisms_of_random_graphs_by_brute_force():
    from oracles import graph_automorphisms
    rnd = random.Random(3)
    for _ in range(20):
        n = rnd.randint(1, 6)
        edges = [e for e in ((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)) if rnd.random() < 0.4]
        assert automorphism_count(from_graph(n, edges)) == graph_automorphisms(n, edges)


def test_graph_multiplicity_matches_subgraph_count():
    graphs = [G for n in range(1, 5) for G in all_graphs(n)]
    for G in graphs[:12]:
        for H in graphs:
            want = graph_subgraph_count(G.n, G.faces, H.n, H.faces) if H.n <= G.n else 0
            assert multiplicity(G, H) == want


def _small_complexes(n=3, max_faces=3):
    from itertools import combinations_with_replacement
    pool = [tuple(c) for size in (2, 3) for c in combinations_with_replacement(range(1, n + 1), size)]
    for m in range(max_faces + 1):
        for faces in combinations_with_replacement(pool, m):
            cand = [(i, j) for i in range(m) for j in range(m)
                    if len(faces[i]) < len(faces[j]) and all(faces[j].count(x) >= faces[i].count(x) for x in faces[i])]
            for bits in range(1 << len(cand)):
                pairs = [(n + i, n + j) for k, (i, j) in enumerate(cand) if bits >> k & 1]
                yield validate(n, [[v] for v in range(1, n + 1)] + [list(f) for f in faces], pairs)


def test_keys_partition_small_complexes_like_brute_force():
    by_key = {}
    for C in _small_complexes():
        by_key.setdefault(canonical_form(C), []).append(C)
    reps = []
    for members in by_key.values():
        assert all(brute_isomorphic(members[0], D) for D in members[1:])
        reps.append(members[0])
    by_shape = {}
    for R in reps:
        by_shape.setdefault(tuple(sorted(len(f) for f in R.faces)), []).append(R)
    for group in by_shape.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                assert not brute_isomorphic(group[a], group[b])
