import pytest
from hypothesis import given, strategies as st

from conftest import complexes
from multicomplex.core import (
    EMPTY,
    SubComplexMask,
    component_count,
    connected_components,
    delete_faces,
    dimension,
    disjoint_union,
    face_dimension,
    full_sub,
    generated_sub,
    intersect_sub,
    is_connected,
    relabel,
    restrict,
    restrict_mask,
    spanning_complex,
    validate,
)
from multicomplex.errors import (
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
    UnknownFace,
    VertexOutOfRange,
)
from multicomplex.families import K2, K3, P3, SIMPLEX2, VERTEX, isolated
from multicomplex.formats import parse_json, parse_text, to_json, to_text
from multicomplex.iso import canonical_form, is_isomorphic


class TestValidate:
    def test_empty(self):
        C = validate(0, [], [])
        assert C == EMPTY and C.num_faces == 0

    def test_edge_gets_singleton_relations(self):
        C = validate(2, [{1: 1}, {2: 1}, {1: 1, 2: 1}], [])
        assert C.faces == ((1, 2),)
        assert C.leq(0, 2) and C.leq(1, 2) and not C.leq(2, 0)

    def test_double_loop(self):
        C = validate(1, [{1: 1}, {1: 2}, {1: 2}], [])
        assert C.faces == ((1, 1), (1, 1)) and C.lower == (0, 0)

    def test_duplicate_singleton(self):
        with pytest.raises(DuplicateSingleton):
            validate(2, [[1], [1], [2], [1, 2]])

    def test_missing_singleton(self):
        with pytest.raises(MissingSingleton):
            validate(2, [[1], [1, 2]])

    def test_multiset_containment_is_multiplicity_wise(self):
        validate(2, [[1], [2], [1, 1], [1, 1, 2]], [(2, 3)])
        with pytest.raises(ContainmentViolation):
            validate(2, [[1], [2], [1, 1], [1, 2]], [(2, 3)])

    def test_cycle(self):
        with pytest.raises(CycleInOrder):
            validate(2, [[1], [2], [1, 2], [1, 2]], [(2, 3), (3, 2)])

    def test_singleton_relation_outside_support(self):
        with pytest.raises(SingletonRelationViolation):
            validate(3, [[1], [2], [3], [1, 2]], [(2, 3)])

    def test_bad_labels_and_empty(self):
        with pytest.raises(VertexOutOfRange):
            validate(2, [[1], [2], [1, 3]])
        with pytest.raises(EmptyFace):
            validate(1, [[1], []])
        with pytest.raises(UnknownFace):
            validate(1, [[1]], [(0, 5)])

    def test_transitive_closure(self):
        C = validate(2, [[1], [2], [1, 2], [1, 1, 2], [1, 1, 2, 2]], [(2, 3), (3, 4)])
        fid = {f: C.n + i for i, f in enumerate(C.faces)}
        assert C.leq(fid[(1, 2)], fid[(1, 1, 2, 2)])
        assert dimension(C) == 3


class TestStructure:
    def test_union_identity_and_example(self):
        assert disjoint_union(EMPTY, K3) == K3
        U = disjoint_union(K2, VERTEX)
        assert U.n == 3 and U.faces == ((1, 2),)

    def test_union_face_count(self):
        assert disjoint_union(K3, P3).num_faces == K3.num_faces + P3.num_faces

    def test_restrict(self):
        assert restrict(K3, [1, 2, 3]) == K3
        assert restrict(K3, [1, 2]) == K2
        assert restrict(K3, [1, 3]) == K2
        with pytest.raises(VertexOutOfRange):
            restrict(K3, [4])

    def test_intersect(self):
        a = SubComplexMask(K3, 0b001)
        b = SubComplexMask(K3, 0b011)
        assert intersect_sub(a, a) == a
        assert intersect_sub(a, b) == a
        assert intersect_sub(full_sub(K3), SubComplexMask(K3, 0)).included == 0
        with pytest.raises(OwnerMismatch):
            intersect_sub(a, full_sub(P3))

    def test_components(self):
        assert len(connected_components(P3)) == 1
        comps = connected_components(disjoint_union(K2, VERTEX))
        assert [c for _, c in comps] == [K2, VERTEX]
        assert [x for x, _ in comps] == [(1, 2), (3,)]
        assert not is_connected(EMPTY) and is_connected(VERTEX)

    def test_dimension(self):
        assert dimension(K3) == 1 and dimension(isolated(3)) == 0 and dimension(SIMPLEX2) == 2
        assert dimension(EMPTY) == -1
        tri = SIMPLEX2.n + SIMPLEX2.faces.index((1, 2, 3))
        assert face_dimension(SIMPLEX2, tri) == 2 and face_dimension(SIMPLEX2, 0) == 0
        with pytest.raises(UnknownFace):
            face_dimension(K3, 99)

    def test_generated_sub(self):
        assert generated_sub(SIMPLEX2, [0]).included == 0
        tri = SIMPLEX2.n + SIMPLEX2.faces.index((1, 2, 3))
        assert generated_sub(SIMPLEX2, [tri]).included == SIMPLEX2.full_mask
        assert generated_sub(K3, range(K3.num_faces)) == full_sub(K3)

    def test_masks_must_be_down_closed(self):
        tri = SIMPLEX2.faces.index((1, 2, 3))
        with pytest.raises(NotDownClosed):
            SubComplexMask(SIMPLEX2, 1 << tri)

    def test_delete_faces(self):
        assert delete_faces(K3, []) == K3
        assert is_isomorphic(delete_faces(K3, [3]), P3)
        assert delete_faces(K3, [3, 4, 5]) == isolated(3)
        with pytest.raises(DimensionTooHigh):
            delete_faces(SIMPLEX2, [])
        with pytest.raises(NotAnEdge):
            delete_faces(K3, [0])


class TestFormats:
    def test_text_round_trip_example(self):
        text = "n 3\nface 4 : 1 2\nface 5 : 1 2 3\nrel 4 < 5\n"
        C = parse_text(text)
        assert to_text(C) == text

    def test_bad_text(self):
        from multicomplex.errors import ParseError
        for bad in ("face 3 : 1 2", "n 2\nface 3 : 1", "n 2\nrel 3 < 4", "n x", "n 2\nwhat"):
            with pytest.raises(ParseError):
                parse_text(bad)


@given(complexes())
def test_serialisation_round_trip(C):
    assert parse_text(to_text(C)) == C
    assert parse_json(to_json(C)) == C


@given(complexes(max_n=3, max_faces=3), complexes(max_n=3, max_faces=3), complexes(max_n=2, max_faces=2))
def test_union_associative_commutative(A, B, C):
    key = canonical_form
    assert key(disjoint_union(A, B)) == key(disjoint_union(B, A))
    assert key(disjoint_union(disjoint_union(A, B), C)) == key(disjoint_union(A, disjoint_union(B, C)))


@given(complexes(), st.data())
def test_restriction_composes(C, data):
    Y = data.draw(st.integers(0, (1 << C.n) - 1))
    X = data.draw(st.integers(0, (1 << C.n) - 1)) & Y
    R = restrict_mask(C, Y)
    # X as a mask over the renumbered vertices of R
    inner = sum(1 << i for i, v in enumerate(b for b in range(C.n) if Y >> b & 1) if X >> v & 1)
    assert restrict_mask(R, inner) == restrict_mask(C, X)


@given(complexes(max_n=3, max_faces=3), complexes(max_n=3, max_faces=3), st.data())
def test_spanning_sub_splits_over_union(C1, C2, data):
    from multicomplex.poset import down_closed_masks
    C = disjoint_union(C1, C2)
    D = data.draw(st.sampled_from(down_closed_masks(C)))
    sub = spanning_complex(C, D)
    X1 = (1 << C1.n) - 1
    parts = disjoint_union(restrict_mask(sub, X1), restrict_mask(sub, ((1 << C.n) - 1) ^ X1))
    assert parts == sub
    assert restrict_mask(sub, X1) == spanning_complex(C1, D & C1.full_mask)


@given(complexes())
def test_components_reassemble(C):
    acc = EMPTY
    for _, part in connected_components(C):
        acc = disjoint_union(acc, part)
    assert is_isomorphic(acc, C)
    assert len(connected_components(C)) == component_count(C)


@given(complexes(), st.data())
def test_sub_dimension_bounded(C, data):
    from multicomplex.poset import down_closed_masks
    D = data.draw(st.sampled_from(down_closed_masks(C)))
    assert dimension(spanning_complex(C, D)) <= dimension(C)


@given(complexes(), st.data())
def test_relabel_round_trip(C, data):
    perm = data.draw(st.permutations(range(1, C.n + 1)))
    inverse = [0] * C.n
    for i, p in enumerate(perm):
        inverse[p - 1] = i + 1
    assert relabel(relabel(C, perm), inverse) == C
