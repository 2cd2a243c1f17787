from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from quasik.polytope import (
    InvalidOrder,
    NonGenericHeight,
    NotAFace,
    SimplePolytope,
    validate_characteristic,
    validate_order,
    validate_simple,
    vertex_order_from_heights,
)

TRIANGLE = SimplePolytope(2, 3, [[1, 2], [1, 3], [2, 3]])
SQUARE = SimplePolytope(2, 4, [[1, 2], [2, 3], [3, 4], [1, 4]])
INTERVAL = SimplePolytope(1, 2, [[1], [2]])


def cube():
    verts = []
    for z in (0, 1):
        for y in (0, 1):
            for x in (0, 1):
                verts.append([1 + 3 * x, 2 + 3 * y, 3 + 3 * z])
    return SimplePolytope(3, 6, verts), [
        (x, y, z) for z in (0, 1) for y in (0, 1) for x in (0, 1)]


def simplex3():
    return SimplePolytope(3, 4, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])


class TestValidateSimple:
    def test_triangle(self):
        assert validate_simple(TRIANGLE).ok

    def test_square(self):
        assert validate_simple(SQUARE).ok

    def test_interval(self):
        assert validate_simple(INTERVAL).ok

    def test_cube(self):
        assert validate_simple(cube()[0]).ok

    def test_degenerate_facet(self):
        P = SimplePolytope(2, 4, [[1, 2], [1, 3], [2, 3], [1, 4]])
        rep = validate_simple(P)
        assert not rep.ok
        assert any("{1,4}" in f and "{4}" in f for f in rep.failures)

    def test_duplicate_vertex(self):
        P = SimplePolytope(2, 3, [[1, 2], [1, 2]])
        rep = validate_simple(P)
        assert not rep.ok

    def test_wrong_vertex_size(self):
        P = SimplePolytope(2, 3, [[1], [2, 3], [1, 3]])
        rep = validate_simple(P)
        assert not rep.ok
        assert any("expected 2" in f for f in rep.failures)


class TestFaces:
    def test_is_face(self):
        assert TRIANGLE.is_face({1, 2})
        assert not TRIANGLE.is_face({1, 2, 3})
        assert not SQUARE.is_face({1, 3})

    def test_face_of_raises(self):
        with pytest.raises(NotAFace):
            TRIANGLE.face_of({1, 2, 3})

    def test_edges(self):
        assert len(TRIANGLE.edges()) == 3
        assert len(SQUARE.edges()) == 4
        assert len(cube()[0].edges()) == 12
        shared = dict(((v, w), fs) for v, w, fs in TRIANGLE.edges())
        assert shared[(0, 1)] == frozenset({1})

    def test_every_vertex_has_n_edges(self):
        for P in (TRIANGLE, SQUARE, INTERVAL, cube()[0], simplex3()):
            adj = P.adjacency()
            assert all(len(a) == P.dim for a in adj)

    def test_join(self):
        f = TRIANGLE.join(0, 1)
        assert f.facets == frozenset({1})
        assert f.vertices == (0, 1)
        whole = SQUARE.join(0, 2)
        assert whole.is_whole
        assert whole.vertices == (0, 1, 2, 3)
        C, _ = cube()
        f = C.join(0, 3)  # (0,0,0) and (1,1,0) share the bottom facet 3
        assert f.facets == frozenset({3})

    def test_join_facets_saturated(self):
        for P in (TRIANGLE, SQUARE, cube()[0], simplex3()):
            for v, w, fs in P.edges():
                assert P.join(v, w).facets == fs

    def test_join_is_minimal(self):
        # every face containing both vertices has a smaller facet set
        for P in (TRIANGLE, SQUARE, cube()[0], simplex3()):
            for v in range(P.m):
                for w in range(v, P.m):
                    j = P.join(v, w)
                    for face in P.all_faces():
                        if v in face.vertices and w in face.vertices:
                            assert face.facets <= j.facets


def brute_force_minimal_nonfaces(P):
    facets = range(1, P.facet_count + 1)
    nonfaces = [frozenset(S) for k in range(1, P.facet_count + 1)
                for S in combinations(facets, k) if not P.is_face(S)]
    return sorted((S for S in nonfaces
                   if not any(T < S for T in nonfaces)), key=sorted)


class TestMinimalNonfaces:
    def test_triangle(self):
        assert TRIANGLE.minimal_nonfaces() == (frozenset({1, 2, 3}),)

    def test_square(self):
        assert SQUARE.minimal_nonfaces() == (frozenset({1, 3}), frozenset({2, 4}))

    def test_simplex(self):
        assert simplex3().minimal_nonfaces() == (frozenset({1, 2, 3, 4}),)

    def test_interval(self):
        assert INTERVAL.minimal_nonfaces() == (frozenset({1, 2}),)

    def test_brute_force_agreement(self):
        for P in (TRIANGLE, SQUARE, INTERVAL, cube()[0], simplex3()):
            assert list(P.minimal_nonfaces()) == brute_force_minimal_nonfaces(P)


CP2_LAMBDA = [[1, 0], [0, 1], [-1, -1]]


class TestValidateCharacteristic:
    def test_cp2(self):
        assert validate_characteristic(TRIANGLE, CP2_LAMBDA).ok

    def test_det_two(self):
        rep = validate_characteristic(TRIANGLE, [[1, 0], [0, 1], [-2, -1]])
        assert not rep.ok
        assert any("{2,3}" in f and "2" in f for f in rep.failures)

    def test_not_primitive(self):
        rep = validate_characteristic(TRIANGLE, [[2, 0], [0, 1], [-1, -1]])
        assert not rep.ok
        assert any("not primitive" in f for f in rep.failures)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(-10, 10))
    def test_hirzebruch_any_k(self, k):
        assert validate_characteristic(SQUARE, [[1, 0], [0, 1], [-1, k], [0, -1]]).ok


class TestHeights:
    def test_triangle(self):
        coords = [(0, 0), (1, 0), (0, 1)]
        P = SimplePolytope(2, 3, [[1, 2], [2, 3], [1, 3]])
        vo = vertex_order_from_heights(P, coords, (1, 2))
        assert vo.order == (0, 1, 2)
        assert sorted(vo.ind) == [0, 1, 2]
        assert vo.ind[vo.order[-1]] == 2

    def test_square(self):
        coords = [(0, 0), (1, 0), (1, 1), (0, 1)]
        vo = vertex_order_from_heights(SQUARE, coords, (1, 1))
        assert vo.order[0] == 0 and vo.order[-1] == 2
        assert [vo.ind[v] for v in vo.order] == [0, 1, 1, 2]

    def test_non_generic(self):
        coords = [(0, 0), (1, 0), (1, 1), (0, 1)]
        with pytest.raises(NonGenericHeight):
            vertex_order_from_heights(SQUARE, coords, (1, 0))

    def test_fraction_heights(self):
        coords = [(0, 0), (1, 0), (1, 1), (0, 1)]
        vo = vertex_order_from_heights(SQUARE, coords, (1, Fraction(1, 3)))
        assert vo.order[0] == 0


class TestValidateOrder:
    def test_triangle_all_orders(self):
        import itertools
        for perm in itertools.permutations(range(3)):
            vo = validate_order(TRIANGLE, perm)
            assert sorted(vo.ind) == [0, 1, 2]

    def test_square_bad_order(self):
        with pytest.raises(InvalidOrder) as exc:
            validate_order(SQUARE, [0, 2, 1, 3])
        assert exc.value.witness is not None
        assert exc.value.witness.is_whole

    def test_not_permutation(self):
        with pytest.raises(InvalidOrder):
            validate_order(SQUARE, [0, 0, 1, 2])

    def test_cube_orders(self):
        C, coords = cube()
        vo = vertex_order_from_heights(C, coords, (1, 2, 4))
        assert [vo.ind[v] for v in vo.order] == [0, 1, 1, 2, 1, 2, 2, 3]

    def test_ind_multiset(self):
        # exactly one source (0) and one sink (n) in every validated order
        for P, coords, w in (
            (TRIANGLE, [(0, 0), (1, 0), (0, 1)], (2, 3)),
            (SQUARE, [(0, 0), (1, 0), (1, 1), (0, 1)], (1, 2)),
            (cube()[0], cube()[1], (1, 2, 4)),
        ):
            vo = vertex_order_from_heights(P, coords, w)
            assert vo.ind.count(0) == 1
            assert vo.ind.count(P.dim) == 1
            assert vo.ind[vo.order[0]] == 0
            assert vo.ind[vo.order[-1]] == P.dim
