import pytest
from hypothesis import given, settings, strategies as st

from quasik.facering import (
    NotInW,
    basis_certificate,
    constant_tuple,
    equivariant_presentation,
    interpolate,
    kernel_generators,
    ordinary_presentation,
    ordinary_rank,
    phi,
    r_vector,
    theta,
)
from quasik.gkm import FixedPointTuple, build_gkm, in_gamma, in_w
from quasik.laurent import LaurentPoly, substitute_monomial_map
from quasik.polytope import SimplePolytope, vertex_order_from_heights


def make(name):
    if name == "cp1":
        P = SimplePolytope(1, 2, [[1], [2]])
        lam = [[1], [-1]]
        coords, w = [(0,), (1,)], (1,)
    elif name == "cp2":
        P = SimplePolytope(2, 3, [[1, 2], [1, 3], [2, 3]])
        lam = [[1, 0], [0, 1], [-1, -1]]
        coords, w = [(0, 0), (0, 1), (1, 0)], (1, 2)
    elif name.startswith("h"):
        k = int(name[1:])
        P = SimplePolytope(2, 4, [[1, 2], [2, 3], [3, 4], [1, 4]])
        lam = [[1, 0], [0, 1], [-1, k], [0, -1]]
        coords, w = [(0, 0), (1, 0), (1, 1), (0, 1)], (1, 2)
    elif name == "cube":
        verts = [[1 + 3 * x, 2 + 3 * y, 3 + 3 * z]
                 for z in (0, 1) for y in (0, 1) for x in (0, 1)]
        P = SimplePolytope(3, 6, verts)
        lam = [[1, 0, 0], [0, 1, 0], [0, 0, 1],
               [-1, 0, 0], [0, -1, 0], [0, 0, -1]]
        coords = [(x, y, z) for z in (0, 1) for y in (0, 1) for x in (0, 1)]
        w = (1, 2, 4)
    else:
        raise KeyError(name)
    order = vertex_order_from_heights(P, coords, w)
    return build_gkm(P, lam, order=order)


CP1 = make("cp1")
CP2 = make("cp2")
H1 = make("h1")
CUBE = make("cube")


def mono(g, u, c=1):
    return LaurentPoly.char_monomial(g.char_profile, u, c)


def ymono(g, exps, c=1):
    return LaurentPoly.monomial(g.face_profile, exps, c)


def face_polys(g, max_terms=3, bound=2, coeff=3):
    exps = st.tuples(*[st.integers(-bound, bound)] * g.face_profile.nvars)
    return st.dictionaries(exps, st.integers(-coeff, coeff), max_size=max_terms).map(
        lambda d: LaurentPoly(g.face_profile, d))


class TestTheta:
    def test_zero_character(self):
        assert theta(CP2, (0, 0)) == LaurentPoly.one(CP2.face_profile)

    def test_cp2(self):
        assert theta(CP2, (1, 0)) == ymono(CP2, (1, 0, -1))

    def test_cp1(self):
        assert theta(CP1, (1,)) == ymono(CP1, (1, -1))


class TestRVectors:
    def test_cp1(self):
        one = LaurentPoly.one(CP1.char_profile)
        assert r_vector(CP1, 1) == FixedPointTuple(CP1.char_profile, (mono(CP1, (1,)), one))
        assert r_vector(CP1, 2) == FixedPointTuple(CP1.char_profile, (one, mono(CP1, (-1,))))

    def test_off_facet_entries_are_one(self):
        for g in (CP1, CP2, H1, CUBE):
            for i in range(1, g.d + 1):
                r = r_vector(g, i)
                for v in range(g.m):
                    if i not in g.polytope.vertices[v]:
                        assert r[v] == LaurentPoly.one(g.char_profile)
                    else:
                        assert len(r[v].terms) == 1


class TestPhi:
    def test_cp1_generator(self):
        y1 = LaurentPoly.variable(CP1.face_profile, 0)
        assert phi(CP1, y1) == r_vector(CP1, 1)

    def test_nonface_product_vanishes(self):
        p = kernel_generators(CP1)[0]
        assert phi(CP1, p).is_zero

    def test_theta_goes_diagonal(self):
        for g in (CP1, CP2, H1, CUBE):
            u = tuple(range(1, g.n + 1))
            assert phi(g, theta(g, u)) == constant_tuple(g, mono(g, u))

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_ring_homomorphism(self, data):
        g = CP2
        f = data.draw(face_polys(g))
        h = data.draw(face_polys(g))
        assert phi(g, f * h) == phi(g, f) * phi(g, h)
        assert phi(g, f + h) == phi(g, f) + phi(g, h)

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_image_in_gamma(self, data):
        g = H1
        f = data.draw(face_polys(g))
        img = phi(g, f)
        assert in_gamma(g, img).member
        assert in_w(g, img).member


class TestInterpolate:
    def test_cp1_generator(self):
        t = FixedPointTuple(CP1.char_profile,
                            (mono(CP1, (1,)), LaurentPoly.one(CP1.char_profile)))
        res = interpolate(CP1, t)
        assert res.poly == LaurentPoly.variable(CP1.face_profile, 0)
        assert res.residual_check

    def test_constant_one(self):
        for g in (CP1, CP2, H1):
            res = interpolate(g, constant_tuple(g, LaurentPoly.one(g.char_profile)))
            assert res.poly == LaurentPoly.one(g.face_profile)

    def test_not_in_w(self):
        one = LaurentPoly.one(CP1.char_profile)
        t = FixedPointTuple(CP1.char_profile, (one, one + mono(CP1, (1,))))
        with pytest.raises(NotInW):
            interpolate(CP1, t)

    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_roundtrip(self, data):
        for g in (CP2, H1):
            P = data.draw(face_polys(g))
            img = phi(g, P)
            res = interpolate(g, img)
            assert phi(g, res.poly) == img
            # the defect P - P' is a kernel element
            assert phi(g, P - res.poly).is_zero
            for step in res.steps:
                used = g.polytope.vertices[step.vertex]
                for exps in step.poly.terms:
                    assert all(exps[i] == 0 for i in range(g.d) if i + 1 not in used)


class TestKernel:
    def test_counts(self):
        assert len(kernel_generators(CP1)) == 1
        assert len(kernel_generators(CP2)) == 1
        assert len(kernel_generators(H1)) == 2
        assert len(kernel_generators(CUBE)) == 3

    def test_all_phi_zero(self):
        for g in (CP1, CP2, H1, CUBE):
            for gen in kernel_generators(g):
                assert phi(g, gen).is_zero


class TestCertificate:
    def test_sizes_match_indices(self):
        for g in (CP1, CP2, H1, CUBE):
            entries = basis_certificate(g)
            assert len(entries) == g.m
            for e in entries:
                assert len(e.extra_facets) == g.order.ind[e.vertex]
                assert not e.diagonal.is_zero

    def test_cp2_pattern(self):
        sizes = [len(e.extra_facets) for e in basis_certificate(CP2)]
        assert sizes == [0, 1, 2]

    def test_square_pattern(self):
        sizes = [len(e.extra_facets) for e in basis_certificate(H1)]
        assert sizes == [0, 1, 1, 2]

    def test_first_entry_is_one(self):
        for g in (CP1, CP2, H1, CUBE):
            e0 = basis_certificate(g)[0]
            assert e0.omega == LaurentPoly.one(g.face_profile)

    def test_strict_triangularity(self):
        for g in (CP1, CP2, H1, CUBE):
            order = g.order.order
            for e in basis_certificate(g):
                img = phi(g, e.omega)
                for s in range(e.position):
                    assert img[order[s]].is_zero


class TestPresentations:
    def test_cp1_ordinary(self):
        pres = ordinary_presentation(CP1)
        assert pres.generators == ("y1", "y2")
        assert [p.text() for p in pres.j_generators] == ["1 - y2 - y1 + y1*y2"]
        assert [p.text() for p in pres.lattice_relations] == ["-1 + y1*y2^-1"]

    def test_equivariant_has_no_lattice_relations(self):
        assert equivariant_presentation(CP2).lattice_relations == ()

    def test_lattice_relations_die_under_elimination(self):
        from quasik.facering import _elimination
        from quasik.laurent import face_profile
        for g in (CP1, CP2, H1, CUBE):
            _, _, survivors, E = _elimination(g)
            for rel in ordinary_presentation(g).lattice_relations:
                img = substitute_monomial_map(rel, E, face_profile(len(survivors)))
                assert img.is_zero


class TestOrdinaryRank:
    def test_ranks(self):
        for g, expect in ((CP1, 2), (CP2, 3), (H1, 4), (CUBE, 8)):
            res = ordinary_rank(g)
            assert res.rank == expect == g.m
            assert res.torsion_free

    def test_hirzebruch_all_k(self):
        for k in (0, 1, 2, 3):
            g = make(f"h{k}")
            res = ordinary_rank(g)
            assert (res.rank, res.torsion_free) == (4, True)

    def test_truncation_model_cross_check(self):
        # the ordinary ring of projective space is Z[y]/(1-y)^{n+1}
        for g in (CP1, CP2):
            res = ordinary_rank(g)
            surv = res.model.survivors[0]
            one_minus = (LaurentPoly.one(g.face_profile)
                         - LaurentPoly.variable(g.face_profile, surv - 1))
            assert not res.model.is_zero(one_minus ** g.n)
            assert res.model.is_zero(one_minus ** (g.n + 1))

    def test_nonface_products_vanish_in_model(self):
        res = ordinary_rank(H1)
        for gen in kernel_generators(H1):
            assert res.model.is_zero(gen)


class TestBottVariable:
    def test_full_pipeline_with_bott(self):
        P = SimplePolytope(2, 3, [[1, 2], [1, 3], [2, 3]])
        order = vertex_order_from_heights(P, [(0, 0), (0, 1), (1, 0)], (1, 2))
        g = build_gkm(P, [[1, 0], [0, 1], [-1, -1]], order=order, bott=True)
        z = LaurentPoly.variable(g.face_profile, g.d)
        y1 = LaurentPoly.variable(g.face_profile, 0)
        elem = z * y1 - 2 * z ** -1 + theta(g, (1, -1))
        img = phi(g, elem)
        assert in_gamma(g, img).member and in_w(g, img).member
        res = interpolate(g, img)
        assert phi(g, res.poly) == img
        rank = ordinary_rank(g)
        assert (rank.rank, rank.torsion_free) == (3, True)
        for gen in kernel_generators(g):
            assert phi(g, gen).is_zero
        basis_certificate(g)
