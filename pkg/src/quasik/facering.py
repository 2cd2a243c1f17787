"""The K-theoretic face ring of (Q, Lambda) and its fixed-point realization.

The face ring is the Laurent polynomial ring on one generator y_i per
facet, modulo the products prod(1 - y_i) over minimal non-faces.  The map
phi sends y_i to the restriction tuple r_i whose entry at a vertex v is
the monomial of the dual-basis character of facet i at v (and 1 when the
vertex is off the facet).  phi is injective modulo the non-face products,
so ring identities are always verified through it.

interpolate() inverts phi constructively: walking the vertices in height
order, it rewrites the current entry through the dual basis at that vertex
and subtracts, checking at every step that all earlier entries stay zero.

ordinary_rank() computes the underlying Z-module of the ordinary quotient
(kill the lattice relations by eliminating one vertex's facet variables,
shift y = 1 + x, truncate above a total degree, and read rank and torsion
off a Smith normal form), raising the degree until the answer stabilizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .gkm import FixedPointTuple, GkmGraph, in_w
from .lattice import IntMat, dot, snf_diagonal
from .laurent import (
    DimensionMismatch,
    LaurentPoly,
    char_profile,
    face_profile,
    substitute_monomial_map,
)
from .polytope import fmt_facets


class NotInW(ValueError):
    """Interpolation input fails face-agreement membership."""

    def __init__(self, report):
        super().__init__("tuple is not in the restriction subring: "
                         + (report.witness.detail if report.witness else ""))
        self.report = report


class ResidualNonzero(RuntimeError):
    """An interpolation residual failed to vanish (invalid vertex order)."""

    def __init__(self, step, entry):
        super().__init__(f"residual entry at order position {entry + 1} "
                         f"nonzero after step {step + 1}")
        self.step = step
        self.entry = entry


class CertificateFailure(ValueError):
    def __init__(self, message, position, entry=None):
        super().__init__(message)
        self.position = position
        self.entry = entry


class TruncationUnstable(RuntimeError):
    """Rank/torsion did not stabilize below the truncation-degree cap."""


# -- the two substitution directions ---------------------------------------

def _phi_matrices(g: GkmGraph):
    mats = getattr(g, "_phi_matrices", None)
    if mats is None:
        zero = (0,) * g.n
        mats = []
        for v in range(g.m):
            cols = [g.mu[v].get(i, zero) for i in range(1, g.d + 1)]
            mats.append(g._extend(IntMat.from_cols(cols, rows=g.n)))
        g._phi_matrices = mats
    return mats


def _step_matrices(g: GkmGraph):
    mats = getattr(g, "_step_matrices", None)
    if mats is None:
        zero = (0,) * g.n
        mats = []
        for v in range(g.m):
            fs = g.polytope.vertices[v]
            rows = [g.lam_row(i) if i in fs else zero for i in range(1, g.d + 1)]
            mats.append(g._extend(IntMat.from_rows(rows, cols=g.n)))
        g._step_matrices = mats
    return mats


def theta(g: GkmGraph, u) -> LaurentPoly:
    """R-algebra structure map: e^u -> prod_i y_i^{<u, lambda_i>}."""
    if len(u) != g.n:
        raise DimensionMismatch(f"character length {len(u)} != {g.n}")
    exps = [dot(tuple(u), g.lam_row(i)) for i in range(1, g.d + 1)]
    if g.bott:
        exps.append(0)
    return LaurentPoly.monomial(g.face_profile, exps)


def r_vector(g: GkmGraph, i: int) -> FixedPointTuple:
    """Fixed-point restriction tuple of the facet-i generator."""
    one = LaurentPoly.one(g.char_profile)
    entries = []
    for v in range(g.m):
        mu = g.mu[v].get(i)
        entries.append(LaurentPoly.char_monomial(g.char_profile, mu) if mu else one)
    return FixedPointTuple(g.char_profile, entries)


def constant_tuple(g: GkmGraph, value: LaurentPoly) -> FixedPointTuple:
    """Diagonal embedding of a character-profile element."""
    return FixedPointTuple.constant(g.char_profile, g.m, value)


def phi(g: GkmGraph, P: LaurentPoly) -> FixedPointTuple:
    """Evaluate a face-ring element on all fixed points at once."""
    if P.profile != g.face_profile:
        raise DimensionMismatch(f"{P.profile} != {g.face_profile}")
    mats = _phi_matrices(g)
    return FixedPointTuple(g.char_profile, tuple(
        substitute_monomial_map(P, mats[v], g.char_profile) for v in range(g.m)))


# -- interpolation ----------------------------------------------------------

@dataclass(frozen=True)
class InterpolationStep:
    position: int
    vertex: int
    poly: LaurentPoly


@dataclass(frozen=True)
class InterpolationResult:
    poly: LaurentPoly
    steps: tuple[InterpolationStep, ...]
    residual_check: bool


def interpolate(g: GkmGraph, t: FixedPointTuple) -> InterpolationResult:
    """Produce P with phi(P) == t for any tuple in the restriction subring.

    Membership is checked up front; afterwards every step asserts that the
    residual vanishes on all already-processed vertices, so a successful
    return is a certified preimage.
    """
    if g.order is None:
        raise ValueError("interpolation needs a validated vertex order")
    rep = in_w(g, t)
    if not rep.member:
        raise NotInW(rep)
    order = g.order.order
    steps_mats = _step_matrices(g)
    residual = list(t.entries)
    total = LaurentPoly.zero(g.face_profile)
    steps = []
    for pos in range(g.m):
        v = order[pos]
        p = substitute_monomial_map(residual[v], steps_mats[v], g.face_profile)
        if not p.is_zero:
            img = phi(g, p)
            for j in range(g.m):
                residual[j] = residual[j] - img[j]
            total = total + p
        steps.append(InterpolationStep(pos, v, p))
        for s in range(pos + 1):
            if not residual[order[s]].is_zero:
                raise ResidualNonzero(pos, s)
    return InterpolationResult(total, tuple(steps), residual_check=True)


# -- kernel and basis certificate -------------------------------------------

def _nonface_product(profile, facets) -> LaurentPoly:
    p = LaurentPoly.one(profile)
    for k in sorted(facets):
        p = p * (LaurentPoly.one(profile) - LaurentPoly.variable(profile, k - 1))
    return p


def kernel_generators(g: GkmGraph) -> tuple[LaurentPoly, ...]:
    """One product prod(1 - y_k) per minimal non-face; each maps to zero under phi."""
    return tuple(_nonface_product(g.face_profile, S)
                 for S in g.polytope.minimal_nonfaces())


@dataclass(frozen=True)
class CertificateEntry:
    position: int
    vertex: int
    extra_facets: tuple[int, ...]   # facets of v not on the incoming-edge face
    omega: LaurentPoly
    diagonal: LaurentPoly           # phi(omega) at v itself


def basis_certificate(g: GkmGraph) -> tuple[CertificateEntry, ...]:
    """Triangular free-module basis along the vertex order.

    omega_t is the product of (1 - y_i) over the facets of v_t that do not
    contain the face spanned by the incoming edges.  Verified: |S_t| equals
    the number of incoming edges, phi(omega_t) vanishes at all earlier
    vertices, and its value at v_t is a nonzero product of Euler classes.
    """
    if g.order is None:
        raise ValueError("certificate needs a validated vertex order")
    order = g.order.order
    P = g.polytope
    entries = []
    for pos in range(g.m):
        v = order[pos]
        inc = g.order.incoming[v]
        if inc:
            spanned = frozenset.intersection(
                *(P.vertices[v] & P.vertices[w] for w in inc))
            extra = tuple(sorted(P.vertices[v] - spanned))
        else:
            extra = ()
        if len(extra) != g.order.ind[v]:
            raise CertificateFailure(
                f"vertex {fmt_facets(P.vertices[v])}: {len(extra)} extra facets "
                f"for index {g.order.ind[v]}", pos)
        omega = _nonface_product(g.face_profile, extra)
        img = phi(g, omega)
        for s in range(pos):
            if not img[order[s]].is_zero:
                raise CertificateFailure(
                    f"phi(omega_{pos + 1}) nonzero at earlier position {s + 1}",
                    pos, s)
        expected = LaurentPoly.one(g.char_profile)
        for i in extra:
            expected = expected * (LaurentPoly.one(g.char_profile)
                                   - LaurentPoly.char_monomial(g.char_profile, g.mu[v][i]))
        if img[v] != expected or img[v].is_zero:
            raise CertificateFailure(
                f"diagonal value at position {pos + 1} is not the Euler-class product",
                pos, pos)
        entries.append(CertificateEntry(pos, v, extra, omega, img[v]))
    return tuple(entries)


# -- presentations and the ordinary quotient --------------------------------

@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    j_generators: tuple[LaurentPoly, ...]
    lattice_relations: tuple[LaurentPoly, ...]


def equivariant_presentation(g: GkmGraph) -> Presentation:
    return Presentation(
        generators=tuple(f"y{i}" for i in range(1, g.d + 1)),
        j_generators=kernel_generators(g),
        lattice_relations=())


def ordinary_presentation(g: GkmGraph) -> Presentation:
    """Generators and relations of the ordinary K-ring: the non-face products
    plus one monomial relation theta(e_k) - 1 per standard basis character."""
    basis = [tuple(int(i == k) for i in range(g.n)) for k in range(g.n)]
    return Presentation(
        generators=tuple(f"y{i}" for i in range(1, g.d + 1)),
        j_generators=kernel_generators(g),
        lattice_relations=tuple(theta(g, u) - 1 for u in basis))


def _elimination(g: GkmGraph):
    """Exponent map eliminating the facet variables of the base vertex."""
    data = getattr(g, "_elimination_data", None)
    if data is None:
        v1 = g.order.order[0] if g.order is not None else 0
        block = sorted(g.polytope.vertices[v1])
        survivors = [i for i in range(1, g.d + 1) if i not in g.polytope.vertices[v1]]
        mu = g.mu[v1]
        rows = []
        for si in survivors:
            row = [0] * g.d
            row[si - 1] = 1
            for b in block:
                row[b - 1] = -dot(mu[b], g.lam_row(si))
            rows.append(row)
        data = (v1, block, survivors, IntMat.from_rows(rows, cols=g.d))
        g._elimination_data = data
    return data


def _binomial_series(e: int, cap: int):
    """Coefficients of (1 + x)^e modulo x^{cap+1}, e of either sign."""
    if e >= 0:
        return [comb(e, k) for k in range(min(e, cap) + 1)]
    return [(-1) ** k * comb(-e + k - 1, k) for k in range(cap + 1)]


class OrdinaryKModel:
    """Z-module model of the ordinary quotient at one truncation degree.

    All face variables except the base vertex's block are shifted by
    y = 1 + x; monomials of total degree > degree are declared zero, which
    is exact once the truncation degree passes the nilpotency degree of
    the augmentation classes.
    """

    def __init__(self, g: GkmGraph, degree: int):
        self.graph = g
        self.degree = degree
        v1, block, survivors, E = _elimination(g)
        self.base_vertex = v1
        self.survivors = tuple(survivors)
        self._E = E
        yprof = face_profile(g.d)
        relations = [self._shift(substitute_monomial_map(
            _nonface_product(yprof, S), E, face_profile(len(survivors))))
            for S in g.polytope.minimal_nonfaces()]
        self.monomials = self._monomials(len(survivors), degree)
        index = {mname: k for k, mname in enumerate(self.monomials)}
        rows = []
        for r in relations:
            for beta in self.monomials:
                bsum = sum(beta)
                row = [0] * len(self.monomials)
                hit = False
                for exps, c in r.items():
                    if sum(exps) + bsum <= degree:
                        row[index[tuple(a + b for a, b in zip(exps, beta))]] += c
                        hit = True
                if hit and any(row):
                    rows.append(tuple(row))
        self._rows = rows
        diag = snf_diagonal(IntMat.from_rows(rows, cols=len(self.monomials))) if rows else ()
        self._nonzero_factors = tuple(sorted(d for d in diag if d != 0))
        self.rank = len(self.monomials) - len(self._nonzero_factors)
        self.torsion = tuple(d for d in self._nonzero_factors if d != 1)

    @property
    def torsion_free(self) -> bool:
        return not self.torsion

    @staticmethod
    def _monomials(nvars: int, degree: int):
        out = [(0,) * nvars]
        frontier = out[:]
        for _ in range(degree):
            nxt = []
            seen = set()
            for e in frontier:
                for j in range(nvars):
                    ne = e[:j] + (e[j] + 1,) + e[j + 1:]
                    if ne not in seen:
                        seen.add(ne)
                        nxt.append(ne)
            frontier = sorted(nxt)
            out.extend(frontier)
        return out

    def _shift(self, p: LaurentPoly) -> dict:
        """Substitute y = 1 + x in each survivor variable, truncated."""
        cap = self.degree
        nv = p.profile.nvars
        out = {}
        for exp, c in p.terms.items():
            term = {(0,) * nv: c}
            for j, e in enumerate(exp):
                if e == 0:
                    continue
                series = _binomial_series(e, cap)
                nxt = {}
                for texp, tc in term.items():
                    room = cap - sum(texp)
                    for k in range(min(len(series) - 1, room) + 1):
                        coeff = series[k]
                        if not coeff:
                            continue
                        ne = texp[:j] + (texp[j] + k,) + texp[j + 1:]
                        v = nxt.get(ne, 0) + tc * coeff
                        if v:
                            nxt[ne] = v
                        elif ne in nxt:
                            del nxt[ne]
                term = nxt
            for e, v in term.items():
                w = out.get(e, 0) + v
                if w:
                    out[e] = w
                elif e in out:
                    del out[e]
        return out

    def reduce(self, elem: LaurentPoly):
        """Coefficient vector of a face-ring element over the truncated monomials."""
        if elem.profile.bott:
            if any(e[-1] for e in elem.terms):
                raise DimensionMismatch("ordinary model is Bott-free")
            elem = LaurentPoly(face_profile(self.graph.d),
                               {e[:-1]: c for e, c in elem.terms.items()})
        shifted = self._shift(substitute_monomial_map(
            elem, self._E, face_profile(len(self.survivors))))
        vec = [0] * len(self.monomials)
        index = {mname: k for k, mname in enumerate(self.monomials)}
        for e, c in shifted.items():
            if sum(e) <= self.degree:
                vec[index[e]] = c
        return tuple(vec)

    def is_zero(self, elem: LaurentPoly) -> bool:
        """Does the element vanish in the truncated quotient?"""
        v = self.reduce(elem)
        if not any(v):
            return True
        stacked = self._rows + [v]
        diag = snf_diagonal(IntMat.from_rows(stacked, cols=len(self.monomials)))
        return tuple(sorted(d for d in diag if d != 0)) == self._nonzero_factors


@dataclass(frozen=True)
class OrdinaryRankResult:
    rank: int
    torsion_free: bool
    degree: int
    model: OrdinaryKModel


def ordinary_rank(g: GkmGraph, degree_cap: Optional[int] = None) -> OrdinaryRankResult:
    """Rank and torsion of the ordinary quotient as a Z-module.

    The truncation degree is raised until rank and torsion agree on two
    consecutive degrees; hitting the cap without stabilizing is an error,
    never a silent answer.
    """
    if degree_cap is None:
        degree_cap = g.n * (g.d - g.n) + g.n + 1
    prev = None
    for D in range(1, degree_cap + 1):
        model = OrdinaryKModel(g, D)
        sig = (model.rank, model.torsion)
        if prev is not None and prev == sig:
            return OrdinaryRankResult(model.rank, model.torsion_free, D, model)
        prev = sig
    raise TruncationUnstable(
        f"rank/torsion not stable up to truncation degree {degree_cap}")
