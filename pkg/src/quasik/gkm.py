"""Fixed-point side of the equivariant K-ring of a quasitoric manifold.

Vertices of the polytope are the torus fixed points.  Every edge carries a
primitive character orthogonal to the cocharacters of the n-1 facets
containing it, and every vertex carries the basis dual to its facet
cocharacters.  Elements of the big product ring are FixedPointTuples: one
Laurent polynomial in the character variables per fixed point.

Two membership predicates cut out the image of the K-ring:

* in_gamma -- for every edge, the entry difference is divisible by the
  K-theoretic Euler class 1 - e^{-u} of the edge character u;
* in_w     -- for every vertex pair, the two entries agree after
  restriction to the minimal face containing both vertices.

The two predicates agree; in_w deliberately checks all pairs rather than
reducing to edges so that the agreement stays independent evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .lattice import (
    IntMat,
    block_diag,
    dual_basis,
    primitive_kernel_vector,
    quotient_projection,
    right_kernel_basis,
    solve,
)
from .laurent import (
    LaurentPoly,
    Profile,
    ProfileMismatch,
    char_profile,
    divides_one_minus,
    face_profile,
    substitute_monomial_map,
)
from .polytope import Face, SimplePolytope, ValidationReport, VertexOrder, fmt_facets


@dataclass(frozen=True)
class GkmEdge:
    v: int
    w: int
    facets: frozenset[int]
    character: tuple[int, ...]  # primitive, first nonzero coordinate positive

    def label(self) -> str:
        return "(" + ",".join(str(x) for x in self.character) + ")"


class FixedPointTuple:
    """One Laurent polynomial per fixed point, all in one character profile."""

    __slots__ = ("profile", "entries")

    def __init__(self, profile: Profile, entries: Sequence[LaurentPoly]):
        entries = tuple(entries)
        for a in entries:
            if a.profile != profile:
                raise ProfileMismatch(f"{a.profile} != {profile}")
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("FixedPointTuple is immutable")

    @staticmethod
    def constant(profile: Profile, m: int, value: LaurentPoly) -> "FixedPointTuple":
        return FixedPointTuple(profile, (value,) * m)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, FixedPointTuple):
            return NotImplemented
        return self.profile == other.profile and self.entries == other.entries

    def __hash__(self):
        return hash((self.profile, self.entries))

    def __add__(self, other):
        return FixedPointTuple(self.profile, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return FixedPointTuple(self.profile, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, other):
        if isinstance(other, FixedPointTuple):
            return FixedPointTuple(self.profile, tuple(a * b for a, b in zip(self.entries, other.entries)))
        return FixedPointTuple(self.profile, tuple(a * other for a in self.entries))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return FixedPointTuple(self.profile, tuple(a ** k for a in self.entries))

    def replace(self, i: int, value: LaurentPoly) -> "FixedPointTuple":
        entries = list(self.entries)
        entries[i] = value
        return FixedPointTuple(self.profile, entries)

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for a in self.entries)

    def text(self) -> str:
        return "(" + ", ".join(a.text() for a in self.entries) + ")"

    def json_entries(self):
        return [a.json_terms() for a in self.entries]


@dataclass(frozen=True)
class MembershipWitness:
    kind: str                      # "edge" or "pair"
    v: int
    w: int
    detail: str

    def text(self, P: SimplePolytope) -> str:
        a = fmt_facets(P.vertices[self.v])
        b = fmt_facets(P.vertices[self.w])
        return f"{self.kind} {a} -- {b}: {self.detail}"


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    witness: Optional[MembershipWitness] = None


class GkmGraph:
    """Vertex/edge character data attached to a validated (polytope, lambda) pair."""

    def __init__(self, polytope: SimplePolytope, lam, order: Optional[VertexOrder] = None,
                 bott: bool = False):
        self.polytope = polytope
        self.lam = tuple(tuple(int(x) for x in row) for row in lam)
        self.order = order
        self.bott = bott
        n = polytope.dim
        self.char_profile = char_profile(n, bott)
        self.face_profile = face_profile(polytope.facet_count, bott)
        self.edges = tuple(
            GkmEdge(v, w, fs, self._edge_character(fs))
            for v, w, fs in polytope.edges())
        self.mu = tuple(self._mu_basis(v) for v in range(polytope.m))
        self._projections = {}

    @property
    def n(self) -> int:
        return self.polytope.dim

    @property
    def d(self) -> int:
        return self.polytope.facet_count

    @property
    def m(self) -> int:
        return self.polytope.m

    def lam_row(self, i: int) -> tuple:
        """Cocharacter of facet i (1-based)."""
        return self.lam[i - 1]

    def _edge_character(self, facets) -> tuple:
        B = IntMat.from_cols([self.lam_row(i) for i in sorted(facets)], rows=self.n)
        return primitive_kernel_vector(B)

    def _mu_basis(self, v: int) -> dict:
        facets = sorted(self.polytope.vertices[v])
        V = IntMat.from_rows([self.lam_row(i) for i in facets])
        mus = dual_basis(V)
        return dict(zip(facets, mus))

    # -- restriction machinery -----------------------------------------
    def _extend(self, A: IntMat) -> IntMat:
        return block_diag(A, IntMat.identity(1)) if self.bott else A

    def face_projection(self, facets: frozenset) -> IntMat:
        """Projection of the character lattice killing the face's perp sublattice."""
        facets = frozenset(facets)
        if facets not in self._projections:
            K = IntMat.from_rows([self.lam_row(i) for i in sorted(facets)], cols=self.n)
            perp = right_kernel_basis(K)
            self._projections[facets] = quotient_projection(perp, self.n)
        return self._projections[facets]

    def restrict_to_face(self, a: LaurentPoly, face) -> LaurentPoly:
        """Image of a character-profile element in the face's restriction ring."""
        facets = face.facets if isinstance(face, Face) else frozenset(face)
        P = self.face_projection(facets)
        target = char_profile(P.rows, self.bott)
        return substitute_monomial_map(a, self._extend(P), target)

    def face_map(self, sub_facets: frozenset, super_facets: frozenset) -> IntMat:
        """Matrix of the projection between the restriction rings of nested faces.

        sub_facets must define a face of the face defined by super_facets
        (i.e. contain it as a set); the returned C satisfies C @ P_sub == P_super.
        """
        Psub = self.face_projection(frozenset(sub_facets))
        Psup = self.face_projection(frozenset(super_facets))
        cols = []
        for j in range(Psup.rows):
            col = solve(Psub.T, Psup.row(j))
            if col is None:
                raise ValueError("faces are not nested")
            cols.append(col)
        return IntMat.from_rows(cols, cols=Psub.rows)


def build_gkm(P: SimplePolytope, lam, order: Optional[VertexOrder] = None,
              bott: bool = False) -> GkmGraph:
    """Assemble edge characters and dual bases for validated input."""
    return GkmGraph(P, lam, order=order, bott=bott)


def euler_coprimality_check(g: GkmGraph) -> ValidationReport:
    """At every vertex: incident edge characters nonzero and pairwise independent."""
    fails = []
    incident = [[] for _ in range(g.m)]
    for e in g.edges:
        incident[e.v].append(e)
        incident[e.w].append(e)
    for v in range(g.m):
        chars = [e.character for e in incident[v]]
        name = fmt_facets(g.polytope.vertices[v])
        for u in chars:
            if not any(u):
                fails.append(f"vertex {name}: zero edge character")
        for a in range(len(chars)):
            for b in range(a + 1, len(chars)):
                u, w = chars[a], chars[b]
                if all(u[i] * w[j] == u[j] * w[i]
                       for i in range(g.n) for j in range(i + 1, g.n)) and g.n > 1:
                    fails.append(
                        f"vertex {name}: dependent edge characters {u} and {w}")
    return ValidationReport.from_failures(fails)


def in_gamma(g: GkmGraph, t: FixedPointTuple) -> MembershipReport:
    """Edge-divisibility membership: (1 - e^{-u}) | a_v - a_w on every edge."""
    _check_tuple(g, t)
    for e in g.edges:
        diff = t[e.v] - t[e.w]
        if not divides_one_minus(diff, e.character):
            return MembershipReport(False, MembershipWitness(
                "edge", e.v, e.w,
                f"difference {diff.text()} not divisible by 1 - e^-{e.character}"))
    return MembershipReport(True)


def in_w(g: GkmGraph, t: FixedPointTuple) -> MembershipReport:
    """Face-agreement membership: restrictions agree at the join of every pair."""
    _check_tuple(g, t)
    P = g.polytope
    for v in range(g.m):
        for w in range(v + 1, g.m):
            face = P.join(v, w)
            a = g.restrict_to_face(t[v], face)
            b = g.restrict_to_face(t[w], face)
            if a != b:
                return MembershipReport(False, MembershipWitness(
                    "pair", v, w,
                    f"restrictions to {face.label()} differ: "
                    f"{a.text()} vs {b.text()}"))
    return MembershipReport(True)


def _check_tuple(g: GkmGraph, t: FixedPointTuple):
    if len(t) != g.m:
        raise ValueError(f"tuple has {len(t)} entries for {g.m} fixed points")
    if t.profile != g.char_profile:
        raise ProfileMismatch(f"{t.profile} != {g.char_profile}")


def dot_export(g: GkmGraph) -> str:
    """Undirected DOT graph; vertices are named by height-order position."""
    if g.order is None:
        raise ValueError("DOT export needs a vertex order for the labels")
    pos = g.order.position
    lines = ["graph gkm {"]
    for k in range(g.m):
        lines.append(f"  v{k + 1};")
    for e in sorted(g.edges, key=lambda e: tuple(sorted((pos[e.v], pos[e.w])))):
        a, b = sorted((pos[e.v], pos[e.w]))
        lines.append(f'  v{a + 1} -- v{b + 1} [label="{e.label()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
