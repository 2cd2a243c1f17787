"""Combinatorial model of a simple polytope via vertex-facet incidence.

A polytope of dimension n with d facets is given by its m vertices, each
recorded as the set of exactly n facets containing it.  Facet indices are
1-based everywhere (input, output, witness messages); vertices are 0-based
positions into the input list.

Only incidence combinatorics is modelled.  Geometric realizability is not
decided: validation checks the necessary local conditions (simplicity,
edge counts, connectivity) and trusts the input beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .lattice import IntMat, is_primitive

MAX_FACETS = 24


class PolytopeTooLarge(ValueError):
    """Facet count exceeds the supported enumeration bound."""


class NotAFace(ValueError):
    """The requested facet set has empty intersection."""


class NonGenericHeight(ValueError):
    """The height function ties on an edge."""


class InvalidOrder(ValueError):
    """A vertex order without the unique-minimal-vertex property."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...]

    @staticmethod
    def from_failures(failures) -> "ValidationReport":
        failures = tuple(failures)
        return ValidationReport(not failures, failures)


@dataclass(frozen=True)
class Face:
    """A nonempty face: its full (saturated) facet set and its vertices."""

    facets: frozenset[int]
    vertices: tuple[int, ...]

    @property
    def is_whole(self) -> bool:
        return not self.facets

    def label(self) -> str:
        if self.is_whole:
            return "the whole polytope"
        return "face " + fmt_facets(self.facets)


def fmt_facets(s) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


@dataclass(frozen=True)
class VertexOrder:
    """A validated total vertex order with per-vertex edge orientation data."""

    order: tuple[int, ...]      # vertex ids, source first
    position: tuple[int, ...]   # position[v] = rank of vertex v
    ind: tuple[int, ...]        # ind[v] = number of neighbours earlier in the order
    incoming: tuple[tuple[int, ...], ...]  # incoming[v] = earlier neighbours of v
    outgoing: tuple[tuple[int, ...], ...]  # outgoing[v] = later neighbours of v


class SimplePolytope:
    """Simple n-polytope given by the facet sets of its vertices."""

    def __init__(self, dim: int, facet_count: int, vertex_facets: Sequence[Sequence[int]]):
        self.dim = int(dim)
        self.facet_count = int(facet_count)
        self.vertices = tuple(frozenset(int(i) for i in fs) for fs in vertex_facets)
        self._edges = None
        self._adjacency = None
        self._nonfaces = None
        self._faces = None

    @property
    def m(self) -> int:
        return len(self.vertices)

    def facets_of(self, v: int) -> frozenset:
        return self.vertices[v]

    def edges(self):
        """All edges: (v, w, shared facet set) with v < w sharing n-1 facets."""
        if self._edges is None:
            out = []
            for v, w in combinations(range(self.m), 2):
                shared = self.vertices[v] & self.vertices[w]
                if len(shared) == self.dim - 1:
                    out.append((v, w, shared))
            self._edges = tuple(out)
        return self._edges

    def adjacency(self):
        if self._adjacency is None:
            adj = [set() for _ in range(self.m)]
            for v, w, _ in self.edges():
                adj[v].add(w)
                adj[w].add(v)
            self._adjacency = tuple(frozenset(a) for a in adj)
        return self._adjacency

    def is_face(self, facet_set) -> bool:
        S = frozenset(facet_set)
        return any(S <= fs for fs in self.vertices)

    def face_of(self, facet_set) -> Face:
        """The face cut out by facet_set, with the facet set saturated."""
        S = frozenset(facet_set)
        verts = tuple(v for v, fs in enumerate(self.vertices) if S <= fs)
        if not verts:
            raise NotAFace(f"facets {fmt_facets(S)} have empty intersection")
        sat = frozenset.intersection(*(self.vertices[v] for v in verts))
        return Face(sat, verts)

    def join(self, v: int, w: int) -> Face:
        """The minimal face containing both vertices (the whole polytope if none)."""
        return self.face_of(self.vertices[v] & self.vertices[w])

    def all_faces(self):
        """Every face, enumerated through subsets of vertex facet sets."""
        if self._faces is None:
            seen = {}
            for v in range(self.m):
                fs = sorted(self.vertices[v])
                for k in range(len(fs) + 1):
                    for sub in combinations(fs, k):
                        face = self.face_of(sub)
                        seen.setdefault(face.facets, face)
            self._faces = tuple(sorted(
                seen.values(), key=lambda f: (len(f.facets), sorted(f.facets))))
        return self._faces

    def minimal_nonfaces(self):
        """Inclusion-minimal facet sets with empty intersection.

        Layered search: size-(k+1) candidates are extensions of size-k faces,
        and a candidate all of whose k-subsets are faces is either a face or a
        minimal non-face.
        """
        if self._nonfaces is not None:
            return self._nonfaces
        if self.facet_count > MAX_FACETS:
            raise PolytopeTooLarge(
                f"{self.facet_count} facets exceeds the enumeration bound {MAX_FACETS}")
        nonfaces = []
        faces = {frozenset()}
        k = 0
        while faces:
            candidates = set()
            for S in faces:
                for j in range(1, self.facet_count + 1):
                    if j not in S:
                        candidates.add(S | {j})
            next_faces = set()
            for S in sorted(candidates, key=sorted):
                if k >= 1 and any(S - {j} not in faces for j in S):
                    continue  # contains a smaller non-face
                if self.is_face(S):
                    next_faces.add(S)
                else:
                    nonfaces.append(S)
            faces = next_faces
            k += 1
        self._nonfaces = tuple(sorted(nonfaces, key=sorted))
        return self._nonfaces


def validate_simple(P: SimplePolytope) -> ValidationReport:
    """Check the local combinatorial conditions for a simple polytope boundary."""
    n, d = P.dim, P.facet_count
    fails = []
    if n < 1:
        fails.append(f"dimension {n} < 1")
    if d < 1:
        fails.append(f"facet count {d} < 1")
    if P.m < 1:
        fails.append("no vertices")
    if fails:
        return ValidationReport.from_failures(fails)

    for v, fs in enumerate(P.vertices):
        if any(i < 1 or i > d for i in fs):
            fails.append(f"vertex #{v + 1} {fmt_facets(fs)}: facet index out of range 1..{d}")
        if len(fs) != n:
            fails.append(f"vertex #{v + 1} {fmt_facets(fs)}: {len(fs)} facets, expected {n}")
    seen = {}
    for v, fs in enumerate(P.vertices):
        if fs in seen:
            fails.append(f"vertices #{seen[fs] + 1} and #{v + 1} share the facet set {fmt_facets(fs)}")
        seen[fs] = v
    if fails:
        return ValidationReport.from_failures(fails)

    used = frozenset.union(*P.vertices)
    for i in range(1, d + 1):
        if i not in used:
            fails.append(f"facet {i}: not on any vertex")

    # each (n-1)-subset of facets lies in at most 2 vertices, and each of the
    # n such subsets of a vertex is shared with exactly one other vertex
    subset_count = {}
    for fs in P.vertices:
        for sub in combinations(sorted(fs), n - 1):
            subset_count[sub] = subset_count.get(sub, 0) + 1
    for sub, cnt in sorted(subset_count.items()):
        if cnt > 2:
            fails.append(f"facet subset {fmt_facets(sub)}: contained in {cnt} vertices (max 2)")
    for v, fs in enumerate(P.vertices):
        for sub in combinations(sorted(fs), n - 1):
            if subset_count[sub] != 2:
                fails.append(
                    f"vertex {fmt_facets(fs)}: subset {fmt_facets(sub)} shared with "
                    f"{subset_count[sub] - 1} other vertices (expected 1)")
    if fails:
        return ValidationReport.from_failures(fails)

    # connectivity of the edge graph
    reached = {0}
    frontier = [0]
    adj = P.adjacency()
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                frontier.append(w)
    if len(reached) != P.m:
        missing = min(set(range(P.m)) - reached)
        fails.append(f"edge graph disconnected: vertex #{missing + 1} unreachable from #1")
    return ValidationReport.from_failures(fails)


def validate_characteristic(P: SimplePolytope, lam: Sequence[Sequence[int]]) -> ValidationReport:
    """Primitivity of every row and |det| = 1 at every vertex."""
    n, d = P.dim, P.facet_count
    fails = []
    if len(lam) != d:
        fails.append(f"characteristic matrix has {len(lam)} rows, expected {d}")
        return ValidationReport.from_failures(fails)
    for i, row in enumerate(lam):
        if len(row) != n:
            fails.append(f"row {i + 1}: length {len(row)}, expected {n}")
    if fails:
        return ValidationReport.from_failures(fails)
    for i, row in enumerate(lam):
        if not is_primitive(row):
            fails.append(f"row {i + 1} {tuple(row)}: not primitive")
    for fs in P.vertices:
        V = IntMat.from_rows([lam[i - 1] for i in sorted(fs)])
        det = V.det()
        if abs(det) != 1:
            fails.append(f"vertex {fmt_facets(fs)}: |det| = {abs(det)} (expected 1)")
    return ValidationReport.from_failures(fails)


def _order_data(P: SimplePolytope, order):
    position = [0] * P.m
    for pos, v in enumerate(order):
        position[v] = pos
    adj = P.adjacency()
    incoming = tuple(tuple(sorted(w for w in adj[v] if position[w] < position[v]))
                     for v in range(P.m))
    outgoing = tuple(tuple(sorted(w for w in adj[v] if position[w] > position[v]))
                     for v in range(P.m))
    ind = tuple(len(inc) for inc in incoming)
    return VertexOrder(tuple(order), tuple(position), ind, incoming, outgoing)


def validate_order(P: SimplePolytope, order: Sequence[int]) -> VertexOrder:
    """Accept an explicit vertex order.

    Every face must have a unique locally minimal vertex (no earlier
    neighbour inside the face) and the whole orientation must have a unique
    source and a unique sink.  This is the combinatorial shadow of a generic
    height function; orders that pass it are usable downstream, which is
    checked again by the interpolation residuals.
    """
    order = [int(v) for v in order]
    if sorted(order) != list(range(P.m)):
        raise InvalidOrder(f"not a permutation of 0..{P.m - 1}: {order}")
    vo = _order_data(P, order)
    adj = P.adjacency()
    for face in P.all_faces():
        if len(face.vertices) < 2:
            continue
        members = set(face.vertices)
        minima = [v for v in face.vertices
                  if not any(w in members and vo.position[w] < vo.position[v]
                             for w in adj[v])]
        if len(minima) != 1:
            raise InvalidOrder(
                f"{face.label()} has {len(minima)} locally minimal vertices "
                f"({', '.join(fmt_facets(P.vertices[v]) for v in sorted(minima))})",
                witness=face)
    sinks = [v for v in range(P.m) if vo.ind[v] == P.dim]
    if len(sinks) != 1:
        raise InvalidOrder(f"orientation has {len(sinks)} sinks (expected 1)")
    sources = [v for v in range(P.m) if vo.ind[v] == 0]
    if len(sources) != 1:
        raise InvalidOrder(f"orientation has {len(sources)} sources (expected 1)")
    return vo


def vertex_order_from_heights(P: SimplePolytope,
                              coords: Sequence[Sequence[Fraction]],
                              w: Sequence[Fraction]) -> VertexOrder:
    """Order vertices by the height <coords(v), w>; ties on an edge are rejected."""
    if len(coords) != P.m:
        raise ValueError(f"{len(coords)} coordinate rows for {P.m} vertices")
    w = [Fraction(x) for x in w]
    heights = []
    for row in coords:
        row = [Fraction(x) for x in row]
        if len(row) != len(w):
            raise ValueError("coordinate/height-vector length mismatch")
        heights.append(sum(a * b for a, b in zip(row, w)))
    for v, x, _ in P.edges():
        if heights[v] == heights[x]:
            raise NonGenericHeight(
                f"height ties on the edge {fmt_facets(P.vertices[v])} -- "
                f"{fmt_facets(P.vertices[x])} (value {heights[v]})")
    order = sorted(range(P.m), key=lambda v: (heights[v], v))
    return validate_order(P, order)
