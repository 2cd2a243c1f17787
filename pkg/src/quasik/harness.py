"""Seeded randomized invariant suites, shared by the CLI and the test suite.

Everything is driven by string-seeded random.Random instances, so a run is
reproducible from (input, seed, cases) alone.  Members of the restriction
subring are built as combinations of r-vectors with diagonal coefficients
coming from the monomial structure map; non-members perturb a single entry
by a monomial, which can never stay divisible on the edges at that vertex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .facering import (
    basis_certificate,
    constant_tuple,
    interpolate,
    kernel_generators,
    phi,
    r_vector,
    theta,
)
from .gkm import GkmGraph, build_gkm, euler_coprimality_check, in_gamma, in_w
from .laurent import LaurentPoly
from .polytope import InvalidOrder, NonGenericHeight, vertex_order_from_heights


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        note = f" ({self.detail})" if self.detail else ""
        return f"{self.name}: {self.cases} cases {status}{note}"


def _rng(seed: int, label: str) -> random.Random:
    return random.Random(f"{seed}:{label}")


def random_character(rng, n, bound=2):
    return tuple(rng.randint(-bound, bound) for _ in range(n))


def random_face_element(rng, g: GkmGraph, max_terms=3, bound=2, coeff=3) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(-bound, bound) for _ in range(g.face_profile.nvars))
        c = rng.choice([x for x in range(-coeff, coeff + 1) if x])
        terms[exps] = terms.get(exps, 0) + c
    return LaurentPoly(g.face_profile, terms)


def random_member_tuple(rng, g: GkmGraph, max_terms=3):
    """Combination of r-vector products with diagonal monomial coefficients."""
    total = None
    for _ in range(rng.randint(1, max_terms)):
        u = random_character(rng, g.n)
        eps = rng.choice([1, -1, 2, -2])
        part = constant_tuple(g, LaurentPoly.char_monomial(g.char_profile, u, eps))
        for i in range(1, g.d + 1):
            a = rng.randint(-1, 2)
            if a:
                part = part * r_vector(g, i) ** a
        total = part if total is None else total + part
    return total


def perturb_one_entry(rng, g: GkmGraph, t):
    """Add a monomial to one entry; always leaves the restriction subring."""
    v = rng.randrange(g.m)
    u = random_character(rng, g.n)
    c = rng.choice([1, -1, 2, 3])
    return t.replace(v, t[v] + LaurentPoly.char_monomial(g.char_profile, u, c))


def suite_gkm_structure(g: GkmGraph) -> SuiteResult:
    """Exhaustive: edge characters primitive, orthogonal, pairwise independent."""
    name = "gkm-structure"
    from .lattice import vec_gcd
    for e in g.edges:
        if vec_gcd(e.character) != 1 or not any(e.character):
            return SuiteResult(name, len(g.edges), False,
                               f"edge character {e.character} not primitive")
        for i in e.facets:
            if sum(a * b for a, b in zip(e.character, g.lam_row(i))) != 0:
                return SuiteResult(name, len(g.edges), False,
                                   f"character {e.character} not orthogonal to facet {i}")
    rep = euler_coprimality_check(g)
    if not rep.ok:
        return SuiteResult(name, len(g.edges), False, rep.failures[0])
    return SuiteResult(name, len(g.edges), True, "")


def suite_gamma_w_agreement(g: GkmGraph, seed: int, cases: int) -> SuiteResult:
    """in_gamma and in_w must agree on members and perturbed non-members."""
    name = "gamma-w-agreement"
    rng = _rng(seed, "gamma-w")
    for k in range(cases):
        t = random_member_tuple(rng, g)
        expect_member = k % 2 == 0
        if not expect_member:
            t = perturb_one_entry(rng, g, t)
        a = in_gamma(g, t)
        b = in_w(g, t)
        if a.member != b.member:
            return SuiteResult(name, cases, False,
                               f"case {k}: in_gamma={a.member} in_w={b.member}")
        if a.member != expect_member:
            return SuiteResult(name, cases, False,
                               f"case {k}: expected member={expect_member}")
    return SuiteResult(name, cases, True, "")


def suite_phi_homomorphism(g: GkmGraph, seed: int, cases: int,
                           theta_cases: int = 50) -> SuiteResult:
    """phi is a ring map, its image lies in the edge subring, theta goes diagonal."""
    name = "phi-homomorphism"
    rng = _rng(seed, "phi")
    elements = [random_face_element(rng, g) for _ in range(cases)]
    for k in range(0, cases - 1, 2):
        p, q = elements[k], elements[k + 1]
        if phi(g, p * q) != phi(g, p) * phi(g, q):
            return SuiteResult(name, cases, False, f"case {k}: phi not multiplicative")
        if phi(g, p + q) != phi(g, p) + phi(g, q):
            return SuiteResult(name, cases, False, f"case {k}: phi not additive")
    for k, p in enumerate(elements):
        if not in_gamma(g, phi(g, p)).member:
            return SuiteResult(name, cases, False, f"case {k}: image not in the edge subring")
    for k in range(theta_cases):
        u = random_character(rng, g.n)
        expected = constant_tuple(g, LaurentPoly.char_monomial(g.char_profile, u))
        if phi(g, theta(g, u)) != expected:
            return SuiteResult(name, cases, False, f"theta case {k}: not diagonal at {u}")
    return SuiteResult(name, cases, True, "")


def suite_interpolation(g: GkmGraph, seed: int, cases: int) -> SuiteResult:
    """Round trip: interpolate(phi(P)) reproduces phi(P) exactly."""
    name = "interpolation-roundtrip"
    if g.order is None:
        return SuiteResult(name, 0, False, "no valid vertex order available")
    rng = _rng(seed, "interp")
    for k in range(cases):
        p = random_face_element(rng, g)
        img = phi(g, p)
        try:
            res = interpolate(g, img)
        except Exception as exc:
            return SuiteResult(name, cases, False, f"case {k}: {exc}")
        if phi(g, res.poly) != img:
            return SuiteResult(name, cases, False, f"case {k}: round trip differs")
    return SuiteResult(name, cases, True, "")


def suite_kernel(g: GkmGraph) -> SuiteResult:
    """Exhaustive: every minimal-non-face product maps to the zero tuple."""
    name = "kernel-generators"
    gens = kernel_generators(g)
    for p in gens:
        if not phi(g, p).is_zero:
            return SuiteResult(name, len(gens), False, f"{p.text()} not in the kernel")
    return SuiteResult(name, len(gens), True, "")


def suite_certificate(g: GkmGraph, seed: int, random_orders: int = 3,
                      coords=None) -> SuiteResult:
    """Triangular basis certificate for the document order and random height orders."""
    name = "basis-certificate"
    if g.order is None:
        return SuiteResult(name, 0, False, "no valid vertex order available")
    tried = 0
    try:
        basis_certificate(g)
        tried += 1
    except Exception as exc:
        return SuiteResult(name, tried + 1, False, str(exc))
    if coords is not None:
        rng = _rng(seed, "cert-orders")
        made = 0
        attempts = 0
        while made < random_orders and attempts < 20 * random_orders:
            attempts += 1
            w = tuple(rng.randint(-9, 9) for _ in range(len(coords[0])))
            try:
                order = vertex_order_from_heights(g.polytope, coords, w)
            except (NonGenericHeight, InvalidOrder):
                continue
            made += 1
            alt = build_gkm(g.polytope, g.lam, order=order, bott=g.bott)
            try:
                basis_certificate(alt)
                tried += 1
            except Exception as exc:
                return SuiteResult(name, tried + 1, False,
                                   f"height vector {w}: {exc}")
    return SuiteResult(name, tried, True, "")


def run_all(g: GkmGraph, seed: int, cases: int, coords=None) -> list[SuiteResult]:
    return [
        suite_gkm_structure(g),
        suite_gamma_w_agreement(g, seed, cases),
        suite_phi_homomorphism(g, seed, cases, theta_cases=cases // 4),
        suite_interpolation(g, seed, cases),
        suite_kernel(g),
        suite_certificate(g, seed, coords=coords),
    ]
