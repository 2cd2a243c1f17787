"""Sparse multivariate Laurent polynomials over the integers.

A polynomial lives in a fixed variable profile: either character
coordinates t1..tn or face-ring generators y1..yd, optionally extended by
an invertible Bott variable z appended as the last coordinate.  Terms are
stored as a map from exponent tuples (negative entries allowed) to nonzero
integer coefficients; the zero polynomial is the empty map.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lattice import (
    IntMat,
    NotPrimitive,
    block_diag,
    complete_to_unimodular,
    inverse_unimodular,
    vec_gcd,
)


class ProfileMismatch(ValueError):
    """Operands live in different variable profiles."""


class DimensionMismatch(ValueError):
    """Matrix or vector size does not match the variable count."""


class NotDivisible(ArithmeticError):
    """Exact quotient requested for a non-divisible polynomial."""


class ZeroCharacter(ValueError):
    """A nonzero character was required."""


CHAR = "char"
FACE = "face"


@dataclass(frozen=True)
class Profile:
    """Variable profile: kind ('char' -> t's, 'face' -> y's), count, optional z."""

    kind: str
    count: int
    bott: bool = False

    @property
    def nvars(self) -> int:
        return self.count + (1 if self.bott else 0)

    def varname(self, i: int) -> str:
        if self.bott and i == self.count:
            return "z"
        stem = "t" if self.kind == CHAR else "y"
        return f"{stem}{i + 1}"


def char_profile(n: int, bott: bool = False) -> Profile:
    return Profile(CHAR, n, bott)


def face_profile(d: int, bott: bool = False) -> Profile:
    return Profile(FACE, d, bott)


class LaurentPoly:
    """Immutable sparse Laurent polynomial in a fixed profile."""

    __slots__ = ("profile", "terms")

    def __init__(self, profile: Profile, terms):
        clean = {}
        nv = profile.nvars
        for exp, c in dict(terms).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nv:
                raise DimensionMismatch(
                    f"exponent vector {exp} has length {len(exp)}, profile needs {nv}")
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if clean[exp] == 0:
                    del clean[exp]
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(profile: Profile) -> "LaurentPoly":
        return LaurentPoly(profile, {})

    @staticmethod
    def constant(profile: Profile, c: int) -> "LaurentPoly":
        return LaurentPoly(profile, {(0,) * profile.nvars: c})

    @staticmethod
    def one(profile: Profile) -> "LaurentPoly":
        return LaurentPoly.constant(profile, 1)

    @staticmethod
    def monomial(profile: Profile, exps, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly(profile, {tuple(exps): coeff})

    @staticmethod
    def variable(profile: Profile, index: int) -> "LaurentPoly":
        exps = [0] * profile.nvars
        exps[index] = 1
        return LaurentPoly(profile, {tuple(exps): 1})

    @staticmethod
    def char_monomial(profile: Profile, u, coeff: int = 1) -> "LaurentPoly":
        """e^u for a character u of length profile.count (z exponent 0)."""
        if len(u) != profile.count:
            raise DimensionMismatch(f"character length {len(u)} != {profile.count}")
        exps = tuple(u) + ((0,) if profile.bott else ())
        return LaurentPoly(profile, {exps: coeff})

    # -- basic structure ----------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "LaurentPoly"):
        if self.profile != other.profile:
            raise ProfileMismatch(f"{self.profile} vs {other.profile}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.profile == other.profile and self.terms == other.terms

    def __hash__(self):
        return hash((self.profile, frozenset(self.terms.items())))

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.profile, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return _raw(self.profile, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.profile, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.profile, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.profile)
            return _raw(self.profile, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return _raw(self.profile, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self._unit_inverse() ** (-k)
        result = LaurentPoly.one(self.profile)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _unit_inverse(self):
        if len(self.terms) != 1:
            raise NotDivisible("only unit monomials are invertible")
        (e, c), = self.terms.items()
        if c not in (1, -1):
            raise NotDivisible(f"coefficient {c} is not a unit over Z")
        return _raw(self.profile, {tuple(-x for x in e): c})

    # -- rendering ----------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items())

    def text(self) -> str:
        if not self.terms:
            return "0"
        prof = self.profile
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                prof.varname(i) + (f"^{e}" if e != 1 else "")
                for i, e in enumerate(exp) if e != 0)
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def json_terms(self):
        return [{"coeff": c, "exps": list(e)} for e, c in self.sorted_terms()]

    def __repr__(self):
        return f"LaurentPoly({self.text()!r})"


def _raw(profile: Profile, terms: dict) -> LaurentPoly:
    """Build from an already-normalized term dict (no re-validation)."""
    p = object.__new__(LaurentPoly)
    object.__setattr__(p, "profile", profile)
    object.__setattr__(p, "terms", terms)
    return p


def eval_all_ones(f: LaurentPoly) -> int:
    """Augmentation: the sum of all coefficients."""
    return sum(f.terms.values())


def substitute_monomial_map(f: LaurentPoly, A: IntMat, profile: Profile = None) -> LaurentPoly:
    """Apply the monomial substitution e^u -> e^{A u} to every term of f."""
    if A.cols != f.profile.nvars:
        raise DimensionMismatch(
            f"matrix has {A.cols} columns, polynomial has {f.profile.nvars} variables")
    if profile is None:
        profile = char_profile(A.rows)
    if profile.nvars != A.rows:
        raise DimensionMismatch(
            f"matrix has {A.rows} rows, target profile needs {profile.nvars}")
    rows = A.data
    out = {}
    for exp, c in f.terms.items():
        ne = tuple(sum(r[j] * exp[j] for j in range(A.cols)) for r in rows)
        v = out.get(ne, 0) + c
        if v:
            out[ne] = v
        elif ne in out:
            del out[ne]
    return _raw(profile, out)


@lru_cache(maxsize=None)
def _division_transform(u: tuple) -> tuple:
    """(W, W_inv) with W unimodular, W u = e_1; used to make e^u a coordinate."""
    C = complete_to_unimodular(u)
    W = inverse_unimodular(C.T)
    return W, C.T


def _checked_transform(f: LaurentPoly, u) -> tuple:
    prof = f.profile
    if prof.kind != CHAR:
        raise ProfileMismatch("binomial divisibility lives in the character profile")
    u = tuple(int(x) for x in u)
    if len(u) != prof.count:
        raise DimensionMismatch(f"character length {len(u)} != {prof.count}")
    if not any(u):
        raise ZeroCharacter("character must be nonzero")
    g = vec_gcd(u)
    if g != 1:
        raise NotPrimitive(f"gcd of {u} is {g}")
    W, Winv = _division_transform(u)
    if prof.bott:
        one = IntMat.identity(1)
        W, Winv = block_diag(W, one), block_diag(Winv, one)
    return u, W, Winv


def one_minus_char(profile: Profile, u) -> LaurentPoly:
    """The binomial 1 - e^u."""
    return LaurentPoly.one(profile) - LaurentPoly.char_monomial(profile, u)


def divides_one_minus(f: LaurentPoly, u) -> bool:
    """True iff (1 - e^{-u}) divides f, for a primitive nonzero character u.

    After a unimodular change of coordinates sending e^u to the first
    variable, divisibility is equivalent to vanishing under t1 = 1.
    """
    _, W, _ = _checked_transform(f, u)
    if f.is_zero:
        return True
    g = substitute_monomial_map(f, W, f.profile)
    acc = {}
    for exp, c in g.terms.items():
        key = (0,) + exp[1:]
        acc[key] = acc.get(key, 0) + c
    return all(v == 0 for v in acc.values())


def quotient_one_minus(f: LaurentPoly, u) -> LaurentPoly:
    """The exact quotient q with f == (1 - e^{-u}) * q; raises NotDivisible."""
    uu, W, Winv = _checked_transform(f, u)
    prof = f.profile
    if f.is_zero:
        return f
    g = substitute_monomial_map(f, W, prof)
    acc = {}
    for exp, c in g.terms.items():
        key = exp[1:]
        acc[key] = acc.get(key, 0) + c
    if any(acc.values()):
        raise NotDivisible(f"{f.text()} is not divisible by 1 - e^-{uu}")
    # g / (t1 - 1): a term c*t1^a contributes c to exponents m..a-1 (m = valuation);
    # shifting by one more t1 gives g / (1 - t1^{-1})
    m = min(exp[0] for exp in g.terms)
    out = {}
    for exp, c in g.terms.items():
        rest = exp[1:]
        for k in range(m, exp[0]):
            key = (k + 1,) + rest
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    q = substitute_monomial_map(_raw(prof, out), Winv, prof)
    if one_minus_char(prof, tuple(-x for x in uu)) * q != f:
        raise NotDivisible("quotient verification failed")
    return q
