"""Graded polynomials in quasimodular generators.

Four bases share one sparse representation, a map from exponent triples to
rationals:

=======  ==========================  =================
basis    monomial for (a, b, c)      weight
=======  ==========================  =================
E        E_2^a E_4^b E_6^c           2a + 4b + 6c
Theta    E_2^a Theta_{b,c}  (b <= c)  2a + 2b + 2c
G        E_2^a G_2^b E_4^c           2a + 2b + 4c
XY       E_2^a X^b Y^c               2a + 2b + 2c
=======  ==========================  =================

with X = theta_2^4 and Y = theta_3^4.  Theta-basis algebra is always done in
XY form; the Theta basis is only an input/output format, carrying a flag for
whether Theta_{r,r} means X^r Y^r (plain) or 2 X^r Y^r (doubled).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from types import MappingProxyType
from typing import Iterator, Mapping

from .generators import DOUBLED, PLAIN, bernoulli, eisenstein, g2, theta_xy
from .linsolve import DEFAULT_GUARD, InconsistentSystemError, solve_combination
from .recursions import triples_of_weight
from .series import TruncatedSeries, mul_series, power

__all__ = [
    "GradedPoly",
    "BASES",
    "eval_poly",
    "d_e_basis",
    "d_theta_basis",
    "d_g_basis",
    "d_xy",
    "partial_e2",
    "theta_to_xy",
    "xy_to_theta",
    "express_in_basis",
    "basis_monomials",
    "partition_eisenstein",
    "partitions_of",
    "InconsistentSystemError",
]

Key = tuple[int, int, int]

BASES = ("E", "Theta", "G", "XY")
_WEIGHTS = {"E": (2, 4, 6), "Theta": (2, 2, 2), "G": (2, 2, 4), "XY": (2, 2, 2)}


@dataclass(frozen=True)
class GradedPoly:
    """Sparse polynomial in one of the four bases; zero terms are dropped."""

    basis: str
    terms: Mapping[Key, Fraction] = field(default_factory=dict)
    diag: str = PLAIN

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        if self.diag not in (PLAIN, DOUBLED):
            raise ValueError(f"unknown diagonal convention {self.diag!r}")
        clean: dict[Key, Fraction] = {}
        for key, value in self.terms.items():
            key = tuple(int(i) for i in key)
            if len(key) != 3 or min(key) < 0:
                raise ValueError(f"bad exponent triple {key}")
            if self.basis == "Theta" and key[1] > key[2]:
                key = (key[0], key[2], key[1])
            clean[key] = clean.get(key, Fraction(0)) + Fraction(value)
        clean = {k: v for k, v in sorted(clean.items()) if v}
        if self.basis == "XY":
            for (a, r, s), v in clean.items():
                if clean.get((a, s, r)) != v:
                    raise ValueError("XY-form polynomials must be symmetric in X and Y")
        object.__setattr__(self, "terms", MappingProxyType(clean))

    # -- basics ------------------------------------------------------------
    def weight_of(self, key: Key) -> int:
        return sum(w * i for w, i in zip(_WEIGHTS[self.basis], key))

    def weights(self) -> set[int]:
        return {self.weight_of(k) for k in self.terms}

    def max_weight(self) -> int:
        return max(self.weights(), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self.terms.items())

    def __getitem__(self, key: Key) -> Fraction:
        if self.basis == "Theta" and key[1] > key[2]:
            key = (key[0], key[2], key[1])
        return self.terms.get(tuple(key), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        if self.basis != other.basis:
            return False
        if self.basis == "Theta" and self.diag != other.diag:
            return theta_to_xy(self) == theta_to_xy(other)
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.basis, tuple(self.terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*{k}" for k, v in self.terms.items()) or "0"
        return f"GradedPoly[{self.basis}]({body})"

    def _like(self, terms) -> "GradedPoly":
        return GradedPoly(self.basis, terms, self.diag)

    def _same_basis(self, other: "GradedPoly") -> None:
        if self.basis != other.basis or (self.basis == "Theta" and self.diag != other.diag):
            raise ValueError("polynomials live in different bases")

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        self._same_basis(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return self._like(terms)

    def __neg__(self) -> "GradedPoly":
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def scale(self, c) -> "GradedPoly":
        c = Fraction(c)
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            return _poly_product(self, other)
        return self.scale(other)

    __rmul__ = __mul__


def _monomial_product(x: Mapping[Key, Fraction], y: Mapping[Key, Fraction]) -> dict[Key, Fraction]:
    out: dict[Key, Fraction] = {}
    for (a1, b1, c1), u in x.items():
        for (a2, b2, c2), v in y.items():
            k = (a1 + a2, b1 + b2, c1 + c2)
            out[k] = out.get(k, Fraction(0)) + u * v
    return out


def _poly_product(p: GradedPoly, q: GradedPoly) -> GradedPoly:
    p._same_basis(q)
    if p.basis == "Theta":
        prod = _poly_product(theta_to_xy(p), theta_to_xy(q))
        return xy_to_theta(prod, p.diag)
    return p._like(_monomial_product(p.terms, q.terms))


# -- Theta <-> XY ------------------------------------------------------------
def theta_to_xy(p: GradedPoly) -> GradedPoly:
    if p.basis == "XY":
        return p
    if p.basis != "Theta":
        raise ValueError("theta_to_xy expects a Theta-basis polynomial")
    terms: dict[Key, Fraction] = {}
    for (a, r, s), v in p.terms.items():
        if r == s:
            terms[(a, r, r)] = terms.get((a, r, r), 0) + (2 * v if p.diag == DOUBLED else v)
        else:
            terms[(a, r, s)] = terms.get((a, r, s), 0) + v
            terms[(a, s, r)] = terms.get((a, s, r), 0) + v
    return GradedPoly("XY", terms)


def xy_to_theta(p: GradedPoly, diag: str = PLAIN) -> GradedPoly:
    if p.basis == "Theta":
        return p if p.diag == diag else xy_to_theta(theta_to_xy(p), diag)
    if p.basis != "XY":
        raise ValueError("xy_to_theta expects an XY-form polynomial")
    terms = {}
    for (a, r, s), v in p.terms.items():
        if r < s:
            terms[(a, r, s)] = v
        elif r == s:
            terms[(a, r, r)] = v / 2 if diag == DOUBLED else v
    return GradedPoly("Theta", terms, diag)


# -- evaluation ----------------------------------------------------------------
@lru_cache(maxsize=None)
def _generators(basis: str, order: int) -> tuple[TruncatedSeries, ...]:
    e2 = eisenstein(1, order)
    if basis == "E":
        return (e2, eisenstein(2, order), eisenstein(3, order))
    if basis == "G":
        return (e2, g2(order), eisenstein(2, order))
    if basis in ("XY", "Theta"):
        return (e2, *theta_xy(order))
    raise ValueError(basis)


class _PowerCache:
    def __init__(self, gens):
        self.gens = gens
        self.cache: dict[tuple[int, int], TruncatedSeries] = {}

    def get(self, i: int, e: int) -> TruncatedSeries:
        key = (i, e)
        if key not in self.cache:
            if e == 0:
                self.cache[key] = TruncatedSeries.one(self.gens[i].order)
            elif e == 1:
                self.cache[key] = self.gens[i]
            else:
                self.cache[key] = mul_series(self.get(i, e - 1), self.gens[i])
        return self.cache[key]


def _eval_monomials(basis: str, keys, order: int) -> dict[Key, TruncatedSeries]:
    pc = _PowerCache(_generators(basis, order))
    out = {}
    for k in keys:
        s = pc.get(0, k[0])
        for i in (1, 2):
            if k[i]:
                s = mul_series(s, pc.get(i, k[i]))
        out[k] = s
    return out


def eval_poly(p: GradedPoly, order: int) -> TruncatedSeries:
    """q-expansion of p up to q^order."""
    if p.basis == "Theta":
        p = theta_to_xy(p)
    monos = _eval_monomials(p.basis, p.terms.keys(), order)
    total = TruncatedSeries.zero(order)
    for k, v in p.terms.items():
        total = total + monos[k] * v
    return total


# -- derivations -----------------------------------------------------------------
def _rule(*pairs) -> dict[Key, Fraction]:
    return {k: Fraction(v) for k, v in pairs}


# D of each generator, expressed in the same basis
_E_RULES = (
    _rule(((2, 0, 0), Fraction(1, 12)), ((0, 1, 0), Fraction(-1, 12))),
    _rule(((1, 1, 0), Fraction(1, 3)), ((0, 0, 1), Fraction(-1, 3))),
    _rule(((1, 0, 1), Fraction(1, 2)), ((0, 2, 0), Fraction(-1, 2))),
)
_G_RULES = (
    _rule(((2, 0, 0), Fraction(1, 12)), ((0, 0, 1), Fraction(-1, 12))),
    _rule(((1, 1, 0), Fraction(1, 6)), ((0, 2, 0), Fraction(-2, 6)), ((0, 0, 1), Fraction(1, 6))),
    _rule(((1, 0, 1), Fraction(1, 3)), ((0, 3, 0), Fraction(-4, 3)), ((0, 1, 1), Fraction(3, 3))),
)
# E_4 = X^2 + 14XY + Y^2 inside D(E_2)
_XY_RULES = (
    _rule(
        ((2, 0, 0), Fraction(1, 12)),
        ((0, 2, 0), Fraction(-1, 12)),
        ((0, 1, 1), Fraction(-14, 12)),
        ((0, 0, 2), Fraction(-1, 12)),
    ),
    _rule(((1, 1, 0), Fraction(1, 6)), ((0, 2, 0), Fraction(-1, 6)), ((0, 1, 1), Fraction(5, 6))),
    _rule(((1, 0, 1), Fraction(1, 6)), ((0, 1, 1), Fraction(5, 6)), ((0, 0, 2), Fraction(-1, 6))),
)


def _apply_derivation(p: GradedPoly, rules) -> GradedPoly:
    out: dict[Key, Fraction] = {}
    for key, c in p.terms.items():
        for i in range(3):
            e = key[i]
            if not e:
                continue
            rest = list(key)
            rest[i] -= 1
            for (a, b, g), v in rules[i].items():
                k = (rest[0] + a, rest[1] + b, rest[2] + g)
                out[k] = out.get(k, Fraction(0)) + e * c * v
    return p._like(out)


def _require(p: GradedPoly, *bases: str) -> None:
    if p.basis not in bases:
        raise ValueError(f"expected basis {' or '.join(bases)}, got {p.basis}")


def d_e_basis(p: GradedPoly) -> GradedPoly:
    """D on C[E_2, E_4, E_6] via Ramanujan's three rules."""
    _require(p, "E")
    return _apply_derivation(p, _E_RULES)


def d_g_basis(p: GradedPoly) -> GradedPoly:
    """D on C[E_2, G_2, E_4]."""
    _require(p, "G")
    return _apply_derivation(p, _G_RULES)


def d_xy(p: GradedPoly) -> GradedPoly:
    """D on E_2-polynomials in X = theta_2^4, Y = theta_3^4."""
    _require(p, "XY")
    return _apply_derivation(p, _XY_RULES)


def d_theta_basis(p: GradedPoly) -> GradedPoly:
    """D on the Theta or XY basis; Theta input is routed through XY form."""
    _require(p, "Theta", "XY")
    if p.basis == "XY":
        return d_xy(p)
    return xy_to_theta(d_xy(theta_to_xy(p)), p.diag)


def partial_e2(p: GradedPoly) -> GradedPoly:
    """Formal partial derivative in E_2 on the E basis."""
    _require(p, "E")
    return p._like({(a - 1, b, g): a * v for (a, b, g), v in p.terms.items() if a})


# -- basis expression ------------------------------------------------------------------
def basis_monomials(basis: str, t: int) -> list[Key]:
    """Monomials of weight <= 2t, lexicographically ascending."""
    grading = {"E": (1, 2, 3), "Theta": (1, 1, 1), "G": (1, 1, 2), "XY": (1, 1, 1)}[basis]
    keys = []
    for w in range(t + 1):
        keys.extend(triples_of_weight(w, grading, canonical_only=(basis == "Theta")))
    return sorted(keys)


def express_in_basis(
    f: TruncatedSeries, t: int, basis: str = "E", diag: str = PLAIN, guard: int = DEFAULT_GUARD
) -> GradedPoly:
    """The unique combination of monomials of weight <= 2t equal to f.

    Raises InconsistentSystemError (with the first failing coefficient index)
    when f is not in the span.
    """
    if basis not in ("E", "Theta", "G"):
        raise ValueError(f"cannot solve in basis {basis!r}")
    keys = basis_monomials(basis, t)
    if basis == "Theta":
        probes = [GradedPoly("Theta", {k: 1}, diag) for k in keys]
        columns = [eval_poly(p, f.order) for p in probes]
    else:
        monos = _eval_monomials(basis, keys, f.order)
        columns = [monos[k] for k in keys]
    x = solve_combination(f, columns, guard)
    return GradedPoly(basis, dict(zip(keys, x)), diag if basis == "Theta" else PLAIN)


# -- partition Eisenstein series -----------------------------------------------
def partitions_of(n: int, largest: int | None = None) -> Iterator[dict[int, int]]:
    """Partitions of n as {part: multiplicity}, generated by descending largest part."""
    if largest is None:
        largest = n
    if n == 0:
        yield {}
        return
    for part in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - part, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


def partition_eisenstein(t: int, sign: str, order: int) -> TruncatedSeries:
    """sum over partitions of t of prod_s (1/m_s!) (+-B_{2s} E_{2s} / ((2s)(2s)!))^{m_s}."""
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    eps = 1 if sign == "plus" else -1
    total = TruncatedSeries.zero(order)
    for parts in partitions_of(t):
        term = TruncatedSeries.one(order)
        scalar = Fraction(1)
        for s, m in parts.items():
            base = eps * bernoulli(2 * s) / (2 * s * factorial(2 * s))
            scalar *= base**m / factorial(m)
            term = mul_series(term, power(eisenstein(s, order), m))
        total = total + term * scalar
    return total
