"""Truncated graded Q-algebras presented by monomial rewrite rules.

A ring is a polynomial ring on weighted generators modulo

* power relations ``g**p -> 0``,
* Grothendieck relations ``xi**r -> c1*xi**(r-1) - c2*xi**(r-2) + ...``
  whose coefficient classes only involve earlier generators,
* degree bounds (a group of generators may not carry more than a given
  weighted degree), and the ambient bound ``deg > dimension -> 0``.

Every rule strictly lowers the exponent of its lead generator without
touching later generators, so rewriting terminates and normal forms are
unique.  Classes are sparse maps from normal-form exponent tuples to
``Fraction`` coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import TYPE_CHECKING, Iterable, Mapping, Union

from .errors import DegreeUndefined, PreconditionFailed, RankNotIntegral, RingMismatch

if TYPE_CHECKING:
    from .bundlecalc import FormalBundle

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class PowerZero:
    generator: int
    exponent: int


@dataclass(frozen=True)
class Grothendieck:
    generator: int
    rank: int
    # coefficients[i - 1] holds the terms of c_i as ((monomial, coeff), ...)
    coefficients: tuple[tuple[tuple[Monomial, Fraction], ...], ...]


@dataclass(frozen=True)
class DegreeBound:
    generators: tuple[int, ...]
    bound: int


Rule = Union[PowerZero, Grothendieck, DegreeBound]


def degrevlex_key(mono: Monomial, degrees: tuple[int, ...]) -> tuple:
    deg = sum(e * d for e, d in zip(mono, degrees))
    return (deg, tuple(-e for e in reversed(mono)))


class RingPresentation:
    """Immutable ring presentation.  Build with the ``make_*`` functions."""

    def __init__(
        self,
        generators: Iterable[tuple[str, int]],
        rules: Iterable[Rule],
        dimension: int,
        integrals: Mapping[Monomial, Fraction] | None,
        kind: str,
        **construction,
    ):
        gens = tuple((str(name), int(deg)) for name, deg in generators)
        if any(deg < 1 for _, deg in gens):
            raise ValueError("generator degrees must be >= 1")
        names = [name for name, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names {names}")
        if dimension < 0:
            raise ValueError("dimension must be >= 0")
        self.generators = gens
        self.names = tuple(names)
        self.degrees = tuple(deg for _, deg in gens)
        self.rules = tuple(rules)
        self.dimension = int(dimension)
        self._integrals = None if integrals is None else dict(integrals)
        self.kind = kind
        self.construction = dict(construction)
        self._nf_cache: dict[Monomial, dict[Monomial, Fraction]] = {}

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in self.generators)
        return f"RingPresentation({self.kind}, gens=[{gens}], dim={self.dimension})"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def has_degree_functional(self) -> bool:
        return self._integrals is not None

    def degree_of(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    # -- element constructors -------------------------------------------------

    def zero(self) -> GradedClass:
        return GradedClass(self, {})

    def one(self) -> GradedClass:
        return self.scalar(1)

    def scalar(self, value: Scalar) -> GradedClass:
        return GradedClass(self, {(0,) * self.ngens: Fraction(value)})

    def gen(self, name_or_index: str | int) -> GradedClass:
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        mono = tuple(1 if j == i else 0 for j in range(self.ngens))
        return self.from_terms({mono: 1})

    def gens(self) -> tuple[GradedClass, ...]:
        return tuple(self.gen(i) for i in range(self.ngens))

    def monomial(self, exponents: Mapping[str, int] | Monomial) -> GradedClass:
        return self.from_terms({self._as_monomial(exponents): 1})

    def from_terms(self, terms: Mapping[Monomial, Scalar]) -> GradedClass:
        """Normalize arbitrary (possibly non-normal) terms into a class."""
        return GradedClass(self, self.normalize(terms))

    def _as_monomial(self, exponents: Mapping[str, int] | Monomial) -> Monomial:
        if isinstance(exponents, Mapping):
            mono = [0] * self.ngens
            for name, e in exponents.items():
                mono[self.names.index(name)] = int(e)
            return tuple(mono)
        mono = tuple(int(e) for e in exponents)
        if len(mono) != self.ngens:
            raise ValueError(f"monomial {mono} has wrong length for {self!r}")
        return mono

    # -- rewriting -------------------------------------------------------------

    def normalize(self, terms: Mapping[Monomial, Scalar]) -> dict[Monomial, Fraction]:
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in terms.items():
            if not coeff:
                continue
            coeff = Fraction(coeff)
            for nm, nc in self.normal_form(mono).items():
                out[nm] = out.get(nm, 0) + coeff * nc
        return {m: c for m, c in out.items() if c}

    def normal_form(self, mono: Monomial) -> dict[Monomial, Fraction]:
        cached = self._nf_cache.get(mono)
        if cached is None:
            cached = self._reduce(mono)
            self._nf_cache[mono] = cached
        return cached

    def _reduce(self, mono: Monomial) -> dict[Monomial, Fraction]:
        if self.degree_of(mono) > self.dimension:
            return {}
        for rule in self.rules:
            if isinstance(rule, PowerZero):
                if mono[rule.generator] >= rule.exponent:
                    return {}
            elif isinstance(rule, DegreeBound):
                if sum(mono[g] * self.degrees[g] for g in rule.generators) > rule.bound:
                    return {}
        # latest Grothendieck rule first; its right side only uses earlier generators
        for rule in reversed(self.rules):
            if not isinstance(rule, Grothendieck):
                continue
            g, r = rule.generator, rule.rank
            if mono[g] < r:
                continue
            out: dict[Monomial, Fraction] = {}
            for i, ci in enumerate(rule.coefficients, start=1):
                sign = 1 if i % 2 else -1
                for cm, cc in ci:
                    new = [a + b for a, b in zip(mono, cm)]
                    new[g] -= i
                    for nm, nc in self.normal_form(tuple(new)).items():
                        out[nm] = out.get(nm, 0) + sign * cc * nc
            return {m: c for m, c in out.items() if c}
        return {mono: Fraction(1)}

    def is_normal(self, mono: Monomial) -> bool:
        return self.normal_form(mono) == {mono: 1}

    def monomials_of_degree(self, degree: int) -> list[Monomial]:
        """All exponent tuples of the given weighted degree (not necessarily normal)."""
        result: list[Monomial] = []

        def rec(i: int, remaining: int, acc: list[int]):
            if i == self.ngens:
                if remaining == 0:
                    result.append(tuple(acc))
                return
            for e in range(remaining // self.degrees[i] + 1):
                acc.append(e)
                rec(i + 1, remaining - e * self.degrees[i], acc)
                acc.pop()

        rec(0, degree, [])
        return result

    def basis(self, degree: int) -> list[Monomial]:
        """Normal-form monomials of the given degree, in descending degrevlex order."""
        monos = [m for m in self.monomials_of_degree(degree) if self.is_normal(m)]
        return sorted(monos, key=lambda m: degrevlex_key(m, self.degrees), reverse=True)

    # -- degree functional -------------------------------------------------------

    def integral_of_monomial(self, mono: Monomial) -> Fraction:
        if self._integrals is None:
            raise DegreeUndefined(f"{self!r} has no degree functional")
        return self._integrals.get(mono, Fraction(0))

    @property
    def integrals(self) -> Mapping[Monomial, Fraction]:
        if self._integrals is None:
            raise DegreeUndefined(f"{self!r} has no degree functional")
        return MappingProxyType(self._integrals)

    # -- maps between rings ------------------------------------------------------

    def embedding_from(self, source: RingPresentation) -> tuple[int, ...] | None:
        """Generator index map realizing the pullback ``source -> self``, if any."""
        if source is self:
            return tuple(range(self.ngens))
        if self.kind == "projective_bundle":
            inner = self.construction["base"].embedding_from(source)
            return inner
        if self.kind == "product":
            for factor, offset in zip(self.construction["factors"], self.construction["offsets"]):
                inner = factor.embedding_from(source)
                if inner is not None:
                    return tuple(offset + i for i in inner)
        return None

    def pullback(self, alpha: GradedClass) -> GradedClass:
        """Pull a class back along a projection ``self -> alpha.ring``."""
        index_map = self.embedding_from(alpha.ring)
        if index_map is None:
            raise RingMismatch(f"{alpha.ring!r} is not a factor or base of {self!r}")
        terms = {}
        for mono, c in alpha.terms.items():
            new = [0] * self.ngens
            for i, e in enumerate(mono):
                new[index_map[i]] += e
            terms[tuple(new)] = c
        return self.from_terms(terms)


class GradedClass:
    """An element of a ring presentation.  Immutable; arithmetic returns new classes."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: RingPresentation, terms: Mapping[Monomial, Fraction]):
        # terms must already be normalized; zero coefficients are dropped here
        self.ring = ring
        self._terms = {m: c for m, c in terms.items() if c}

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def _coerce(self, other) -> GradedClass:
        if isinstance(other, GradedClass):
            if other.ring is not self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return GradedClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return GradedClass(self.ring, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        out: dict[Monomial, Fraction] = {}
        dim = ring.dimension
        for m1, c1 in self._terms.items():
            d1 = ring.degree_of(m1)
            for m2, c2 in other._terms.items():
                if d1 + ring.degree_of(m2) > dim:
                    continue
                prod = c1 * c2
                for nm, nc in ring.normal_form(tuple(a + b for a, b in zip(m1, m2))).items():
                    out[nm] = out.get(nm, 0) + prod * nc
        return GradedClass(ring, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.ring is other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((id(self.ring), frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree_part(self, k: int) -> GradedClass:
        ring = self.ring
        return GradedClass(ring, {m: c for m, c in self._terms.items() if ring.degree_of(m) == k})

    def truncate(self, k: int) -> GradedClass:
        """Drop every component of degree > k."""
        ring = self.ring
        return GradedClass(ring, {m: c for m, c in self._terms.items() if ring.degree_of(m) <= k})

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.ngens, Fraction(0))

    def is_homogeneous(self, k: int) -> bool:
        return all(self.ring.degree_of(m) == k for m in self._terms)

    def coefficient(self, exponents: Mapping[str, int] | Monomial) -> Fraction:
        return self._terms.get(self.ring._as_monomial(exponents), Fraction(0))

    def scalar_multiple_of(self, other: GradedClass) -> Fraction | None:
        """Return ``t`` with ``self == t * other`` if such a rational exists."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        m, c = next(iter(other._terms.items()))
        t = self._terms.get(m, Fraction(0)) / c
        return t if self == other * t else None

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        key = lambda item: degrevlex_key(item[0], self.ring.degrees)
        return sorted(self._terms.items(), key=key, reverse=True)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


# -- ring constructors -----------------------------------------------------------


def make_projective_space(n: int, name: str = "h") -> RingPresentation:
    """Q[h]/(h^(n+1)) with the degree functional h^n -> 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return RingPresentation(
        [(name, 1)],
        [PowerZero(0, n + 1), DegreeBound((0,), n)],
        n,
        {(n,): Fraction(1)},
        "projective_space",
        n=n,
    )


def make_formal_base(n: int, generators: Iterable[tuple[str, int]]) -> RingPresentation:
    """Free truncated ring on the given generators; integration is undefined."""
    gens = list(generators)
    return RingPresentation(gens, [DegreeBound(tuple(range(len(gens))), n)], n, None, "formal", n=n)


def _embed_rule(rule: Rule, index_map: tuple[int, ...], width: int) -> Rule:
    if isinstance(rule, PowerZero):
        return PowerZero(index_map[rule.generator], rule.exponent)
    if isinstance(rule, DegreeBound):
        return DegreeBound(tuple(index_map[g] for g in rule.generators), rule.bound)
    coeffs = []
    for ci in rule.coefficients:
        terms = []
        for mono, c in ci:
            new = [0] * width
            for i, e in enumerate(mono):
                new[index_map[i]] += e
            terms.append((tuple(new), c))
        coeffs.append(tuple(terms))
    return Grothendieck(index_map[rule.generator], rule.rank, tuple(coeffs))


def make_product(r1: RingPresentation, r2: RingPresentation) -> RingPresentation:
    """Ring of X x Y.  Colliding generator names get suffixes 1 and 2."""
    names1, names2 = list(r1.names), list(r2.names)
    if set(names1) & set(names2):
        names1 = [f"{n}1" for n in names1]
        names2 = [f"{n}2" for n in names2]
    if set(names1) & set(names2):
        raise ValueError("generator names still collide after renaming")
    width = r1.ngens + r2.ngens
    map1 = tuple(range(r1.ngens))
    map2 = tuple(range(r1.ngens, width))
    rules = [_embed_rule(rule, map1, width) for rule in r1.rules]
    rules += [_embed_rule(rule, map2, width) for rule in r2.rules]
    dim = r1.dimension + r2.dimension
    rules.append(DegreeBound(tuple(range(width)), dim))
    integrals = None
    if r1.has_degree_functional and r2.has_degree_functional:
        integrals = {}
        for m1, v1 in r1.integrals.items():
            for m2, v2 in r2.integrals.items():
                if v1 * v2:
                    integrals[m1 + m2] = v1 * v2
    gens = list(zip(names1, r1.degrees)) + list(zip(names2, r2.degrees))
    return RingPresentation(gens, rules, dim, integrals, "product", factors=(r1, r2), offsets=(0, r1.ngens))


def _fresh_name(ring: RingPresentation, stem: str) -> str:
    if stem not in ring.names:
        return stem
    for k in itertools.count(1):
        cand = f"{stem}{k}"
        if cand not in ring.names:
            return cand
    raise AssertionError


def make_projective_bundle(base: RingPresentation, bundle: FormalBundle, name: str = "xi") -> RingPresentation:
    """Ring of P(E) = Proj Sym E over ``base`` with xi = c1(O(1))."""
    if bundle.ring is not base:
        raise RingMismatch("bundle does not live on the base ring")
    rank = Fraction(bundle.rank)
    if rank.denominator != 1 or getattr(bundle, "is_formal_twist", False):
        raise RankNotIntegral(f"rank {rank} is not an honest integer rank")
    r = int(rank)
    if r < 1:
        raise RankNotIntegral("rank must be >= 1")
    chern = bundle.chern
    if not chern.truncate(r) == chern:
        raise PreconditionFailed("total Chern class has components above the rank")
    width = base.ngens + 1
    pad = tuple(range(base.ngens))
    coeffs = []
    for i in range(1, r + 1):
        ci = chern.degree_part(i)
        coeffs.append(tuple((m + (0,), c) for m, c in ci.sorted_terms()))
    xi = base.ngens
    rules = [_embed_rule(rule, pad, width) for rule in base.rules]
    rules.append(DegreeBound(pad, base.dimension))
    rules.append(Grothendieck(xi, r, tuple(coeffs)))
    dim = base.dimension + r - 1
    rules.append(DegreeBound(tuple(range(width)), dim))
    integrals = None
    if base.has_degree_functional:
        integrals = {m + (r - 1,): v for m, v in base.integrals.items()}
    gens = list(base.generators) + [(_fresh_name(base, name), 1)]
    return RingPresentation(gens, rules, dim, integrals, "projective_bundle", base=base, bundle=bundle, rank=r)


# -- functions on classes ----------------------------------------------------------


def integrate(alpha: GradedClass) -> Fraction:
    """Degree functional applied to the top-degree part."""
    ring = alpha.ring
    integrals = ring.integrals
    return sum(
        (c * integrals.get(m, 0) for m, c in alpha.terms.items() if ring.degree_of(m) == ring.dimension),
        Fraction(0),
    )


def xi(ring: RingPresentation) -> GradedClass:
    if ring.kind != "projective_bundle":
        raise RingMismatch(f"{ring!r} is not a projective bundle ring")
    return ring.gen(ring.ngens - 1)


def pushforward_xi(alpha: GradedClass) -> GradedClass:
    """pi_* : coefficient class of xi^(r-1) in the normal form."""
    ring = alpha.ring
    if ring.kind != "projective_bundle":
        raise RingMismatch(f"{ring!r} is not a projective bundle ring")
    base = ring.construction["base"]
    r = ring.construction["rank"]
    terms = {m[:-1]: c for m, c in alpha.terms.items() if m[-1] == r - 1}
    return base.from_terms(terms)


def add(a: GradedClass, b: GradedClass) -> GradedClass:
    return a + b


def mul(a: GradedClass, b: GradedClass) -> GradedClass:
    return a * b


def scale(a: GradedClass, t: Scalar) -> GradedClass:
    return a * Fraction(t)
