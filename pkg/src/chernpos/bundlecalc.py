"""Formal bundles: a rank plus a total Chern class in a ring presentation.

Total Chern classes are the primary data.  Tensor products and twists go
through the Chern character; symmetric and exterior powers substitute into
the root-expansion templates of :mod:`chernpos.symfunc`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from . import symfunc
from .chowring import GradedClass, RingPresentation, integrate
from .errors import EmptyInput, PreconditionFailed, RankNotIntegral, RingMismatch


@dataclass(frozen=True, eq=False)
class FormalBundle:
    ring: RingPresentation
    rank: Fraction
    chern: GradedClass
    is_formal_twist: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rank", Fraction(self.rank))
        if self.chern.ring is not self.ring:
            raise RingMismatch("Chern class lives in another ring")
        if self.chern.constant_term() != 1:
            raise ValueError("total Chern class must have constant term 1")
        if self.rank <= 0:
            raise ValueError("rank must be positive")

    def c(self, i: int) -> GradedClass:
        if i == 0:
            return self.ring.one()
        return self.chern.degree_part(i)

    def chern_classes(self, upto: int | None = None) -> list[GradedClass]:
        """[c_1, ..., c_upto]; ``upto`` defaults to the ring dimension."""
        upto = self.ring.dimension if upto is None else upto
        return [self.c(i) for i in range(1, upto + 1)]

    def same_as(self, other: FormalBundle) -> bool:
        return self.ring is other.ring and self.rank == other.rank and self.chern == other.chern

    def __repr__(self):
        flag = ", formal twist" if self.is_formal_twist else ""
        return f"FormalBundle(rank={self.rank}, c={self.chern!r}{flag})"


@dataclass(frozen=True)
class CharacterData:
    ring: RingPresentation
    components: tuple[GradedClass, ...]  # ch_0 .. ch_n

    def __post_init__(self):
        if self.components[0].constant_term() <= 0:
            raise ValueError("ch_0 must be positive")

    @property
    def rank(self) -> Fraction:
        return self.components[0].constant_term()

    def total(self) -> GradedClass:
        return sum(self.components[1:], self.components[0])

    def __getitem__(self, k: int) -> GradedClass:
        if k < len(self.components):
            return self.components[k]
        return self.ring.zero()


# -- constructors --------------------------------------------------------------------


def from_chern(ring: RingPresentation, rank, classes: Sequence[GradedClass | int] = ()) -> FormalBundle:
    """Bundle with total Chern class 1 + classes[0] + classes[1] + ..."""
    total = ring.one()
    for i, ci in enumerate(classes, start=1):
        if isinstance(ci, GradedClass):
            if not ci.is_homogeneous(i) and not ci.is_zero():
                raise ValueError(f"c_{i} is not homogeneous of degree {i}")
            total = total + ci
        elif ci:
            raise ValueError("scalar Chern classes must be zero")
    return FormalBundle(ring, rank, total)


def trivial(ring: RingPresentation, rank=1) -> FormalBundle:
    return FormalBundle(ring, rank, ring.one())


def line_bundle(ring: RingPresentation, c1: GradedClass) -> FormalBundle:
    if not c1.is_homogeneous(1) and not c1.is_zero():
        raise ValueError("c1 of a line bundle must be of degree 1")
    return FormalBundle(ring, 1, ring.one() + c1, is_formal_twist=not _is_integral(c1))


def hyperplane(ring: RingPresentation) -> GradedClass:
    if ring.kind != "projective_space":
        raise ValueError("hyperplane class needs a projective space ring")
    return ring.gen(0)


def O(ring: RingPresentation, d: int) -> FormalBundle:
    """O(d) on a projective space ring."""
    return line_bundle(ring, hyperplane(ring) * d)


def tangent_pn(ring: RingPresentation) -> FormalBundle:
    """Tangent bundle of P^n: c = (1+h)^(n+1) by the Euler sequence."""
    n = ring.construction["n"] if ring.kind == "projective_space" else None
    if n is None:
        raise ValueError("tangent_pn needs a projective space ring")
    h = ring.gen(0)
    return FormalBundle(ring, n, (ring.one() + h) ** (n + 1))


def pullback(E: FormalBundle, target: RingPresentation) -> FormalBundle:
    """Pull E back along a projection from ``target`` (bundle or product ring)."""
    return FormalBundle(target, E.rank, target.pullback(E.chern), E.is_formal_twist)


def _is_integral(alpha: GradedClass) -> bool:
    return all(c.denominator == 1 for c in alpha.terms.values())


def _check_same(E: FormalBundle, F: FormalBundle) -> None:
    if E.ring is not F.ring:
        raise RingMismatch("bundles live in different rings")


def _integer_rank(E: FormalBundle) -> int:
    if E.is_formal_twist or E.rank.denominator != 1:
        raise RankNotIntegral(f"operation needs an honest bundle, got rank {E.rank}")
    return int(E.rank)


# -- Chern character ---------------------------------------------------------------------


def ch(E: FormalBundle) -> CharacterData:
    n = E.ring.dimension
    comps = [E.ring.scalar(E.rank)]
    if n >= 1:
        comps += symfunc.newton_convert("c_to_ch", E.chern_classes(n), n)
    return CharacterData(E.ring, tuple(comps))


def from_character(data: CharacterData, is_formal_twist: bool = False) -> FormalBundle:
    ring = data.ring
    n = ring.dimension
    total = ring.one()
    if n >= 1:
        comps = [data[k] for k in range(1, n + 1)]
        total = total + sum(symfunc.newton_convert("ch_to_c", comps, n), ring.zero())
    return FormalBundle(ring, data.rank, total, is_formal_twist)


def exp_class(delta: GradedClass) -> GradedClass:
    ring = delta.ring
    out = ring.one()
    term = ring.one()
    for k in range(1, ring.dimension + 1):
        term = term * delta * Fraction(1, k)
        if term.is_zero():
            break
        out = out + term
    return out


def log_ch(E: FormalBundle, up_to_degree: int | None = None) -> list[GradedClass]:
    """Degree 1..k terms of log ch(E); the constant log(rank) is omitted.

    Degree 1 is c1/r and degree 2 is -discriminant/(2 r^2).
    """
    ring = E.ring
    k = ring.dimension if up_to_degree is None else up_to_degree
    y = (ch(E).total() - E.rank) * (1 / E.rank)  # ch = r (1 + y)
    log = ring.zero()
    power = ring.one()
    for j in range(1, k + 1):
        power = power * y
        if power.is_zero():
            break
        log = log + power * Fraction((-1) ** (j + 1), j)
    return [log.degree_part(j) for j in range(1, k + 1)]


# -- operations ----------------------------------------------------------------------------


def dual(E: FormalBundle) -> FormalBundle:
    ring = E.ring
    terms = {m: (c if ring.degree_of(m) % 2 == 0 else -c) for m, c in E.chern.terms.items()}
    return FormalBundle(ring, E.rank, ring.from_terms(terms), E.is_formal_twist)


def dsum(E: FormalBundle, F: FormalBundle) -> FormalBundle:
    _check_same(E, F)
    return FormalBundle(E.ring, E.rank + F.rank, E.chern * F.chern, E.is_formal_twist or F.is_formal_twist)


def tensor(E: FormalBundle, F: FormalBundle) -> FormalBundle:
    _check_same(E, F)
    a, b = ch(E), ch(F)
    n = E.ring.dimension
    prod = a.total() * b.total()
    comps = tuple(prod.degree_part(k) for k in range(n + 1))
    return from_character(CharacterData(E.ring, comps), E.is_formal_twist or F.is_formal_twist)


def _substitute(E: FormalBundle, templates: Sequence[symfunc.SymPoly], rank: int) -> FormalBundle:
    ring = E.ring
    r = _integer_rank(E)
    if not E.chern.truncate(r) == E.chern:
        raise PreconditionFailed("Chern data has components above the rank")
    cs = [E.c(i) for i in range(1, r + 1)]
    total = ring.one()
    for poly in templates:
        total = total + poly.evaluate(cs, ring.one(), ring.zero())
    return FormalBundle(ring, rank, total)


def sym(E: FormalBundle, m: int) -> FormalBundle:
    r = _integer_rank(E)
    if m == 0:
        return trivial(E.ring)
    d = max(E.ring.dimension, 1)
    return _substitute(E, symfunc.chern_of_sym(m, r, d), symfunc.sym_rank(m, r))


def wedge(E: FormalBundle, k: int) -> FormalBundle:
    r = _integer_rank(E)
    d = max(E.ring.dimension, 1)
    templates = symfunc.chern_of_wedge(k, r, d)
    return _substitute(E, templates, symfunc.wedge_rank(k, r))


def det(E: FormalBundle) -> FormalBundle:
    _integer_rank(E)
    return FormalBundle(E.ring, 1, E.ring.one() + E.c(1))


def end(E: FormalBundle) -> FormalBundle:
    _integer_rank(E)
    return tensor(E, dual(E))


def tensor_power(E: FormalBundle, k: int) -> FormalBundle:
    if k < 1:
        raise ValueError("k must be >= 1")
    out = E
    for _ in range(k - 1):
        out = tensor(out, E)
    return out


def twist(E: FormalBundle, delta: GradedClass) -> FormalBundle:
    """E<delta>: ch(E) * exp(delta).  Non-integral delta flags a formal twist."""
    if delta.ring is not E.ring:
        raise RingMismatch("twist class lives in another ring")
    if not delta.is_zero() and not delta.is_homogeneous(1):
        raise ValueError("twist class must be of degree 1")
    if delta.is_zero():
        return E
    n = E.ring.dimension
    prod = ch(E).total() * exp_class(delta)
    comps = tuple(prod.degree_part(k) for k in range(n + 1))
    return from_character(CharacterData(E.ring, comps), E.is_formal_twist or not _is_integral(delta))


def discriminant(E: FormalBundle) -> GradedClass:
    r = E.rank
    return E.c(2) * (2 * r) - E.c(1) * E.c(1) * (r - 1)


def segre(E: FormalBundle, upto: int | None = None) -> list[GradedClass]:
    """s_0..s_upto with s(E) * c(E) = 1."""
    ring = E.ring
    upto = ring.dimension if upto is None else upto
    s = [ring.one()]
    for j in range(1, upto + 1):
        acc = ring.zero()
        for i in range(1, j + 1):
            acc = acc - E.c(i) * s[j - i]
        s.append(acc)
    return s


def segre_dual_recursion(E: FormalBundle, j: int, corrected: bool = False) -> GradedClass:
    """s_j(E^dual) by the recursion s_j = (-1)^(j+1) c_j - sum_{i<j} eps(i, j) s_i c_(j-i).

    The printed form uses eps = (-1)^i.  Inverting c(E^dual) = sum (-1)^k c_k
    gives eps = (-1)^(j-i) instead; the two agree for j <= 2 and all even j.
    ``corrected=True`` selects the series-inversion sign.
    """
    s: list[GradedClass] = [E.ring.one()]
    for k in range(1, j + 1):
        acc = E.c(k) * (-1) ** (k + 1)
        for i in range(1, k):
            sign = (-1) ** (k - i) if corrected else (-1) ** i
            acc = acc - s[i] * E.c(k - i) * sign
        s.append(acc)
    return s[j]


def frobenius_pullback(E: FormalBundle, p: int, m: int) -> FormalBundle:
    """c_i -> p^(i m) c_i."""
    if p < 2 or m < 0:
        raise ValueError("need p >= 2 and m >= 0")
    ring = E.ring
    terms = {mono: c * p ** (ring.degree_of(mono) * m) for mono, c in E.chern.terms.items()}
    return FormalBundle(ring, E.rank, ring.from_terms(terms), E.is_formal_twist)


def is_chern_trivial(E: FormalBundle) -> bool:
    """Model-level numerical triviality: every c_i vanishes as a ring element."""
    return E.chern == 1


# -- numerical invariants -------------------------------------------------------------------


def slope(E: FormalBundle, H: GradedClass) -> Fraction:
    n = E.ring.dimension
    if n < 1:
        raise ValueError("slope needs dimension >= 1")
    return integrate(E.c(1) * H ** (n - 1)) / E.rank


def delta_pairing(E: FormalBundle, H: GradedClass) -> Fraction:
    n = E.ring.dimension
    if n < 2:
        raise ValueError("discriminant pairing needs dimension >= 2")
    return integrate(discriminant(E) * H ** (n - 2))


@dataclass(frozen=True)
class PositivityInvariants:
    c1_H: Fraction
    c2_H: Fraction
    c1sq_minus_c2_H: Fraction
    delta_H: Fraction


def positivity_invariants(E: FormalBundle, H: GradedClass) -> PositivityInvariants:
    n = E.ring.dimension
    if n < 2:
        raise ValueError("degree-2 invariants need dimension >= 2")
    c1, c2 = E.c(1), E.c(2)
    h2 = H ** (n - 2)
    return PositivityInvariants(
        integrate(c1 * H ** (n - 1)),
        integrate(c2 * h2),
        integrate((c1 * c1 - c2) * h2),
        delta_pairing(E, H),
    )


# -- syzygy bundles ------------------------------------------------------------------------------


def syzygy_kernel(ring: RingPresentation, d: int) -> FormalBundle:
    """M_{O(d)} on P^n: kernel of H^0(O(d)) x O -> O(d), c = 1/(1 + d h)."""
    n = ring.construction["n"]
    if d < 0:
        raise PreconditionFailed("syzygy needs d >= 0")
    h = hyperplane(ring)
    inv = ring.one()
    for k in range(1, n + 1):
        inv = inv + h ** k * (-d) ** k
    rank = comb(n + d, n) - 1
    if rank == 0:
        raise PreconditionFailed("M_{O(0)} is the zero bundle")
    return FormalBundle(ring, rank, inv)


def syzygy(V: Sequence[int], n: int, ring: RingPresentation | None = None) -> FormalBundle:
    """E_V = M_V^dual for V = sum O(d_i) on P^n."""
    from .chowring import make_projective_space

    if not V:
        raise EmptyInput("V must list at least one degree")
    if any(d < 0 for d in V) or not any(d >= 1 for d in V):
        raise PreconditionFailed("need all d_i >= 0 and some d_i >= 1")
    ring = make_projective_space(n) if ring is None else ring
    if ring.kind != "projective_space" or ring.construction["n"] != n:
        raise RingMismatch("ring must be the projective space of dimension n")
    total = None
    for d in V:
        if d == 0:
            continue  # M_{O} = 0
        M = syzygy_kernel(ring, d)
        total = M if total is None else dsum(total, M)
    return dual(total)


def generic_bundles(ranks: Sequence[int], dimension: int, extra: Sequence[tuple[str, int]] = ()):
    """Bundles with independent Chern classes over a free formal base.

    Bundle k gets generators ``e{k}_{i}`` of degree i for i <= min(rank, dimension).
    Returns the ring and the bundles.
    """
    from .chowring import make_formal_base

    gens = []
    for k, r in enumerate(ranks, start=1):
        gens += [(f"e{k}_{i}", i) for i in range(1, min(r, dimension) + 1)]
    ring = make_formal_base(dimension, list(gens) + list(extra))
    bundles = []
    for k, r in enumerate(ranks, start=1):
        classes = [ring.gen(f"e{k}_{i}") for i in range(1, min(r, dimension) + 1)]
        bundles.append(from_chern(ring, r, classes))
    return ring, bundles


def check_chi_multiplicative(E: FormalBundle, F: FormalBundle) -> bool:
    """chi(E x F) == rank(E) chi(F) for E with trivial Chern classes."""
    from .riemannroch import euler_char

    if not is_chern_trivial(E):
        raise PreconditionFailed("E must have vanishing Chern classes")
    return euler_char(tensor(E, F)) == E.rank * euler_char(F)


__all__ = [
    "CharacterData",
    "FormalBundle",
    "O",
    "PositivityInvariants",
    "ch",
    "check_chi_multiplicative",
    "delta_pairing",
    "det",
    "discriminant",
    "dsum",
    "dual",
    "end",
    "exp_class",
    "from_character",
    "from_chern",
    "generic_bundles",
    "frobenius_pullback",
    "hyperplane",
    "is_chern_trivial",
    "line_bundle",
    "log_ch",
    "positivity_invariants",
    "pullback",
    "segre",
    "segre_dual_recursion",
    "slope",
    "sym",
    "syzygy",
    "syzygy_kernel",
    "tangent_pn",
    "tensor",
    "tensor_power",
    "trivial",
    "twist",
    "wedge",
]
