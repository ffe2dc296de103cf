"""Direct sums of line bundles on P^1 and their positivity verdicts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import EmptyWedge, PreconditionFailed, UnknownBundle


@dataclass(frozen=True)
class SplittingType:
    """Multiset of degrees, stored sorted descending."""

    degrees: tuple[int, ...]

    def __init__(self, degrees: Iterable[int]):
        degs = tuple(sorted((int(d) for d in degrees), reverse=True))
        if not degs:
            raise ValueError("a splitting type needs at least one summand")
        object.__setattr__(self, "degrees", degs)

    def __len__(self):
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def __repr__(self):
        return f"SplittingType{self.degrees}"

    # algebra
    def dsum(self, other: SplittingType) -> SplittingType:
        return SplittingType(self.degrees + other.degrees)

    def tensor(self, other: SplittingType) -> SplittingType:
        return SplittingType(a + b for a in self.degrees for b in other.degrees)

    def sym(self, m: int) -> SplittingType:
        if m < 0:
            raise ValueError("m must be >= 0")
        return SplittingType(sum(c) for c in itertools.combinations_with_replacement(self.degrees, m))

    def wedge(self, k: int) -> SplittingType:
        if k > len(self.degrees):
            raise EmptyWedge(f"wedge^{k} of rank {len(self.degrees)} is zero")
        if k < 0:
            raise ValueError("k must be >= 0")
        return SplittingType(sum(c) for c in itertools.combinations(self.degrees, k))

    def dual(self) -> SplittingType:
        return SplittingType(-d for d in self.degrees)

    def twist(self, d: int) -> SplittingType:
        return SplittingType(x + d for x in self.degrees)

    def frobenius(self, p: int, m: int = 1) -> SplittingType:
        return SplittingType(x * p**m for x in self.degrees)

    # verdicts
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)

    def is_semistable(self) -> bool:
        # the HN filtration of a split bundle is by degree
        return self.degrees[0] == self.degrees[-1]

    def is_nef(self) -> bool:
        return self.degrees[-1] >= 0

    def is_ample(self) -> bool:
        return self.degrees[-1] > 0

    def is_numerically_flat(self) -> bool:
        return all(d == 0 for d in self.degrees)

    def hn_slopes(self) -> tuple[int, ...]:
        return self.degrees

    def is_one_homogeneous_projectivization(self) -> bool:
        """Nef = Eff on P(E): on P^1 this happens iff E is (strongly) semistable."""
        return self.degrees[0] == self.degrees[-1]

    def h0(self) -> int:
        return sum(d + 1 for d in self.degrees if d >= 0)

    def check_section_bound(self) -> bool | None:
        """h0 <= rank + degree for a semistable type; None when the bound is vacuous."""
        if not self.is_semistable():
            raise PreconditionFailed("section bound needs a semistable splitting type")
        if self.rank + self.degree < 0:
            return None
        return self.h0() <= self.rank + self.degree


# -- module-level aliases ---------------------------------------------------------------


def slope(S: SplittingType) -> Fraction:
    return S.slope()


def is_semistable(S: SplittingType) -> bool:
    return S.is_semistable()


def is_nef(S: SplittingType) -> bool:
    return S.is_nef()


def is_ample(S: SplittingType) -> bool:
    return S.is_ample()


def is_numerically_flat(S: SplittingType) -> bool:
    return S.is_numerically_flat()


def h0(S: SplittingType) -> int:
    return S.h0()


def check_section_bound(S: SplittingType) -> bool | None:
    return S.check_section_bound()


# -- restrictions of named bundles to a line ----------------------------------------------


def line(d: int) -> SplittingType:
    """O(d) restricted to a line."""
    return SplittingType([d])


def tangent_restriction(n: int) -> SplittingType:
    """T_{P^n} on a line: O(2) + O(1)^(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return SplittingType([2] + [1] * (n - 1))


def euler_restriction(n: int) -> SplittingType:
    """T_{P^n}(-1) on a line: O(1) + O^(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return SplittingType([1] + [0] * (n - 1))


def _tensor_power(S: SplittingType, k: int) -> SplittingType:
    out = S
    for _ in range(k - 1):
        out = out.tensor(S)
    return out


NAMED_RESTRICTIONS: dict[str, Callable[[int], SplittingType]] = {
    "tangent": tangent_restriction,
    "euler": euler_restriction,
    "cotangent": lambda n: tangent_restriction(n).dual(),
    # O(-1) x (T(-1))^{x3} on P^2
    "notnef": lambda n: _tensor_power(euler_restriction(n), 3).twist(-1),
    # the Hilb^2 P^2 sequence 0 -> O -> Sym^2 Sym^2 T(-1) (-2) -> Sym^4 T(-1) (-2) -> 0
    "hilb2p2-sub": lambda n: SplittingType([0]),
    "hilb2p2-middle": lambda n: euler_restriction(n).sym(2).sym(2).twist(-2),
    "hilb2p2-quotient": lambda n: euler_restriction(n).sym(4).twist(-2),
}


def restriction_of(name: str, n: int = 2) -> SplittingType:
    """Splitting type on a line of a named bundle on P^n."""
    if name.startswith("O(") and name.endswith(")"):
        try:
            return line(int(name[2:-1]))
        except ValueError:
            pass
    try:
        build = NAMED_RESTRICTIONS[name]
    except KeyError:
        raise UnknownBundle(f"unknown bundle {name!r}; known: {sorted(NAMED_RESTRICTIONS)}") from None
    return build(n)
