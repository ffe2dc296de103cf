"""Chern classes of symmetric and exterior powers by root expansion.

Polynomials in the root variables x_1..x_r are dicts from exponent tuples
to ints.  Symmetric results are rewritten in the elementary basis by
repeatedly subtracting the product of e's matching the lex-leading term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, TypeVar

from .errors import EmptyWedge, InternalSymmetryError

T = TypeVar("T")

RootPoly = dict[tuple[int, ...], int]


@dataclass(frozen=True)
class SymPoly:
    """Weighted-homogeneous polynomial in e_1..e_rank.

    ``terms`` maps a partition, written as a descending tuple of e-indices,
    to its coefficient: ``{(2, 1): 4}`` is ``4*e2*e1``.
    """

    rank: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]
    degree: int

    @classmethod
    def from_dict(cls, rank: int, degree: int, terms: dict[tuple[int, ...], Fraction]) -> SymPoly:
        items = tuple(sorted((k, Fraction(v)) for k, v in terms.items() if v))
        for part, _ in items:
            if sum(part) != degree or any(p > rank for p in part):
                raise InternalSymmetryError(f"partition {part} out of range")
        return cls(rank, items, degree)

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def evaluate(self, values: Sequence[T], one: T, zero: T | None = None) -> T:
        """Substitute ``values[i-1]`` for e_i."""
        total = zero if zero is not None else one * 0
        for part, coeff in self.terms:
            term = one
            for i in part:
                term = term * values[i - 1]
            total = total + term * coeff
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*" + "*".join(f"c{i}" for i in part) for part, c in self.terms)


# -- plain root polynomials ------------------------------------------------------


def _poly_mul_trunc(a: RootPoly, b: RootPoly, d: int) -> RootPoly:
    out: RootPoly = {}
    for m1, c1 in a.items():
        s1 = sum(m1)
        for m2, c2 in b.items():
            if s1 + sum(m2) > d:
                continue
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _expand_factors(weights: list[tuple[int, ...]], r: int, d: int) -> RootPoly:
    """Product over the given multiplicity vectors w of (1 + sum_i w_i x_i), truncated at degree d."""
    zero = (0,) * r
    poly: RootPoly = {zero: 1}
    for w in weights:
        linear = {zero: 1}
        for i, wi in enumerate(w):
            if wi:
                linear[tuple(1 if j == i else 0 for j in range(r))] = wi
        poly = _poly_mul_trunc(poly, linear, d)
    return poly


@lru_cache(maxsize=None)
def _elementary(r: int, k: int) -> tuple:
    terms = {}
    for subset in itertools.combinations(range(r), k):
        terms[tuple(1 if i in subset else 0 for i in range(r))] = 1
    return tuple(terms.items())


@lru_cache(maxsize=None)
def _e_product(r: int, part: tuple[int, ...]) -> tuple:
    poly: RootPoly = {(0,) * r: 1}
    for k in part:
        poly = _poly_mul_trunc(poly, dict(_elementary(r, k)), 10**9)
    return tuple(poly.items())


def to_elementary(poly: RootPoly, r: int, degree: int) -> SymPoly:
    """Rewrite a homogeneous symmetric polynomial in the elementary basis."""
    work = {m: Fraction(c) for m, c in poly.items() if c and sum(m) == degree}
    if any(sum(m) != degree for m, c in poly.items() if c):
        raise InternalSymmetryError("input is not homogeneous of the stated degree")
    result: dict[tuple[int, ...], Fraction] = {}
    while work:
        lead = max(work)
        coeff = work[lead]
        if any(lead[i] < lead[i + 1] for i in range(r - 1)):
            raise InternalSymmetryError(f"leading monomial {lead} is not a partition")
        # x^lead is the leading term of prod_k e_k^(lead_k - lead_(k+1))
        part: list[int] = []
        for k in range(r, 0, -1):
            nxt = lead[k] if k < r else 0
            part.extend([k] * (lead[k - 1] - nxt))
        part_t = tuple(part)
        result[part_t] = result.get(part_t, 0) + coeff
        for m, c in _e_product(r, part_t):
            v = work.get(m, 0) - coeff * c
            if v:
                work[m] = v
            else:
                work.pop(m, None)
    return SymPoly.from_dict(r, degree, result)


# -- Chern class templates ----------------------------------------------------------


@lru_cache(maxsize=None)
def chern_of_sym(m: int, r: int, d: int) -> tuple[SymPoly, ...]:
    """c_1..c_d of Sym^m of a rank-r bundle, as polynomials in its c_1..c_r."""
    if m < 0 or r < 1 or d < 1:
        raise ValueError("need m >= 0, r >= 1, d >= 1")
    weights = []
    for multiset in itertools.combinations_with_replacement(range(r), m):
        w = [0] * r
        for i in multiset:
            w[i] += 1
        weights.append(tuple(w))
    poly = _expand_factors(weights, r, d)
    return tuple(
        to_elementary({mo: c for mo, c in poly.items() if sum(mo) == k}, r, k) for k in range(1, d + 1)
    )


def sym_rank(m: int, r: int) -> int:
    return comb(m + r - 1, r - 1)


@lru_cache(maxsize=None)
def chern_of_wedge(k: int, r: int, d: int) -> tuple[SymPoly, ...]:
    """c_1..c_d of the k-th exterior power of a rank-r bundle."""
    if k > r:
        raise EmptyWedge(f"wedge^{k} of a rank {r} bundle is zero")
    if k < 0 or d < 1:
        raise ValueError("need k >= 0 and d >= 1")
    weights = []
    for subset in itertools.combinations(range(r), k):
        weights.append(tuple(1 if i in subset else 0 for i in range(r)))
    poly = _expand_factors(weights, r, d)
    return tuple(
        to_elementary({mo: c for mo, c in poly.items() if sum(mo) == j}, r, j) for j in range(1, d + 1)
    )


def wedge_rank(k: int, r: int) -> int:
    return comb(r, k)


# -- Newton identities ------------------------------------------------------------------


def newton_convert(direction: str, data: Sequence[T], d: int, rank=None) -> list[T]:
    """Convert c_1..c_d <-> ch_1..ch_d (ch_k = p_k / k!).

    ``data`` holds degree-1..d entries of any type closed under +, * and
    rational scaling (Fractions, graded classes).  Entries beyond
    ``len(data)`` are zero.  With ``rank`` given, ``c_to_ch`` prepends ch_0.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if not data:
        raise ValueError("data must be non-empty")
    zero = data[0] * 0
    vals = list(data[:d]) + [zero] * (d - len(data))
    fact = [1]
    for k in range(1, d + 1):
        fact.append(fact[-1] * k)
    if direction == "c_to_ch":
        e = vals
        p: list[T] = []
        for k in range(1, d + 1):
            acc = e[k - 1] * ((-1) ** (k - 1) * k)
            for i in range(1, k):
                acc = acc + e[i - 1] * p[k - i - 1] * (-1) ** (i - 1)
            p.append(acc)
        out = [p[k - 1] * Fraction(1, fact[k]) for k in range(1, d + 1)]
        if rank is not None:
            out.insert(0, rank)
        return out
    if direction == "ch_to_c":
        p = [vals[k - 1] * fact[k] for k in range(1, d + 1)]
        e: list[T] = []
        for k in range(1, d + 1):
            # k e_k = sum_{i=1}^{k} (-1)^(i-1) e_(k-i) p_i, e_0 = 1
            acc = p[k - 1] * (-1) ** (k - 1)
            for i in range(1, k):
                acc = acc + e[k - i - 1] * p[i - 1] * (-1) ** (i - 1)
            e.append(acc * Fraction(1, k))
        return e
    raise ValueError(f"unknown direction {direction!r}")
