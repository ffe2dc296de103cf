"""Tableaux with permutation columns and the basis bookkeeping of Sym^r(Sym^{2a} V)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterator

import numpy as np

from ..errors import EnumerationTooLarge

DEFAULT_CAP = 10**7

ExpVector = tuple[int, ...]
MultisetKey = tuple[ExpVector, ...]


def permutation_sign(perm) -> int:
    """Sign of a permutation of 0..n-1, by cycle counting."""
    n = len(perm)
    seen = [False] * n
    parity = 0
    for i in range(n):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


@lru_cache(maxsize=None)
def permutations_table(r: int) -> tuple[np.ndarray, np.ndarray]:
    """All permutations of 0..r-1 in lexicographic order with their signs."""
    perms = np.array(list(itertools.permutations(range(r))), dtype=np.int64).reshape(-1, r)
    signs = np.array([permutation_sign(p) for p in perms], dtype=np.int64)
    perms.setflags(write=False)
    signs.setflags(write=False)
    return perms, signs


def tableau_count(r: int, a: int) -> int:
    """|Sigma| = (r!)^{2a} / 2."""
    _validate(r, a)
    return factorial(r) ** (2 * a) // 2


def _validate(r: int, a: int) -> None:
    if r < 2 or a < 1:
        raise ValueError(f"need r >= 2 and a >= 1, got r={r}, a={a}")


def check_cap(r: int, a: int, cap: int | None) -> int:
    count = tableau_count(r, a)
    cap = DEFAULT_CAP if cap is None else cap
    if count > cap:
        raise EnumerationTooLarge(count, cap)
    return count


@dataclass(frozen=True)
class Tableau:
    """r x 2a array; column i lists T(1,i), ..., T(r,i) with values 1..r."""

    columns: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.columns[0])

    @property
    def width(self) -> int:
        return len(self.columns)

    def entry(self, j: int, i: int) -> int:
        """T(j, i), 1-based as in the usual notation."""
        return self.columns[i - 1][j - 1]

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.columns))

    @property
    def sign(self) -> int:
        s = 1
        for col in self.columns:
            s *= permutation_sign([v - 1 for v in col])
        return s


def enumerate_tableaux(r: int, a: int, cap: int | None = None, first_column: str = "even") -> Iterator[tuple[Tableau, int]]:
    """Stream (tableau, sign) over Sigma in lexicographic column order.

    ``first_column="odd"`` streams the complementary set used by tests.
    """
    check_cap(r, a, cap)
    perms = list(itertools.permutations(range(1, r + 1)))
    want = 1 if first_column == "even" else -1
    if first_column not in ("even", "odd"):
        raise ValueError("first_column must be 'even' or 'odd'")
    firsts = [p for p in perms if permutation_sign([v - 1 for v in p]) == want]
    for cols in itertools.product(firsts, *([perms] * (2 * a - 1))):
        T = Tableau(tuple(cols))
        yield T, T.sign


# -- Sym^{2a} V basis and multiset ranking --------------------------------------------


@lru_cache(maxsize=None)
def sym_basis(r: int, degree: int) -> tuple[ExpVector, ...]:
    """Exponent vectors of degree-``degree`` monomials in r variables, descending lex."""
    out = []
    for cut in itertools.combinations(range(degree + r - 1), r - 1):
        prev, vec = -1, []
        for c in cut:
            vec.append(c - prev - 1)
            prev = c
        vec.append(degree + r - 2 - prev)
        out.append(tuple(vec))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def sym_index(r: int, degree: int) -> dict[ExpVector, int]:
    return {v: i for i, v in enumerate(sym_basis(r, degree))}


def binom_table(n_max: int, k_max: int) -> np.ndarray:
    out = np.zeros((n_max + 1, k_max + 1), dtype=np.int64)
    for n in range(n_max + 1):
        for k in range(min(n, k_max) + 1):
            out[n, k] = comb(n, k)
    return out


def multiset_count(n_items: int, size: int) -> int:
    return comb(n_items + size - 1, size)


def colex_rank(sorted_idx, binom: np.ndarray) -> int:
    return int(sum(binom[x + j, j + 1] for j, x in enumerate(sorted_idx)))


def colex_ranks(sorted_rows: np.ndarray, binom: np.ndarray) -> np.ndarray:
    """Vectorised colex rank of each row (ascending indices)."""
    rank = np.zeros(sorted_rows.shape[0], dtype=np.int64)
    for j in range(sorted_rows.shape[1]):
        rank += binom[sorted_rows[:, j] + j, j + 1]
    return rank


def colex_unrank(ranks: np.ndarray, size: int, n_items: int, binom: np.ndarray) -> np.ndarray:
    """Inverse of ``colex_ranks`` for multisets of ``size`` indices below ``n_items``."""
    ranks = np.asarray(ranks, dtype=np.int64).copy()
    out = np.zeros((len(ranks), size), dtype=np.int64)
    for j in range(size - 1, -1, -1):
        col = binom[j : j + n_items, j + 1]  # binom(x + j, j + 1) for x = 0..n_items-1
        x = np.searchsorted(col, ranks, side="right") - 1
        out[:, j] = x
        ranks -= col[x]
    return out


@lru_cache(maxsize=None)
def extension_table(n_items: int, d: int) -> np.ndarray:
    """T[s, k] = colex rank of (multiset with rank s, size d) plus index k."""
    binom = binom_table(n_items + d + 1, d + 2)
    size = multiset_count(n_items, d)
    if d == 0:
        table = np.arange(n_items, dtype=np.int64)[None, :]
    else:
        members = colex_unrank(np.arange(size), d, n_items, binom)
        table = np.empty((size, n_items), dtype=np.int64)
        for k in range(n_items):
            grown = np.sort(np.concatenate([members, np.full((size, 1), k)], axis=1), axis=1)
            table[:, k] = colex_ranks(grown, binom)
    table.setflags(write=False)
    return table
