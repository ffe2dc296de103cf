"""The element W of Sym^r(Sym^{2a} V) built from signed tableaux, and its checks.

V has basis e_1..e_r.  W is accumulated in a dense vector indexed by the
colex rank of sorted multisets of Sym^{2a} basis indices, then published as
a sparse ``TableauSum`` keyed by lexicographically sorted exponent vectors.

The GL action is computed modulo several primes just below 2^31 and lifted
by CRT; the number of primes comes from an a-priori bound on the output
coefficients, so the integer result is exact.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial, gcd, prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from .._accel import resolve_backend
from . import _kernels
from .tableaux import (
    ExpVector,
    MultisetKey,
    binom_table,
    check_cap,
    colex_unrank,
    extension_table,
    multiset_count,
    permutations_table,
    sym_basis,
    sym_index,
    tableau_count,
)

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[int]]


@dataclass(frozen=True)
class TableauSum:
    """Sparse integer vector in Sym^r(Sym^{2a} V); zero coefficients are never stored."""

    r: int
    a: int
    terms: Mapping[MultisetKey, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: int(v) for k, v in self.terms.items() if v}
        object.__setattr__(self, "terms", clean)

    def coefficient(self, key: Iterable[ExpVector]) -> int:
        return self.terms.get(tuple(sorted(tuple(v) for v in key)), 0)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TableauSum):
            return NotImplemented
        return (self.r, self.a) == (other.r, other.a) and self.terms == other.terms

    __hash__ = None

    def _check(self, other: TableauSum):
        if (self.r, self.a) != (other.r, other.a):
            raise ValueError("TableauSums with different (r, a)")

    def __add__(self, other: TableauSum) -> TableauSum:
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TableauSum(self.r, self.a, out)

    def __neg__(self) -> TableauSum:
        return self.scaled(-1)

    def __sub__(self, other: TableauSum) -> TableauSum:
        return self + (-other)

    def scaled(self, t: int) -> TableauSum:
        return TableauSum(self.r, self.a, {k: t * v for k, v in self.terms.items()})

    def content(self) -> int:
        return content(self)

    def __repr__(self):
        return f"TableauSum(r={self.r}, a={self.a}, {len(self.terms)} terms)"


# -- dense <-> sparse ---------------------------------------------------------------------


def _layout(r: int, a: int):
    basis = sym_basis(r, 2 * a)
    n = len(basis)
    return basis, n, binom_table(n + r, r + 1)


def from_dense(r: int, a: int, dense: Sequence[int]) -> TableauSum:
    basis, n, binom = _layout(r, a)
    dense = np.asarray(dense, dtype=object)
    nz = np.flatnonzero(dense != 0)
    rows = colex_unrank(nz, r, n, binom)
    terms = {}
    for rank, row in zip(nz, rows):
        terms[tuple(sorted(basis[i] for i in row))] = int(dense[rank])
    return TableauSum(r, a, terms)


def _sorted_index_rows(W: TableauSum) -> tuple[np.ndarray, list[int]]:
    index = sym_index(W.r, 2 * W.a)
    keys = list(W.terms)
    rows = np.array([sorted(index[v] for v in k) for k in keys], dtype=np.int64).reshape(len(keys), W.r)
    return rows, [W.terms[k] for k in keys]


# -- phi ------------------------------------------------------------------------------------


def _phi_inputs(r: int, a: int, first_column: str):
    if first_column not in ("even", "odd"):
        raise ValueError("first_column must be 'even' or 'odd'")
    perms, signs = permutations_table(r)
    want = 1 if first_column == "even" else -1
    first_idx = np.flatnonzero(signs == want).astype(np.int64)
    base = 2 * a + 1
    row_weight = np.array([base**v for v in range(r)], dtype=np.int64)
    row_lookup = np.full(base**r, -1, dtype=np.int64)
    for i, vec in enumerate(sym_basis(r, 2 * a)):
        row_lookup[sum(c * base**v for v, c in enumerate(vec))] = i
    return perms, signs, first_idx, row_weight, row_lookup


def phi_dense(
    r: int,
    a: int,
    cap: int | None = None,
    first_column: str = "even",
    backend: str | None = None,
    workers: int = 1,
) -> np.ndarray:
    """W as a dense int64 vector over colex multiset ranks (uncached)."""
    count = check_cap(r, a, cap)
    backend = resolve_backend(backend)
    kernel = _kernels.PHI_KERNELS[backend]
    perms, signs, first_idx, row_weight, row_lookup = _phi_inputs(r, a, first_column)
    _, n, binom = _layout(r, a)
    size = multiset_count(n, r)
    n_cols = 2 * a

    def run(lo: int, hi: int) -> np.ndarray:
        out = np.zeros(size, dtype=np.int64)
        kernel(perms, signs, first_idx, n_cols, row_weight, row_lookup, binom, out, lo, hi)
        return out

    workers = max(1, int(workers))
    if workers == 1:
        return run(0, count)
    # contiguous ranges of the flat index split Sigma along its higher columns
    bounds = np.linspace(0, count, workers + 1).astype(np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda i: run(int(bounds[i]), int(bounds[i + 1])), range(workers)))
    return np.sum(parts, axis=0)


_PHI_CACHE: dict[tuple[int, int, str], TableauSum] = {}


def phi_image(
    r: int,
    a: int,
    cap: int | None = None,
    first_column: str = "even",
    backend: str | None = None,
    workers: int = 1,
) -> TableauSum:
    """W = sum over Sigma of sgn T times the product of the rows of T."""
    check_cap(r, a, cap)
    key = (r, a, first_column)
    if key not in _PHI_CACHE:
        _PHI_CACHE[key] = from_dense(r, a, phi_dense(r, a, cap, first_column, backend, workers))
    return _PHI_CACHE[key]


def clear_cache() -> None:
    _PHI_CACHE.clear()


def phi_reference(r: int, a: int, cap: int | None = None, first_column: str = "even") -> TableauSum:
    """Pure-Python oracle for ``phi_image``, straight from the tableau stream."""
    from .tableaux import enumerate_tableaux

    terms: dict[MultisetKey, int] = {}
    for T, sgn in enumerate_tableaux(r, a, cap, first_column):
        key = []
        for row in T.rows():
            vec = [0] * r
            for v in row:
                vec[v - 1] += 1
            key.append(tuple(vec))
        key = tuple(sorted(key))
        terms[key] = terms.get(key, 0) + sgn
    return TableauSum(r, a, terms)


# -- multilinear form ---------------------------------------------------------------------


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _linear(v: Sequence[int]) -> dict:
    r = len(v)
    return {tuple(int(i == k) for i in range(r)): int(c) for k, c in enumerate(v) if c}


def _sym_product(factors: list[dict], r: int, a: int) -> TableauSum:
    """Product in Sym^r(Sym^{2a} V) of r elements of Sym^{2a} V."""
    acc: dict[MultisetKey, int] = {(): 1}
    for f in factors:
        nxt: dict[MultisetKey, int] = {}
        for key, c in acc.items():
            for e, d in f.items():
                k2 = tuple(sorted(key + (e,)))
                nxt[k2] = nxt.get(k2, 0) + c * d
        acc = nxt
    return TableauSum(r, a, acc)


def phi_multilinear(columns: Sequence[Sequence[Sequence[int]]], cap: int | None = None) -> TableauSum:
    """Evaluate the multilinear map on vectors v_{k,i}: ``columns[i][k]`` in Z^r.

    There are 2a columns of r vectors each; the basis choice v_{k,i} = e_k gives W.
    """
    from .tableaux import enumerate_tableaux

    width = len(columns)
    if width % 2:
        raise ValueError("need an even number of columns")
    r, a = len(columns[0]), width // 2
    lin = [[_linear(v) for v in col] for col in columns]
    total = TableauSum(r, a)
    for T, sgn in enumerate_tableaux(r, a, cap):
        rows = []
        for row in T.rows():
            poly = {(0,) * r: 1}
            for i, k in enumerate(row):
                poly = _poly_mul(poly, lin[i][k - 1])
            rows.append(poly)
        total = total + _sym_product(rows, r, a).scaled(sgn)
    return total


# -- GL action --------------------------------------------------------------------------------


def _primes_below(bound: int, count: int) -> list[int]:
    def is_prime(n):
        if n % 2 == 0:
            return False
        d = 3
        while d * d <= n:
            if n % d == 0:
                return False
            d += 2
        return True

    out, n = [], bound - 1
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n -= 1
    return out


PRIMES = tuple(_primes_below(2**31, 64))


def sym_power_matrix(g: Matrix, degree: int) -> list[list[int]]:
    """Matrix of Sym^degree(g) on the descending-lex monomial basis.

    Convention: e_j maps to sum_k g[k][j] e_k.
    """
    r = len(g)
    basis = sym_basis(r, degree)
    index = sym_index(r, degree)
    images = [_linear([g[k][j] for k in range(r)]) for j in range(r)]
    rho = [[0] * len(basis) for _ in basis]
    for col, alpha in enumerate(basis):
        poly = {(0,) * r: 1}
        for j, m in enumerate(alpha):
            for _ in range(m):
                poly = _poly_mul(poly, images[j])
        for e, c in poly.items():
            rho[index[e]][col] = c
    return rho


def _coefficient_bound(rows: np.ndarray, weights: list[int], rho: list[list[int]]) -> int:
    colnorm = [sum(abs(rho[k][c]) for k in range(len(rho))) for c in range(len(rho))]
    return sum(abs(w) * prod(colnorm[i] for i in row) for row, w in zip(rows.tolist(), weights))


def _trie_levels(rows: np.ndarray):
    """For level L = r..1: (parent index at level L-1, label rows[:, L-1], n_parents)."""
    r = rows.shape[1]
    levels = []
    _, inverse = np.unique(rows, axis=0, return_inverse=True)
    child_of = inverse.reshape(-1)
    for L in range(r, 0, -1):
        if L - 1 > 0:
            prefixes, parent_of = np.unique(rows[:, : L - 1], axis=0, return_inverse=True)
            parent_of = parent_of.reshape(-1)
            n_par = len(prefixes)
        else:
            parent_of = np.zeros(len(rows), dtype=np.int64)
            n_par = 1
        n_child = int(child_of.max()) + 1
        child_parent = np.zeros(n_child, dtype=np.int64)
        child_label = np.zeros(n_child, dtype=np.int64)
        child_parent[child_of] = parent_of
        child_label[child_of] = rows[:, L - 1]
        levels.append((child_of, child_parent, child_label, n_par))
        child_of = parent_of
    return levels


def _apply_mod(rows, weights, rho, p, levels, n, r, backend):
    lift = _kernels.LIFT_KERNELS[backend]
    forms = np.array([[rho[k][lab] % p for k in range(n)] for lab in range(n)], dtype=np.int64)
    leaf_of = levels[0][0]
    polys = np.zeros((int(leaf_of.max()) + 1, 1), dtype=np.int64)
    for i, w in zip(leaf_of, weights):
        polys[i, 0] = (polys[i, 0] + w) % p
    for depth, (_, child_parent, child_label, n_par) in enumerate(levels):
        table = extension_table(n, depth)
        polys = lift(polys, child_parent, child_label, forms, table, n_par, p)
    return polys[0]


def _crt(residues: list[np.ndarray], primes: list[int]) -> np.ndarray:
    x = residues[0].astype(object)
    modulus = primes[0]
    for res, p in zip(residues[1:], primes[1:]):
        inv = pow(modulus, -1, p)
        t = ((res.astype(object) - x) * inv) % p
        x = x + modulus * t
        modulus *= p
    half = modulus // 2
    return np.where(x > half, x - modulus, x)


def apply_gl(W: TableauSum, g: Matrix, backend: str | None = None) -> TableauSum:
    """Substitute e_j -> sum_k g[k][j] e_k throughout W, exactly over Z."""
    r, a = W.r, W.a
    if len(g) != r or any(len(row) != r for row in g):
        raise ValueError(f"g must be {r}x{r}")
    if not W:
        return W
    backend = resolve_backend(backend)
    n = len(sym_basis(r, 2 * a))
    rho = sym_power_matrix(g, 2 * a)
    rows, weights = _sorted_index_rows(W)
    bound = _coefficient_bound(rows, weights, rho)
    if bound == 0:
        return TableauSum(r, a)
    primes, modulus = [], 1
    for p in PRIMES:
        primes.append(p)
        modulus *= p
        if modulus > 2 * bound:
            break
    else:
        raise OverflowError("coefficient bound exceeds the prime budget")
    levels = _trie_levels(rows)
    residues = [_apply_mod(rows, weights, rho, p, levels, n, r, backend) for p in primes]
    logger.debug("apply_gl r=%d a=%d: %d terms, %d primes", r, a, len(weights), len(primes))
    return from_dense(r, a, _crt(residues, primes))


def apply_gl_reference(W: TableauSum, g: Matrix) -> TableauSum:
    """Dictionary expansion oracle for ``apply_gl``; small cases only."""
    r, a = W.r, W.a
    basis = sym_basis(r, 2 * a)
    index = sym_index(r, 2 * a)
    rho = sym_power_matrix(g, 2 * a)
    images = {v: {basis[k]: rho[k][index[v]] for k in range(len(basis)) if rho[k][index[v]]} for v in basis}
    total = TableauSum(r, a)
    for key, c in W.terms.items():
        total = total + _sym_product([images[v] for v in key], r, a).scaled(c)
    return total


def determinant(g: Matrix) -> int:
    """Exact integer determinant by fraction-free elimination (Bareiss)."""
    m = [list(map(int, row)) for row in g]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matmul(g: Matrix, h: Matrix) -> list[list[int]]:
    n = len(g)
    return [[sum(g[i][k] * h[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def random_unimodular(r: int, rng: random.Random, max_factors: int = 8, bound: int = 3) -> list[list[int]]:
    """Product of at most ``max_factors`` elementary and signed permutation matrices."""
    g = [[int(i == j) for j in range(r)] for i in range(r)]
    for _ in range(rng.randint(1, max_factors)):
        if rng.random() < 0.6:
            i, j = rng.sample(range(r), 2)
            f = [[int(x == y) for y in range(r)] for x in range(r)]
            f[i][j] = rng.choice([c for c in range(-bound, bound + 1) if c])
        else:
            perm = list(range(r))
            rng.shuffle(perm)
            f = [[0] * r for _ in range(r)]
            for x, y in enumerate(perm):
                f[x][y] = rng.choice((-1, 1))
        g = matmul(f, g)
    return g


@dataclass(frozen=True)
class EquivarianceReport:
    r: int
    a: int
    trials: int
    passed: bool
    witness: tuple[tuple[int, ...], ...] | None = None


def check_equivariance(
    r: int, a: int, trials: int = 20, seed: int = 0, cap: int | None = None, backend: str | None = None
) -> EquivarianceReport:
    """apply_gl(W, g) == det(g)^{2a} W for random unimodular g."""
    W = phi_image(r, a, cap)
    rng = random.Random(seed)
    for _ in range(trials):
        g = random_unimodular(r, rng)
        if apply_gl(W, g, backend) != W.scaled(determinant(g) ** (2 * a)):
            return EquivarianceReport(r, a, trials, False, tuple(map(tuple, g)))
    return EquivarianceReport(r, a, trials, True)


# -- multiplication and injectivity --------------------------------------------------------


def sym_multiplication(element: TableauSum | Mapping[MultisetKey, int]) -> dict[ExpVector, int]:
    """Sym^a(Sym^b V) -> Sym^{ab} V: multiply the monomials of each multiset."""
    terms = element.terms if isinstance(element, TableauSum) else element
    out: dict[ExpVector, int] = {}
    for key, c in terms.items():
        mono = tuple(map(sum, zip(*key)))
        out[mono] = out.get(mono, 0) + c
    return {m: c for m, c in out.items() if c}


def compose_phi_then_multiply(r: int, a: int, cap: int | None = None) -> dict[ExpVector, int]:
    """Image of W in Sym^{2ra} V; the empty dict is zero."""
    return sym_multiplication(phi_image(r, a, cap))


def content(W: TableauSum) -> int:
    if not W:
        raise ValueError("content of zero is undefined")
    g = 0
    for v in W.terms.values():
        g = gcd(g, v)
    return g


def distinguished_key(r: int, a: int) -> MultisetKey:
    return tuple(sorted(tuple(2 * a * int(i == j) for i in range(r)) for j in range(r)))


@dataclass(frozen=True)
class InjectivityReport:
    r: int
    a: int
    count: int
    content: int
    distinguished_coefficient: int
    has_unit_coefficient: bool
    # even row permutations act freely on Sigma and fix every row multiset,
    # so W is divisible by r!/2; these are the coefficients of W / (r!/2)
    orbit_size: int
    orbit_content: int
    orbit_distinguished_coefficient: int


def report_injectivity(r: int, a: int, cap: int | None = None) -> InjectivityReport:
    W = phi_image(r, a, cap)
    orbit = factorial(r) // 2
    c = content(W)
    dist = W.terms.get(distinguished_key(r, a), 0)
    return InjectivityReport(
        r,
        a,
        tableau_count(r, a),
        c,
        dist,
        any(abs(v) == 1 for v in W.terms.values()),
        orbit,
        c // orbit if c % orbit == 0 else 0,
        dist // orbit if dist % orbit == 0 else 0,
    )
