"""The nine acceptance criteria, each at its stated tolerance (exact unless timed).

A pass/fail line per criterion is printed in the terminal summary by conftest.
"""

import random
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from chernpos import bundlecalc as bc
from chernpos import plethysm as pl
from chernpos import riemannroch as rr
from chernpos import splitcurve as sc
from chernpos.chowring import make_projective_bundle, make_projective_space, pushforward_xi, xi
from chernpos.report import HODGE_CASES, PRODUCT_SLOPE_CASES, hodge_residual, splitting_types


def h_coeff(alpha, k):
    return alpha.coefficient((k,))


@pytest.mark.acceptance(1, "notnef example: rank 8, c1=4h, c2=16h^2, c1^2-c2=0, restriction has -1, not nef, < 1 s")
def test_criterion_1_notnef():
    start = time.perf_counter()
    P2 = make_projective_space(2)
    h = P2.gen(0)
    T1 = bc.twist(bc.tangent_pn(P2), -h)
    E = bc.twist(bc.tensor_power(T1, 3), -h)
    S = sc.restriction_of("notnef")
    elapsed = time.perf_counter() - start
    assert E.rank == 8
    assert E.c(1) == 4 * h
    assert E.c(2) == 16 * h**2
    assert E.c(1) * E.c(1) - E.c(2) == 0
    assert -1 in S.degrees
    assert S.is_nef() is False
    assert elapsed < 1.0, f"took {elapsed:.3f} s"


@pytest.mark.acceptance(2, "Delta(T_Pn) = Delta(T_Pn(-1)) = (n+1) h^2 for n = 2..6")
def test_criterion_2_tangent_discriminant():
    for n in range(2, 7):
        Pn = make_projective_space(n)
        h = Pn.gen(0)
        T = bc.tangent_pn(Pn)
        assert bc.discriminant(T) == (n + 1) * h**2
        assert bc.discriminant(bc.twist(T, -h)) == (n + 1) * h**2


@pytest.mark.acceptance(3, "syzygy V=(1,2) on P3: rank 12, c1=3h, c2=7h^2, slopes -1/3 and -2/9, Delta pairing 69")
def test_criterion_3_syzygy():
    P3 = make_projective_space(3)
    h = P3.gen(0)
    E = bc.syzygy([1, 2], 3, P3)
    assert E.rank == 12
    assert E.c(1) == 3 * h
    assert E.c(2) == 7 * h**2
    assert bc.slope(bc.syzygy_kernel(P3, 1), h) == Fraction(-1, 3)
    assert bc.slope(bc.syzygy_kernel(P3, 2), h) == Fraction(-2, 9)
    assert bc.delta_pairing(E, h) == 69


@pytest.mark.acceptance(4, "Hilb^2 P^2 sequence: Chern exactness on P2, restriction (2,1,0,-1,-2) not nef")
def test_criterion_4_hilb2p2():
    P2 = make_projective_space(2)
    h = P2.gen(0)
    T1 = bc.twist(bc.tangent_pn(P2), -h)
    quot = bc.twist(bc.sym(T1, 4), -2 * h)
    mid = bc.twist(bc.sym(bc.sym(T1, 2), 2), -2 * h)
    assert bc.trivial(P2).chern * quot.chern == mid.chern
    assert 1 + quot.rank == mid.rank == 6
    S = sc.euler_restriction(2).sym(4).twist(-2)
    assert S == sc.SplittingType([2, 1, 0, -1, -2])
    assert not S.is_nef()


PLETHYSM_CASES = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (5, 1)]


@pytest.mark.acceptance(5, "plethysm suite: counts, zero composition, 20 equivariance trials, r=2 content 1, < 60 s")
def test_criterion_5_plethysm(capsys):
    pl.clear_cache()
    start = time.perf_counter()
    lines = []
    for r, a in PLETHYSM_CASES:
        count = sum(1 for _ in pl.enumerate_tableaux(r, a))
        assert count == pl.tableau_count(r, a) == factorial(r) ** (2 * a) // 2
        assert pl.compose_phi_then_multiply(r, a) == {}
        rep = pl.check_equivariance(r, a, trials=20, seed=2024)
        assert rep.passed, f"equivariance failed for {(r, a)} at g = {rep.witness}"
        inj = pl.report_injectivity(r, a)
        if r == 2:
            assert inj.content == 1
        lines.append(
            f"(r,a)=({r},{a}) |Sigma|={count} content={inj.content} "
            f"distinguished={inj.distinguished_coefficient} unit={inj.has_unit_coefficient}"
        )
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        print()
        for line in lines:
            print("   ", line)
    assert elapsed < 60.0, f"took {elapsed:.1f} s"


@pytest.mark.acceptance(6, "Segre cross-check: pi_*(xi^(j+r-1)) = s_j(E^dual) = printed recursion, r in {2,3}, j <= 3")
def test_criterion_6_segre():
    failures = []
    for r in (2, 3):
        base, (E,) = bc.generic_bundles([r], 3)
        P = make_projective_bundle(base, E)
        sdual = bc.segre(bc.dual(E), 3)
        for j in range(1, 4):
            push = pushforward_xi(xi(P) ** (j + r - 1))
            assert push == sdual[j]
            printed = bc.segre_dual_recursion(E, j)
            if printed != sdual[j]:
                failures.append(f"r={r} j={j}: recursion gives {printed}, pushforward gives {sdual[j]}")
    assert not failures, "; ".join(failures)


@pytest.mark.acceptance(7, "identity suite on formal bases: Whitney, ch, Delta tensor/twist, log_ch, Hodge, product slope")
def test_criterion_7_identities():
    from chernpos.chowring import make_product

    for r, s in [(1, 2), (2, 2), (2, 3), (3, 3)]:
        ring, (E, F) = bc.generic_bundles([r, s], 3, extra=[("d", 1)])
        chE, chF = bc.ch(E), bc.ch(F)
        summed = tuple(x + y for x, y in zip(chE.components, chF.components))
        assert bc.from_character(bc.CharacterData(ring, summed)).chern == E.chern * F.chern
        T = bc.tensor(E, F)
        prod = chE.total() * chF.total()
        assert all(bc.ch(T)[k] == prod.degree_part(k) for k in range(4))
        lhs = bc.discriminant(T) / (2 * (r * s) ** 2)
        assert lhs == bc.discriminant(E) / (2 * r * r) + bc.discriminant(F) / (2 * s * s)
        d = ring.gen("d")
        for G in (E, F):
            assert bc.discriminant(bc.twist(G, d * Fraction(2, 7))) == bc.discriminant(G)
            rk = int(G.rank)
            assert bc.log_ch(G, 2)[1] == -bc.discriminant(G) / (2 * rk * rk)
    for r1, r2 in HODGE_CASES:
        assert hodge_residual(r1, r2) == 0
    for n, m in PRODUCT_SLOPE_CASES:
        Pn = make_projective_space(n)
        X = make_product(Pn, make_projective_space(m))
        h1, h2 = X.gens()
        for E in (bc.tangent_pn(Pn), bc.O(Pn, 2), bc.syzygy([1], n, Pn)):
            mu = bc.slope(E, Pn.gen(0))
            assert bc.slope(bc.pullback(E, X), h1 + h2) == comb(n + m - 1, n - 1) * mu


@pytest.mark.acceptance(8, "Riemann-Roch: chi(O(m)), chi(T_P2)=8, normalized Hilbert, asymptotic m^(r+1), m^r vanish")
def test_criterion_8_riemann_roch():
    for n in range(1, 5):
        Pn = make_projective_space(n)
        for m in range(0, 8):
            assert rr.euler_char(bc.O(Pn, m)) == comb(m + n, n)
    P2 = make_projective_space(2)
    assert rr.euler_char(bc.tangent_pn(P2)) == 8
    rng = random.Random(8)
    for _ in range(20):
        X = make_projective_space(rng.choice((2, 3)))
        h = X.gen(0)
        r = rng.randint(1, 4)
        classes = [h**i * rng.randint(-2, 2) for i in range(1, min(r, X.dimension) + 1)]
        E = bc.from_chern(X, r, classes)
        assert rr.normalized_hilbert_equal(E, h) == bc.is_chern_trivial(E)
    for r in (2, 3):
        for k in (0, 1, 3, -1):
            rep = rr.check_asymptotic_vanishing(bc.trivial(P2, r), P2.gen(0) * k)
            assert rep.top_coefficients == (0, 0)
            assert rep.verdict


@pytest.mark.acceptance(9, "splitting dictionary over [-3,3]^(<=4) and the section bound")
def test_criterion_9_splitting_dictionary():
    seen = 0
    for S in splitting_types(-3, 3, 4):
        seen += 1
        flat = S.is_numerically_flat()
        assert (S.is_semistable() and S.slope() == 0) == flat
        assert (S.is_nef() and S.slope() == 0) == flat
        if S.is_semistable() and S.degrees[-1] >= 0:
            assert S.h0() == S.rank + S.degree
            assert S.check_section_bound() is True
    assert seen == sum(comb(7 + k - 1, k) for k in range(1, 5))
