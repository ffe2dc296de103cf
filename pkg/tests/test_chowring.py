from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chernpos import bundlecalc as bc
from chernpos.chowring import (
    DegreeBound,
    PowerZero,
    RingPresentation,
    integrate,
    make_formal_base,
    make_product,
    make_projective_bundle,
    make_projective_space,
    pushforward_xi,
    xi,
)
from chernpos.errors import DegreeUndefined, PreconditionFailed, RankNotIntegral, RingMismatch

P2 = make_projective_space(2)
P3 = make_projective_space(3)
coef = st.integers(-4, 4)


def random_class(ring, coeffs):
    out = ring.zero()
    basis = [m for d in range(ring.dimension + 1) for m in ring.basis(d)]
    for m, c in zip(basis, coeffs):
        out = out + ring.monomial(m) * c
    return out


def classes(ring):
    size = sum(len(ring.basis(d)) for d in range(ring.dimension + 1))
    return st.lists(coef, min_size=size, max_size=size).map(lambda cs: random_class(ring, cs))


def test_projective_space_basics():
    h = P3.gen(0)
    assert h**4 == 0
    assert integrate(h**3) == 1
    assert integrate(h**2) == 0
    assert P3.basis(2) == [(2,)]
    assert repr(3 * h**2 + h + 1) == "3*h^2 + h + 1"


def test_scalar_zero_compares_equal_to_zero():
    assert P2.scalar(0) == 0
    assert P2.scalar(0).is_zero()
    assert not P2.zero()


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        P2.gen(0) + P3.gen(0)


def test_formal_base_has_no_degree():
    R = make_formal_base(2, [("a", 1), ("b", 2)])
    a, b = R.gens()
    assert a**3 == 0
    assert a * b == 0
    assert a**2 != 0
    with pytest.raises(DegreeUndefined):
        integrate(b)


@given(classes(P3), classes(P3), classes(P3))
def test_ring_axioms_on_p3(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0


def _bundle_ring():
    h = P2.gen(0)
    E = bc.from_chern(P2, 3, [2 * h, 3 * h**2])
    return make_projective_bundle(P2, E), E


PE, E_PE = _bundle_ring()


@given(classes(PE), classes(PE), classes(PE))
def test_ring_axioms_on_projective_bundle(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(classes(PE))
def test_normal_form_is_idempotent(x):
    for m in x.terms:
        assert PE.is_normal(m)
        assert PE.normal_form(m) == {m: 1}


@given(classes(P2), classes(PE))
def test_projection_formula(a, b):
    assert pushforward_xi(PE.pullback(a) * b) == a * pushforward_xi(b)


def test_grothendieck_relation_holds():
    h = P2.gen(0)
    x = xi(PE)
    c1, c2 = PE.pullback(2 * h), PE.pullback(3 * h**2)
    assert x**3 - c1 * x**2 + c2 * x == 0


def test_trivial_bundle_gives_product():
    # P(O^3) over P^2 is P^2 x P^2
    P = make_projective_bundle(P2, bc.trivial(P2, 3))
    h, x = P.gens()
    assert integrate(h**2 * x**2) == 1
    assert x**3 == 0
    assert integrate(h * x**3) == 0


@pytest.mark.parametrize("a,b", [(0, 0), (1, 0), (2, -1), (3, 3)])
def test_hirzebruch_surface(a, b):
    # P(O(a) + O(b)) over P^1: xi^2 = (a + b) xi h, so integral of xi^2 is a + b
    P1 = make_projective_space(1)
    E = bc.dsum(bc.O(P1, a), bc.O(P1, b))
    P = make_projective_bundle(P1, E)
    h, x = P.gens()
    assert integrate(x * h) == 1
    assert integrate(x**2) == a + b


def test_product_ring():
    X = make_product(P2, make_projective_space(1))
    h1, h2 = X.gens()
    assert X.names == ("h1", "h2")
    assert integrate(h1**2 * h2) == 1
    assert h2**2 == 0
    assert X.pullback(P2.gen(0)) == h1


def test_projective_bundle_preconditions():
    h = P2.gen(0)
    with pytest.raises(RankNotIntegral):
        make_projective_bundle(P2, bc.FormalBundle(P2, Fraction(3, 2), P2.one()))
    with pytest.raises(PreconditionFailed):
        make_projective_bundle(P2, bc.from_chern(P2, 1, [h, h**2]))


def test_custom_presentation():
    R = RingPresentation([("u", 1), ("v", 1)], [PowerZero(0, 2), DegreeBound((0, 1), 2)], 2, {(1, 1): Fraction(1)}, "formal")
    u, v = R.gens()
    assert u**2 == 0
    assert integrate(u * v) == 1
    assert integrate((u + v) ** 2) == 2 + integrate(v**2)
