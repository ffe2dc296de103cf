from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chernpos import splitcurve as sc
from chernpos.errors import EmptyWedge, PreconditionFailed, UnknownBundle
from chernpos.splitcurve import SplittingType as S

types_st = st.lists(st.integers(-3, 3), min_size=1, max_size=4).map(S)


def test_algebra_examples():
    E = S([1, 0])
    assert E.tensor(E) == S([2, 1, 1, 0])
    assert E.sym(4) == S([4, 3, 2, 1, 0])
    assert E.sym(4).twist(-2) == S([2, 1, 0, -1, -2])
    assert E.tensor(E).tensor(E).twist(-1) == S([2, 1, 1, 0, 1, 0, 0, -1])
    with pytest.raises(EmptyWedge):
        E.wedge(3)


def test_verdict_examples():
    T = sc.tangent_restriction(3)
    assert T == S([2, 1, 1])
    assert T.slope() == Fraction(4, 3)
    assert (T.is_semistable(), T.is_nef(), T.is_ample()) == (False, True, True)
    Z = S([0, 0, 0])
    assert Z.is_semistable() and Z.is_nef() and Z.is_numerically_flat()
    W = S([1, -1])
    assert W.slope() == 0 and not W.is_semistable() and not W.is_nef()


def test_section_bound():
    assert S([2, 2]).h0() == 6
    assert S([2, 2]).check_section_bound() is True
    assert S([0] * 4).check_section_bound() is True
    assert S([3, -1]).h0() == 4
    with pytest.raises(PreconditionFailed):
        S([3, -1]).check_section_bound()
    assert S([-3, -3]).check_section_bound() is None


def test_named_restrictions():
    assert sc.euler_restriction(2) == S([1, 0])
    assert sc.restriction_of("notnef").degrees[-1] == -1
    assert not sc.restriction_of("notnef").is_nef()
    assert sc.restriction_of("hilb2p2-quotient") == S([2, 1, 0, -1, -2])
    assert sc.restriction_of("O(-4)") == S([-4])
    assert sc.restriction_of("tangent", 4) == S([2, 1, 1, 1])
    with pytest.raises(UnknownBundle):
        sc.restriction_of("mystery")


@given(types_st, types_st)
def test_slope_additivity(a, b):
    assert a.tensor(b).slope() == a.slope() + b.slope()
    assert a.dsum(b).degree == a.degree + b.degree


@given(types_st, st.integers(0, 4))
def test_sym_slope(a, m):
    assert a.sym(m).slope() == m * a.slope()


@given(types_st, st.integers(2, 5), st.integers(0, 2))
def test_frobenius_preserves_verdicts(a, p, m):
    F = a.frobenius(p, m)
    assert F.is_semistable() == a.is_semistable()
    assert F.is_nef() == a.is_nef()
    assert F.slope() == p**m * a.slope()


@given(types_st)
def test_dictionary(a):
    flat = a.is_numerically_flat()
    assert (a.is_semistable() and a.slope() == 0) == flat
    assert (a.is_nef() and a.slope() == 0) == flat
    assert a.is_one_homogeneous_projectivization() == a.is_semistable()
    assert a.dual().dual() == a
    assert a.hn_slopes() == tuple(sorted(a.degrees, reverse=True))
