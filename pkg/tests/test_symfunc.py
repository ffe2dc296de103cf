"""Templates are checked against integer Chern roots expanded by brute force."""

import itertools
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chernpos.errors import EmptyWedge
from chernpos.symfunc import chern_of_sym, chern_of_wedge, newton_convert, sym_rank, wedge_rank


def elementary(values, k):
    return sum((Fraction(prod(c)) for c in itertools.combinations(values, k)), Fraction(0))


def root_oracle(roots, d):
    return [elementary(roots, k) for k in range(1, d + 1)]


def evaluate(templates, roots):
    cs = root_oracle(roots, len(roots))
    return [t.evaluate(cs, Fraction(1), Fraction(0)) for t in templates]


def test_small_sym_templates():
    c1, c2, c3 = chern_of_sym(2, 2, 3)
    assert c1.as_dict() == {(1,): 3}
    assert c2.as_dict() == {(1, 1): 2, (2,): 4}
    assert c3.as_dict() == {(2, 1): 4}


def test_wedge_rank3():
    assert chern_of_wedge(2, 3, 1)[0].as_dict() == {(1,): 2}


def test_empty_wedge():
    with pytest.raises(EmptyWedge):
        chern_of_wedge(4, 3, 2)


roots_st = st.lists(st.integers(-3, 3), min_size=1, max_size=3)


@given(roots_st, st.integers(0, 4))
def test_sym_against_roots(roots, m):
    r = len(roots)
    d = 3
    sym_roots = [sum(c) for c in itertools.combinations_with_replacement(roots, m)]
    assert len(sym_roots) == sym_rank(m, r)
    assert evaluate(chern_of_sym(m, r, d), roots) == root_oracle(sym_roots, d)


@given(roots_st, st.integers(0, 3))
def test_wedge_against_roots(roots, k):
    r = len(roots)
    if k > r:
        return
    w_roots = [sum(c) for c in itertools.combinations(roots, k)]
    assert len(w_roots) == wedge_rank(k, r)
    assert evaluate(chern_of_wedge(k, r, 3), roots) == root_oracle(w_roots, 3)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_newton_against_power_sums(roots):
    d = 4
    cs = root_oracle(roots, d)
    ch = newton_convert("c_to_ch", cs, d)
    fact = [1, 1, 2, 6, 24]
    assert ch == [Fraction(sum(x**k for x in roots), fact[k]) for k in range(1, d + 1)]
    assert newton_convert("ch_to_c", ch, d) == cs


def test_newton_rank_prefix_and_errors():
    assert newton_convert("c_to_ch", [Fraction(1)], 1, rank=2) == [2, 1]
    with pytest.raises(ValueError):
        newton_convert("sideways", [1], 1)
