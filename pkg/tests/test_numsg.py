from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracideal.classify import is_v_invertible, v_invertible_direct
from fracideal.errors import InternalInconsistency, MixedSemigroups
from fracideal.numsg import NumSemigroup, SGIdeal, sg_colon, sg_intersect, sg_sum, sg_union_gen, sg_v
from fracideal.oracle import naive_colon, naive_inverse, naive_self_colon, naive_sum, naive_window


@pytest.fixture(scope="module")
def s23():
    return NumSemigroup((2, 3))


def test_semigroup_basics(s23):
    assert s23.conductor == 2 and s23.gaps == {1}
    s = NumSemigroup((6, 9, 20))
    assert s.frobenius == 43 and s.conductor == 44
    assert NumSemigroup((3, 5, 7, 9, 10)).generators == (3, 5, 7)
    assert NumSemigroup((1,)).conductor == 0
    with pytest.raises(ValueError):
        NumSemigroup((4, 6))


def test_sum_examples(s23):
    m = s23.maximal_ideal
    i = s23.ideal([0, 1]).shift(3)
    assert sg_sum(i, s23.one()) == i
    assert m * m.inverse() == m != s23.one()
    j = s23.ideal([5, 9])
    assert (i * j).offset == i.offset + j.offset


def test_colon_examples(s23):
    one, m = s23.one(), s23.maximal_ideal
    assert sg_colon(one, one) == one
    sm = sg_colon(one, m)
    assert sm.offset == 0 and not sm.holes
    assert sm >= one and sm != one
    i = s23.ideal([4, 7])
    assert sg_colon(i, s23.principal(5)) == i.shift(-5)


def test_v_examples(s23):
    assert sg_v(s23.principal(7)) == s23.principal(7)
    m = s23.maximal_ideal
    assert sg_v(m) == m
    assert not is_v_invertible(m) and not v_invertible_direct(m)
    n = NumSemigroup((1,))
    assert all(is_v_invertible(n.principal(k)) for k in range(-3, 4))
    assert n.offset0_ideals() == [n.one()]


def test_union_and_intersection(s23):
    a = sg_union_gen(s23, 2, 3)
    assert a == s23.maximal_ideal
    assert sg_intersect(s23.principal(2), s23.principal(3)) == s23.ideal([5, 6])


def test_ideal_validation(s23):
    with pytest.raises(ValueError):
        SGIdeal(s23, 0, frozenset({2}))
    with pytest.raises(MixedSemigroups):
        s23.one() * NumSemigroup((3, 4)).one()


def test_offset0_enumeration_complete():
    # every subset of gaps closed upward under S gives an ideal; compare by brute force
    s = NumSemigroup((4, 6, 9))
    gaps = sorted(s.gaps)
    brute = set()
    for mask in range(1 << len(gaps)):
        members = {0} | {g for k, g in enumerate(gaps) if mask >> k & 1}
        ok = all((x + g) in members or (x + g) in s for x in members for g in s.generators)
        if ok:
            brute.add(frozenset(set(gaps) - members))
    assert {i.holes for i in s.offset0_ideals()} == brute


def small_semigroups():
    out = {}
    for gens in [(2, 3), (2, 5), (3, 4), (3, 5), (3, 5, 7), (4, 5, 6), (4, 6, 9), (5, 7, 11)]:
        s = NumSemigroup(gens)
        out[s.generators] = s
    return list(out.values())


@pytest.mark.parametrize("sg", small_semigroups(), ids=str)
def test_identities_exhaustive(sg):
    one = sg.one()
    ideals = sg.offset0_ideals()
    for i in ideals:
        inv = i.inverse()
        assert i <= i.v()
        assert i.v().inverse() == inv == inv.v()
        assert i * inv <= one
        assert inv == naive_inverse(i)
        assert i.colon(i) == naive_self_colon(i)
        assert is_v_invertible(i) == v_invertible_direct(i)
        assert i.t() == i.v()
    for i, j in combinations_with_replacement(ideals, 2):
        if i <= j:
            assert i.inverse() >= j.inverse()
        hi = 3 * sg.conductor + 2
        assert naive_window(i * j, 0, hi) == naive_sum(i, j, 0, hi)
        assert naive_window(i.colon(j), -2 * sg.conductor, hi) == naive_colon(
            i, j, -2 * sg.conductor, hi, reach=3 * sg.conductor + 2
        )


@pytest.mark.parametrize("sg", small_semigroups(), ids=str)
def test_two_generated_identity(sg):
    for a in range(0, 2 * sg.conductor + 2):
        for b in range(a, 2 * sg.conductor + 2):
            if a not in sg or b not in sg:
                continue
            f = sg_union_gen(sg, a, b)
            inter = sg.principal(a) & sg.principal(b)
            assert f.inverse() == inter.shift(-a - b)


def test_window_independence(s23):
    i = s23.ideal([0, 1]).shift(-4)
    for pad in (0, 3, 9):
        lo, hi = i.offset - 2 * 2 - pad, i.offset + 3 * 2 + pad
        win = naive_window(i, lo, hi)
        assert win == frozenset(z for z in range(lo, hi + 1) if z >= i.offset and z not in i.holes)


def test_t_guard(monkeypatch, s23):
    m = s23.maximal_ideal
    monkeypatch.setattr(SGIdeal, "v", lambda self: self.shift(5) if self == m else sg_v(self))
    with pytest.raises(InternalInconsistency):
        m.t()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 11), min_size=2, max_size=4), st.integers(-6, 6), st.integers(-6, 6))
def test_random_semigroups_closure_laws(gens, s1, s2):
    try:
        sg = NumSemigroup(tuple(gens))
    except ValueError:
        return
    ideals = sg.offset0_ideals()
    i = ideals[s1 % len(ideals)].shift(s1)
    j = ideals[s2 % len(ideals)].shift(s2)
    assert i.colon(j) * j <= i
    assert (i & j) <= i <= (i + j)
    assert (i + j).v() >= i.v()
    assert i.v().v() == i.v()
