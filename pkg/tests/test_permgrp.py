from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from involgen.permgrp import (
    Perm, PermGroup, SearchBudgetExceeded, canonical_r, complement_search,
    involutions_with_fixed_points, pairing_involution, schreier_sims,
)


def closure(gens, n):
    """Naive oracle: all products of generators."""
    ident = Perm.identity(n)
    seen = {ident}
    todo = [ident]
    while todo:
        x = todo.pop()
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def test_cycles_round_trip():
    p = Perm.from_cycles(5, [(1, 5), (2, 4)])
    assert p.cycles() == [(1, 5), (2, 4)]
    assert str(p) == "(1,5)(2,4)"
    assert p.fixed_points() == [3]
    assert p.is_involution()


def test_composition_is_right_to_left():
    p = Perm.from_cycles(3, [(1, 2)])
    q = Perm.from_cycles(3, [(2, 3)])
    assert (p * q)(2) == p(q(2)) == 3


def test_from_images_rejects_non_bijection():
    with pytest.raises(ValueError):
        Perm.from_images([1, 1, 2], base=1)


def test_canonical_r_b5():
    assert str(canonical_r(5, "r1")) == "(1,5)(2,4)"
    assert str(canonical_r(5, "r2")) == "(1,4)(2,3)"
    assert str(canonical_r(5, "r3")) == "(2,4)"
    assert str(canonical_r(5, "r1") * canonical_r(5, "r2")) == "(1,2,3,4,5)"
    assert str(canonical_r(5, "r1") * canonical_r(5, "r3")) == "(1,5)"


@pytest.mark.parametrize("b", [0, 1])
def test_degenerate_r(b):
    for w in ("r1", "r2", "r3"):
        assert canonical_r(b, w).is_identity()
    assert schreier_sims([canonical_r(b, "r1")], b).order() == 1


def test_transposition_group():
    assert schreier_sims([Perm.from_cycles(2, [(1, 2)])], 2).order() == 2


@pytest.mark.parametrize("b", range(3, 13))
def test_dihedral_and_symmetric_orders(b):
    r1, r2, r3 = (canonical_r(b, w) for w in ("r1", "r2", "r3"))
    assert PermGroup([r1, r2], b).order() == 2 * b
    assert PermGroup([r1, r2, r3], b).order() == factorial(b)


def test_dihedral_b5_matches_closure():
    r1, r2 = canonical_r(5, "r1"), canonical_r(5, "r2")
    assert len(closure([r1, r2], 5)) == 10


def test_r3_fixed_points_are_computed():
    assert canonical_r(6, "r3").fixed_points() == [1, 6]
    assert canonical_r(7, "r3").fixed_points() == [1, 4, 7]


def test_pairing_involution():
    assert str(pairing_involution(5, 1)) == "(1,2)(3,4)"
    with pytest.raises(ValueError):
        pairing_involution(5, 0)


def test_involution_counts():
    # involutions of 5 points with exactly one fixed point: 5 * 3 = 15
    assert len(list(involutions_with_fixed_points(5, 1))) == 15
    assert len(list(involutions_with_fixed_points(6, 0))) == 15
    assert list(involutions_with_fixed_points(6, 1)) == []


def test_complement_search_examples():
    s = complement_search(7, 1)
    assert s is not None and len(s.fixed_points()) == 1
    assert PermGroup([canonical_r(7, "r1"), canonical_r(7, "r2"), s], 7).order() == 5040
    assert complement_search(5, 1) is None
    s = complement_search(5, 3)
    assert s is not None and len(s.fixed_points()) == 3
    assert PermGroup([canonical_r(5, "r1"), canonical_r(5, "r2"), s], 5).order() == 120


def test_complement_search_budget():
    with pytest.raises(SearchBudgetExceeded):
        complement_search(13, 1)


def test_one_fixed_point_involutions_are_even_for_4k_plus_1():
    # so together with the even r1, r2 they cannot generate Sym_b
    for b in (5, 9):
        assert all(s.is_even() for s in involutions_with_fixed_points(b, 1))
        assert canonical_r(b, "r1").is_even() and canonical_r(b, "r2").is_even()


perms6 = st.permutations(range(6)).map(lambda xs: Perm(tuple(xs)))


@settings(max_examples=40, deadline=None)
@given(st.lists(perms6, min_size=1, max_size=3))
def test_order_and_membership_agree_with_closure(gens):
    G = PermGroup(gens, 6)
    elems = closure(gens, 6)
    assert G.order() == len(elems)
    assert factorial(6) % G.order() == 0
    for img in permutations(range(6)):
        assert (Perm(img) in G) == (Perm(img) in elems)


@settings(max_examples=40, deadline=None)
@given(st.lists(perms6, min_size=2, max_size=4))
def test_order_independent_of_generator_order(gens):
    assert PermGroup(gens, 6).order() == PermGroup(list(reversed(gens)), 6).order()
