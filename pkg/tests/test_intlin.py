from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from involgen import intlin

mats = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))


def test_determinant_by_hand():
    assert intlin.determinant([[2, 1], [1, 1]]) == 1
    assert intlin.determinant([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


@given(mats)
def test_determinant_matches_float(A):
    assert intlin.determinant(A) == round(np.linalg.det(np.array(A, dtype=float)))


@settings(deadline=None)
@given(mats)
def test_kernel_vectors_are_annihilated(A):
    for v in intlin.kernel_basis(A, len(A[0])):
        assert intlin.matvec(A, v) == [0] * len(A)
    n = len(A[0])
    assert intlin.rank(A, n) + len(intlin.kernel_basis(A, n)) == n


def test_saturation():
    # span of (2, 0) saturates to span of (1, 0)
    basis = intlin.saturation_basis([[2, 0]], 2)
    assert len(basis) == 1 and sorted(map(abs, basis[0])) == [0, 1]


def test_solve_rational_inconsistent():
    assert intlin.solve_rational([[1, 0], [1, 0]], [[1], [2]]) is None
    X = intlin.solve_rational([[2, 0], [0, 1]], [[1], [3]])
    assert X == [[Fraction(1, 2)], [Fraction(3)]]
