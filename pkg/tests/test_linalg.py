from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from lierinehart import linalg

entries = st.integers(-3, 3).map(Fraction)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_matches_sympy(rows):
    assert linalg.rank(rows, len(rows[0])) == sympy.Matrix(rows).rank()


@given(matrices)
def test_nullspace_vectors_are_killed(rows):
    n = len(rows[0])
    basis = linalg.nullspace(rows, n)
    assert len(basis) == n - sympy.Matrix(rows).rank()
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


@given(matrices, st.lists(entries, min_size=4, max_size=4))
def test_solve_is_consistent(rows, x):
    n = len(rows[0])
    x = x[:n]
    rhs = [sum(a * b for a, b in zip(row, x)) for row in rows]
    sol = linalg.solve(rows, n, rhs)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in rows] == rhs


def test_inconsistent_system_has_no_solution():
    assert linalg.solve([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], 2,
                        [Fraction(1), Fraction(3)]) is None
