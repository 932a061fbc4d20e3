from fractions import Fraction as F

import pytest

from src.polytope.simplex import InfeasibleError, is_feasible, phase_one, solve_inequalities


def test_phase_one_finds_nonnegative_solution():
    A = [[F(1), F(1)], [F(1), F(-1)]]
    b = [F(4), F(2)]
    y = phase_one(A, b)
    assert all(v >= 0 for v in y)
    assert [sum(a * v for a, v in zip(row, y)) for row in A] == b
    assert y == [F(3), F(1)]


def test_phase_one_infeasible():
    with pytest.raises(InfeasibleError):
        phase_one([[F(1), F(1)]], [F(-1)])
    assert not is_feasible([[F(1)], [F(1)]], [F(1), F(2)])


def test_negative_right_hand_side_is_normalised():
    assert phase_one([[F(-1)]], [F(-3)]) == [F(3)]


def test_empty_system():
    assert phase_one([], []) == []
    assert is_feasible([], [])


def test_solve_inequalities_allows_negative_values():
    rows = [[F(-1), F(0)], [F(0), F(1)]]
    x = solve_inequalities(rows, [F(2), F(1)])
    assert x[0] <= -2
    assert x[1] >= 1


def test_solve_inequalities_detects_contradiction():
    with pytest.raises(InfeasibleError):
        solve_inequalities([[F(1)], [F(-1)]], [F(1), F(1)])


def test_degenerate_rows_terminate():
    rows = [[F(1), F(0)], [F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    x = solve_inequalities(rows, [F(0), F(0), F(0), F(0)])
    assert all(sum(a * v for a, v in zip(row, x)) >= 0 for row in rows)
