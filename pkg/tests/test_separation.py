from fractions import Fraction

import pytest

from src.core.exactmath import InputError
from src.core.orders import CoeffOrder, Lcg, NumericCoeffs, all_orders, sample_coeffs
from src.fusion.separation import (
    EvaluationPoint, argmax_set, evaluate_at, evaluate_numeric, order_equivalent_pair,
    ranking_invariance, separating_point, weak_ranking
)
from src.fusion.sgraph import build_sgraph
from tests.conftest import fv


def test_evaluate_at_examples():
    f = fv({1: 1}, {1: 1, 2: 1, 3: -1}, {1: 1})
    assert evaluate_at(f, NumericCoeffs.of((1, 4, 2)), EvaluationPoint.of((3, 2, 1, 0))) == 5
    g = fv({1: 1}, {2: 1})
    assert evaluate_at(g, NumericCoeffs.of((1, 4)), EvaluationPoint.of((10, 1, 0))) == 13


def test_evaluate_at_rejects_wrong_length():
    with pytest.raises(InputError):
        evaluate_at(fv({1: 1}), NumericCoeffs.of((1,)), EvaluationPoint.of((1, 0, 0)))


def test_evaluate_numeric_uses_gaps():
    b = EvaluationPoint.of((5, 2, 2))
    assert evaluate_numeric((Fraction(1), Fraction(7)), b) == 3
    assert str(b) == "(5,2,2)"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lp_separates_every_vertex(n):
    for order in all_orders(n):
        g = build_sgraph(order)
        c = sample_coeffs(order, 11, "generic")
        for v in g.vertices:
            b = separating_point(g, v.id, c)
            top = argmax_set([w.fn.evaluate(c.values) for w in g.vertices], b)
            assert top == frozenset({v.fn.evaluate(c.values)})


@pytest.mark.parametrize("seq, coeffs", [
    ((1,), (3,)),
    ((1, 2), (1, 4)),
    ((2, 1), (2, 1)),
])
def test_recursive_mode_separates_small_graphs(seq, coeffs):
    g = build_sgraph(CoeffOrder(seq))
    c = NumericCoeffs.of(coeffs)
    for v in g.vertices:
        separating_point(g, v.id, c, mode="recursive")


def test_separation_input_errors(graph_12):
    with pytest.raises(InputError):
        separating_point(graph_12, 0, NumericCoeffs.of((4, 1)))
    with pytest.raises(InputError):
        separating_point(graph_12, 0, NumericCoeffs.of((1, 4)), mode="simplex")


def test_top_is_stable_but_full_ranking_is_not(graph_12):
    c = NumericCoeffs.of((1, 4))
    b1 = EvaluationPoint.of((10, 1, 0))
    b2 = EvaluationPoint.of((2, 1, 0))
    assert ranking_invariance(graph_12, c, b1, b2) == (True, False)


def test_weak_ranking_groups_ties():
    points = [(Fraction(0),), (Fraction(1),), (Fraction(1),)]
    ranking = weak_ranking(points, EvaluationPoint.of((1, 0)))
    assert ranking == [frozenset({(Fraction(1),)}), frozenset({(Fraction(0),)})]
    assert argmax_set([], EvaluationPoint.of((1, 0))) == frozenset()


@pytest.mark.parametrize("seed", [1, 2, 3, 42])
def test_order_equivalent_pair_shares_ordering(seed):
    b1, b2 = order_equivalent_pair(3, Lcg(seed))
    assert len(b1.b) == len(b2.b) == 4

    def ordering(b):
        return sorted(range(4), key=lambda i: b.b[i])

    assert ordering(b1) == ordering(b2)
    assert len(set(b1.b)) == 4
    assert len(set(b2.b)) == 4
