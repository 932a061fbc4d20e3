from itertools import permutations

import pytest

from src.core.exactmath import FunctionVector, LinearForm
from src.core.orders import CoeffOrder, NumericCoeffs, all_orders
from src.fusion.sgraph import (
    build_sgraph, classify_cv, evaluate_zset, insert_copied_slot, propagate_functions, sorted_zset, zset
)
from tests.conftest import fv


def test_single_coefficient_graph():
    g = build_sgraph(CoeffOrder((1,)))
    assert len(g.vertices) == 2
    root = g.vertex(g.distinguished)
    assert root.label == 2 and root.fn == fv({})
    other = g.vertex(1)
    assert other.label == 1 and other.fn == fv({1: 1})
    assert [(e.u, e.v, e.r) for e in g.edges] == [(0, 1, 1)]
    assert zset(g) == {fv({}), fv({1: 1})}


def test_increasing_order_of_two(graph_12):
    assert zset(graph_12) == {
        fv({}, {}), fv({1: 1}, {1: 1}), fv({}, {2: 1}), fv({1: 1}, {2: 1}),
    }
    labels = [v.label for v in graph_12.vertices]
    assert labels == [3, 1, 2, 1]
    assert sorted((e.u, e.v, e.r) for e in graph_12.edges) == [(0, 1, 1), (0, 2, 2), (2, 3, 1)]


def test_decreasing_order_of_two(graph_21):
    assert zset(graph_21) == {
        fv({}, {}), fv({1: 1, 2: -1}, {}), fv({}, {2: 1}), fv({1: 1}, {2: 1}),
    }
    labels = [v.label for v in graph_21.vertices]
    assert labels == [3, 2, 3, 1]
    assert sorted((e.u, e.v, e.r) for e in graph_21.edges) == [(0, 1, 2), (1, 3, 1), (2, 3, 2)]


def test_order_132_evaluates_to_known_points(graph_132):
    points = evaluate_zset(graph_132, NumericCoeffs.of((1, 4, 2)))
    expected = {(0, 0, 0), (1, 1, 1), (0, 0, 2), (1, 1, 2), (0, 2, 0), (1, 3, 1), (0, 4, 2), (1, 4, 2)}
    assert points == expected
    assert len(zset(graph_132)) == 8


def test_certificates_record_one_level_per_coefficient(graph_132):
    assert [cert.level for cert in graph_132.levels] == [1, 2, 3]
    assert [cert.s for cert in graph_132.levels] == [1, 3, 2]
    assert [cert.chain for cert in graph_132.levels] == [(1,), (1, 3), (1, 2, 3)]
    assert [cert.position for cert in graph_132.levels] == [1, 2, 2]
    last = graph_132.levels[-1]
    assert last.c_minus == (1, 3)
    assert all(minus == plus + 4 for plus, minus in last.phi)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_order_gives_2n_distinct_functions(n):
    for order in all_orders(n):
        g = build_sgraph(order)
        assert len(g.vertices) == 2 ** n
        assert len(zset(g)) == 2 ** n
        assert g.vertex(0).label == n + 1
        assert g.vertex(0).fn.is_zero


@pytest.mark.parametrize("seq", list(permutations(range(1, 4))))
def test_propagation_reproduces_stored_functions(seq):
    g = build_sgraph(CoeffOrder(seq))
    propagated, conflicts = propagate_functions(g)
    assert conflicts == []
    assert propagated == {v.id: v.fn for v in g.vertices}


def test_sorted_zset_keeps_vertex_order(graph_12):
    assert sorted_zset(graph_12) == [v.fn for v in graph_12.vertices]


def test_insert_copied_slot():
    f = fv({1: 1}, {2: 1})
    assert insert_copied_slot(f, 1) == fv({}, {1: 1}, {2: 1})
    assert insert_copied_slot(f, 2) == fv({1: 1}, {1: 1}, {2: 1})
    assert insert_copied_slot(f, 3) == fv({1: 1}, {2: 1}, {2: 1})
    assert insert_copied_slot(FunctionVector.zero(0), 1) == fv({})


def test_classify_cv():
    chain = (1, 2, 3)
    assert classify_cv(LinearForm.zero(), 2, chain) == (True, None)
    assert classify_cv(LinearForm.variable(3), 2, chain) == (True, 3)
    assert classify_cv(LinearForm.variable(2), 2, chain) == (False, 2)
    assert classify_cv(LinearForm.variable(1) + LinearForm.variable(3), 2, chain)[0] is False
