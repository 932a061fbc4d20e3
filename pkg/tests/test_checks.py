import pytest

from src.core.orders import CoeffOrder, NumericCoeffs, all_orders, identity_order, sample_coeffs
from src.fusion.checks import (
    check_cardinality, check_edge_relation, check_fusion_certificates, check_label_invariant,
    ordered_path, s_property, theta_shift_witnesses
)
from src.fusion.sgraph import SGraph, Vertex, build_sgraph
from tests.conftest import fv


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_structural_checks_hold_for_every_order(n):
    for order in all_orders(n):
        g = build_sgraph(order)
        for report in (check_edge_relation(g), check_label_invariant(g), check_cardinality(g)):
            assert report.passed, (str(order), report.violations)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fusion_certificates_hold_for_sampled_coefficients(n):
    for order in all_orders(n):
        g = build_sgraph(order)
        assert check_fusion_certificates(g).passed
        for profile in ("generic", "ties", "zeros"):
            c = sample_coeffs(order, 42, profile)
            report = check_fusion_certificates(g, c)
            assert report.passed, (str(order), profile, report.violations)


def test_edge_relation_on_single_edge():
    g = build_sgraph(CoeffOrder((1,)))
    report = check_edge_relation(g)
    assert report.passed
    assert report.details == {"edges": 1, "vertices": 2}


def test_edge_relation_reports_a_tampered_vertex(graph_12):
    vertices = list(graph_12.vertices)
    vertices[3] = Vertex(3, 1, fv({1: 1}, {}))
    broken = SGraph(graph_12.order, tuple(vertices), graph_12.edges, 0, graph_12.levels)
    report = check_edge_relation(broken)
    assert not report.passed
    kinds = {v.get("kind") for v in report.violations}
    assert "propagation_mismatch" in kinds


def test_incompatible_coefficients_are_a_violation(graph_12):
    report = check_fusion_certificates(graph_12, NumericCoeffs.of((4, 1)))
    assert report.violations == [{"kind": "incompatible_coefficients", "coeffs": "4,1"}]


def test_shift_witness_exists_from_two_coefficients():
    g = build_sgraph(CoeffOrder((1, 2)))
    assert theta_shift_witnesses(g) == [1]
    assert theta_shift_witnesses(build_sgraph(CoeffOrder((1,)))) == []
    for n in (3, 4):
        assert theta_shift_witnesses(build_sgraph(identity_order(n)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_s_property_for_generic_samples(n):
    for order in all_orders(n):
        c = sample_coeffs(order, 3, "generic")
        report = s_property(build_sgraph(order), c)
        assert report.passed, (str(order), report.violations)
        assert report.details["pairs"] == 2 ** n * (n + 1)


def test_ordered_path_witnesses(graph_12):
    assert ordered_path(graph_12, 0, 3) == []
    assert ordered_path(graph_12, 1, 2) == [(1, 0, 1), (0, 2, 2)]
    assert ordered_path(graph_12, 3, 3) == [(3, 2, 1), (2, 0, 2)]


def test_ordered_path_respects_the_order(graph_21):
    # under 2 < 1 the c2 edge must come first
    path = ordered_path(graph_21, 3, 3)
    assert path == [(3, 2, 2)]
