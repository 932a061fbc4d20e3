from fractions import Fraction as F

import pytest

from src.core.orders import CoeffOrder, Lcg, NumericCoeffs, all_orders, sample_coeffs
from src.polytope.system import IncompatibleCoefficients
from src.polytope.theorem import (
    check_convexity, check_remarks, check_variants, check_zset_in_system, dropped_rule_witness,
    format_point, pairwise_rule_witness, top_rule_suffices, verify_theorem
)
from src.polytope.vertices import Comparison


def test_verify_theorem_order_132():
    report = verify_theorem(CoeffOrder((1, 3, 2)), NumericCoeffs.of((1, 4, 2)))
    assert report.passed
    data = report.to_dict()
    assert data["verdict"] == "pass"
    assert data["vertex_count"] == data["zset_count"] == 8
    assert data["only_in_k"] == data["only_in_z"] == []
    assert "(1,3,1)" in data["vertices"]


def test_verify_theorem_with_zero_coefficient():
    report = verify_theorem(CoeffOrder((1,)), NumericCoeffs.of((0,)))
    assert report.passed
    assert report.vertices == {(F(0),)}


@pytest.mark.parametrize("n, profile", [
    (1, "generic"), (2, "generic"), (3, "generic"),
    (1, "ties"), (2, "ties"), (1, "zeros"), (2, "zeros"),
])
def test_verify_theorem_for_sampled_coefficients(n, profile):
    for order in all_orders(n):
        c = sample_coeffs(order, 5, profile)
        report = verify_theorem(order, c)
        assert report.passed, report.to_dict()


def test_verify_theorem_rejects_incompatible():
    with pytest.raises(IncompatibleCoefficients):
        verify_theorem(CoeffOrder((1, 2)), NumericCoeffs.of((2, 1)))


def test_zset_satisfies_each_variant():
    order, c = CoeffOrder((2, 1, 3)), NumericCoeffs.of((2, 1, 3))
    assert check_zset_in_system(order, c).passed


@pytest.mark.parametrize("n", [2, 3])
def test_variants_agree(n):
    for order in all_orders(n):
        report = check_variants(order, sample_coeffs(order, 9, "generic"))
        assert report.passed
        assert report.details["comparison"] == "equal"


def test_dropped_rule_gains_vertices():
    gained = dropped_rule_witness()
    assert (F(1), F(1), F(0)) in gained


def test_pairwise_rules_cut_deeper():
    comparison, outside = pairwise_rule_witness()
    assert comparison is Comparison.A_INSIDE_B
    assert (F(2), F(1), F(1)) in outside


def test_remarks_hold():
    report = check_remarks()
    assert report.passed, report.violations
    assert report.details["summarized_rules"] == "equal"
    assert top_rule_suffices(4)


def test_convexity():
    order = CoeffOrder((1, 3, 2))
    report = check_convexity(order, NumericCoeffs.of((1, 4, 2)), Lcg(42), trials=10)
    assert report.passed
    assert report.details["samples"] == 20


def test_format_point():
    assert format_point((F(1), F(-1, 2))) == "(1,-1/2)"
