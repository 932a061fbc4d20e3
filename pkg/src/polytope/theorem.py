"""
S-graph Workbench - Main Theorem Checks
Compares the vertices of K(c) with the evaluated S-set, and checks the
variant relations, chain-rule witnesses and convexity of K(c).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from src.core.exactmath import format_rational
from src.core.orders import CoeffOrder, Lcg, NumericCoeffs, identity_order
from src.core.report import CheckReport
from src.fusion.sgraph import build_sgraph, evaluate_zset
from src.polytope.system import Variant, build_system, contains, violated
from src.polytope.vertices import Comparison, compare_systems, enumerate_vertices
from src.utils.logger import get_logger
from src.core.i18n import _


Point = Tuple[Fraction, ...]


def format_point(point: Sequence[Fraction]) -> str:
    return "(" + ",".join(format_rational(x) for x in point) + ")"


@dataclass
class TheoremReport:
    """Vertices of K(c) against the evaluated S-set."""
    order: CoeffOrder
    coeffs: NumericCoeffs
    vertices: FrozenSet[Point]
    zset: FrozenSet[Point]
    only_in_k: List[Point] = field(default_factory=list)
    only_in_z: List[Point] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.vertices == self.zset

    def to_dict(self) -> Dict:
        return {
            "order": str(self.order),
            "coeffs": str(self.coeffs),
            "verdict": "pass" if self.passed else "fail",
            "vertex_count": len(self.vertices),
            "zset_count": len(self.zset),
            "vertices": [format_point(p) for p in sorted(self.vertices)],
            "only_in_k": [format_point(p) for p in self.only_in_k],
            "only_in_z": [format_point(p) for p in self.only_in_z],
        }


def verify_theorem(order: CoeffOrder, c: NumericCoeffs) -> TheoremReport:
    """
    Check that the vertices of K(c) are exactly the evaluated S-set.

    Raises:
        IncompatibleCoefficients: If c does not lift to order
    """
    logger = get_logger()
    logger.operation_start(_("op_verify"), f"theorem order {order}", f"c=({c})")
    system = build_system(order, c, Variant.THREE)
    vertices = enumerate_vertices(system).points
    points = evaluate_zset(build_sgraph(order), c)
    report = TheoremReport(
        order=order,
        coeffs=c,
        vertices=vertices,
        zset=points,
        only_in_k=sorted(vertices - points),
        only_in_z=sorted(points - vertices),
    )
    logger.operation_end(_("op_verify"), f"theorem order {order}",
                         f"{len(vertices)} vertices, {len(points)} points", success=report.passed)
    return report


def check_zset_in_system(order: CoeffOrder, c: NumericCoeffs, variant: Variant = Variant.THREE) -> CheckReport:
    """Every evaluated S-set point satisfies the box and chain inequalities."""
    report = CheckReport("zset_in_system")
    system = build_system(order, c, variant)
    for point in sorted(evaluate_zset(build_sgraph(order), c)):
        broken = violated(system, point)
        if broken:
            report.add(point=format_point(point), violated=[str(ineq) for ineq in broken])
    return report


def check_variants(order: CoeffOrder, c: NumericCoeffs) -> CheckReport:
    """The chain rules and their primed form define the same polytope."""
    report = CheckReport("variants")
    outcome = compare_systems(build_system(order, c, Variant.THREE), build_system(order, c, Variant.THREE_PRIME))
    report.details["comparison"] = outcome.value
    if outcome is not Comparison.EQUAL:
        report.add(order=str(order), coeffs=str(c), comparison=outcome.value)
    return report


def dropped_rule_witness(
    order: CoeffOrder = CoeffOrder((1, 3, 2)),
    c: NumericCoeffs = NumericCoeffs.of((1, 3, 2)),
    k: int = 2
) -> List[Point]:
    """Vertices gained when the chain rule of level k is omitted."""
    full = enumerate_vertices(build_system(order, c, Variant.THREE)).points
    relaxed = enumerate_vertices(build_system(order, c, Variant.THREE, exclude_k={k})).points
    return sorted(relaxed - full)


def pairwise_rule_witness(
    order: CoeffOrder = CoeffOrder((2, 1, 3)),
    c: NumericCoeffs = NumericCoeffs.of((2, 1, 3))
) -> Tuple[Comparison, List[Point]]:
    """
    Compare the chain rules with the all-pairs rules.

    Returns:
        (comparison of all-pairs against chain, chain vertices outside the all-pairs system)
    """
    chain = build_system(order, c, Variant.THREE)
    pairs = build_system(order, c, Variant.THREE_DOUBLE_PRIME)
    outside = sorted(p for p in enumerate_vertices(chain).points if not contains(pairs, p))
    return compare_systems(pairs, chain), outside


def top_rule_suffices(n: int, c: Optional[NumericCoeffs] = None) -> bool:
    """With increasing coefficients the top chain rule alone cuts out K(c)."""
    order = identity_order(n)
    c = c or NumericCoeffs.of(tuple(range(1, n + 1)))
    full = enumerate_vertices(build_system(order, c, Variant.THREE)).points
    top_only = enumerate_vertices(build_system(order, c, Variant.THREE, exclude_k=set(range(1, n)))).points
    return full == top_only


def check_remarks() -> CheckReport:
    """The two recorded witnesses about which chain rules are needed."""
    report = CheckReport("remarks")
    gained = dropped_rule_witness()
    report.details["dropped_rule_gain"] = [format_point(p) for p in gained]
    if not gained:
        report.add(kind="dropped_rule", message="omitting the level-2 rule did not enlarge the vertex set")

    comparison, outside = pairwise_rule_witness()
    report.details["pairwise_comparison"] = comparison.value
    report.details["pairwise_outside"] = [format_point(p) for p in outside]
    if comparison is not Comparison.A_INSIDE_B:
        report.add(kind="pairwise_rules", comparison=comparison.value)
    if not any(p[2] < p[0] for p in outside):
        report.add(kind="pairwise_witness", message="no vertex with x3 < x1 outside the all-pairs system")

    equal = compare_systems(
        build_system(CoeffOrder((1, 3, 2)), NumericCoeffs.of((1, 3, 2)), Variant.THREE),
        build_system(CoeffOrder((1, 3, 2)), NumericCoeffs.of((1, 3, 2)), Variant.THREE_DOUBLE_PRIME),
    )
    report.details["summarized_rules"] = equal.value
    if equal is not Comparison.EQUAL:
        report.add(kind="summarized_rules", comparison=equal.value)

    if not top_rule_suffices(3):
        report.add(kind="top_rule", message="top chain rule alone did not reproduce K(c)")
    return report


def random_convex_combination(points: Sequence[Point], rng: Lcg, size: int = 3) -> Point:
    """A convex combination of size randomly chosen points with positive integer weights."""
    chosen = [points[rng.draw(len(points))] for _ in range(size)]
    weights = [1 + rng.draw(20) for _ in chosen]
    total = sum(weights)
    dim = len(points[0])
    return tuple(
        sum((Fraction(w, total) * p[d] for w, p in zip(weights, chosen)), Fraction(0))
        for d in range(dim)
    )


def check_convexity(order: CoeffOrder, c: NumericCoeffs, rng: Lcg, trials: int = 20) -> CheckReport:
    """
    Sample convex combinations of S-set points and of vertices of K(c).

    Both must stay inside K(c).
    """
    report = CheckReport("convexity")
    system = build_system(order, c, Variant.THREE)
    z_points = sorted(evaluate_zset(build_sgraph(order), c))
    k_points = enumerate_vertices(system).sorted_points()
    for source, points in (("zset", z_points), ("vertices", k_points)):
        if not points:
            continue
        for trial in range(trials):
            combo = random_convex_combination(points, rng)
            if not contains(system, combo):
                report.add(source=source, point=format_point(combo))
    report.details["samples"] = 2 * trials
    return report
