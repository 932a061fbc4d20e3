"""
S-graph Workbench - Separation
Evaluation points b, separating points that make one vertex function the
strict maximum, and ranking comparisons between order-equivalent points.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple

from src.core.exactmath import FunctionVector, InputError, format_rational
from src.core.orders import Lcg, NumericCoeffs, compatible
from src.fusion.sgraph import SGraph
from src.polytope.simplex import InfeasibleError, solve_inequalities
from src.utils.logger import get_logger


class SeparationError(Exception):
    """Raised when no separating point is found; carries a certificate dump."""

    def __init__(self, message: str, dump: Dict):
        super().__init__(message)
        self.dump = dump


@dataclass(frozen=True)
class EvaluationPoint:
    """Values b_1..b_{n+1} of the functionals r^1..r^{n+1}."""
    b: Tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Sequence) -> "EvaluationPoint":
        return cls(tuple(Fraction(v) for v in values))

    def r(self, j: int) -> Fraction:
        return self.b[j - 1]

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(v) for v in self.b) + ")"


def evaluate_numeric(point: Sequence[Fraction], b: EvaluationPoint) -> Fraction:
    """sum_k point_k * (b_k - b_{k+1})"""
    return sum((x * (b.b[k] - b.b[k + 1]) for k, x in enumerate(point)), Fraction(0))


def evaluate_at(fn: FunctionVector, c: NumericCoeffs, b: EvaluationPoint) -> Fraction:
    """
    Value of a vertex function at c and b.

    Raises:
        InputError: If lengths disagree
    """
    if len(b.b) != fn.n + 1:
        raise InputError(f"Evaluation point needs {fn.n + 1} values, got {len(b.b)}")
    return evaluate_numeric(fn.evaluate(c.values), b)


def _point_from_gaps(gaps: Sequence[Fraction]) -> EvaluationPoint:
    """b_{n+1} = 0 and b_k = b_{k+1} + gaps_k."""
    n = len(gaps)
    b = [Fraction(0)] * (n + 1)
    for k in range(n - 1, -1, -1):
        b[k] = b[k + 1] + gaps[k]
    return EvaluationPoint(tuple(b))


def _recursive_point(g: SGraph, target: int) -> EvaluationPoint:
    """
    Build b level by level from the fusion record.

    At each level the new r at position p is placed next to r at p+1, just
    below it when the target lies in G^+ and just above it when it lies in
    G^-. Values are rescaled by 4 per level so the new value stays inside
    the gap.
    """
    values = [Fraction(0)]
    ids = []
    t = target
    for cert in reversed(g.levels):
        ids.append(t)
        t %= len(cert.plus)
    ids.reverse()
    for cert, t in zip(g.levels, ids):
        p = cert.position
        in_plus = t < len(cert.plus)
        scaled = [4 * v for v in values]
        neighbour = scaled[p - 1]
        inserted = neighbour - 1 if in_plus else neighbour + 1
        values = scaled[:p - 1] + [inserted] + scaled[p - 1:]
    return EvaluationPoint(tuple(values))


def separating_point(
    g: SGraph,
    target: int,
    c: NumericCoeffs,
    mode: str = "lp"
) -> EvaluationPoint:
    """
    Find b making the target's function the strict maximum.

    Only competitors whose numeric vector differs from the target's must be
    beaten; numerically identical functions may tie.

    Args:
        g: The S-graph
        target: Vertex id
        c: Compatible numeric coefficients
        mode: "lp" for exact feasibility with margin 1, "recursive" for the
            level-by-level interval construction

    Raises:
        InputError: If c is incompatible or the mode is unknown
        SeparationError: If the result does not separate
    """
    if not compatible(g.order, c):
        raise InputError(f"Coefficients {c} are not compatible with order {g.order}")
    t_point = g.vertex(target).fn.evaluate(c.values)
    competitors = sorted({v.fn.evaluate(c.values) for v in g.vertices} - {t_point})
    dump = {
        "order": str(g.order),
        "coeffs": str(c),
        "target": target,
        "target_point": [format_rational(x) for x in t_point],
        "mode": mode,
    }

    if mode == "lp":
        rows = [[a - q for a, q in zip(t_point, z)] for z in competitors]
        if not rows:
            return _point_from_gaps([Fraction(0)] * g.n)
        try:
            gaps = solve_inequalities(rows, [Fraction(1)] * len(rows))
        except InfeasibleError as e:
            raise SeparationError(f"No separating point for vertex {target}", dump) from e
        b = _point_from_gaps(gaps)
    elif mode == "recursive":
        b = _recursive_point(g, target)
    else:
        raise InputError(f"Unknown separation mode: {mode}")

    best = evaluate_numeric(t_point, b)
    for z in competitors:
        if evaluate_numeric(z, b) >= best:
            dump["b"] = str(b)
            dump["competitor"] = [format_rational(x) for x in z]
            raise SeparationError(f"Point {b} does not separate vertex {target}", dump)
    get_logger().debug(f"separated vertex {target} of order {g.order} at b={b} ({mode})")
    return b


def weak_ranking(points: Sequence[Tuple[Fraction, ...]], b: EvaluationPoint) -> List[FrozenSet[Tuple[Fraction, ...]]]:
    """Points grouped by value, best group first."""
    groups: Dict[Fraction, set] = {}
    for point in points:
        groups.setdefault(evaluate_numeric(point, b), set()).add(point)
    return [frozenset(groups[value]) for value in sorted(groups, reverse=True)]


def argmax_set(points: Sequence[Tuple[Fraction, ...]], b: EvaluationPoint) -> FrozenSet[Tuple[Fraction, ...]]:
    ranking = weak_ranking(points, b)
    return ranking[0] if ranking else frozenset()


def order_equivalent_pair(n: int, rng: Lcg) -> Tuple[EvaluationPoint, EvaluationPoint]:
    """
    Two points with the same strict ordering of coordinates but different magnitudes.

    A random permutation fixes the ordering; each point draws its own
    strictly increasing values along it.
    """
    size = n + 1
    positions = list(range(size))
    for i in range(size - 1, 0, -1):
        j = rng.draw(i + 1)
        positions[i], positions[j] = positions[j], positions[i]

    def draw_point() -> EvaluationPoint:
        values = [Fraction(0)] * size
        level = 0
        for position in positions:
            level += 1 + rng.draw(50)
            values[position] = Fraction(level)
        return EvaluationPoint(tuple(values))

    return draw_point(), draw_point()


def ranking_invariance(
    g: SGraph,
    c: NumericCoeffs,
    b1: EvaluationPoint,
    b2: EvaluationPoint
) -> Tuple[bool, bool]:
    """
    Compare the rankings of numeric Z(c) at two order-equivalent points.

    Returns:
        (same maximizer set, same full weak ranking)
    """
    points = sorted({v.fn.evaluate(c.values) for v in g.vertices})
    first, second = weak_ranking(points, b1), weak_ranking(points, b2)
    same_top = (first[0] if first else frozenset()) == (second[0] if second else frozenset())
    return same_top, first == second
