"""
S-graph Workbench - Vertex Enumeration
Exact active-set enumeration of polytope vertices, extreme-point tests and
system comparison.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

from src.core.exactmath import InputError
from src.polytope.simplex import is_feasible
from src.polytope.system import InequalitySystem, contains
from src.utils.logger import get_logger
from src.core.i18n import _


Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class VertexSet:
    """Vertices of a system, as exact points."""
    points: FrozenSet[Point]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point) -> bool:
        return tuple(point) in self.points

    def sorted_points(self) -> List[Point]:
        return sorted(self.points)


class Comparison(Enum):
    EQUAL = "equal"
    A_INSIDE_B = "aStrictlyInsideB"
    B_INSIDE_A = "bStrictlyInsideA"
    INCOMPARABLE = "incomparable"


_Basis = List[Tuple[int, List[Fraction]]]


def _extend_basis(basis: _Basis, row: Sequence[Fraction], n: int) -> Optional[_Basis]:
    """
    Add an augmented row [a | b] to a reduced echelon basis.

    Returns None when the normal is dependent on the rows already chosen.
    """
    vec = list(row)
    for col, prow in basis:
        factor = vec[col]
        if factor:
            vec = [a - factor * p for a, p in zip(vec, prow)]
    pivot = next((j for j in range(n) if vec[j] != 0), None)
    if pivot is None:
        return None
    inv = vec[pivot]
    vec = [a / inv for a in vec]
    reduced = []
    for col, prow in basis:
        factor = prow[pivot]
        if factor:
            prow = [a - factor * v for a, v in zip(prow, vec)]
        reduced.append((col, prow))
    reduced.append((pivot, vec))
    return reduced


def enumerate_vertices(system: InequalitySystem) -> VertexSet:
    """
    Enumerate the vertices of a bounded system.

    Every n-subset of inequalities with independent normals is made tight and
    solved; solutions satisfying the whole system are kept. Subsets are walked
    depth first so that a dependent prefix prunes all of its extensions.

    Args:
        system: System containing the box constraints

    Returns:
        The exact vertex set
    """
    logger = get_logger()
    n = system.n
    rows = [list(ineq.normal) + [ineq.rhs] for ineq in system.inequalities]
    m = len(rows)
    found = set()
    solves = 0

    logger.operation_start(_("op_enumerate"), f"{system.variant.value} n={n}", f"{m} inequalities")

    def search(start: int, basis: _Basis) -> None:
        nonlocal solves
        if len(basis) == n:
            solves += 1
            point = [Fraction(0)] * n
            for col, prow in basis:
                point[col] = prow[n]
            point = tuple(point)
            if point not in found and contains(system, point):
                found.add(point)
            return
        remaining = n - len(basis)
        for i in range(start, m - remaining + 1):
            extended = _extend_basis(basis, rows[i], n)
            if extended is not None:
                search(i + 1, extended)

    search(0, [])
    logger.operation_end(_("op_enumerate"), f"{system.variant.value} n={n}", f"{len(found)} vertices from {solves} solves")
    return VertexSet(frozenset(found))


def is_extreme_point(points: Sequence[Sequence[Fraction]], p: Sequence[Fraction]) -> bool:
    """
    True iff p is not a convex combination of the other points.

    Solves lambda >= 0, sum(lambda) = 1, sum(lambda_i q_i) = p by phase-1
    simplex.

    Raises:
        InputError: If p is not among the points
    """
    target = tuple(Fraction(x) for x in p)
    pool = {tuple(Fraction(x) for x in q) for q in points}
    if target not in pool:
        raise InputError("Point is not a member of the set")
    others = sorted(pool - {target})
    if not others:
        return True
    dim = len(target)
    A = [[q[d] for q in others] for d in range(dim)]
    A.append([Fraction(1)] * len(others))
    b = list(target) + [Fraction(1)]
    return not is_feasible(A, b)


def compare_systems(a: InequalitySystem, b: InequalitySystem) -> Comparison:
    """
    Compare two bounded systems by mutual vertex containment.

    Raises:
        InputError: On dimension mismatch
    """
    if a.n != b.n:
        raise InputError(f"Dimension mismatch: {a.n} vs {b.n}")
    a_in_b = all(contains(b, v) for v in enumerate_vertices(a).points)
    b_in_a = all(contains(a, v) for v in enumerate_vertices(b).points)
    if a_in_b and b_in_a:
        return Comparison.EQUAL
    if a_in_b:
        return Comparison.A_INSIDE_B
    if b_in_a:
        return Comparison.B_INSIDE_A
    return Comparison.INCOMPARABLE
