"""
S-graph Workbench - Exact Simplex
Phase-1 simplex over Fractions with Bland's rule, used for feasibility tests.
"""

from fractions import Fraction
from typing import List, Sequence


class InfeasibleError(Exception):
    """Raised when a linear system has no non-negative solution."""
    pass


def phase_one(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> List[Fraction]:
    """
    Find y >= 0 with A y = b.

    Artificial variables are added for every row and their sum is minimized.
    Entering and leaving variables follow Bland's rule, so the method
    terminates without cycling.

    Args:
        A: m rows of k Fractions
        b: m right-hand sides

    Returns:
        A feasible y of length k

    Raises:
        InfeasibleError: If the optimal artificial sum is positive
    """
    m = len(A)
    k = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * k

    rows: List[List[Fraction]] = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * a) for a in A[i]]
        row.extend(Fraction(1 if t == i else 0) for t in range(m))
        row.append(Fraction(sign * b[i]))
        rows.append(row)
    width = k + m
    basis = [k + i for i in range(m)]

    # reduced costs of the artificial objective; last entry is -(sum of artificials)
    cost = [-sum(rows[i][j] for i in range(m)) for j in range(k)]
    cost.extend(Fraction(0) for _ in range(m))
    cost.append(-sum(rows[i][-1] for i in range(m)))

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break

        leaving = None
        best = None
        for i in range(m):
            coeff = rows[i][entering]
            if coeff <= 0:
                continue
            ratio = rows[i][-1] / coeff
            if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                best = ratio
                leaving = i
        if leaving is None:
            # phase 1 is bounded below by zero
            break

        pivot = rows[leaving][entering]
        rows[leaving] = [value / pivot for value in rows[leaving]]
        for i in range(m):
            if i != leaving and rows[i][entering] != 0:
                factor = rows[i][entering]
                rows[i] = [a - factor * p for a, p in zip(rows[i], rows[leaving])]
        factor = cost[entering]
        cost = [a - factor * p for a, p in zip(cost, rows[leaving])]
        basis[leaving] = entering

    if -cost[-1] > 0:
        raise InfeasibleError(f"Artificial sum stays at {-cost[-1]}")

    y = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            y[var] = rows[i][-1]
    return y


def is_feasible(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> bool:
    """True iff A y = b has a solution y >= 0."""
    try:
        phase_one(A, b)
    except InfeasibleError:
        return False
    return True


def solve_inequalities(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """
    Find a free x with rows . x >= rhs.

    Uses x = x_plus - x_minus and one surplus variable per row.

    Raises:
        InfeasibleError: If no such x exists
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = []
    for i, row in enumerate(rows):
        line = [Fraction(a) for a in row]
        line.extend(-Fraction(a) for a in row)
        line.extend(Fraction(-1 if t == i else 0) for t in range(m))
        A.append(line)
    y = phase_one(A, [Fraction(v) for v in rhs])
    return [y[j] - y[n + j] for j in range(n)]
