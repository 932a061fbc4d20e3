"""
S-graph Workbench - Height Profiles
Complete tableaux given by column heights: admissibility, the row rule and
the difference rule for f_T, and the order relations P(T).
"""

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple

from src.core.exactmath import FunctionVector, InputError, LinearForm, coefficient_form, r_difference
from src.core.orders import CoeffOrder


class BoundaryViolation(Exception):
    """A row contribution has no partner column."""

    def __init__(self, row: int, column: int):
        super().__init__(f"Row {row}: column C{column} has no partner column")
        self.row = row
        self.column = column


@dataclass(frozen=True)
class HeightProfile:
    """heights[i-1] is the height of column C_i, for i in 1..n+1."""
    heights: Tuple[int, ...]

    def __post_init__(self):
        heights = tuple(int(h) for h in self.heights)
        if not heights:
            raise InputError("A height profile needs at least one column")
        if any(h < 0 for h in heights):
            raise InputError(f"Heights must be non-negative, got {heights}")
        object.__setattr__(self, "heights", heights)

    @classmethod
    def zero(cls, n: int) -> "HeightProfile":
        return cls(tuple(0 for _ in range(n + 1)))

    @property
    def n(self) -> int:
        return len(self.heights) - 1

    @property
    def top(self) -> int:
        return max(self.heights)

    def ht(self, column: int) -> Optional[int]:
        """Height of C_column, None outside 1..n+1."""
        if column < 1 or column > len(self.heights):
            return None
        return self.heights[column - 1]

    def columns_at(self, level: int) -> List[int]:
        """Columns of height >= level, left to right."""
        return [i for i, h in enumerate(self.heights, start=1) if h >= level]

    def with_added(self, column: int, blocks: int = 1) -> "HeightProfile":
        heights = list(self.heights)
        heights[column - 1] += blocks
        return HeightProfile(tuple(heights))

    def __str__(self) -> str:
        return ",".join(str(h) for h in self.heights)


@dataclass(frozen=True)
class ProfileDiagnostic:
    clause: str
    level: int
    column: int
    message: str

    def to_dict(self) -> dict:
        return {"clause": self.clause, "level": self.level, "column": self.column, "message": self.message}


def parse_heights(text: str) -> HeightProfile:
    """Parse the CLI form "3,2,1,3"."""
    try:
        return HeightProfile(tuple(int(part) for part in text.split(",") if part.strip()))
    except ValueError as e:
        raise InputError(f"Invalid heights: {text!r}") from e


def validate_profile(h: HeightProfile) -> List[ProfileDiagnostic]:
    """
    Check the admissibility clauses of a complete tableau.

    Boundary: at odd levels the rightmost column reaching the level is
    C_{n+1}; at even levels the leftmost is C_1.
    Neighbours: a column of odd height m needs its left neighbour at height
    >= m-2 and its right neighbour at >= m-1; even height swaps the two.
    """
    diagnostics: List[ProfileDiagnostic] = []
    last = h.n + 1
    for level in range(1, h.top + 1):
        columns = h.columns_at(level)
        if level % 2 == 1 and columns[-1] != last:
            diagnostics.append(ProfileDiagnostic(
                "boundary_odd", level, columns[-1],
                f"rightmost column at odd level {level} is C{columns[-1]}, not C{last}"))
        if level % 2 == 0 and columns[0] != 1:
            diagnostics.append(ProfileDiagnostic(
                "boundary_even", level, columns[0],
                f"leftmost column at even level {level} is C{columns[0]}, not C1"))

    for column, m in enumerate(h.heights, start=1):
        if m == 0:
            continue
        left_need, right_need = (m - 2, m - 1) if m % 2 == 1 else (m - 1, m - 2)
        left, right = h.ht(column - 1), h.ht(column + 1)
        if left is not None and left < left_need:
            diagnostics.append(ProfileDiagnostic(
                "neighbour_left", m, column,
                f"C{column - 1} has height {left}, needs >= {left_need}"))
        if right is not None and right < right_need:
            diagnostics.append(ProfileDiagnostic(
                "neighbour_right", m, column,
                f"C{column + 1} has height {right}, needs >= {right_need}"))
    return diagnostics


def evaluate_rows(h: HeightProfile) -> FunctionVector:
    """
    f_T by the row rule.

    Odd row m: each C_k (k <= n) reaching m contributes c_k (r^k - r^j) with
    C_j the next column to the right reaching m. Even row m: each C_{k+1}
    (k >= 1) reaching m contributes c_k (r^{k+1} - r^j) with C_j the next
    column to the left reaching m.

    Raises:
        BoundaryViolation: If a required partner column is missing
    """
    n = h.n
    total = FunctionVector.zero(n)
    for level in range(1, h.top + 1):
        columns = h.columns_at(level)
        if level % 2 == 1:
            for position, k in enumerate(columns):
                if k > n:
                    continue
                if position + 1 >= len(columns):
                    raise BoundaryViolation(level, k)
                j = columns[position + 1]
                total = total + r_difference(k, j, LinearForm.variable(k), n)
        else:
            for position, column in enumerate(columns):
                if column < 2:
                    continue
                if position == 0:
                    raise BoundaryViolation(level, column)
                j = columns[position - 1]
                total = total + r_difference(column, j, LinearForm.variable(column - 1), n)
    return total


def _nearest(h: HeightProfile, column: int, level: int, step: int) -> Optional[int]:
    """Nearest column in direction step whose height reaches level."""
    other = column + step
    while 1 <= other <= h.n + 1:
        if h.heights[other - 1] >= level:
            return other
        other += step
    return None


def evaluate_diffs(h: HeightProfile) -> FunctionVector:
    """
    f_T from the consecutive differences c'_{k+1} - c'_k.

    For C_{k+1} of height m: m = 0 gives 0; odd m gives c_{k+1} - c_j when
    a column C_j on the left neighbours it at level m, else c_{k+1}; even m
    gives c_{k+1} - c_j when a column C_{j+1} on the right neighbours it,
    else c_{k+1}. c_{n+1} is zero.
    """
    n = h.n
    coords = []
    running = LinearForm.zero()
    for column in range(1, n + 2):
        m = h.heights[column - 1]
        if m == 0:
            diff = LinearForm.zero()
        elif m % 2 == 1:
            partner = _nearest(h, column, m, -1)
            diff = coefficient_form(column, n)
            if partner is not None:
                diff = diff - coefficient_form(partner, n)
        else:
            partner = _nearest(h, column, m, +1)
            diff = coefficient_form(column, n)
            if partner is not None:
                diff = diff - coefficient_form(partner - 1, n)
        if column <= n:
            running = running + diff
            coords.append(running)
    return FunctionVector(tuple(coords))


@dataclass(frozen=True)
class OrderRelations:
    """Generating pairs (a, b) meaning a precedes b."""
    pairs: FrozenSet[Tuple[int, int]]

    def closure(self) -> Set[Tuple[int, int]]:
        closed = set(self.pairs)
        changed = True
        while changed:
            changed = False
            for a, b in list(closed):
                for c, d in list(closed):
                    if b == c and (a, d) not in closed:
                        closed.add((a, d))
                        changed = True
        return closed

    def embeds_in(self, order: CoeffOrder) -> bool:
        """True iff the transitive closure is contained in the linear order."""
        return all(order.precedes(a, b) for a, b in self.closure())

    def sorted_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.pairs)


def order_relations(h: HeightProfile) -> OrderRelations:
    """
    The relations P(T) read from neighbouring columns.

    Odd level m: for neighbours C_j, C_{k+1}, relate j < j_t where C_{j_t+1}
    ranges over the intermediate columns of height exactly m-1, and finally
    j_s = k. Even level m: neighbours C_{k+1}, C_{j+1} give j < k+1.
    Reflexive pairs are dropped.
    """
    pairs: Set[Tuple[int, int]] = set()
    for level in range(1, h.top + 1):
        columns = h.columns_at(level)
        for left, right in zip(columns, columns[1:]):
            if level % 2 == 1:
                j, k = left, right - 1
                targets = [c - 1 for c in range(left + 1, right) if h.heights[c - 1] == level - 1]
                targets.append(k)
                for t in targets:
                    if t != j:
                        pairs.add((j, t))
            else:
                k_plus_1, j = left, right - 1
                if j != k_plus_1:
                    pairs.add((j, k_plus_1))
    return OrderRelations(frozenset(pairs))


def profiles_agree(h: HeightProfile) -> bool:
    """Row rule and difference rule give the same function."""
    return evaluate_rows(h) == evaluate_diffs(h)
