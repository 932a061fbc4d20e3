"""
S-graph Workbench - Reconstruction
Reads the extremal columns of a tableau off its function, deconstructs a
function block by block into a move log, and rebuilds heights from the log.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Set, Tuple, Union

from src.core.config import get_config
from src.core.exactmath import FunctionVector, InputError, LinearForm, coefficient_form, r_difference
from src.tableau.profile import BoundaryViolation, HeightProfile, evaluate_rows, validate_profile
from src.utils.logger import get_logger
from src.core.i18n import _


class Parity(Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass(frozen=True)
class Move:
    """Removal of the top block of C_{k+1}, partnered with index j."""
    k: int
    j: int
    parity: Parity

    def to_dict(self) -> dict:
        return {"k": self.k, "j": self.j, "parity": self.parity.value}


@dataclass(frozen=True)
class MoveLog:
    """Moves in deconstruction order (first removal first)."""
    moves: Tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def to_list(self) -> List[dict]:
        return [m.to_dict() for m in self.moves]


@dataclass(frozen=True)
class EmptyFunction:
    """Marker returned for the zero function."""
    pass


EMPTY = EmptyFunction()


@dataclass(frozen=True)
class NotRepresentable:
    """
    The function is not reached by any deconstruction.

    reason is one of "ambiguous_extremal", "no_extremal", "no_candidate" or
    "bound_exhausted"; step is the 1-based move index at which it was found.
    """
    reason: str
    step: int = 1
    function: str = ""
    matches: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Incomplete:
    """Rebuild stopped before replaying the whole log."""
    partial: HeightProfile
    blocking_move: int
    explored: int
    reason: str = "budget_exhausted"


def strongly_extremal_column(f: FunctionVector) -> Union[int, EmptyFunction, NotRepresentable]:
    """
    The unique k in [0, n] with c'_{k+1} - c'_k = c_{k+1}.

    Returns:
        k, EMPTY for the zero function, or NotRepresentable when no k or
        several k match
    """
    if f.is_zero:
        return EMPTY
    n = f.n
    matches = tuple(k for k in range(n + 1) if f.diff(k) == coefficient_form(k + 1, n))
    if len(matches) == 1:
        return matches[0]
    reason = "no_extremal" if not matches else "ambiguous_extremal"
    return NotRepresentable(reason=reason, function=str(f), matches=matches)


def quasi_extremal_neighbor(f: FunctionVector, k: int) -> Tuple[Tuple[int, Parity], ...]:
    """
    Candidate partners of the strongly extremal column C_{k+1}.

    Odd: j in [k+1, n] with c'_{j+1} - c'_j = c_{j+1} - c_{k+1}, ascending.
    Even: j in [0, k-1] with c'_{j+1} - c'_j = c_{j+1} - c_k, descending.
    """
    n = f.n
    odd = [
        (j, Parity.ODD) for j in range(k + 1, n + 1)
        if f.diff(j) == coefficient_form(j + 1, n) - coefficient_form(k + 1, n)
    ]
    even = [
        (j, Parity.EVEN) for j in range(k - 1, -1, -1)
        if f.diff(j) == coefficient_form(j + 1, n) - coefficient_form(k, n)
    ]
    return tuple(odd + even)


def move_term(move: Move, n: int) -> FunctionVector:
    """
    f_T - f_T' for one removal.

    Odd: c_{k+1} (r^{k+1} - r^{j+1}). Even: c_k (r^{k+1} - r^{j+1}).
    """
    weight = coefficient_form(move.k + 1 if move.parity is Parity.ODD else move.k, n)
    return r_difference(move.k + 1, move.j + 1, weight, n)


def check_log_range(log: MoveLog, n: int) -> None:
    """
    Reject moves no deconstruction of an n-coordinate function can produce.

    Odd moves need k < j <= n, even moves 0 <= j < k <= n.

    Raises:
        InputError: On the first move out of range
    """
    for step, move in enumerate(log.moves, start=1):
        if move.parity is Parity.ODD:
            ok = 0 <= move.k < move.j <= n
        else:
            ok = 0 <= move.j < move.k <= n
        if not ok:
            raise InputError(f"Move {step} {move.to_dict()} is out of range for n={n}")


def replay(log: MoveLog, n: int) -> FunctionVector:
    """Accumulate the move terms from the zero function."""
    total = FunctionVector.zero(n)
    for move in reversed(log.moves):
        total = total + move_term(move, n)
    return total


def intermediates(f: FunctionVector, log: MoveLog) -> List[FunctionVector]:
    """f, then the function after each removal, ending at zero for a full log."""
    chain = [f]
    for move in log.moves:
        chain.append(chain[-1] - move_term(move, f.n))
    return chain


def check_vanishing_coordinate(f: FunctionVector, k: Optional[int] = None) -> bool:
    """
    c'_k = 0 at the strongly extremal index k (c'_0 reads as zero).

    Returns False when f has no strongly extremal column.
    """
    if k is None:
        found = strongly_extremal_column(f)
        if not isinstance(found, int):
            return False
        k = found
    return f.coord(k).is_zero


def default_step_bound(n: int) -> int:
    return max(1, get_config().step_bound_factor * n * n * (n + 1))


def deconstruct(f: FunctionVector, max_steps: Optional[int] = None) -> Union[MoveLog, NotRepresentable]:
    """
    Remove blocks until the zero function is reached.

    Depth-first over the candidate partners (odd ascending, then even
    descending) with a visited set; every expanded function counts as one
    step against the bound.

    Args:
        f: Function to deconstruct
        max_steps: Expansion bound, default from configuration

    Returns:
        MoveLog on success, else NotRepresentable with the first failure seen
    """
    if f.is_zero:
        return MoveLog(())
    n = f.n
    bound = max_steps if max_steps is not None else default_step_bound(n)
    logger = get_logger()
    logger.debug(f"deconstruct {f} (bound {bound})")

    visited: Set[FunctionVector] = {f}
    frames: List[list] = [[f, (), None]]
    first_failure: Optional[NotRepresentable] = None
    steps = 0

    while frames:
        frame = frames[-1]
        current, log, candidates = frame
        if current.is_zero:
            logger.debug(f"deconstructed {f} in {len(log)} moves, {steps} steps")
            return MoveLog(log)

        if candidates is None:
            steps += 1
            if steps > bound:
                return NotRepresentable("bound_exhausted", len(log) + 1, str(current))
            k = strongly_extremal_column(current)
            if isinstance(k, NotRepresentable):
                first_failure = first_failure or NotRepresentable(k.reason, len(log) + 1, str(current), k.matches)
                frames.pop()
                continue
            candidates = iter([Move(k, j, parity) for j, parity in quasi_extremal_neighbor(current, k)])
            frame[2] = candidates

        advanced = False
        for move in candidates:
            following = current - move_term(move, n)
            if following in visited:
                continue
            visited.add(following)
            frames.append([following, log + (move,), None])
            advanced = True
            break
        if not advanced:
            first_failure = first_failure or NotRepresentable("no_candidate", len(log) + 1, str(current))
            frames.pop()

    return first_failure or NotRepresentable("no_candidate", 1, str(f))


class _BudgetExhausted(Exception):
    pass


@dataclass
class _RebuildState:
    moves: Tuple[Move, ...]
    expected: List[FunctionVector]
    depth: int
    budget: int
    explored: int = 0
    deepest: int = -1
    deepest_profile: Optional[HeightProfile] = None
    failed: Set[Tuple[int, HeightProfile]] = field(default_factory=set)

    def tick(self) -> None:
        self.explored += 1
        if self.explored > self.budget:
            raise _BudgetExhausted()


def _accepts(profile: HeightProfile, target: FunctionVector) -> bool:
    """Valid profile whose row-rule function is target."""
    if validate_profile(profile):
        return False
    try:
        return evaluate_rows(profile) == target
    except BoundaryViolation:
        return False


def _augmentations(profile: HeightProfile, target: FunctionVector, state: _RebuildState):
    """
    Function-preserving extensions of profile, breadth first.

    Steps are a single block that makes a column the unique tallest one, or
    a vertical domino on any column.
    """
    yield profile
    seen = {profile}
    frontier = [profile]
    for layer in range(state.depth):
        following = []
        for current in frontier:
            top = current.top
            steps = [current.with_added(col) for col in range(1, current.n + 2) if current.ht(col) == top]
            steps.extend(current.with_added(col, 2) for col in range(1, current.n + 2))
            for candidate in steps:
                if candidate in seen:
                    continue
                seen.add(candidate)
                state.tick()
                if _accepts(candidate, target):
                    following.append(candidate)
                    yield candidate
        frontier = following


def _rebuild_from(index: int, profile: HeightProfile, state: _RebuildState) -> Optional[HeightProfile]:
    if index == len(state.moves):
        return profile
    if (index, profile) in state.failed:
        return None
    if index > state.deepest:
        state.deepest = index
        state.deepest_profile = profile

    move = state.moves[index]
    for base in _augmentations(profile, state.expected[index], state):
        state.tick()
        candidate = base.with_added(move.k + 1)
        if not _accepts(candidate, state.expected[index + 1]):
            continue
        result = _rebuild_from(index + 1, candidate, state)
        if result is not None:
            return result
    state.failed.add((index, profile))
    return None


def rebuild_heights(
    log: MoveLog,
    f: FunctionVector,
    depth: Optional[int] = None,
    budget: Optional[int] = None
) -> Union[HeightProfile, Incomplete]:
    """
    Rebuild a height profile realizing f by replaying the log backwards.

    Each move adds one block to C_{k+1}; between moves, function-preserving
    augmentations are tried breadth first. Every accepted profile is valid
    and evaluates to the partial replay, so the final profile evaluates to f.

    Args:
        log: Move log in deconstruction order
        f: Target function
        depth: Augmentation depth bound, default from configuration
        budget: Node budget, default from configuration

    Returns:
        HeightProfile with evaluate_rows(h) == f, or Incomplete
    """
    n = f.n
    config = get_config()
    moves = tuple(reversed(log.moves))
    expected = [FunctionVector.zero(n)]
    for move in moves:
        expected.append(expected[-1] + move_term(move, n))

    start = HeightProfile.zero(n)
    if expected[-1] != f:
        return Incomplete(start, 0, 0, reason="log_does_not_replay")

    state = _RebuildState(
        moves=moves,
        expected=expected,
        depth=depth if depth is not None else config.rebuild_depth(n),
        budget=budget if budget is not None else config.rebuild_budget,
    )
    try:
        result = _rebuild_from(0, start, state)
    except _BudgetExhausted:
        result = None
        reason = "budget_exhausted"
    else:
        reason = "search_exhausted"

    if result is None:
        blocking = max(state.deepest, 0)
        get_logger().debug(_("rebuild_incomplete", explored=state.explored, move=blocking))
        return Incomplete(state.deepest_profile or start, blocking, state.explored, reason)
    return result
