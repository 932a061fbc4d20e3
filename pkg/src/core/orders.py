"""
S-graph Workbench - Coefficient Orders
Linear orders on the coefficient indices, numeric coefficients, sorted chains
and the deterministic coefficient sampler.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Sequence, Tuple

from src.core.exactmath import InputError, RationalLike, format_rational, to_rational


PROFILES = ("generic", "ties", "zeros")

# 64-bit LCG shared by every sweep so runs are reproducible
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
LCG_MASK = (1 << 64) - 1
SAMPLE_RANGE = 1000

_PROFILE_TAGS = {"generic": 1, "ties": 2, "zeros": 3}


class OrderError(InputError):
    """Exception raised for malformed orders or order/coefficient mismatches."""
    pass


@dataclass(frozen=True)
class CoeffOrder:
    """
    Linear order s_1 < s_2 < ... < s_n on {1..n}.

    seq[i] is s_{i+1}; rank() gives the position of an index in the order.
    """
    seq: Tuple[int, ...]

    def __post_init__(self):
        seq = tuple(int(s) for s in self.seq)
        if sorted(seq) != list(range(1, len(seq) + 1)):
            raise OrderError(f"Order must be a permutation of 1..{len(seq)}, got {seq}")
        object.__setattr__(self, "seq", seq)

    @property
    def n(self) -> int:
        return len(self.seq)

    @property
    def maximal(self) -> int:
        return self.seq[-1]

    def rank(self, index: int) -> int:
        """0-based position of index in the order."""
        try:
            return self.seq.index(index)
        except ValueError as e:
            raise OrderError(f"Index {index} not in order {self.seq}") from e

    def precedes(self, a: int, b: int) -> bool:
        return self.rank(a) < self.rank(b)

    def __str__(self) -> str:
        return ",".join(str(s) for s in self.seq)


@dataclass(frozen=True)
class NumericCoeffs:
    """Non-negative rational coefficients (c_1, ..., c_n)."""
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(to_rational(v) for v in self.values)
        for i, v in enumerate(values, start=1):
            if v < 0:
                raise InputError(f"Coefficient c{i} must be non-negative, got {format_rational(v)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: Sequence[RationalLike]) -> "NumericCoeffs":
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.values)

    def value(self, k: int) -> Fraction:
        """c_k with c_0 = c_{n+1} = 0."""
        if k < 1 or k > self.n:
            return Fraction(0)
        return self.values[k - 1]

    @property
    def is_generic(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def __str__(self) -> str:
        return ",".join(format_rational(v) for v in self.values)


def parse_order(text: str) -> CoeffOrder:
    """Parse the CLI form "1,3,2"."""
    try:
        seq = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise OrderError(f"Invalid order: {text!r}") from e
    if not seq:
        raise OrderError("Order must not be empty")
    return CoeffOrder(seq)


def parse_coeffs(text: str) -> NumericCoeffs:
    """Parse the CLI form "1,4,2" (entries may be p/q)."""
    parts = [part for part in text.split(",") if part.strip()]
    if not parts:
        raise InputError("Coefficients must not be empty")
    return NumericCoeffs(tuple(to_rational(part) for part in parts))


def identity_order(n: int) -> CoeffOrder:
    return CoeffOrder(tuple(range(1, n + 1)))


def all_orders(n: int) -> Iterator[CoeffOrder]:
    """Every linear order on {1..n}, in lexicographic order of seq."""
    for seq in permutations(range(1, n + 1)):
        yield CoeffOrder(seq)


def compatible(order: CoeffOrder, c: NumericCoeffs) -> bool:
    """
    True iff c_{s_1} <= c_{s_2} <= ... <= c_{s_n}.

    Raises:
        OrderError: If lengths differ
    """
    if order.n != c.n:
        raise OrderError(f"Order has n={order.n} but {c.n} coefficients were given")
    along = [c.value(s) for s in order.seq]
    return all(a <= b for a, b in zip(along, along[1:]))


def sorted_chain(order: CoeffOrder, k: int) -> Tuple[int, ...]:
    """N_k = {s_1, ..., s_k} sorted by the natural order."""
    if k < 0 or k > order.n:
        raise OrderError(f"Chain length {k} out of range for n={order.n}")
    return tuple(sorted(order.seq[:k]))


class Lcg:
    """64-bit linear congruential generator."""

    def __init__(self, seed: int):
        self.state = seed & LCG_MASK

    def step(self) -> int:
        self.state = (self.state * LCG_MULTIPLIER + LCG_INCREMENT) & LCG_MASK
        return self.state

    def mix(self, value: int) -> None:
        self.state ^= value & LCG_MASK
        self.step()

    def draw(self, bound: int = SAMPLE_RANGE) -> int:
        """Uniform-ish integer in [0, bound)."""
        return (self.step() >> 33) % bound

    def draw_value(self) -> int:
        """Integer in [1, SAMPLE_RANGE]."""
        return 1 + self.draw(SAMPLE_RANGE)


def seeded_generator(seed: int, order: CoeffOrder, profile: str) -> Lcg:
    """Generator whose state depends on (seed, order, profile) only."""
    if profile not in _PROFILE_TAGS:
        raise InputError(f"Unknown profile: {profile} (expected one of {', '.join(PROFILES)})")
    rng = Lcg(seed)
    for s in order.seq:
        rng.mix(s)
    for _ in range(_PROFILE_TAGS[profile]):
        rng.step()
    return rng


def sample_coeffs(order: CoeffOrder, seed: int, profile: str = "generic") -> NumericCoeffs:
    """
    Draw coefficients compatible with order.

    generic: pairwise distinct values in [1, 1000].
    ties: at least one repeated value (n >= 2).
    zeros: the minimal coefficient c_{s_1} is 0.

    Values are sorted ascending and assigned to s_1..s_n.
    """
    rng = seeded_generator(seed, order, profile)
    n = order.n
    values = []
    if profile == "generic":
        seen = set()
        while len(values) < n:
            v = rng.draw_value()
            if v not in seen:
                seen.add(v)
                values.append(v)
    else:
        values = [rng.draw_value() for _ in range(n)]
    values.sort()

    if profile == "ties" and n >= 2 and len(set(values)) == n:
        position = 1 + rng.draw(n - 1)
        values[position] = values[position - 1]
    elif profile == "zeros" and n >= 1:
        values[0] = 0

    result = [0] * n
    for rank, s in enumerate(order.seq):
        result[s - 1] = values[rank]
    return NumericCoeffs(tuple(Fraction(v) for v in result))
