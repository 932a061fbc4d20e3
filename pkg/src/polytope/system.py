"""
S-graph Workbench - Inequality Systems
The box constraints and the chain inequalities defining K(c) and its variants.
"""

from collections import OrderedDict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from src.core.exactmath import InputError, format_rational
from src.core.orders import CoeffOrder, NumericCoeffs, compatible, sorted_chain


class IncompatibleCoefficients(InputError):
    """Raised when numeric coefficients do not lift to the given order."""
    pass


class Variant(Enum):
    """Which chain inequalities accompany the box."""
    THREE = "three"
    THREE_PRIME = "threePrime"
    THREE_DOUBLE_PRIME = "threeDoublePrime"

    @classmethod
    def parse(cls, token: str) -> "Variant":
        aliases = {"3": cls.THREE, "3p": cls.THREE_PRIME, "3pp": cls.THREE_DOUBLE_PRIME}
        if token in aliases:
            return aliases[token]
        try:
            return cls(token)
        except ValueError as e:
            raise InputError(f"Unknown variant: {token} (expected 3, 3p or 3pp)") from e


@dataclass(frozen=True)
class AffineInequality:
    """normal . x >= rhs, with the rules that generated it."""
    normal: Tuple[Fraction, ...]
    rhs: Fraction
    provenance: Tuple[str, ...]

    def holds(self, point: Sequence[Fraction]) -> bool:
        return sum(a * x for a, x in zip(self.normal, point)) >= self.rhs

    def slack(self, point: Sequence[Fraction]) -> Fraction:
        return sum(a * x for a, x in zip(self.normal, point)) - self.rhs

    def __str__(self) -> str:
        terms = []
        for index, a in enumerate(self.normal, start=1):
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            body = f"x{index}" if abs(a) == 1 else f"{format_rational(abs(a))}*x{index}"
            terms.append(f"{sign} {body}" if terms else (body if a > 0 else f"-{body}"))
        return f"{' '.join(terms)} >= {format_rational(self.rhs)}"


@dataclass(frozen=True)
class InequalitySystem:
    """A bounded system over Q^n: the box plus the variant's chain rules."""
    n: int
    variant: Variant
    inequalities: Tuple[AffineInequality, ...]

    def contains(self, point: Sequence[Fraction]) -> bool:
        return contains(self, point)


def _difference(n: int, plus: int, minus: int) -> Tuple[Fraction, ...]:
    """Normal of x_plus - x_minus."""
    normal = [Fraction(0)] * n
    normal[plus - 1] += 1
    normal[minus - 1] -= 1
    return tuple(normal)


class _Collector:
    """Deduplicates inequalities by (normal, rhs) while merging provenance."""

    def __init__(self, n: int):
        self.n = n
        self._rows: "OrderedDict[Tuple, list]" = OrderedDict()

    def add(self, normal: Tuple[Fraction, ...], rhs: Fraction, tag: str) -> None:
        if all(a == 0 for a in normal):
            raise InputError(f"Zero normal generated by {tag}")
        key = (normal, rhs)
        tags = self._rows.setdefault(key, [])
        if tag not in tags:
            tags.append(tag)

    def result(self) -> Tuple[AffineInequality, ...]:
        return tuple(
            AffineInequality(normal, rhs, tuple(tags))
            for (normal, rhs), tags in self._rows.items()
        )


def build_system(
    order: CoeffOrder,
    c: NumericCoeffs,
    variant: Variant = Variant.THREE,
    exclude_k: Optional[Iterable[int]] = None
) -> InequalitySystem:
    """
    Build the inequality system of a variant.

    Args:
        order: Coefficient order
        c: Numeric coefficients compatible with order
        variant: three, threePrime or threeDoublePrime
        exclude_k: Chain lengths k whose rules are omitted (variant three only)

    Returns:
        Deduplicated InequalitySystem, box first

    Raises:
        IncompatibleCoefficients: If c does not lift to order
        InputError: If exclude_k names a chain length outside 1..n
    """
    if not compatible(order, c):
        raise IncompatibleCoefficients(f"Coefficients {c} are not compatible with order {order}")
    n = order.n
    excluded = set(exclude_k or ())
    outside = sorted(k for k in excluded if not 1 <= k <= n)
    if outside:
        raise InputError(f"Chain lengths {outside} are outside 1..{n}")
    rows = _Collector(n)

    for k in range(1, n + 1):
        unit = tuple(Fraction(1 if i == k else 0) for i in range(1, n + 1))
        rows.add(unit, Fraction(0), f"box lower {k}")
        rows.add(tuple(-a for a in unit), -c.value(k), f"box upper {k}")

    if variant is Variant.THREE:
        for k in range(1, n + 1):
            if k in excluded:
                continue
            chain = sorted_chain(order, k)
            for lo, hi in zip(chain, chain[1:]):
                rows.add(_difference(n, hi, lo), min(Fraction(0), c.value(hi) - c.value(lo)),
                         f"chain {k} pair ({lo},{hi})")

    elif variant is Variant.THREE_PRIME:
        for k in range(1, n + 1):
            chain = sorted_chain(order, k)
            j = chain.index(order.seq[k - 1]) + 1
            if j < k:
                t_j, t_next = chain[j - 1], chain[j]
                rows.add(_difference(n, t_next, t_j), -(c.value(t_j) - c.value(t_next)),
                         f"adjacent {k} right ({t_j},{t_next})")
            if j > 1:
                t_prev, t_j = chain[j - 2], chain[j - 1]
                rows.add(_difference(n, t_j, t_prev), Fraction(0),
                         f"adjacent {k} left ({t_prev},{t_j})")

    else:
        for s in range(1, n + 1):
            for r in range(s + 1, n + 1):
                rows.add(_difference(n, r, s), min(Fraction(0), c.value(r) - c.value(s)),
                         f"all pairs ({r},{s})")

    return InequalitySystem(n=n, variant=variant, inequalities=rows.result())


def contains(system: InequalitySystem, point: Sequence[Fraction]) -> bool:
    """
    Exact membership test.

    Raises:
        InputError: If the point has the wrong dimension
    """
    if len(point) != system.n:
        raise InputError(f"Point has dimension {len(point)}, system has {system.n}")
    return all(ineq.holds(point) for ineq in system.inequalities)


def violated(system: InequalitySystem, point: Sequence[Fraction]) -> Tuple[AffineInequality, ...]:
    """The inequalities a point violates."""
    return tuple(ineq for ineq in system.inequalities if not ineq.holds(point))
