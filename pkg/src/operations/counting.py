"""
S-graph Workbench - Counting
Distinct functions and distinct graphs over all orders of a given size.
"""

from math import comb
from typing import Dict, FrozenSet, Set

from src.core.config import get_config
from src.core.exactmath import FunctionVector, InputError
from src.core.orders import all_orders
from src.fusion.sgraph import build_sgraph, zset
from src.utils.logger import get_logger
from src.core.i18n import _


# Values that are asserted, not just reported
KNOWN_FUNCTION_COUNTS = {1: 2, 2: 5, 4: 42}


class ResourceGuardError(InputError):
    """Raised when an enumeration over all orders would be too large."""
    pass


def _guard(n: int) -> None:
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    limit = get_config().max_n
    if n > limit:
        raise ResourceGuardError(f"n={n} exceeds the configured limit max_n={limit}")


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def zsets_by_order(n: int) -> Dict[str, FrozenSet[FunctionVector]]:
    """Symbolic Z-set of every order of size n, keyed by the order text."""
    _guard(n)
    return {str(order): zset(build_sgraph(order)) for order in all_orders(n)}


def count_functions(n: int) -> int:
    """
    Size of the union of the symbolic Z-sets over all n! orders.

    Raises:
        ResourceGuardError: If n exceeds max_n
    """
    logger = get_logger()
    logger.operation_start(_("op_count"), f"functions n={n}")
    union: Set[FunctionVector] = set()
    for functions in zsets_by_order(n).values():
        union |= functions
    logger.operation_end(_("op_count"), f"functions n={n}", str(len(union)))
    return len(union)


def count_graphs(n: int) -> int:
    """
    Number of distinct symbolic Z-sets over all n! orders.

    Raises:
        ResourceGuardError: If n exceeds max_n
    """
    logger = get_logger()
    logger.operation_start(_("op_count"), f"graphs n={n}")
    distinct = set(zsets_by_order(n).values())
    logger.operation_end(_("op_count"), f"graphs n={n}", str(len(distinct)))
    return len(distinct)


def count_summary(n: int) -> Dict[str, int]:
    """All counts for one n, with the expected values they are checked against."""
    sets = zsets_by_order(n)
    union: Set[FunctionVector] = set()
    for functions in sets.values():
        union |= functions
    return {
        "n": n,
        "orders": len(sets),
        "functions": len(union),
        "graphs": len(set(sets.values())),
        "catalan": catalan(n),
        "per_order_min": min(len(s) for s in sets.values()),
        "per_order_max": max(len(s) for s in sets.values()),
        "per_order_expected": 2 ** n,
    }
