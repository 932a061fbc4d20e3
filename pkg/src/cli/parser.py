"""
S-graph Workbench - Command Line Parser
Argument definitions for the sgx command and its subcommands.
"""

import argparse
from typing import List

from src.core.exactmath import InputError
from src.core.orders import PROFILES
from src.core.i18n import _
from src.operations.sweep import ALL_CHECKS


def parse_int_list(text: str) -> List[int]:
    """Parse "1,2,3" or "1-4" (ranges inclusive, may be mixed)."""
    values: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                low, high = part.split("-", 1)
                values.extend(range(int(low), int(high) + 1))
            else:
                values.append(int(part))
    except ValueError as e:
        raise InputError(f"Invalid integer list: {text!r}") from e
    if not values:
        raise InputError("Integer list must not be empty")
    return values


def parse_name_list(text: str, allowed) -> List[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [name for name in names if name not in allowed]
    if unknown:
        raise InputError(f"Unknown names {unknown}; expected any of {', '.join(allowed)}")
    return names


def _add_coefficient_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--coeffs", help="numeric coefficients c1,...,cn (entries may be p/q)")
    parser.add_argument("--seed", type=int, help="sampler seed when --coeffs is absent")
    parser.add_argument("--profile", choices=PROFILES, help="sampler profile when --coeffs is absent")


def _add_output_flags(parser: argparse.ArgumentParser, formats) -> None:
    parser.add_argument("--format", choices=formats, default="text", help="output format")
    parser.add_argument("--out", help="write output to FILE instead of stdout")


def _add_sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", default="1,2,3", help="sizes, e.g. 1,2,3 or 1-4")
    parser.add_argument("--trials", type=int, help="coefficient samples per order")
    parser.add_argument("--profiles", help=f"comma list of {', '.join(PROFILES)}")
    parser.add_argument("--workers", type=int, help="worker processes")
    parser.add_argument("--max-steps", type=int, dest="max_steps", help="deconstruction step bound")
    parser.add_argument("--report", help="write the JSON report to FILE")
    parser.add_argument("--timing", action="store_true", help="include timing in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sgx", description=_("app_description"))
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    graph = sub.add_parser("graph", help="build G(c) for an order")
    graph.add_argument("--order", required=True, help="order s1,...,sn")
    _add_output_flags(graph, ("text", "json", "csv", "dot"))

    zset = sub.add_parser("zset", help="list the S-set of an order")
    zset.add_argument("--order", required=True)
    _add_coefficient_flags(zset)
    _add_output_flags(zset, ("text", "json", "csv"))

    polytope = sub.add_parser("polytope", help="build K(c) and enumerate its vertices")
    polytope.add_argument("--order", required=True)
    _add_coefficient_flags(polytope)
    polytope.add_argument("--variant", default="3", help="3, 3p or 3pp")
    polytope.add_argument("--exclude-k", dest="exclude_k", help="chain lengths whose rules are omitted")
    _add_output_flags(polytope, ("text", "json", "csv"))

    tableau = sub.add_parser("tableau", help="tableau evaluation and reconstruction")
    tsub = tableau.add_subparsers(dest="tableau_command", metavar="action")
    tsub.required = True

    evaluate = tsub.add_parser("eval", help="evaluate a height profile")
    evaluate.add_argument("--heights", required=True, help="column heights, e.g. 3,2,1,3")
    _add_output_flags(evaluate, ("text", "json"))

    reconstruct = tsub.add_parser("reconstruct", help="deconstruct a function and rebuild heights")
    reconstruct.add_argument("function", nargs="?", help='function text, e.g. "c1; c1+c2-c3; c1"')
    reconstruct.add_argument("--heights", help="use the function of this height profile")
    reconstruct.add_argument("--json", dest="function_json", metavar="FILE",
                             help="read the function from a JSON file; a saved result is replayed with its log")
    reconstruct.add_argument("--max-steps", type=int, dest="max_steps")
    _add_output_flags(reconstruct, ("text", "json"))

    count = sub.add_parser("count", help="count functions and graphs over all orders")
    count.add_argument("--n", type=int, required=True)
    _add_output_flags(count, ("text", "json"))

    verify = sub.add_parser("verify", help="run one check")
    verify.add_argument("check", choices=ALL_CHECKS)
    verify.add_argument("--order", help="restrict to one order")
    _add_coefficient_flags(verify)
    _add_sweep_flags(verify)
    _add_output_flags(verify, ("text", "json"))

    sweep = sub.add_parser("sweep", help="run a verification sweep")
    sweep.add_argument("--checks", help=f"comma list of {', '.join(ALL_CHECKS)}")
    sweep.add_argument("--seed", type=int)
    _add_sweep_flags(sweep)
    _add_output_flags(sweep, ("text", "json"))

    return parser
