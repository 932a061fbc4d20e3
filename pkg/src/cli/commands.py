"""
S-graph Workbench - Command Implementations
One function per sgx subcommand; each returns the process exit code.
"""

import argparse
from typing import Optional, Tuple

from src.core.config import get_config
from src.core.exactmath import FunctionVector, InputError
from src.core.hash_utils import format_duration
from src.core.orders import CoeffOrder, NumericCoeffs, compatible, parse_coeffs, parse_order, sample_coeffs
from src.fusion.sgraph import build_sgraph, sorted_zset
from src.operations.counting import count_summary
from src.operations.sweep import ALL_CHECKS, SweepConfig, VerificationReport, run_sweep
from src.polytope.system import IncompatibleCoefficients, Variant, build_system
from src.polytope.vertices import enumerate_vertices
from src.tableau.profile import (
    BoundaryViolation, evaluate_diffs, evaluate_rows, order_relations, parse_heights, validate_profile
)
from src.tableau.reconstruct import (
    Incomplete, MoveLog, NotRepresentable, check_log_range, deconstruct, intermediates, rebuild_heights, replay
)
from src.cli.parser import parse_int_list, parse_name_list
from src.utils import serialize
from src.utils.file_utils import read_json_input, write_output
from src.utils.logger import get_logger
from src.core.i18n import _


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def resolve_coeffs(args: argparse.Namespace, order: CoeffOrder) -> NumericCoeffs:
    """--coeffs if given, else a sample drawn with --seed/--profile or the configured defaults."""
    config = get_config()
    if getattr(args, "coeffs", None):
        c = parse_coeffs(args.coeffs)
        if c.n != order.n:
            raise InputError(f"Order has n={order.n} but {c.n} coefficients were given")
        if not compatible(order, c):
            raise IncompatibleCoefficients(f"Coefficients {c} are not compatible with order {order}")
        return c
    seed = args.seed if getattr(args, "seed", None) is not None else config.default_seed
    profile = getattr(args, "profile", None) or config.default_profile
    return sample_coeffs(order, seed, profile)


def cmd_graph(args: argparse.Namespace) -> int:
    g = build_sgraph(parse_order(args.order))
    if args.format == "json":
        text = serialize.render_json(serialize.graph_to_dict(g))
    elif args.format == "dot":
        text = serialize.graph_to_dot(g)
    elif args.format == "csv":
        text = serialize.graph_to_csv(g)
    else:
        text = serialize.graph_to_text(g)
    write_output(text, args.out)
    return EXIT_OK


def cmd_zset(args: argparse.Namespace) -> int:
    order = parse_order(args.order)
    functions = sorted_zset(build_sgraph(order))
    numeric = bool(args.coeffs) or args.seed is not None or args.profile is not None
    c = resolve_coeffs(args, order) if numeric or args.format == "csv" else None
    points = [f.evaluate(c.values) for f in functions] if c is not None else None

    if args.format == "json":
        payload = {"order": str(order), "functions": [serialize.function_to_json(f) for f in functions]}
        if c is not None:
            payload["coeffs"] = str(c)
            payload["points"] = [serialize.point_to_json(p) for p in sorted(set(points))]
        text = serialize.render_json(payload)
    elif args.format == "csv":
        text = serialize.points_to_csv(sorted(set(points)), order.n)
    else:
        text = serialize.zset_to_text(functions, points)
    write_output(text, args.out)
    return EXIT_OK


def cmd_polytope(args: argparse.Namespace) -> int:
    order = parse_order(args.order)
    c = resolve_coeffs(args, order)
    variant = Variant.parse(args.variant)
    excluded = parse_int_list(args.exclude_k) if args.exclude_k else None
    if excluded and variant is not Variant.THREE:
        raise InputError("--exclude-k applies to variant 3 only")
    system = build_system(order, c, variant, exclude_k=excluded)
    vertices = enumerate_vertices(system).sorted_points()

    if args.format == "json":
        payload = serialize.system_to_dict(system, vertices)
        payload["order"] = str(order)
        payload["coeffs"] = str(c)
        text = serialize.render_json(payload)
    elif args.format == "csv":
        text = serialize.points_to_csv(vertices, order.n)
    else:
        text = f"order {order}, c=({c})\n" + serialize.system_to_text(system, vertices)
    write_output(text, args.out)
    return EXIT_OK


def cmd_tableau_eval(args: argparse.Namespace) -> int:
    h = parse_heights(args.heights)
    diagnostics = validate_profile(h)
    payload = {
        "heights": list(h.heights),
        "valid": not diagnostics,
        "diagnostics": [d.to_dict() for d in diagnostics],
    }
    try:
        rows, diffs = evaluate_rows(h), evaluate_diffs(h)
        payload["rows"] = serialize.function_to_json(rows)
        payload["diffs"] = serialize.function_to_json(diffs)
        payload["agree"] = rows == diffs
        payload["function"] = str(rows)
    except BoundaryViolation as e:
        payload["boundary_violation"] = {"row": e.row, "column": e.column}
    payload["relations"] = [list(pair) for pair in order_relations(h).sorted_pairs()]

    if args.format == "json":
        text = serialize.render_json(payload)
    else:
        lines = [f"heights {h}: {'valid' if payload['valid'] else 'invalid'}"]
        lines.extend(f"  {d.clause} level {d.level}: {d.message}" for d in diagnostics)
        if "function" in payload:
            lines.append(f"f_T = {payload['function']}")
            lines.append(f"row rule and difference rule {'agree' if payload['agree'] else 'DISAGREE'}")
        else:
            violation = payload["boundary_violation"]
            lines.append(f"row {violation['row']}: column C{violation['column']} has no partner column")
        relations = ", ".join(f"{a}<{b}" for a, b in payload["relations"])
        lines.append(f"relations: {relations or 'none'}")
        text = "\n".join(lines) + "\n"
    write_output(text, args.out)
    ok = payload["valid"] and payload.get("agree", False)
    return EXIT_OK if ok else EXIT_FAILED


def _reconstruct_input(args: argparse.Namespace) -> Tuple[FunctionVector, Optional[MoveLog]]:
    """The function to reconstruct and, for a saved JSON result, its move log."""
    given = [source for source in (args.function, args.heights, args.function_json) if source]
    if len(given) != 1:
        raise InputError(_("error_missing_function"))
    if args.function:
        return serialize.parse_function_text(args.function), None
    if args.heights:
        h = parse_heights(args.heights)
        diagnostics = validate_profile(h)
        if diagnostics:
            clauses = ", ".join(sorted({d.clause for d in diagnostics}))
            raise InputError(_("error_invalid_profile", heights=str(h), clauses=clauses))
        try:
            return evaluate_rows(h), None
        except BoundaryViolation as e:
            raise InputError(_("error_invalid_profile", heights=str(h), clauses=str(e))) from e

    payload = read_json_input(args.function_json)
    if isinstance(payload, dict):
        f = serialize.function_from_json(payload.get("function"))
        saved = payload.get("log")
        if saved is None:
            return f, None
        log = serialize.movelog_from_json(saved)
        check_log_range(log, f.n)
        return f, log
    return serialize.function_from_json(payload), None


def cmd_tableau_reconstruct(args: argparse.Namespace) -> int:
    f, saved_log = _reconstruct_input(args)

    logger = get_logger()
    logger.operation_start(_("op_reconstruct"), str(f))
    log = saved_log if saved_log is not None else deconstruct(f, args.max_steps)
    payload = {"function": serialize.function_to_json(f), "text": str(f)}
    if isinstance(log, NotRepresentable):
        payload["representable"] = False
        payload["reason"] = log.reason
        payload["step"] = log.step
        logger.operation_end(_("op_reconstruct"), str(f), _("not_representable", reason=log.reason), success=False)
    else:
        payload["representable"] = True
        payload["log"] = serialize.movelog_to_json(log)
        payload["replay_matches"] = replay(log, f.n) == f
        payload["intermediates"] = [str(step) for step in intermediates(f, log)]
        if payload["replay_matches"]:
            h = rebuild_heights(log, f)
            if isinstance(h, Incomplete):
                payload["rebuild"] = {
                    "complete": False,
                    "reason": h.reason,
                    "partial": list(h.partial.heights),
                    "blocking_move": h.blocking_move,
                    "explored": h.explored,
                }
            else:
                payload["rebuild"] = {"complete": True, "heights": list(h.heights)}
        logger.operation_end(_("op_reconstruct"), str(f), f"{len(log)} moves", success=payload["replay_matches"])

    if args.format == "json":
        text = serialize.render_json(payload)
    else:
        lines = [f"f = {f}"]
        if not payload["representable"]:
            lines.append(_("not_representable", reason=payload["reason"]) + f" (step {payload['step']})")
        else:
            moves = ", ".join(f"({m['k']},{m['j']},{m['parity']})" for m in payload["log"])
            lines.append(f"log: [{moves}]")
            lines.append(f"replay matches: {payload['replay_matches']}")
            for index, step in enumerate(payload["intermediates"]):
                lines.append(f"  {index}: {step}")
            rebuild = payload.get("rebuild")
            if rebuild and rebuild["complete"]:
                lines.append("heights: " + ",".join(str(x) for x in rebuild["heights"]))
            elif rebuild:
                lines.append(_("rebuild_incomplete", explored=rebuild["explored"], move=rebuild["blocking_move"]))
        text = "\n".join(lines) + "\n"
    write_output(text, args.out)
    ok = payload["representable"] and payload["replay_matches"]
    return EXIT_OK if ok else EXIT_FAILED


def cmd_count(args: argparse.Namespace) -> int:
    summary = count_summary(args.n)
    if args.format == "json":
        text = serialize.render_json(summary)
    else:
        text = (
            f"n={summary['n']}: {summary['functions']} functions, {summary['graphs']} graphs "
            f"(Catalan {summary['catalan']}), {summary['orders']} orders, "
            f"{summary['per_order_min']}..{summary['per_order_max']} functions per order\n"
        )
    write_output(text, args.out)
    return EXIT_OK


def _progress_printer(current: int, total: int, message: str, eta: str) -> None:
    parts = [_("progress_units", current=current, total=total), message, eta]
    get_logger().info(" ".join(part for part in parts if part))


def _sweep_config(args: argparse.Namespace, checks, order: Optional[CoeffOrder] = None) -> SweepConfig:
    config = get_config()
    if getattr(args, "profiles", None):
        profiles = parse_name_list(args.profiles, ("generic", "ties", "zeros"))
    else:
        profiles = [getattr(args, "profile", None) or config.default_profile]
    n_values = [order.n] if order is not None else parse_int_list(args.n)
    if order is None and getattr(args, "coeffs", None):
        raise InputError("--coeffs needs --order")
    coeffs = None
    if order is not None and getattr(args, "coeffs", None):
        coeffs = resolve_coeffs(args, order)
    return SweepConfig(
        n_values=n_values,
        trials_per_order=args.trials if args.trials is not None else config.default_trials,
        seed=args.seed if args.seed is not None else config.default_seed,
        profiles=profiles,
        checks=list(checks),
        workers=args.workers if args.workers is not None else config.workers,
        include_timing=args.timing,
        order=order,
        coeffs=coeffs,
        max_steps=args.max_steps,
    )


def _emit_report(report: VerificationReport, args: argparse.Namespace) -> int:
    payload = report.to_dict()
    if args.report:
        write_output(serialize.render_json(payload), args.report)
    if args.format == "json":
        text = serialize.render_json(payload)
    else:
        failures = {}
        for counterexample in report.counterexamples:
            failures[counterexample["check"]] = failures.get(counterexample["check"], 0) + 1
        lines = []
        for check in ALL_CHECKS:
            status = report.statuses[check]
            lines.append(_("summary_line", check=check, status=_(f"verdict_{status}"),
                           units=report.units.get(check, 0), failures=failures.get(check, 0)))
            verdicts = report.profile_statuses.get(check, {})
            if len(verdicts) > 1:
                split = (f"{profile} {_('verdict_' + verdict)}" for profile, verdict in sorted(verdicts.items()))
                lines.append("  " + ", ".join(split))
        for counterexample in report.counterexamples:
            inputs = counterexample.get("inputs", {})
            detail = counterexample.get("kind", counterexample.get("report", ""))
            lines.append(f"  {counterexample['check']}: {detail} {serialize.render_json(inputs).strip()}")
        if report.timing:
            lines.append("time: " + ", ".join(f"{check} {format_duration(seconds)}" for check, seconds in report.timing.items()))
        lines.append(_("verdict_pass") if report.passed else _("verdict_fail"))
        text = "\n".join(lines) + "\n"
    write_output(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    order = parse_order(args.order) if args.order else None
    cfg = _sweep_config(args, [args.check], order)
    callback = _progress_printer if args.verbose else None
    return _emit_report(run_sweep(cfg, callback), args)


def cmd_sweep(args: argparse.Namespace) -> int:
    checks = parse_name_list(args.checks, ALL_CHECKS) if args.checks is not None else ALL_CHECKS
    cfg = _sweep_config(args, checks)
    callback = _progress_printer if args.verbose else None
    return _emit_report(run_sweep(cfg, callback), args)


COMMANDS = {
    "graph": cmd_graph,
    "zset": cmd_zset,
    "polytope": cmd_polytope,
    "count": cmd_count,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}

TABLEAU_COMMANDS = {
    "eval": cmd_tableau_eval,
    "reconstruct": cmd_tableau_reconstruct,
}


def dispatch(args: argparse.Namespace) -> int:
    if args.command == "tableau":
        return TABLEAU_COMMANDS[args.tableau_command](args)
    return COMMANDS[args.command](args)
