"""
S-graph Workbench - Serialization
JSON, DOT, CSV and text forms of forms, functions, graphs, systems and move logs,
plus parsing of the text form of functions.
"""

import csv
import io
import json
import re
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

import sympy as sp
from sympy.polys.polyerrors import BasePolynomialError

from src.core.exactmath import FunctionVector, InputError, LinearForm, format_rational, to_rational
from src.fusion.sgraph import SGraph
from src.polytope.system import InequalitySystem
from src.tableau.reconstruct import Move, MoveLog, Parity


_INDETERMINATE = re.compile(r"^c(\d+)$")


def render_json(payload: Any) -> str:
    """Pretty JSON with sorted keys, newline terminated."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def form_to_json(form: LinearForm) -> Dict[str, str]:
    """{"c1": "1", "c3": "-1"}"""
    return {f"c{index}": format_rational(q) for index, q in form.terms}


def form_from_json(payload: Dict[str, Any], n: Optional[int] = None) -> LinearForm:
    if not isinstance(payload, dict):
        raise InputError(f"Expected an object of coefficients, got {payload!r}")
    coeffs = {}
    for key, value in payload.items():
        match = _INDETERMINATE.match(key)
        if not match:
            raise InputError(f"Unknown indeterminate: {key!r}")
        index = int(match.group(1))
        if index < 1 or (n is not None and index > n):
            raise InputError(f"Indeterminate {key} out of range")
        coeffs[index] = to_rational(value)
    return LinearForm.from_mapping(coeffs)


def function_to_json(f: FunctionVector) -> List[Dict[str, str]]:
    return [form_to_json(form) for form in f.coords]


def function_from_json(payload: Sequence[Dict[str, Any]]) -> FunctionVector:
    if not isinstance(payload, list) or not payload:
        raise InputError("A function is a non-empty list of coefficient objects")
    n = len(payload)
    return FunctionVector(tuple(form_from_json(item, n) for item in payload))


def point_to_json(point: Iterable[Fraction]) -> List[str]:
    return [format_rational(x) for x in point]


def parse_form(text: str, n: Optional[int] = None) -> LinearForm:
    """
    Parse a degree-1 form such as "c1+c2-c3" or "1/2*c1".

    Raises:
        InputError: On syntax errors, non-linear terms, constants,
            non-rational coefficients or indices outside 1..n
    """
    text = text.strip()
    if not text:
        raise InputError("Empty linear form")
    try:
        expr = sp.sympify(text, rational=True)
    except (sp.SympifyError, SyntaxError, TypeError) as e:
        raise InputError(f"Cannot parse form {text!r}") from e
    if not isinstance(expr, sp.Expr):
        raise InputError(f"Not a linear form: {text!r}")
    expr = sp.expand(expr)
    if expr == 0:
        return LinearForm.zero()

    symbols = sorted(expr.free_symbols, key=lambda s: s.name)
    indices = {}
    for symbol in symbols:
        match = _INDETERMINATE.match(symbol.name)
        if not match:
            raise InputError(f"Unknown indeterminate {symbol.name!r} in {text!r}")
        index = int(match.group(1))
        if index < 1 or (n is not None and index > n):
            raise InputError(f"Indeterminate {symbol.name} out of range in {text!r}")
        indices[symbol] = index
    if not symbols:
        raise InputError(f"Constant term in form {text!r}")

    try:
        poly = sp.Poly(expr, *symbols)
    except BasePolynomialError as e:
        raise InputError(f"Not a linear form: {text!r}") from e
    if poly.total_degree() > 1:
        raise InputError(f"Not a linear form: {text!r}")
    coeffs: Dict[int, Fraction] = {}
    for monomial, q in poly.terms():
        if sum(monomial) == 0:
            raise InputError(f"Constant term in form {text!r}")
        if not q.is_Rational:
            raise InputError(f"Coefficient {q} in {text!r} is not rational")
        symbol = symbols[monomial.index(1)]
        coeffs[indices[symbol]] = Fraction(int(q.p), int(q.q))
    return LinearForm.from_mapping(coeffs)


def parse_function_text(text: str) -> FunctionVector:
    """
    Parse "c1; c1+c2-c3; c1" into a function vector.

    The number of semicolon-separated entries is n.
    """
    parts = text.split(";")
    n = len(parts)
    return FunctionVector(tuple(parse_form(part, n) for part in parts))


def movelog_to_json(log: MoveLog) -> List[Dict[str, Any]]:
    return log.to_list()


def movelog_from_json(payload: Sequence[Dict[str, Any]]) -> MoveLog:
    try:
        return MoveLog(tuple(Move(int(m["k"]), int(m["j"]), Parity(m["parity"])) for m in payload))
    except (KeyError, ValueError, TypeError) as e:
        raise InputError(f"Invalid move log: {e}") from e


def graph_to_dict(g: SGraph) -> Dict[str, Any]:
    """{n, order, vertices, edges, distinguished, certificates}"""
    return {
        "n": g.n,
        "order": list(g.order.seq),
        "vertices": [{"id": v.id, "label": v.label, "fn": function_to_json(v.fn)} for v in g.vertices],
        "edges": [{"u": e.u, "v": e.v, "r": e.r} for e in g.edges],
        "distinguished": g.distinguished,
        "certificates": [
            {
                "level": cert.level,
                "chain": list(cert.chain),
                "s": cert.s,
                "position": cert.position,
                "phi": [list(pair) for pair in cert.phi],
                "cv": [{"vertex": vid, "c": (f"c{j}" if j is not None else "0")} for vid, j in cert.cv],
            }
            for cert in g.levels
        ],
    }


def graph_to_dot(g: SGraph) -> str:
    lines = [f'graph "G({g.order})" {{']
    for v in g.vertices:
        lines.append(f'  v{v.id} [label="{v.label}|{v.fn}"];')
    for e in g.edges:
        lines.append(f'  v{e.u} -- v{e.v} [label="c{e.r}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_text(g: SGraph) -> str:
    lines = [f"order {g.order}: {len(g.vertices)} vertices, {len(g.edges)} edges"]
    for v in g.vertices:
        marker = " *" if v.id == g.distinguished else ""
        lines.append(f"  v{v.id} label {v.label}: {v.fn}{marker}")
    for e in g.edges:
        lines.append(f"  v{e.u} -- v{e.v} c{e.r}")
    return "\n".join(lines) + "\n"


def graph_to_csv(g: SGraph) -> str:
    """One row per vertex: id, label, then one column per coordinate."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "label"] + [f"c'{k}" for k in range(1, g.n + 1)])
    for v in g.vertices:
        writer.writerow([v.id, v.label] + [str(form) for form in v.fn.coords])
    return buffer.getvalue()


def zset_to_text(functions: Sequence[FunctionVector], points: Optional[Sequence] = None) -> str:
    lines = []
    for index, f in enumerate(functions):
        line = str(f)
        if points is not None:
            line += "  = (" + ",".join(point_to_json(points[index])) + ")"
        lines.append(line)
    return "\n".join(lines) + "\n"


def points_to_csv(points: Sequence[Sequence[Fraction]], n: int) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"x{k}" for k in range(1, n + 1)])
    for point in points:
        writer.writerow(point_to_json(point))
    return buffer.getvalue()


def system_to_dict(system: InequalitySystem, vertices: Optional[Sequence[Sequence[Fraction]]] = None) -> Dict[str, Any]:
    """{variant, inequalities:[{normal, rhs, provenance}], vertices}"""
    payload: Dict[str, Any] = {
        "variant": system.variant.value,
        "inequalities": [
            {
                "normal": point_to_json(ineq.normal),
                "rhs": format_rational(ineq.rhs),
                "provenance": list(ineq.provenance),
            }
            for ineq in system.inequalities
        ],
    }
    if vertices is not None:
        payload["vertices"] = [point_to_json(p) for p in vertices]
    return payload


def system_to_text(system: InequalitySystem, vertices: Optional[Sequence[Sequence[Fraction]]] = None) -> str:
    lines = [f"{system.variant.value}: {len(system.inequalities)} inequalities"]
    for ineq in system.inequalities:
        lines.append(f"  {ineq}    [{', '.join(ineq.provenance)}]")
    if vertices is not None:
        lines.append(f"{len(vertices)} vertices")
        lines.extend("  (" + ",".join(point_to_json(p)) + ")" for p in vertices)
    return "\n".join(lines) + "\n"
