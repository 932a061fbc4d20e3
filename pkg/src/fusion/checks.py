"""
S-graph Workbench - Fusion Checks
Edge relation, fusion certificates, label invariant and ordered-path property.
"""

from collections import deque
from typing import List, Optional, Set, Tuple

from src.core.exactmath import LinearForm, r_difference
from src.core.orders import NumericCoeffs, compatible
from src.core.report import CheckReport
from src.fusion.sgraph import SGraph, classify_cv, propagate_functions
from src.utils.logger import get_logger


def check_edge_relation(g: SGraph) -> CheckReport:
    """
    Check z_u - z_v = c_r (r^label(u) - r^label(v)) on every edge.

    Also compares every stored function with the one propagated from the
    distinguished vertex, and reports edges that close inconsistent cycles.
    """
    report = CheckReport("edge_relation")
    n = g.n
    for e in g.edges:
        u, v = g.vertex(e.u), g.vertex(e.v)
        expected = r_difference(u.label, v.label, LinearForm.variable(e.r), n)
        actual = u.fn - v.fn
        if actual != expected:
            report.add(u=e.u, v=e.v, r=e.r, expected=str(expected), actual=str(actual))

    propagated, conflicts = propagate_functions(g)
    for u, v, r in conflicts:
        report.add(kind="cycle_conflict", u=u, v=v, r=r)
    for vertex in g.vertices:
        other = propagated.get(vertex.id)
        if other is None:
            report.add(kind="unreachable", vertex=vertex.id)
        elif other != vertex.fn:
            report.add(kind="propagation_mismatch", vertex=vertex.id,
                       stored=str(vertex.fn), propagated=str(other))

    report.details["edges"] = len(g.edges)
    report.details["vertices"] = len(g.vertices)
    return report


def check_label_invariant(g: SGraph) -> CheckReport:
    """Every vertex with label k+1 <= n has c'_{k+1} - c'_k = c_{k+1}."""
    report = CheckReport("label_invariant")
    n = g.n
    for vertex in g.vertices:
        k = vertex.label - 1
        if k < 1 or k + 1 > n:
            continue
        if vertex.fn.diff(k) != LinearForm.variable(k + 1):
            report.add(vertex=vertex.id, label=vertex.label, fn=str(vertex.fn))
    return report


def check_cardinality(g: SGraph) -> CheckReport:
    """2^n vertices with pairwise distinct functions; distinguished vertex is zero with label n+1."""
    report = CheckReport("cardinality")
    n = g.n
    if len(g.vertices) != 2 ** n:
        report.add(kind="vertex_count", expected=2 ** n, actual=len(g.vertices))
    distinct = len({v.fn for v in g.vertices})
    if distinct != len(g.vertices):
        report.add(kind="duplicate_functions", distinct=distinct, vertices=len(g.vertices))
    root = g.vertex(g.distinguished)
    if root.label != n + 1 or not root.fn.is_zero:
        report.add(kind="distinguished", label=root.label, fn=str(root.fn))
    report.details["distinct_functions"] = distinct
    return report


def check_fusion_certificates(g: SGraph, c: Optional[NumericCoeffs] = None) -> CheckReport:
    """
    Check every fusion level.

    For each v in the level's G^+ with image phi(v):
      (a) the two functions agree off position p and the image has
          slot p = fn(v)[p+1] + c_s - c_next;
      (b) the difference is supported on p and equals c_s - c(v), with c(v)
          zero or a single c_j, j != s, matching the recorded value;
      (c) labels are preserved except p+1 which maps to p;
    and, when numeric c is given, c_s - c(v) >= 0 at every level and the
    slot interval fn(v)[s-1] <= fn(phi(v))[s] <= fn(v)[s+1] + c_s - c_{s+1}
    at the outermost level.
    """
    report = CheckReport("fusion_certificates")
    if c is not None and not compatible(g.order, c):
        report.add(kind="incompatible_coefficients", coeffs=str(c))
        return report

    for cert in g.levels:
        p = cert.position
        c_s = LinearForm.variable(cert.s)
        c_next = cert.coefficient_at(p + 1)
        recorded = dict(cert.cv)
        for (plus_id, minus_id), v, w in zip(cert.phi, cert.plus, cert.minus):
            where = {"level": cert.level, "plus": plus_id, "minus": minus_id}
            if w.id != minus_id or v.id != plus_id:
                report.add(kind="phi_mismatch", **where)
                continue

            for slot in range(1, cert.level + 1):
                if slot != p and w.fn.coord(slot) != v.fn.coord(slot):
                    report.add(kind="off_slot_change", slot=slot, **where)
            expected_slot = v.fn.coord(p + 1) + c_s - c_next
            if w.fn.coord(p) != expected_slot:
                report.add(kind="slot_formula", expected=str(expected_slot), actual=str(w.fn.coord(p)), **where)

            difference = w.fn - v.fn
            cv_form = c_s - difference.coord(p)
            ok, j = classify_cv(cv_form, cert.s, cert.chain)
            if not ok:
                report.add(kind="cv_shape", cv=str(cv_form), **where)
            elif recorded.get(plus_id, "missing") != j:
                report.add(kind="cv_record", recorded=recorded.get(plus_id), computed=j, **where)

            expected_label = p if v.label == p + 1 else v.label
            if w.label != expected_label:
                report.add(kind="label", expected=expected_label, actual=w.label, **where)

            if c is None:
                continue
            cv_value = cv_form.evaluate(c.values)
            if c.value(cert.s) - cv_value < 0:
                report.add(kind="negative_gap", cv=str(cv_form), **where)
            if cert.level == g.n:
                s = cert.s
                low = v.fn.coord(s - 1).evaluate(c.values)
                mid = w.fn.coord(s).evaluate(c.values)
                high = v.fn.coord(s + 1).evaluate(c.values) + c.value(s) - c.value(s + 1)
                if not (low <= mid <= high):
                    report.add(kind="slot_interval", low=str(low), value=str(mid), high=str(high), **where)

    report.details["levels"] = len(g.levels)
    return report


def theta_shift_witnesses(g: SGraph, level: Optional[int] = None) -> List[int]:
    """
    G^+ vertices whose image is not fn(v) + (c_s - c_next) at position p.

    Equivalently fn(v)[p] != fn(v)[p+1]: the copy-the-right-slot shift would
    change v. Defaults to the outermost level.
    """
    if not g.levels:
        return []
    cert = g.levels[(level or len(g.levels)) - 1]
    p = cert.position
    return [v.id for v in cert.plus if v.fn.coord(p) != v.fn.coord(p + 1)]


def _reachable_labels(g: SGraph, start: int, rank: dict, adj: dict) -> Tuple[Set[int], dict]:
    """Labels reachable from start along paths with strictly increasing edge rank."""
    labels = {v.id: v.label for v in g.vertices}
    found = {labels[start]}
    witness = {labels[start]: []}
    seen = {(start, -1)}
    queue = deque([(start, -1, [])])
    while queue:
        u, last, path = queue.popleft()
        for v, r in adj[u]:
            step = rank[r]
            if step <= last or (v, step) in seen:
                continue
            seen.add((v, step))
            extended = path + [(u, v, r)]
            if labels[v] not in found:
                found.add(labels[v])
                witness[labels[v]] = extended
            queue.append((v, step, extended))
    return found, witness


def s_property(g: SGraph, c: NumericCoeffs) -> CheckReport:
    """
    Check that every vertex reaches every label by an ordered path.

    Edge coefficients must increase strictly under the order; the empty path
    counts for the vertex's own label.
    """
    report = CheckReport("s_property")
    if not compatible(g.order, c):
        report.add(kind="incompatible_coefficients", coeffs=str(c))
        return report

    n = g.n
    rank = {s: g.order.rank(s) for s in g.order.seq}
    adj = g.adjacency()
    pairs = 0
    for vertex in g.vertices:
        found, _ = _reachable_labels(g, vertex.id, rank, adj)
        for k in range(1, n + 2):
            pairs += 1
            if k not in found:
                report.add(vertex=vertex.id, label=k)

    report.details["pairs"] = pairs
    report.details["generic"] = c.is_generic
    get_logger().debug(f"s-property order {g.order}: {pairs} pairs, {len(report.violations)} missing")
    return report


def ordered_path(g: SGraph, start: int, label: int) -> Optional[List[Tuple[int, int, int]]]:
    """A witness ordered path from start to some vertex with the given label, or None."""
    rank = {s: g.order.rank(s) for s in g.order.seq}
    _, witness = _reachable_labels(g, start, rank, g.adjacency())
    return witness.get(label)
