"""
S-graph Workbench - Binary Fusion
Builds the canonical S-graph G(c) of a coefficient order and its S-set Z(c).
"""

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from src.core.exactmath import (
    FunctionVector, LinearForm, ZERO_FORM, r_difference
)
from src.core.orders import CoeffOrder, NumericCoeffs, sorted_chain
from src.utils.logger import get_logger
from src.core.i18n import _


@dataclass(frozen=True)
class Vertex:
    """A vertex of G(c); labels live in {1..m+1} at fusion level m."""
    id: int
    label: int
    fn: FunctionVector


@dataclass(frozen=True)
class Edge:
    """Undirected edge carrying the coefficient index r."""
    u: int
    v: int
    r: int


@dataclass(frozen=True)
class FusionCertificate:
    """
    Record of one fusion step.

    Positions are closed-up positions in the level's chain N_m, so slot p of a
    level function is the coefficient of c_{chain[p-1]}. At the outermost level
    the chain is (1..n) and positions are original indices.
    """
    level: int
    chain: Tuple[int, ...]
    s: int
    position: int
    plus: Tuple[Vertex, ...]
    minus: Tuple[Vertex, ...]
    phi: Tuple[Tuple[int, int], ...]
    cv: Tuple[Tuple[int, Optional[int]], ...]

    def coefficient_at(self, position: int) -> LinearForm:
        """c at a closed-up position; position m+1 reads as zero."""
        if 1 <= position <= len(self.chain):
            return LinearForm.variable(self.chain[position - 1])
        return ZERO_FORM

    @property
    def c_minus(self) -> Tuple[int, ...]:
        return tuple(t for t in self.chain if t != self.s)


@dataclass(frozen=True)
class SGraph:
    """Canonical S-graph; immutable after build_sgraph."""
    order: CoeffOrder
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    distinguished: int
    levels: Tuple[FusionCertificate, ...]

    @property
    def n(self) -> int:
        return self.order.n

    def vertex(self, vertex_id: int) -> Vertex:
        return self.vertices[vertex_id]

    def adjacency(self) -> Dict[int, List[Tuple[int, int]]]:
        """vertex id -> [(neighbour id, r)]"""
        adj: Dict[int, List[Tuple[int, int]]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append((e.v, e.r))
            adj[e.v].append((e.u, e.r))
        return adj


def insert_copied_slot(f: FunctionVector, position: int) -> FunctionVector:
    """
    Open a new slot at position, filled with the slot to its left.

    The new slot copies f[position-1] (zero when position is 1), and the old
    slots at and after position shift right by one.
    """
    coords = list(f.coords)
    coords.insert(position - 1, f.coord(position - 1))
    return FunctionVector(tuple(coords))


def classify_cv(form: LinearForm, s: int, chain: Tuple[int, ...]) -> Tuple[bool, Optional[int]]:
    """
    Read c(v) from its form.

    Returns:
        (ok, j): ok is False when the form is neither 0 nor a single c_j with
        j in the chain and j != s. j is None for the zero form.
    """
    if form.is_zero:
        return True, None
    j = form.single_variable()
    if j is None or j == s or j not in chain:
        return False, j
    return True, j


def _fuse(
    vertices: Tuple[Vertex, ...],
    edges: Tuple[Edge, ...],
    order: CoeffOrder,
    level: int
) -> Tuple[Tuple[Vertex, ...], Tuple[Edge, ...], FusionCertificate]:
    chain = sorted_chain(order, level)
    s = order.seq[level - 1]
    p = chain.index(s) + 1
    half = len(vertices)
    c_s = LinearForm.variable(s)
    c_next = LinearForm.variable(chain[p]) if p < level else ZERO_FORM

    plus = tuple(
        Vertex(v.id, v.label if v.label < p else v.label + 1, insert_copied_slot(v.fn, p))
        for v in vertices
    )
    minus = []
    cv = []
    for v in plus:
        slot = v.fn.coord(p + 1) + c_s - c_next
        label = p if v.label == p + 1 else v.label
        minus.append(Vertex(v.id + half, label, v.fn.with_coord(p, slot)))
        _, j = classify_cv(v.fn.coord(p) - v.fn.coord(p + 1) + c_next, s, chain)
        cv.append((v.id, j))
    minus = tuple(minus)

    new_edges = list(edges)
    new_edges.extend(Edge(e.u + half, e.v + half, e.r) for e in edges)
    new_edges.extend(Edge(v.id, v.id + half, s) for v in plus if v.label == p + 1)

    certificate = FusionCertificate(
        level=level,
        chain=chain,
        s=s,
        position=p,
        plus=plus,
        minus=minus,
        phi=tuple((v.id, v.id + half) for v in plus),
        cv=tuple(cv),
    )
    return plus + minus, tuple(new_edges), certificate


@lru_cache(maxsize=1024)
def build_sgraph(order: CoeffOrder) -> SGraph:
    """
    Construct G(c) by binary fusion.

    Starts from a single vertex labelled 1 with the empty function and fuses
    once per element of the order, s_1 first. At level m the G^+ block keeps
    the previous ids and the G^- block is shifted by 2^(m-1). Vertex 0 stays
    the distinguished vertex, ending with label n+1 and the zero function.

    Args:
        order: Coefficient order

    Returns:
        The immutable SGraph with one certificate per level
    """
    logger = get_logger()
    logger.operation_start(_("op_build"), f"G(c) for order {order}")
    vertices: Tuple[Vertex, ...] = (Vertex(0, 1, FunctionVector.zero(0)),)
    edges: Tuple[Edge, ...] = ()
    levels = []
    for level in range(1, order.n + 1):
        vertices, edges, certificate = _fuse(vertices, edges, order, level)
        levels.append(certificate)
        logger.debug(f"level {level}: s={certificate.s} position={certificate.position} vertices={len(vertices)}")

    graph = SGraph(order=order, vertices=vertices, edges=edges, distinguished=0, levels=tuple(levels))
    logger.operation_end(_("op_build"), f"G(c) for order {order}", f"{len(vertices)} vertices, {len(edges)} edges")
    return graph


def zset(g: SGraph) -> FrozenSet[FunctionVector]:
    """Z(c): the symbolically deduplicated vertex functions."""
    return frozenset(v.fn for v in g.vertices)


def sorted_zset(g: SGraph) -> List[FunctionVector]:
    """Z(c) in vertex-id order of first occurrence."""
    seen = set()
    result = []
    for v in g.vertices:
        if v.fn not in seen:
            seen.add(v.fn)
            result.append(v.fn)
    return result


def evaluate_zset(g: SGraph, c: NumericCoeffs) -> FrozenSet[Tuple]:
    """Numeric Z(c), deduplicated as points."""
    return frozenset(v.fn.evaluate(c.values) for v in g.vertices)


def propagate_functions(g: SGraph) -> Tuple[Dict[int, FunctionVector], List[Tuple[int, int, int]]]:
    """
    Recompute vertex functions from the edge relation alone.

    BFS from the distinguished vertex with the zero function, using
    z_u - z_v = c_r (r^label(u) - r^label(v)) on every edge.

    Returns:
        (functions by id, conflicting edges (u, v, r) met on cycles)
    """
    n = g.n
    labels = {v.id: v.label for v in g.vertices}
    adj = g.adjacency()
    assigned: Dict[int, FunctionVector] = {g.distinguished: FunctionVector.zero(n)}
    conflicts: List[Tuple[int, int, int]] = []
    queue = deque([g.distinguished])
    while queue:
        u = queue.popleft()
        for v, r in adj[u]:
            candidate = assigned[u] - r_difference(labels[u], labels[v], LinearForm.variable(r), n)
            if v not in assigned:
                assigned[v] = candidate
                queue.append(v)
            elif assigned[v] != candidate and (v, u, r) not in conflicts:
                conflicts.append((u, v, r))
    return assigned, conflicts
