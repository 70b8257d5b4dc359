"""NAE-SAT to two-tree partition: gadget construction and witness maps in both directions.

Variable gadget ``i`` (for ``i = 0..n+1``) is the 4-cycle
``t(i-1), v(i), t(i), nv(i)``; ``t(-1)`` and ``t(n+1)`` are the chain ends.
Clause ``j`` of size ``k`` is the 2k-cycle ``p(j,1) q(j,1) ... p(j,k) q(j,k)``
plus ``r(j,m)`` joined to ``p(j,m)``, to the literal's vertex, and to ``q(j,m)``
through a purple gadget: a 4-cycle ``pg(j,m,1..4)`` whose first corner is
adjacent to both ``r(j,m)`` and ``q(j,m)``. Clauses are numbered from 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from .formula import Formula, Literal, is_good
from .graph import (
    A,
    B,
    EdgePartition,
    Graph,
    VertexLabel,
    edge_key,
    nv,
    other,
    t,
    v,
    verify_two_tree_partition,
)


class ReductionError(ValueError):
    pass


class StructureError(RuntimeError):
    """A valid partition that contradicts the reduction's structure (a bug)."""


def p(j: int, m: int) -> VertexLabel:
    return VertexLabel("p", (j, m))


def q(j: int, m: int) -> VertexLabel:
    return VertexLabel("q", (j, m))


def r(j: int, m: int) -> VertexLabel:
    return VertexLabel("r", (j, m))


def pg(j: int, m: int, c: int) -> VertexLabel:
    return VertexLabel("pg", (j, m, c))


def literal_vertex(lit: Literal) -> VertexLabel:
    return nv(lit.variable) if lit.negated else v(lit.variable)


@dataclass(frozen=True)
class VariableGadget:
    index: int
    t_prev: VertexLabel
    v: VertexLabel
    nv: VertexLabel
    t: VertexLabel

    def edges(self) -> List[Tuple[VertexLabel, VertexLabel]]:
        return [(self.t_prev, self.v), (self.v, self.t), (self.t_prev, self.nv), (self.nv, self.t)]


@dataclass(frozen=True)
class ClausePosition:
    clause: int
    position: int
    p: VertexLabel
    q: VertexLabel
    r: VertexLabel
    pg: Tuple[VertexLabel, VertexLabel, VertexLabel, VertexLabel]
    literal_vertex: VertexLabel

    @property
    def literal(self) -> Literal:
        return Literal(self.literal_vertex.indices[0], self.literal_vertex.kind == "nv")

    def purple_edges(self) -> List[Tuple[VertexLabel, VertexLabel]]:
        g1, g2, g3, g4 = self.pg
        return [(self.r, g1), (self.q, g1), (g1, g2), (g2, g3), (g3, g4), (g4, g1)]


@dataclass(frozen=True)
class ReductionManifest:
    num_vars: int
    alpha: VertexLabel
    omega: VertexLabel
    variables: Tuple[VariableGadget, ...]
    clauses: Tuple[Tuple[ClausePosition, ...], ...]

    def variable(self, i: int) -> VariableGadget:
        return self.variables[i]

    def clause_edges(self, j: int) -> List[Tuple[VertexLabel, VertexLabel]]:
        """All edges of clause gadget ``j`` (1-based), purple gadgets and literal edges included."""
        out = []
        for s in self.clauses[j - 1]:
            out.extend([(s.p, s.q), (s.r, s.p), (s.r, s.literal_vertex)])
            out.extend(s.purple_edges())
        k = len(self.clauses[j - 1])
        out.extend((s.q, self.clauses[j - 1][m % k].p) for m, s in enumerate(self.clauses[j - 1], 1))
        return out


def expected_sizes(formula: Formula) -> Tuple[int, int]:
    """(|V|, |E|) of the reduced graph, from the gadget counts."""
    n, K = formula.num_vars, formula.total_literals
    return 3 * n + 7 + 7 * K, 4 * n + 8 + 10 * K


def reduce(formula: Formula) -> Tuple[Graph, ReductionManifest]:
    """Build the gadget graph for ``formula`` and its label manifest.

    Edges are emitted in a fixed order (variable gadgets, then per clause the
    2k-cycle, r-p edges, literal edges and purple gadgets) so the output is
    byte-stable once serialized.
    """
    for j, clause in enumerate(formula.clauses, 1):
        if len(clause) < 2:
            raise ReductionError(
                f"clause {j}: reduction undefined for unit clauses (2-cycle would be a "
                "multi-edge); instance is trivially NAE-unsatisfiable"
            )
    n = formula.num_vars
    g = Graph()
    variables = []
    for i in range(n + 2):
        gadget = VariableGadget(i, t(i - 1), v(i), nv(i), t(i))
        for e in gadget.edges():
            g.add_edge(*e)
        variables.append(gadget)

    clauses = []
    for j, clause in enumerate(formula.clauses, 1):
        k = len(clause)
        slots = tuple(
            ClausePosition(
                j, m, p(j, m), q(j, m), r(j, m),
                (pg(j, m, 1), pg(j, m, 2), pg(j, m, 3), pg(j, m, 4)),
                literal_vertex(lit),
            )
            for m, lit in enumerate(clause, 1)
        )
        for m in range(1, k + 1):
            g.add_edge(p(j, m), q(j, m))
            g.add_edge(q(j, m), p(j, m % k + 1))
        for s in slots:
            g.add_edge(s.r, s.p)
        for s in slots:
            g.add_edge(s.r, s.literal_vertex)
        for s in slots:
            for e in s.purple_edges():
                g.add_edge(*e)
        clauses.append(slots)

    manifest = ReductionManifest(n, t(-1), t(n + 1), tuple(variables), tuple(clauses))
    return g, manifest


def witness_partition(
    formula: Formula, assignment: Mapping[int, bool], graph: Graph, manifest: ReductionManifest
) -> EdgePartition:
    """Map a good evaluation to a two-tree partition (class A is the tree T).

    T runs from alpha to omega through ``v(i)`` for true ``x_i`` and through
    ``nv(i)`` otherwise; the padding variables 0 and n+1 count as true. Each
    ``r`` vertex joins the tree owning its literal vertex, the clause cycle
    edges after position m go to the other tree, and each purple 4-cycle is
    split into two 2-edge paths from ``pg1`` to ``pg3``.
    """
    if not is_good(formula, assignment):
        raise ValueError("assignment is not a good evaluation; witness map undefined")
    cls: Dict[frozenset, str] = {}

    def put(u, w, c):
        cls[edge_key(u, w)] = c

    n = manifest.num_vars
    vertex_class = {}
    for gadget in manifest.variables:
        i = gadget.index
        truth = True if i in (0, n + 1) else assignment[i]
        on_v = A if truth else B
        vertex_class[gadget.v] = on_v
        vertex_class[gadget.nv] = other(on_v)
        put(gadget.t_prev, gadget.v, on_v)
        put(gadget.v, gadget.t, on_v)
        put(gadget.t_prev, gadget.nv, other(on_v))
        put(gadget.nv, gadget.t, other(on_v))

    for slots in manifest.clauses:
        k = len(slots)
        for m, s in enumerate(slots):
            c_r = vertex_class[s.literal_vertex]
            c_q = other(c_r)
            put(s.literal_vertex, s.r, c_r)
            put(s.r, s.p, c_r)
            put(s.p, s.q, c_q)
            put(s.q, slots[(m + 1) % k].p, c_q)
            g1, g2, g3, g4 = s.pg
            put(s.r, g1, c_r)
            put(s.q, g1, c_q)
            put(g1, g2, c_r)
            put(g2, g3, c_r)
            put(g1, g4, c_q)
            put(g4, g3, c_q)

    return EdgePartition((e, cls[edge_key(*e)]) for e in graph.edges)


def extract_assignment(
    graph: Graph, manifest: ReductionManifest, partition: EdgePartition
) -> Dict[int, bool]:
    """Read a good evaluation off a two-tree partition of a reduced graph.

    The tree owning the edges at ``v(0)`` is taken as T, and ``x_i`` is true
    iff T touches ``v(i)``. The structural consequences of the correctness
    proof are checked along the way; a violation raises ``StructureError``.
    """
    verdict = verify_two_tree_partition(graph, partition)
    if not verdict:
        raise ValueError(f"partition is not a two-tree partition: {verdict}")

    def touching(x):
        return {partition.class_of(x, y) for y in graph.neighbors(x)}

    v0 = manifest.variable(0).v
    tree_t = partition.class_of(v0, graph.neighbors(v0)[0])
    assignment = {}
    for i in range(1, manifest.num_vars + 1):
        gadget = manifest.variable(i)
        on_v, on_nv = touching(gadget.v), touching(gadget.nv)
        if len(on_v) != 1 or len(on_nv) != 1 or on_v == on_nv:
            raise StructureError(
                f"partition valid but violates the theorem's structure at variable {i}"
            )
        assignment[i] = tree_t in on_v

    for slots in manifest.clauses:
        values = {slot.literal.value(assignment) for slot in slots}
        if len(values) < 2:
            raise StructureError(
                f"partition valid but violates the theorem's structure: clause "
                f"{slots[0].clause} is not satisfied in the NAE sense"
            )
    return assignment


def formula_from_manifest(manifest: ReductionManifest) -> Formula:
    return Formula(manifest.num_vars, tuple(tuple(s.literal for s in slots) for slots in manifest.clauses))
