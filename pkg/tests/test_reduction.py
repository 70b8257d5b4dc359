import dataclasses
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from p2t.formula import Formula, Literal, is_good
from p2t.graph import A, B, EdgePartition, nv, t, v, verify_two_tree_partition
from p2t.reduction import (
    ReductionError,
    StructureError,
    expected_sizes,
    extract_assignment,
    formula_from_manifest,
    literal_vertex,
    p,
    pg,
    q,
    r,
    reduce,
    witness_partition,
)

from conftest import SINGLE_CLAUSE, X1X1, all_assignments


@st.composite
def reducible_formulas(draw, max_vars=4, max_clauses=4, sizes=(2, 3)):
    n = draw(st.integers(1, max_vars))
    lit = st.integers(1, n).flatmap(lambda x: st.sampled_from([x, -x]))
    clause = st.sampled_from(sizes).flatmap(lambda k: st.lists(lit, min_size=k, max_size=k))
    return Formula.from_ints(n, draw(st.lists(clause, max_size=max_clauses)))


def kind_counts(graph):
    return Counter(x.kind for x in graph.vertices)


def to_nx(graph):
    h = nx.Graph()
    h.add_edges_from(graph.edges)
    return h


class TestReduceSizes:
    def test_empty_formula(self):
        g, _ = reduce(Formula(0, ()))
        # t(-1), t(0), t(1) plus v/nv for the two padding gadgets
        assert (g.num_vertices, g.num_edges) == (7, 8)

    def test_single_clause(self):
        g, _ = reduce(SINGLE_CLAUSE)
        assert kind_counts(g) == {"t": 6, "v": 5, "nv": 5, "p": 3, "q": 3, "r": 3, "pg": 12}
        assert (g.num_vertices, g.num_edges) == (37, 50)

    def test_repeated_literal(self):
        g, m = reduce(X1X1)
        assert (g.num_vertices, g.num_edges) == (24, 32)
        assert set(g.neighbors(r(1, 1))) & set(g.neighbors(r(1, 2))) == {v(1)}

    def test_unit_clause_rejected(self):
        with pytest.raises(ReductionError, match="unit clauses"):
            reduce(Formula.from_ints(1, [[1]]))

    @settings(max_examples=100)
    @given(reducible_formulas(max_vars=6, max_clauses=8))
    def test_size_identities(self, f):
        g, _ = reduce(f)
        assert (g.num_vertices, g.num_edges) == expected_sizes(f)


class TestStructure:
    def test_variable_gadget_cycles(self):
        g, _ = reduce(SINGLE_CLAUSE)
        for i in range(0, 5):
            rs = {r(1, 1), r(1, 2), r(1, 3)}
            assert set(g.neighbors(v(i))) - rs == {t(i - 1), t(i)}
            assert set(g.neighbors(nv(i))) - rs == {t(i - 1), t(i)}

    def test_literal_attachments(self):
        g, m = reduce(SINGLE_CLAUSE)
        assert g.has_edge(r(1, 1), nv(1))
        assert g.has_edge(r(1, 2), v(2))
        assert g.has_edge(r(1, 3), nv(3))
        assert [s.literal_vertex for s in m.clauses[0]] == [nv(1), v(2), nv(3)]

    def test_clause_cycle(self):
        g, _ = reduce(SINGLE_CLAUSE)
        ring = [p(1, 1), q(1, 1), p(1, 2), q(1, 2), p(1, 3), q(1, 3)]
        for a_, b_ in zip(ring, ring[1:] + ring[:1]):
            assert g.has_edge(a_, b_)

    def test_purple_edge_conditions(self):
        g, m = reduce(SINGLE_CLAUSE)
        h = to_nx(g)
        for s in m.clauses[0]:
            assert not g.has_edge(s.r, s.q)
            rest = h.copy()
            rest.remove_nodes_from([s.r, s.q])
            small = min(nx.connected_components(rest), key=len)
            assert small == set(s.pg)
            ring = list(s.pg)
            assert all(g.has_edge(x, y) for x, y in zip(ring, ring[1:] + ring[:1]))
            assert set(g.neighbors(s.pg[0])) == {s.r, s.q, s.pg[1], s.pg[3]}
            assert all(g.degree(x) == 2 for x in s.pg[1:])

    def test_manifest_alpha_omega(self):
        _, m = reduce(SINGLE_CLAUSE)
        assert (m.alpha, m.omega) == (t(-1), t(4))
        assert len(m.variables) == 5
        assert formula_from_manifest(m) == SINGLE_CLAUSE

    def test_deterministic(self):
        assert reduce(SINGLE_CLAUSE)[0].edges == reduce(SINGLE_CLAUSE)[0].edges

    @settings(max_examples=100)
    @given(reducible_formulas(max_vars=6, max_clauses=8))
    def test_degree_law(self, f):
        g, _ = reduce(f)
        occ = f.occurrences()
        for i in range(1, f.num_vars + 1):
            assert g.degree(v(i)) == 2 + occ.get(literal_from(i, False), 0)
            assert g.degree(nv(i)) == 2 + occ.get(literal_from(i, True), 0)
        assert all(g.degree(x) <= 4 for x in g.vertices if x.kind not in ("v", "nv"))
        assert nx.number_connected_components(to_nx(g)) == 1


def literal_from(i, negated):
    return Literal(i, negated)


class TestWitness:
    def test_empty_formula(self):
        f = Formula(0, ())
        g, m = reduce(f)
        part = witness_partition(f, {}, g, m)
        on_a = {frozenset(e) for e in part.edges_in(g, A)}
        assert on_a == {
            frozenset(e) for e in [(t(-1), v(0)), (v(0), t(0)), (t(0), v(1)), (v(1), t(1))]
        }
        assert {frozenset(e) for e in part.edges_in(g, B)} == {
            frozenset(e) for e in [(t(-1), nv(0)), (nv(0), t(0)), (t(0), nv(1)), (nv(1), t(1))]
        }
        assert verify_two_tree_partition(g, part)

    def test_single_clause_all_good_assignments(self):
        g, m = reduce(SINGLE_CLAUSE)
        good = [a for a in all_assignments(3) if is_good(SINGLE_CLAUSE, a)]
        assert len(good) == 6
        for a in good:
            part = witness_partition(SINGLE_CLAUSE, a, g, m)
            assert verify_two_tree_partition(g, part)
            assert part.class_of(t(-1), v(0)) == A
            assert extract_assignment(g, m, part) == a
            assert extract_assignment(g, m, part.swapped()) == a

    def test_rule_details(self):
        g, m = reduce(SINGLE_CLAUSE)
        a = {1: True, 2: True, 3: False}
        part = witness_partition(SINGLE_CLAUSE, a, g, m)
        # ~x1 is false so nv(1) sits on F; r(1,1) follows it and its cycle edges go to T
        assert part.class_of(nv(1), r(1, 1)) == B
        assert part.class_of(r(1, 1), p(1, 1)) == B
        assert part.class_of(p(1, 1), q(1, 1)) == A
        assert part.class_of(q(1, 1), p(1, 2)) == A
        # ~x3 is true so r(1,3) joins T and the wrap-around edge goes to F
        assert part.class_of(r(1, 3), p(1, 3)) == A
        assert part.class_of(q(1, 3), p(1, 1)) == B
        s = m.clauses[0][0]
        assert part.class_of(s.r, s.pg[0]) == B
        assert part.class_of(s.q, s.pg[0]) == A
        assert part.class_of(s.pg[0], s.pg[1]) == part.class_of(s.pg[1], s.pg[2]) == B
        assert part.class_of(s.pg[0], s.pg[3]) == part.class_of(s.pg[3], s.pg[2]) == A

    def test_bad_assignment(self):
        g, m = reduce(SINGLE_CLAUSE)
        # x1 false, x2 true, x3 false makes all three literals true
        with pytest.raises(ValueError, match="not a good evaluation"):
            witness_partition(SINGLE_CLAUSE, {1: False, 2: True, 3: False}, g, m)

    @settings(max_examples=60, deadline=None)
    @given(reducible_formulas(max_vars=4, max_clauses=4))
    def test_completeness_and_roundtrip(self, f):
        g, m = reduce(f)
        for a in all_assignments(f.num_vars):
            if not is_good(f, a):
                continue
            part = witness_partition(f, a, g, m)
            assert verify_two_tree_partition(g, part)
            assert extract_assignment(g, m, part) == a
            for j in range(1, len(f.clauses) + 1):
                classes = {part.class_of(*e) for e in m.clause_edges(j)}
                assert classes == {A, B}


class TestExtract:
    def test_rejected_partition(self):
        g, m = reduce(SINGLE_CLAUSE)
        part = witness_partition(SINGLE_CLAUSE, {1: True, 2: True, 3: True}, g, m)
        labels = part.labels(g)
        # moving v(0)-t(0) across strands t(-1)-v(0) from the rest of tree A
        idx = g.edge_index(v(0), t(0))
        labels[idx] = B if labels[idx] == A else A
        broken = EdgePartition.from_sequence(g, labels)
        assert not verify_two_tree_partition(g, broken)
        with pytest.raises(ValueError, match="not a two-tree partition"):
            extract_assignment(g, m, broken)
        with pytest.raises(ValueError):
            extract_assignment(g, m, EdgePartition.from_sequence(g, [A] * g.num_edges))

    def test_structure_violation_detected(self):
        g, m = reduce(SINGLE_CLAUSE)
        part = witness_partition(SINGLE_CLAUSE, {1: False, 2: False, 3: False}, g, m)
        # claim the clause reads x1 | x2 | x3, which is all-false here
        slots = tuple(
            dataclasses.replace(s, literal_vertex=literal_vertex(literal_from(i, False)))
            for i, s in enumerate(m.clauses[0], 1)
        )
        forged = dataclasses.replace(m, clauses=(slots,))
        with pytest.raises(StructureError):
            extract_assignment(g, forged, part)
