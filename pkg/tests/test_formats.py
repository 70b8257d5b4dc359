import json

import pytest
from hypothesis import given, strategies as st

from p2t.formats import (
    check_manifest,
    parse_graph,
    parse_manifest,
    parse_partition,
    serialize_graph,
    serialize_manifest,
    serialize_partition,
    to_dot,
)
from p2t.formula import parse_dimacs
from p2t.graph import Graph, GraphError, PartitionError
from p2t.reduction import reduce, witness_partition

from conftest import DATA, SINGLE_CLAUSE


def test_graph_golden():
    graph, _ = reduce(parse_dimacs((DATA / "single_clause.cnf").read_text()))
    assert serialize_graph(graph) == (DATA / "single_clause.graph").read_text()


def test_manifest_golden():
    _, manifest = reduce(SINGLE_CLAUSE)
    assert serialize_manifest(manifest) == (DATA / "single_clause.manifest.json").read_text()


def test_graph_roundtrip_is_canonical():
    graph, _ = reduce(SINGLE_CLAUSE)
    text = serialize_graph(graph)
    again = parse_graph(text)
    assert again == graph
    assert serialize_graph(again) == text


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda e: e[0] != e[1]),
                unique_by=lambda e: frozenset(e), max_size=12),
       st.lists(st.integers(7, 9), max_size=2))
def test_graph_roundtrip_with_free_labels(edges, isolated):
    g = Graph(edges, vertices=[f"n{i}" for i in isolated])
    text = serialize_graph(g)
    assert serialize_graph(parse_graph(text)) == text


def test_manifest_roundtrip():
    graph, manifest = reduce(SINGLE_CLAUSE)
    again = parse_manifest(serialize_manifest(manifest))
    assert again == manifest
    check_manifest(graph, again)


def test_manifest_keys():
    _, manifest = reduce(SINGLE_CLAUSE)
    data = json.loads(serialize_manifest(manifest))
    assert set(data) == {"num_vars", "alpha", "omega", "variables", "clauses"}
    slot = data["clauses"][0][0]
    assert slot == {
        "p": "p(1,1)", "q": "q(1,1)", "r": "r(1,1)",
        "pg": ["pg(1,1,1)", "pg(1,1,2)", "pg(1,1,3)", "pg(1,1,4)"],
        "literal_vertex": "nv(1)",
    }


def test_manifest_inconsistent_with_graph():
    graph, _ = reduce(SINGLE_CLAUSE)
    _, other = reduce(parse_dimacs("p cnf 3 1\n1 2 3 0"))
    with pytest.raises(GraphError, match="attaches"):
        check_manifest(graph, other)


def test_partition_roundtrip():
    graph, manifest = reduce(SINGLE_CLAUSE)
    part = witness_partition(SINGLE_CLAUSE, {1: True, 2: True, 3: True}, graph, manifest)
    text = serialize_partition(graph, part)
    assert text.splitlines()[0] == "p2t-partition v1"
    assert text.splitlines()[1] == "t(-1) v(0) A"
    assert parse_partition(text) == part


@pytest.mark.parametrize(
    "text, exc",
    [
        ("a b\n", GraphError),
        ("p2t-graph v1\na b c\n", GraphError),
        ("p2t-graph v1\na b\nb a\n", GraphError),
        ("p2t-graph v1\nv(1 b\n", GraphError),
    ],
)
def test_bad_graph_files(text, exc):
    with pytest.raises(exc):
        parse_graph(text)


@pytest.mark.parametrize(
    "text", ["a b A\n", "p2t-partition v1\na b C\n", "p2t-partition v1\na b A\nb a B\n"]
)
def test_bad_partition_files(text):
    with pytest.raises(PartitionError):
        parse_partition(text)


def test_bad_manifest():
    with pytest.raises(GraphError):
        parse_manifest('{"num_vars": 1}')


def test_dot_marks_purple_edges():
    graph, _ = reduce(SINGLE_CLAUSE)
    dot = to_dot(graph)
    dashed = [line for line in dot.splitlines() if "dashed" in line]
    assert len(dashed) == 18
    assert all("pg(" in line for line in dashed)
    assert dot.startswith("graph p2t {") and dot.rstrip().endswith("}")
