"""Text formats: graph and partition files, the JSON manifest, DOT export."""

from __future__ import annotations

import json

from .graph import CLASSES, EdgePartition, Graph, GraphError, PartitionError, VertexLabel
from .reduction import ClausePosition, ReductionManifest, VariableGadget

GRAPH_HEADER = "p2t-graph v1"
PARTITION_HEADER = "p2t-partition v1"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def serialize_graph(graph: Graph) -> str:
    """One ``u w`` line per edge in canonical order; isolated vertices get a
    single-label line after the edges."""
    lines = [GRAPH_HEADER]
    lines.extend(f"{u} {w}" for u, w in graph.edges)
    lines.extend(str(x) for x in graph.vertices if graph.degree(x) == 0)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    first = next(lines, None)
    if first is None or first[1] != GRAPH_HEADER:
        raise GraphError(f"missing header {GRAPH_HEADER!r}")
    g = Graph()
    for lineno, line in lines:
        parts = line.split()
        try:
            if len(parts) == 2:
                g.add_edge(VertexLabel.parse(parts[0]), VertexLabel.parse(parts[1]))
            elif len(parts) == 1:
                g.add_vertex(VertexLabel.parse(parts[0]))
            else:
                raise GraphError(f"expected 'u w', got {line!r}")
        except GraphError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    return g


def serialize_partition(graph: Graph, partition: EdgePartition) -> str:
    partition.check_total(graph)
    lines = [PARTITION_HEADER]
    lines.extend(f"{u} {w} {c}" for (u, w), c in zip(graph.edges, partition.labels(graph)))
    return "\n".join(lines) + "\n"


def parse_partition(text: str) -> EdgePartition:
    lines = _content_lines(text)
    first = next(lines, None)
    if first is None or first[1] != PARTITION_HEADER:
        raise PartitionError(f"missing header {PARTITION_HEADER!r}")
    items = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 3 or parts[2] not in CLASSES:
            raise PartitionError(f"line {lineno}: expected 'u w A|B', got {line!r}")
        try:
            items.append(((VertexLabel.parse(parts[0]), VertexLabel.parse(parts[1])), parts[2]))
        except GraphError as exc:
            raise PartitionError(f"line {lineno}: {exc}") from None
    return EdgePartition(items)


def manifest_to_dict(manifest: ReductionManifest) -> dict:
    return {
        "num_vars": manifest.num_vars,
        "alpha": str(manifest.alpha),
        "omega": str(manifest.omega),
        "variables": [
            {"t_prev": str(g.t_prev), "v": str(g.v), "nv": str(g.nv), "t": str(g.t)}
            for g in manifest.variables
        ],
        "clauses": [
            [
                {
                    "p": str(s.p),
                    "q": str(s.q),
                    "r": str(s.r),
                    "pg": [str(x) for x in s.pg],
                    "literal_vertex": str(s.literal_vertex),
                }
                for s in slots
            ]
            for slots in manifest.clauses
        ],
    }


def serialize_manifest(manifest: ReductionManifest) -> str:
    return json.dumps(manifest_to_dict(manifest), indent=2) + "\n"


def parse_manifest(text: str) -> ReductionManifest:
    try:
        data = json.loads(text)
        lab = VertexLabel.parse
        variables = tuple(
            VariableGadget(i, lab(g["t_prev"]), lab(g["v"]), lab(g["nv"]), lab(g["t"]))
            for i, g in enumerate(data["variables"])
        )
        clauses = tuple(
            tuple(
                ClausePosition(
                    j, m, lab(s["p"]), lab(s["q"]), lab(s["r"]),
                    tuple(lab(x) for x in s["pg"]), lab(s["literal_vertex"]),
                )
                for m, s in enumerate(slots, 1)
            )
            for j, slots in enumerate(data["clauses"], 1)
        )
        manifest = ReductionManifest(
            int(data["num_vars"]), lab(data["alpha"]), lab(data["omega"]), variables, clauses
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed manifest: {exc}") from None
    if len(manifest.variables) != manifest.num_vars + 2:
        raise GraphError("malformed manifest: expected num_vars + 2 variable gadgets")
    return manifest


def check_manifest(graph: Graph, manifest: ReductionManifest) -> None:
    """Raise GraphError unless every label the manifest names is in ``graph``."""
    labels = [manifest.alpha, manifest.omega]
    for g in manifest.variables:
        labels += [g.t_prev, g.v, g.nv, g.t]
    for slots in manifest.clauses:
        for s in slots:
            labels += [s.p, s.q, s.r, *s.pg, s.literal_vertex]
    missing = [str(x) for x in labels if not graph.has_vertex(x)]
    if missing:
        raise GraphError(f"manifest names vertices absent from the graph: {missing[:5]}")
    for slots in manifest.clauses:
        for s in slots:
            if not graph.has_edge(s.r, s.literal_vertex):
                raise GraphError(f"manifest attaches {s.r} to {s.literal_vertex}, graph does not")


def to_dot(graph: Graph, partition: EdgePartition = None, name: str = "p2t") -> str:
    """DOT text; edges touching a purple gadget are drawn dashed."""
    colors = {"A": "blue", "B": "red"}
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=10];"]
    for x in graph.vertices:
        lines.append(f'  "{x}";')
    for u, w in graph.edges:
        attrs = []
        if u.kind == "pg" or w.kind == "pg":
            attrs += ["style=dashed", "color=purple"]
        if partition is not None:
            c = partition.class_of(u, w)
            attrs = [a for a in attrs if not a.startswith("color=")]
            attrs += [f"color={colors[c]}", f'label="{c}"']
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{u}" -- "{w}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"
