"""Simple undirected labeled graphs, edge-set tree tests and the two-tree verifier."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

A = "A"
B = "B"
CLASSES = (A, B)

KINDS = ("t", "v", "nv", "p", "q", "r", "pg", "free")
_ARITY = {"t": 1, "v": 1, "nv": 1, "p": 2, "q": 2, "r": 2, "pg": 3}
_LABEL_RE = re.compile(r"^(t|v|nv|p|q|r|pg)\((-?\d+(?:,-?\d+)*)\)$")


class GraphError(ValueError):
    pass


class PartitionError(ValueError):
    pass


def other(cls: str) -> str:
    return B if cls == A else A


@dataclass(frozen=True)
class VertexLabel:
    """A vertex name: a gadget kind plus its indices, or a free-form name.

    Rendered as ``kind(i,j,...)`` (``t(-1)``, ``pg(1,2,4)``); free labels
    render as the bare name.
    """

    kind: str
    indices: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GraphError(f"unknown vertex kind {self.kind!r}")
        if self.kind == "free":
            if len(self.indices) != 1 or not _valid_free_name(str(self.indices[0])):
                raise GraphError(f"bad free vertex name {self.indices!r}")
            object.__setattr__(self, "indices", (str(self.indices[0]),))
            return
        if len(self.indices) != _ARITY[self.kind]:
            raise GraphError(f"{self.kind} takes {_ARITY[self.kind]} indices, got {self.indices!r}")
        if self.kind == "pg" and self.indices[2] not in (1, 2, 3, 4):
            raise GraphError(f"pg corner must be 1..4, got {self.indices[2]}")

    def __str__(self) -> str:
        if self.kind == "free":
            return self.indices[0]
        return f"{self.kind}({','.join(str(i) for i in self.indices)})"

    def __repr__(self) -> str:
        return f"VertexLabel({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "VertexLabel":
        m = _LABEL_RE.match(text)
        if m:
            return cls(m.group(1), tuple(int(x) for x in m.group(2).split(",")))
        if "(" in text or ")" in text:
            raise GraphError(f"malformed vertex label {text!r}")
        return cls("free", (text,))


def _valid_free_name(name: str) -> bool:
    return bool(name) and not any(ch.isspace() or ch in "()" for ch in name)


def t(i: int) -> VertexLabel:
    return VertexLabel("t", (i,))


def v(i: int) -> VertexLabel:
    return VertexLabel("v", (i,))


def nv(i: int) -> VertexLabel:
    return VertexLabel("nv", (i,))


def free(name) -> VertexLabel:
    return VertexLabel("free", (str(name),))


def as_label(x) -> VertexLabel:
    if isinstance(x, VertexLabel):
        return x
    if isinstance(x, str):
        return VertexLabel.parse(x)
    return free(x)


Edge = Tuple[VertexLabel, VertexLabel]


def edge_key(u: VertexLabel, w: VertexLabel) -> frozenset:
    return frozenset((u, w))


class Graph:
    """Simple undirected graph that remembers insertion order.

    The order of ``vertices`` and ``edges`` is the canonical order used by
    serialization and by the solver's search.
    """

    def __init__(self, edges: Iterable = (), vertices: Iterable = ()):
        self._adj: Dict[VertexLabel, List[VertexLabel]] = {}
        self._edges: List[Edge] = []
        self._index: Dict[frozenset, int] = {}
        for x in vertices:
            self.add_vertex(x)
        for u, w in edges:
            self.add_edge(u, w)

    def add_vertex(self, x) -> VertexLabel:
        x = as_label(x)
        self._adj.setdefault(x, [])
        return x

    def add_edge(self, u, w) -> int:
        u, w = as_label(u), as_label(w)
        if u == w:
            raise GraphError(f"self-loop at {u}")
        key = edge_key(u, w)
        if key in self._index:
            raise GraphError(f"parallel edge {u}-{w}")
        self.add_vertex(u)
        self.add_vertex(w)
        self._adj[u].append(w)
        self._adj[w].append(u)
        self._index[key] = len(self._edges)
        self._edges.append((u, w))
        return self._index[key]

    @property
    def vertices(self) -> Tuple[VertexLabel, ...]:
        return tuple(self._adj)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(self._edges)

    @property
    def num_vertices(self) -> int:
        return len(self._adj)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def neighbors(self, x) -> Tuple[VertexLabel, ...]:
        return tuple(self._adj[as_label(x)])

    def degree(self, x) -> int:
        return len(self._adj[as_label(x)])

    def has_vertex(self, x) -> bool:
        return as_label(x) in self._adj

    def has_edge(self, u, w) -> bool:
        return edge_key(as_label(u), as_label(w)) in self._index

    def edge_index(self, u, w) -> int:
        key = edge_key(as_label(u), as_label(w))
        try:
            return self._index[key]
        except KeyError:
            raise GraphError(f"{u}-{w} is not an edge of the graph") from None

    def components(self) -> List[List[VertexLabel]]:
        """Connected components among non-isolated vertices, in vertex order."""
        seen = set()
        comps = []
        for s in self._adj:
            if s in seen or not self._adj[s]:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._edges == other._edges and self.vertices == other.vertices

    def __repr__(self) -> str:
        return f"Graph(|V|={self.num_vertices}, |E|={self.num_edges})"


class EdgePartition:
    """Assignment of each edge of a graph to class ``"A"`` or ``"B"``.

    Keys are unordered vertex pairs, so either orientation of an edge can be
    used for lookup.
    """

    def __init__(self, classes: Mapping = ()):
        self._cls: Dict[frozenset, str] = {}
        items = classes.items() if isinstance(classes, Mapping) else classes
        for e, c in items:
            if c not in CLASSES:
                raise PartitionError(f"edge class must be 'A' or 'B', got {c!r}")
            u, w = e
            key = edge_key(as_label(u), as_label(w))
            if key in self._cls:
                raise PartitionError(f"edge {u}-{w} classified twice")
            self._cls[key] = c

    @classmethod
    def from_sequence(cls, graph: Graph, labels: Iterable[str]) -> "EdgePartition":
        labels = list(labels)
        if len(labels) != graph.num_edges:
            raise PartitionError("one class label per edge required")
        return cls(zip(graph.edges, labels))

    def class_of(self, u, w) -> str:
        return self._cls[edge_key(as_label(u), as_label(w))]

    def keys(self):
        return self._cls.keys()

    def __len__(self) -> int:
        return len(self._cls)

    def edges_in(self, graph: Graph, cls: str) -> List[Edge]:
        """Edges of ``graph`` in class ``cls``, in canonical order."""
        return [e for e in graph.edges if self._cls[edge_key(*e)] == cls]

    def labels(self, graph: Graph) -> List[str]:
        return [self._cls[edge_key(*e)] for e in graph.edges]

    def swapped(self) -> "EdgePartition":
        out = EdgePartition()
        out._cls = {k: other(c) for k, c in self._cls.items()}
        return out

    def check_total(self, graph: Graph) -> None:
        keys = set(self._cls)
        graph_keys = {edge_key(*e) for e in graph.edges}
        if keys != graph_keys:
            missing = len(graph_keys - keys)
            extra = len(keys - graph_keys)
            raise PartitionError(
                f"partition does not cover the edge set ({missing} missing, {extra} foreign)"
            )

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgePartition) and self._cls == other._cls

    def __repr__(self) -> str:
        n_a = sum(1 for c in self._cls.values() if c == A)
        return f"EdgePartition(A={n_a}, B={len(self._cls) - n_a})"


def _forest_path(adj: Mapping, src, dst) -> Optional[list]:
    """Vertex path from src to dst in a forest given as an adjacency dict."""
    parent = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            path = []
            while x is not None:
                path.append(x)
                x = parent[x]
            return path[::-1]
        for y in adj.get(x, ()):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return None


def _analyze(edges: List[Edge]):
    """Return (cycle, components) for an edge list.

    ``cycle`` is the edge list of the first cycle closed in order, or None.
    ``components`` lists vertex sets of the edge-induced subgraph.
    """
    parent: Dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj: Dict = {}
    cycle = None
    for u, w in edges:
        parent.setdefault(u, u)
        parent.setdefault(w, w)
        ru, rw = find(u), find(w)
        if ru == rw:
            if cycle is None:
                path = _forest_path(adj, w, u)
                cycle = [(path[i], path[i + 1]) for i in range(len(path) - 1)] + [(u, w)]
            continue
        parent[ru] = rw
        adj.setdefault(u, []).append(w)
        adj.setdefault(w, []).append(u)
    groups: Dict = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    return cycle, list(groups.values())


def _check_subset(graph: Graph, edge_subset: Iterable) -> List[Edge]:
    out = []
    for u, w in edge_subset:
        u, w = as_label(u), as_label(w)
        if not graph.has_edge(u, w):
            raise GraphError(f"{u}-{w} is not an edge of the graph")
        out.append((u, w))
    return out


def is_tree(graph: Graph, edge_subset: Iterable) -> bool:
    """True iff the edges are nonempty, acyclic and connected."""
    edges = _check_subset(graph, edge_subset)
    if not edges:
        return False
    cycle, comps = _analyze(edges)
    return cycle is None and len(comps) == 1


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: Optional[str] = None
    edge_class: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "accept"
        return f"reject: {self.reason} (class {self.edge_class})"


def verify_two_tree_partition(graph: Graph, partition: EdgePartition) -> Verdict:
    """Check that both edge classes form a tree.

    An empty class is reported before any structural defect. Other rejections
    name the first failing class and carry a witness: the cycle's edges for
    ``class-cyclic``, two vertex sets for ``class-disconnected``.
    """
    partition.check_total(graph)
    classes = {cls: partition.edges_in(graph, cls) for cls in CLASSES}
    for cls in CLASSES:
        if not classes[cls]:
            return Verdict(False, "class-empty", cls)
    for cls in CLASSES:
        cycle, comps = _analyze(classes[cls])
        if cycle is not None:
            return Verdict(False, "class-cyclic", cls, tuple(cycle))
        if len(comps) > 1:
            return Verdict(False, "class-disconnected", cls, (tuple(comps[0]), tuple(comps[1])))
    return Verdict(True)


@dataclass(frozen=True)
class DegreeReport:
    degrees: Dict[VertexLabel, int]
    maximum: int

    def max_excluding(self, kinds: Iterable[str]) -> int:
        kinds = set(kinds)
        return max((d for x, d in self.degrees.items() if x.kind not in kinds), default=0)


def degree_report(graph: Graph) -> DegreeReport:
    degrees = {x: graph.degree(x) for x in graph.vertices}
    return DegreeReport(degrees, max(degrees.values(), default=0))
