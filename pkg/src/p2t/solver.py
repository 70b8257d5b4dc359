"""Exact P2T deciders for small graphs.

``solve_p2t_naive`` enumerates every classification and is the ground-truth
oracle. ``solve_p2t`` is a backtracking search with one rollback union-find
per class. After each decision it forces edges that would close a cycle into
the other class, pushes free edges that cannot reach a class's component out
of it, keeps free bridges that separate a class inside it, splits the two
edges of every two-edge cut with a cycle on both sides, and prunes on
edge-count and shared-vertex bounds.

Branching prefers edges that took part in recent conflicts (decaying
activity scores), falling back to depth-first order with pendant blocks
last. Everything is deterministic: no randomness, no restarts.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import Iterator, List, Optional

from .graph import A, B, EdgePartition, Graph, verify_two_tree_partition

PARTITION = "partition"
NO_PARTITION = "no-partition"
TIMEOUT = "timeout"

DEFAULT_NAIVE_EDGE_CAP = 16


class SolverError(ValueError):
    pass


class RollbackUnionFind:
    """Union-find with union by size and no path compression, so every
    union can be undone in LIFO order."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: List[int] = []

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def connected(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.history.append(ry)
        return True

    def checkpoint(self) -> int:
        return len(self.history)

    def rollback(self, mark: int) -> None:
        while len(self.history) > mark:
            ry = self.history.pop()
            rx = self.parent[ry]
            self.size[rx] -= self.size[ry]
            self.parent[ry] = ry


@dataclass
class SolveStats:
    nodes: int = 0
    propagations: int = 0
    elapsed: float = 0.0


@dataclass
class SolveOutcome:
    status: str
    partition: Optional[EdgePartition] = None
    stats: SolveStats = field(default_factory=SolveStats)

    def __str__(self) -> str:
        s = self.stats
        return f"{self.status} (nodes={s.nodes}, propagations={s.propagations}, {s.elapsed:.3f}s)"


def iter_two_tree_partitions(graph: Graph, edge_cap: int = DEFAULT_NAIVE_EDGE_CAP) -> Iterator[EdgePartition]:
    """Yield every accepted classification with the first edge in class A.

    Classification number ``c`` puts edge ``i >= 1`` in class B iff bit
    ``i - 1`` of ``c`` is set; numbers are tried in increasing order.
    """
    m = graph.num_edges
    if m > edge_cap:
        raise SolverError(f"{m} edges exceeds the enumeration cap of {edge_cap}")
    if m == 0:
        return
    edges = graph.edges
    for code in range(1 << (m - 1)):
        labels = [A] + [B if (code >> (i - 1)) & 1 else A for i in range(1, m)]
        part = EdgePartition(zip(edges, labels))
        if verify_two_tree_partition(graph, part):
            yield part


def solve_p2t_naive(graph: Graph, edge_cap: int = DEFAULT_NAIVE_EDGE_CAP) -> SolveOutcome:
    start = time.perf_counter()
    found = next(iter_two_tree_partitions(graph, edge_cap), None)
    stats = SolveStats(elapsed=time.perf_counter() - start)
    if found is None:
        return SolveOutcome(NO_PARTITION, None, stats)
    return SolveOutcome(PARTITION, found, stats)


def dfs_edge_order(graph: Graph) -> List[int]:
    """Edge indices in depth-first discovery order.

    Starting from the first vertex (then the next unvisited one, per
    component), each visited vertex emits its not-yet-emitted incident edges
    in adjacency order, so every edge after the first of a component touches
    a vertex already seen.
    """
    order: List[int] = []
    emitted = set()
    visited = set()
    for root in graph.vertices:
        if root in visited:
            continue
        stack = [root]
        while stack:
            x = stack.pop()
            if x in visited:
                continue
            visited.add(x)
            nxt = []
            for y in graph.neighbors(x):
                idx = graph.edge_index(x, y)
                if idx not in emitted:
                    emitted.add(idx)
                    order.append(idx)
                if y not in visited:
                    nxt.append(y)
            stack.extend(reversed(nxt))
    return order


def _blocks(graph: Graph):
    """Biconnected blocks (as edge-index lists) and the articulation vertices."""
    vid = {x: i for i, x in enumerate(graph.vertices)}
    adj: List[list] = [[] for _ in vid]
    for e, (u, w) in enumerate(graph.edges):
        adj[vid[u]].append((vid[w], e))
        adj[vid[w]].append((vid[u], e))
    disc = [-1] * len(adj)
    low = [0] * len(adj)
    blocks, cuts, t = [], set(), 0
    for root in range(len(adj)):
        if disc[root] >= 0 or not adj[root]:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        edge_stack: List[int] = []
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            x, pe, it = stack[-1]
            for y, e in it:
                if e == pe:
                    continue
                if disc[y] < 0:
                    edge_stack.append(e)
                    disc[y] = low[y] = t
                    t += 1
                    stack.append((y, e, iter(adj[y])))
                    break
                if disc[y] < disc[x]:
                    edge_stack.append(e)
                    low[x] = min(low[x], disc[y])
            else:
                stack.pop()
                if not stack:
                    continue
                px = stack[-1][0]
                low[px] = min(low[px], low[x])
                if low[x] >= disc[px]:
                    block = []
                    while True:
                        f = edge_stack.pop()
                        block.append(f)
                        if f == pe:
                            break
                    blocks.append(block)
                    if px == root:
                        children += 1
                    else:
                        cuts.add(px)
        if children > 1:
            cuts.add(root)
    return blocks, {graph.vertices[i] for i in cuts}


def search_edge_order(graph: Graph) -> List[int]:
    """Depth-first edge order with pendant blocks moved to the end.

    A pendant block meets the rest of the graph in a single articulation
    vertex, so once the edges around that vertex are fixed its own edges
    rarely matter; deciding them last keeps the search from re-enumerating
    them under every failing choice elsewhere.
    """
    order = dfs_edge_order(graph)
    blocks, cuts = _blocks(graph)
    if len(blocks) < 2:
        return order
    main = max(blocks, key=len)
    late = set()
    for block in blocks:
        if block is main or len(block) < 2:
            continue
        verts = {x for e in block for x in graph.edges[e]}
        if len(verts & cuts) == 1:
            late.update(block)
    return [e for e in order if e not in late] + [e for e in order if e in late]


def _bridge_sides(adj: List[list], skip: int = -1) -> List[tuple]:
    """Bridges of ``adj`` with edge ``skip`` deleted, with the far side's size.

    Returns (edge, vertices, degree sum) for each bridge, where the far side
    is the depth-first subtree below the bridge and degrees are taken in the
    full graph.
    """
    nv = len(adj)
    disc = [-1] * nv
    low = [0] * nv
    size = [1] * nv
    degsum = [len(a) for a in adj]
    out = []
    t = 0
    for root in range(nv):
        if disc[root] >= 0 or not adj[root]:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            x, pe, it = stack[-1]
            for y, e in it:
                if e == skip or e == pe:
                    continue
                if disc[y] < 0:
                    disc[y] = low[y] = t
                    t += 1
                    stack.append((y, e, iter(adj[y])))
                    break
                low[x] = min(low[x], disc[y])
            else:
                stack.pop()
                if stack:
                    px = stack[-1][0]
                    low[px] = min(low[px], low[x])
                    size[px] += size[x]
                    degsum[px] += degsum[x]
                    if low[x] > disc[px]:
                        out.append((pe, size[x], degsum[x]))
    return out


def cyclic_cuts(adj: List[list], ends: List[tuple], deadline: Optional[float] = None):
    """Edge cuts of size one and two whose two sides both contain a cycle.

    Each tree must reach a cycle on either side, so it uses a cut edge: a
    single such bridge rules out any partition, and the two edges of such a
    pair always land in different classes. ``adj`` must be connected.
    Returns (bridges, pairs).
    """
    nv = sum(1 for a in adj if a)
    m = len(ends)

    def cyclic(n_side, e_side, cut):
        # both sides hold at least as many edges as vertices
        return e_side >= n_side and (m - cut - e_side) >= nv - n_side

    bad, whole = [], set()
    for f, n_side, deg in _bridge_sides(adj):
        whole.add(f)
        # only f leaves the subtree
        if cyclic(n_side, (deg - 1) // 2, 1):
            bad.append(f)
    pairs = []
    for e in range(m):
        if e in whole:
            continue
        if deadline is not None and time.perf_counter() > deadline:
            raise _Timeout
        for f, n_side, deg in _bridge_sides(adj, skip=e):
            # e joins the two sides, so exactly one of its ends is inside
            if f > e and f not in whole and cyclic(n_side, (deg - 2) // 2, 2):
                pairs.append((e, f))
    return bad, pairs


class _Timeout(Exception):
    pass



class _Search:
    """Backtracking state. Edges and vertices are renumbered to ints."""

    CHECK_EVERY = 256
    DECAY = 0.95

    def __init__(self, graph: Graph, deadline: Optional[float], node_cap: Optional[int]):
        self.graph = graph
        vid = {x: i for i, x in enumerate(graph.vertices)}
        order = search_edge_order(graph)
        self.order = order
        self.ends = [(vid[u], vid[w]) for u, w in (graph.edges[i] for i in order)]
        nv = graph.num_vertices
        self.nv = nv
        self.adj: List[list] = [[] for _ in range(nv)]
        for e, (u, w) in enumerate(self.ends):
            self.adj[u].append((w, e))
            self.adj[w].append((u, e))
        self.num_edges = len(order)
        self.num_active = sum(1 for a in self.adj if a)
        # a two-tree partition has |V_A| + |V_B| = |E| + 2 over the non-isolated vertices
        self.shared_target = self.num_edges + 2 - self.num_active
        self.uf = {A: RollbackUnionFind(nv), B: RollbackUnionFind(nv)}
        self.cls: List[Optional[str]] = [None] * self.num_edges
        self.count = {A: 0, B: 0}
        self.vdeg = {A: [0] * nv, B: [0] * nv}
        self.touched = {A: 0, B: 0}
        self.shared = 0
        self.trail: List[int] = []
        self.stats = SolveStats()
        self.deadline = deadline
        self.node_cap = node_cap
        self.doomed = False
        # a tiny decreasing prior keeps the static order as the tie-break
        self.activity = [-(e + 1) * 1e-9 for e in range(self.num_edges)]
        self.bump_inc = 1.0
        self.splits: List[tuple] = []
        if len(graph.components()) == 1:
            bad, self.splits = cyclic_cuts(self.adj, self.ends, deadline)
            self.doomed = bool(bad)

    def _touch(self, x: int, c: str, delta: int) -> None:
        deg = self.vdeg[c]
        before = deg[x]
        deg[x] += delta
        if (before == 0) != (deg[x] == 0):
            step = 1 if before == 0 else -1
            self.touched[c] += step
            if self.vdeg[B if c == A else A][x]:
                self.shared += step

    def assign(self, e: int, c: str) -> None:
        u, w = self.ends[e]
        self.uf[c].union(u, w)
        self.cls[e] = c
        self.count[c] += 1
        self._touch(u, c, 1)
        self._touch(w, c, 1)
        self.trail.append(e)

    def undo_to(self, mark) -> None:
        trail_len, marks = mark
        while len(self.trail) > trail_len:
            e = self.trail.pop()
            c = self.cls[e]
            u, w = self.ends[e]
            self.count[c] -= 1
            self._touch(u, c, -1)
            self._touch(w, c, -1)
            self.cls[e] = None
        for c in (A, B):
            self.uf[c].rollback(marks[c])

    def mark(self):
        return len(self.trail), {c: self.uf[c].checkpoint() for c in (A, B)}

    def force(self, edges, c: str) -> bool:
        for e in edges:
            if self.cls[e] is None:
                if self.uf[c].connected(*self.ends[e]):
                    return False
                self.assign(e, c)
                self.stats.propagations += 1
        return True

    def propagate(self) -> bool:
        """Apply the forcing rules until nothing changes; False on a conflict.

        Acyclicity: a free edge whose endpoints are joined in one class goes
        to the other. Connectivity: a class's final tree lies inside the
        component of (its edges + free edges) holding its current edges, so
        free edges outside it go to the other class, and free bridges of that
        component separating the class's edges go to the class itself.
        Counting: each class ends with one edge fewer than its vertices.
        Cuts: the two edges of a cyclic two-edge cut take different classes.
        """
        changed = True
        while changed:
            changed = False
            # roots go stale as edges are forced, but unions only merge sets,
            # so a stale "joined" is still true; the target class is rechecked
            ra = [self.uf[A].find(x) for x in range(self.nv)]
            rb = [self.uf[B].find(x) for x in range(self.nv)]
            for e, c in enumerate(self.cls):
                if c is not None:
                    continue
                u, w = self.ends[e]
                cyc_a = ra[u] == ra[w]
                cyc_b = rb[u] == rb[w]
                if cyc_a and cyc_b:
                    return False
                if cyc_a or cyc_b:
                    if not self.force((e,), B if cyc_a else A):
                        return False
                    changed = True
            for e, f in self.splits:
                ce, cf = self.cls[e], self.cls[f]
                if ce is None and cf is None:
                    continue
                if ce == cf:
                    return False
                if ce is None or cf is None:
                    free, c = (e, cf) if ce is None else (f, ce)
                    if not self.force((free,), B if c == A else A):
                        return False
                    changed = True
            if changed:
                continue
            if self.shared > self.shared_target:
                return False
            reach = {}
            for c in (A, B):
                found = self.reach(c)
                if found is None:
                    return False
                size, outside, bridges = found
                reach[c] = size
                n_before = len(self.trail)
                if not self.force(outside, B if c == A else A) or not self.force(bridges, c):
                    return False
                if len(self.trail) != n_before:
                    changed = True
                    break
            if changed:
                continue
            if not self.counts_feasible(reach):
                return False
        return True

    def counts_feasible(self, reach) -> bool:
        free = self.num_edges - self.count[A] - self.count[B]
        m = self.num_edges
        for c, o in ((A, B), (B, A)):
            lo = max(self.count[c], self.touched[c] - 1, m - (reach[o] - 1))
            hi = min(self.count[c] + free, reach[c] - 1, m - (self.touched[o] - 1))
            if lo > hi:
                return False
        return True

    def reach(self, c: str):
        """Explore (class ``c`` edges + free edges) from class ``c``'s edges.

        Returns (vertex count reached, free edges out of reach, free bridges
        whose removal would split class ``c``'s edges), or None when class
        ``c``'s edges already lie in different components.
        """
        cls = self.cls
        if self.count[c] == 0:
            return self.num_active, [], []
        start = next(self.ends[e][0] for e, ce in enumerate(cls) if ce == c)
        nv = self.nv
        disc = [-1] * nv
        low = [0] * nv
        parent = [-1] * nv
        parent_edge = [-1] * nv
        order = [start]
        disc[start] = 0
        stack = [(start, iter(self.adj[start]))]
        while stack:
            x, it = stack[-1]
            advanced = False
            for y, e in it:
                ce = cls[e]
                if e == parent_edge[x] or (ce is not None and ce != c):
                    continue
                if disc[y] < 0:
                    disc[y] = low[y] = len(order)
                    order.append(y)
                    parent[y] = x
                    parent_edge[y] = e
                    stack.append((y, iter(self.adj[y])))
                    advanced = True
                    break
                if disc[y] < low[x]:
                    low[x] = disc[y]
            if not advanced:
                stack.pop()
                px = parent[x]
                if px >= 0 and low[x] < low[px]:
                    low[px] = low[x]

        inside = [0] * nv
        outside = []
        for e, ce in enumerate(cls):
            u, w = self.ends[e]
            if ce == c:
                if disc[u] < 0:
                    return None
                inside[u if disc[u] > disc[w] else w] += 1
            elif ce is None and disc[u] < 0:
                outside.append(e)
        total = self.count[c]
        bridges = []
        for x in reversed(order[1:]):
            px = parent[x]
            if low[x] > disc[px] and cls[parent_edge[x]] is None and 0 < inside[x] < total:
                bridges.append(parent_edge[x])
            inside[px] += inside[x]
        return len(order), outside, bridges

    def leaf_ok(self) -> bool:
        for c in (A, B):
            if self.count[c] == 0:
                return False
            uf = self.uf[c]
            roots = {uf.find(self.ends[e][0]) for e, ce in enumerate(self.cls) if ce == c}
            if len(roots) != 1:
                return False
        return True

    def tick(self) -> None:
        self.stats.nodes += 1
        if self.node_cap is not None and self.stats.nodes > self.node_cap:
            raise _Timeout
        if self.deadline is not None and self.stats.nodes % self.CHECK_EVERY == 1:
            if time.perf_counter() > self.deadline:
                raise _Timeout

    def run(self) -> bool:
        if self.doomed or not self.propagate():
            return False
        return self._search()

    def pick(self) -> Optional[int]:
        """Free edge with the highest activity; ties go to the static order."""
        best, best_score = None, -1.0
        act = self.activity
        for e, c in enumerate(self.cls):
            if c is None and act[e] > best_score:
                best, best_score = e, act[e]
        return best

    def bump(self, edges) -> None:
        inc = self.bump_inc
        for e in edges:
            self.activity[e] += inc
        self.bump_inc = inc / self.DECAY
        if self.bump_inc > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.bump_inc *= 1e-100

    def _search(self) -> bool:
        self.tick()
        e = self.pick()
        if e is None:
            return self.leaf_ok()
        u, w = self.ends[e]
        # the two classes are interchangeable, so the first decision is fixed
        choices = (A,) if not self.trail else (A, B)
        for c in choices:
            if self.uf[c].connected(u, w):
                continue
            mark = self.mark()
            self.assign(e, c)
            if self.propagate():
                if self._search():
                    return True
            else:
                self.bump(self.trail[mark[0]:])
            self.undo_to(mark)
        return False

    def partition(self) -> EdgePartition:
        edges = self.graph.edges
        return EdgePartition((edges[self.order[e]], c) for e, c in enumerate(self.cls))


def solve_p2t(
    graph: Graph, budget: Optional[float] = None, node_cap: Optional[int] = None
) -> SolveOutcome:
    """Decide whether ``graph`` splits into two trees.

    ``budget`` is wall-clock seconds, ``node_cap`` a limit on search nodes;
    running out of either gives status ``timeout`` rather than an answer.
    """
    start = time.perf_counter()
    deadline = None if budget is None else start + budget
    if graph.num_edges < 2 or len(graph.components()) > 2:
        return SolveOutcome(NO_PARTITION, None, SolveStats(elapsed=time.perf_counter() - start))
    search = None
    # one stack frame per decision, at most one decision per edge
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 2 * graph.num_edges + 200))
    try:
        search = _Search(graph, deadline, node_cap)
        found = search.run()
    except _Timeout:
        stats = search.stats if search is not None else SolveStats()
        stats.elapsed = time.perf_counter() - start
        return SolveOutcome(TIMEOUT, None, stats)
    finally:
        sys.setrecursionlimit(limit)
    search.stats.elapsed = time.perf_counter() - start
    if not found:
        return SolveOutcome(NO_PARTITION, None, search.stats)
    part = search.partition()
    # the certificate is always re-checked by the independent verifier
    if not verify_two_tree_partition(graph, part):
        raise AssertionError("solver produced an invalid partition")
    return SolveOutcome(PARTITION, part, search.stats)
