"""Bridge decomposition, smoothing, subdivision and threadings."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .multigraph import GraphError, Multigraph, MultigraphBuilder

#: Graphs up to this many edges fall back to exhaustive threading search.
EXHAUSTIVE_THREADING_EDGES = 24


class StructureError(GraphError):
    """Raised when a structural precondition does not hold."""


class ComponentType(str, enum.Enum):
    TRIVIAL = "I"     # K_1
    CYCLE = "II"      # C_m, m >= 2
    GENERAL = "III"   # 2-edge-connected, not a cycle

    def __str__(self) -> str:
        return self.value


def find_bridges(g: Multigraph) -> list[int]:
    """Bridge edge ids in increasing order (iterative low-link search).

    Parallel edges are told apart by id, so a doubled edge is never a bridge.
    """
    n = g.num_vertices
    disc = [-1] * n
    low = [0] * n
    out = []
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        # frames: (vertex, edge used to enter it, next incident index)
        stack = [(root, -1, 0)]
        while stack:
            v, pe, i = stack[-1]
            inc = g.incident_edges(v)
            if i < len(inc):
                stack[-1] = (v, pe, i + 1)
                e = inc[i]
                if e == pe:
                    continue
                w = g.other(e, v)
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        out.append(pe)
    return sorted(out)


def is_two_edge_connected(g: Multigraph) -> bool:
    return g.num_vertices >= 1 and g.is_connected() and not find_bridges(g)


@dataclass(frozen=True)
class Component:
    index: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    kind: ComponentType
    bridges: tuple[int, ...]     # bridges of the parent graph touching this component

    def degree2_vertices(self, g: Multigraph) -> list[int]:
        """Vertices of degree 2 inside the component (not counting bridges)."""
        bset = set(self.bridges)
        return [v for v in self.vertices
                if sum(1 for e in g.incident_edges(v) if e not in bset) == 2]

    def subgraph(self, g: Multigraph) -> tuple[Multigraph, list[int], list[int]]:
        return g.edge_subgraph(self.edges, extra_vertices=self.vertices)


@dataclass
class Decomposition:
    """Bridges, the components of ``G - B(G)`` and the tree joining them."""

    bridges: tuple[int, ...]
    components: list[Component]
    tree_edges: list[tuple[int, int, int]]
    comp_of: list[int]

    @property
    def types(self) -> list[ComponentType]:
        return [c.kind for c in self.components]

    def tree_degree(self, i: int) -> int:
        return len(self.components[i].bridges)

    def leaves(self) -> list[int]:
        if len(self.components) == 1:
            return [0]
        return [c.index for c in self.components if len(c.bridges) == 1]

    def bridge_ends(self, b: int, g: Multigraph) -> tuple[int, int]:
        """Component indices at the two ends of bridge ``b``."""
        u, v = g.endpoints(b)
        return self.comp_of[u], self.comp_of[v]

    def to_json(self) -> dict:
        return {
            "bridges": list(self.bridges),
            "components": [
                {"index": c.index, "type": c.kind.value, "vertices": list(c.vertices),
                 "edges": list(c.edges), "bridges": list(c.bridges)}
                for c in self.components
            ],
            "tree_edges": [list(t) for t in self.tree_edges],
        }


def _classify(g: Multigraph, verts: Sequence[int], edges: Sequence[int]) -> ComponentType:
    if len(verts) == 1:
        return ComponentType.TRIVIAL
    eset = set(edges)
    if len(edges) == len(verts) and all(
            sum(1 for e in g.incident_edges(v) if e in eset) == 2 for v in verts):
        return ComponentType.CYCLE
    return ComponentType.GENERAL


def decompose(g: Multigraph) -> Decomposition:
    if g.num_vertices == 0 or not g.is_connected():
        raise StructureError("decompose needs a connected, non-empty graph")
    bridges = find_bridges(g)
    bset = set(bridges)
    comps = g.components(skip_edges=bset)
    comp_of = [0] * g.num_vertices
    for i, vs in enumerate(comps):
        for v in vs:
            comp_of[v] = i
    comp_edges: list[list[int]] = [[] for _ in comps]
    comp_bridges: list[list[int]] = [[] for _ in comps]
    for e, (u, v) in enumerate(g.edges):
        if e in bset:
            comp_bridges[comp_of[u]].append(e)
            comp_bridges[comp_of[v]].append(e)
        else:
            comp_edges[comp_of[u]].append(e)
    components = [
        Component(i, tuple(vs), tuple(comp_edges[i]), _classify(g, vs, comp_edges[i]),
                  tuple(comp_bridges[i]))
        for i, vs in enumerate(comps)
    ]
    tree = []
    for b in bridges:
        cu, cv = comp_of[g.endpoints(b)[0]], comp_of[g.endpoints(b)[1]]
        tree.append((min(cu, cv), max(cu, cv), b))
    return Decomposition(tuple(bridges), components, tree, comp_of)


# -- smoothing -----------------------------------------------------------

@dataclass
class Smoothing:
    """Result of smoothing a set of degree-2 vertices.

    ``chains[i]`` lists the original edges (in path order) that new edge ``i``
    replaces; ``vertex_map[i]`` is the original id of new vertex ``i``.
    """

    graph: Multigraph
    vertex_map: list[int]
    chains: list[list[int]]

    def chain_of(self) -> dict[int, int]:
        """Original edge id -> new edge id."""
        return {e: i for i, chain in enumerate(self.chains) for e in chain}


def smooth(g: Multigraph, targets: Iterable[int]) -> Smoothing:
    """Smooth every vertex in ``targets`` (each must have degree 2)."""
    drop = set(targets)
    for v in drop:
        if g.degree(v) != 2:
            raise StructureError(f"vertex {v} has degree {g.degree(v)}, expected 2")
    kept = [v for v in g.vertices if v not in drop]
    index = {v: i for i, v in enumerate(kept)}
    used = [False] * g.num_edges
    raw: list[tuple[int, int, int, list[int]]] = []
    for u in kept:
        for e in g.incident_edges(u):
            if used[e]:
                continue
            chain = [e]
            used[e] = True
            prev, w = u, g.other(e, u)
            while w in drop:
                nxt = [f for f in g.incident_edges(w) if not used[f]]
                if not nxt:
                    raise StructureError(f"smoothing vertex {w} would create a loop")
                f = nxt[0]
                used[f] = True
                chain.append(f)
                prev, w = w, g.other(f, w)
            if w == u:
                raise StructureError(f"smoothing would create a loop at vertex {u}")
            raw.append((min(chain), index[u], index[w], chain))
    if not all(used):
        raise StructureError("a cycle of degree-2 vertices cannot be smoothed")
    raw.sort()
    graph = Multigraph(len(kept), [(a, b) for _, a, b, _ in raw])
    return Smoothing(graph, kept, [chain for *_, chain in raw])


def smooth_vertex(g: Multigraph, v: int) -> Multigraph:
    """Replace degree-2 vertex ``v`` and its two edges by one edge."""
    if g.degree(v) != 2:
        raise StructureError(f"vertex {v} has degree {g.degree(v)}, expected 2")
    a, b = g.neighbors(v)
    if a == b:
        raise StructureError(f"both edges at vertex {v} go to vertex {a}")
    return smooth(g, [v]).graph


def smoothing_all(g: Multigraph) -> Smoothing:
    if not is_two_edge_connected(g):
        raise StructureError("smooth_all needs a 2-edge-connected graph")
    if g.min_degree() < 2 or g.max_degree() != 3:
        raise StructureError("smooth_all needs minimum degree >= 2 and maximum degree 3")
    return smooth(g, [v for v in g.vertices if g.degree(v) == 2])


def smooth_all(g: Multigraph) -> Multigraph:
    """``s(G)``: smooth every degree-2 vertex of a subcubic 2-edge-connected graph."""
    return smoothing_all(g).graph


# -- subdivision ---------------------------------------------------------

@dataclass
class Subdivision:
    """``m``-subdivision of a graph.

    Original vertices keep their ids.  ``paths[e]`` is the edge sequence
    replacing original edge ``e`` (from its first endpoint to its second) and
    ``inner[e]`` the inserted vertices in the same direction.
    """

    graph: Multigraph
    m: int
    paths: list[list[int]]
    inner: list[list[int]]
    origin: dict[int, int]   # inserted vertex -> original edge


def subdivision(g: Multigraph, m: int) -> Subdivision:
    if m < 1:
        raise StructureError("subdivision count must be a positive integer")
    b = MultigraphBuilder(g.num_vertices)
    paths, inner, origin = [], [], {}
    for e, (u, v) in enumerate(g.edges):
        mids = b.add_vertices(m)
        for s in mids:
            origin[s] = e
        seq = [u, *mids, v]
        paths.append([b.add_edge(seq[i], seq[i + 1]) for i in range(m + 1)])
        inner.append(mids)
    return Subdivision(b.build(), m, paths, inner, origin)


def subdivide(g: Multigraph, m: int) -> tuple[Multigraph, dict[int, int]]:
    """Insert ``m`` vertices on every edge; also return new-vertex -> edge map."""
    sub = subdivision(g, m)
    return sub.graph, sub.origin


# -- threadings ----------------------------------------------------------

@dataclass
class Threading:
    """Vertex-disjoint paths whose ends are exactly the degree-2 vertices."""

    paths: list[list[int]] = field(default_factory=list)
    endpoints: list[tuple[int, int]] = field(default_factory=list)

    def edge_set(self) -> set[int]:
        return {e for p in self.paths for e in p}


def _walk_path(g: Multigraph, edges: set[int], start: int) -> tuple[list[int], list[int]]:
    verts, seq = [start], []
    prev_e = -1
    v = start
    while True:
        nxt = [e for e in g.incident_edges(v) if e in edges and e != prev_e]
        if not nxt:
            return seq, verts
        e = nxt[0]
        seq.append(e)
        v = g.other(e, v)
        verts.append(v)
        prev_e = e


def _path_components(g: Multigraph, edges: set[int]) -> list[tuple[list[int], int, int]]:
    """Path components of an edge set of max degree 2; cycles are dropped."""
    deg: dict[int, int] = {}
    for e in edges:
        for v in g.endpoints(e):
            deg[v] = deg.get(v, 0) + 1
    done: set[int] = set()
    out = []
    for v in sorted(deg):
        if deg[v] == 1 and v not in done:
            seq, verts = _walk_path(g, edges, v)
            done.add(verts[0])
            done.add(verts[-1])
            out.append((seq, verts[0], verts[-1]))
    return out


def _shortest_path(g: Multigraph, source: int, targets: set[int]) -> list[int] | None:
    parent: dict[int, tuple[int, int]] = {source: (-1, -1)}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u in targets and u != source:
            path = []
            while u != source:
                e, u = parent[u]
                path.append(e)
            return path[::-1]
        for e in g.incident_edges(u):
            w = g.other(e, u)
            if w not in parent:
                parent[w] = (e, u)
                queue.append(w)
    return None


def validate_threading(g: Multigraph, th: Threading) -> list[str]:
    """Independent check of a threading; returns a list of problems."""
    problems = []
    s = sorted(v for v in g.vertices if g.degree(v) == 2)
    if len(th.paths) * 2 != len(s):
        problems.append(f"{len(th.paths)} paths for {len(s)} degree-2 vertices")
    seen: set[int] = set()
    ends = []
    for i, (path, (a, b)) in enumerate(zip(th.paths, th.endpoints)):
        if not path:
            problems.append(f"path {i} is empty")
            continue
        verts = [a]
        v = a
        for e in path:
            if v not in g.endpoints(e):
                problems.append(f"path {i} is not contiguous at edge {e}")
                break
            v = g.other(e, v)
            verts.append(v)
        if v != b:
            problems.append(f"path {i} ends at {v}, not {b}")
        if len(set(verts)) != len(verts):
            problems.append(f"path {i} repeats a vertex")
        if seen & set(verts):
            problems.append(f"path {i} meets an earlier path")
        seen.update(verts)
        ends.extend([a, b])
    if sorted(ends) != s:
        problems.append("path ends do not equal the set of degree-2 vertices")
    return problems


def _check_threading_input(g: Multigraph) -> list[int]:
    if g.num_vertices == 0 or not g.is_connected():
        raise StructureError("threading needs a connected graph")
    if g.max_degree() > 3 or g.min_degree() < 2:
        raise StructureError("threading needs degrees in {2, 3}")
    s = [v for v in g.vertices if g.degree(v) == 2]
    if len(s) % 2:
        raise StructureError(f"odd number ({len(s)}) of degree-2 vertices")
    return s


def threading_exhaustive(g: Multigraph) -> Threading | None:
    """Backtracking search over vertex-disjoint path systems (small graphs)."""
    s = [v for v in g.vertices if g.degree(v) == 2]
    sset = set(s)
    used: set[int] = set()
    paths: list[tuple[list[int], int, int]] = []

    def extend(v: int, start: int, path: list[int], visited: list[int]) -> bool:
        for e in g.incident_edges(v):
            w = g.other(e, v)
            if w in used or w in visited:
                continue
            path.append(e)
            visited.append(w)
            if w in sset:
                paths.append((list(path), start, w))
                used.update(visited)
                if solve():
                    return True
                used.difference_update(visited)
                paths.pop()
            elif extend(w, start, path, visited):
                return True
            path.pop()
            visited.pop()
        return False

    def solve() -> bool:
        free = [v for v in s if v not in used]
        if not free:
            return True
        x = free[0]
        return extend(x, x, [], [x])

    if len(s) % 2 or not solve():
        return None
    return Threading([p for p, _, _ in paths], [(a, b) for _, a, b in paths])


def threading(g: Multigraph) -> Threading:
    """Pair up the degree-2 vertices by vertex-disjoint paths.

    Grows a path system one path at a time: join two unpaired degree-2
    vertices by a shortest path and keep the path components of its symmetric
    difference with the current system.  Small graphs fall back to an
    exhaustive search if that ever stalls.
    """
    s = _check_threading_input(g)
    edges: set[int] = set()
    ends: set[int] = set()
    stalled = False
    while len(ends) < len(s):
        free = [v for v in s if v not in ends]
        x = free[0]
        q = _shortest_path(g, x, set(free[1:]))
        if q is None:
            raise StructureError("graph is not connected")
        cand = edges.symmetric_difference(q)
        comps = _path_components(g, cand)
        new_ends = {v for _, a, b in comps for v in (a, b)}
        if len(comps) != len(ends) // 2 + 1 or not new_ends <= set(s):
            stalled = True
            break
        edges = {e for p, _, _ in comps for e in p}
        ends = new_ends
    if not stalled:
        comps = _path_components(g, edges)
        th = Threading([p for p, _, _ in comps], [(a, b) for _, a, b in comps])
        if not validate_threading(g, th):
            return th
    if g.num_edges <= EXHAUSTIVE_THREADING_EDGES:
        th = threading_exhaustive(g)
        if th is not None:
            return th
    raise StructureError("could not build a threading")
