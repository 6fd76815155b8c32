"""Loopless undirected multigraphs with stable integer vertex and edge ids."""

from __future__ import annotations

from collections import deque
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or queries on missing vertices."""


class Multigraph:
    """Immutable loopless multigraph.

    Vertices are ``0 .. n-1``.  Edges are numbered by insertion order; parallel
    edges get distinct ids.  All iteration orders are derived from these ids,
    so every algorithm built on top of this class is reproducible.
    """

    __slots__ = ("_n", "_edges", "_inc")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        edge_list = []
        inc: list[list[int]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {eid} ({u}, {v}) references a missing vertex")
            if u == v:
                raise GraphError(f"edge {eid} is a loop at vertex {u}")
            edge_list.append((u, v))
            inc[u].append(eid)
            inc[v].append(eid)
        self._n = n
        self._edges = tuple(edge_list)
        self._inc = tuple(tuple(x) for x in inc)

    # -- basic accessors -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def endpoints(self, e: int) -> tuple[int, int]:
        return self._edges[e]

    def other(self, e: int, v: int) -> int:
        a, b = self._edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise GraphError(f"unknown vertex {v}")

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._inc[v])

    def incident_edges(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._inc[v]

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.incident_edges(v)]

    def degrees(self) -> list[int]:
        return [len(x) for x in self._inc]

    def max_degree(self) -> int:
        return max((len(x) for x in self._inc), default=0)

    def min_degree(self) -> int:
        return min((len(x) for x in self._inc), default=0)

    def is_regular(self, r: int) -> bool:
        return all(len(x) == r for x in self._inc)

    def is_cubic(self) -> bool:
        return self.is_regular(3)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Multigraph(n={self._n}, m={len(self._edges)})"

    # -- connectivity ----------------------------------------------------

    def components(self, skip_edges: Iterable[int] = ()) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex.

        Edges listed in ``skip_edges`` are treated as deleted.
        """
        skip = set(skip_edges)
        seen = [False] * self._n
        out = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for e in self._inc[u]:
                    if e in skip:
                        continue
                    w = self.other(e, u)
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    def bfs_distances(self, source: int, allowed: set[int] | None = None) -> dict[int, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for e in self._inc[u]:
                if allowed is not None and e not in allowed:
                    continue
                w = self.other(e, u)
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_bipartite_with_parts(self) -> tuple[list[int], list[int]] | None:
        """Two-coloring of a connected graph, or ``None`` if an odd cycle exists."""
        if not self.is_connected():
            raise GraphError("is_bipartite_with_parts needs a connected graph")
        if self._n == 0:
            return [], []
        side = _two_color(self, range(self._n))
        if side is None:
            return None
        xs = [v for v in range(self._n) if side[v] == 0]
        ys = [v for v in range(self._n) if side[v] == 1]
        return xs, ys

    # -- derived graphs --------------------------------------------------

    def edge_subgraph(self, eids: Iterable[int],
                      extra_vertices: Iterable[int] = ()) -> tuple["Multigraph", list[int], list[int]]:
        """Subgraph spanned by ``eids`` (plus ``extra_vertices``).

        Returns ``(h, vmap, emap)`` where ``vmap[i]``/``emap[i]`` give the
        original id of vertex/edge ``i`` of ``h``.  Vertices keep their
        relative order, edges their id order.
        """
        emap = sorted(set(eids))
        verts = set(extra_vertices)
        for e in emap:
            verts.update(self._edges[e])
        vmap = sorted(verts)
        index = {v: i for i, v in enumerate(vmap)}
        h = Multigraph(len(vmap), [(index[self._edges[e][0]], index[self._edges[e][1]])
                                   for e in emap])
        return h, vmap, emap

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Multigraph", list[int], list[int]]:
        vs = set(vertices)
        eids = [e for e, (u, v) in enumerate(self._edges) if u in vs and v in vs]
        return self.edge_subgraph(eids, extra_vertices=vs)

    def without_edges(self, eids: Iterable[int]) -> "Multigraph":
        drop = set(eids)
        return Multigraph(self._n, [uv for e, uv in enumerate(self._edges) if e not in drop])

    # -- serialization ---------------------------------------------------

    def to_text(self, comment: str | None = None) -> str:
        lines = []
        if comment:
            lines.extend(f"# {line}" for line in comment.splitlines())
        lines.append(f"n {self._n}")
        lines.extend(f"e {u} {v}" for u, v in self._edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        n = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if fields[0] == "n" and len(fields) == 2 and n is None:
                n = _parse_int(fields[1], lineno)
            elif fields[0] == "e" and len(fields) == 3:
                if n is None:
                    raise GraphError(f"line {lineno}: edge before 'n' header")
                edges.append((_parse_int(fields[1], lineno), _parse_int(fields[2], lineno)))
            else:
                raise GraphError(f"line {lineno}: cannot parse {raw!r}")
        if n is None:
            raise GraphError("missing 'n <vertex_count>' header")
        return cls(n, edges)

    @classmethod
    def read(cls, path: str | Path) -> "Multigraph":
        return cls.from_text(Path(path).read_text())

    def to_dot(self, labels: Mapping[int, Sequence[int]] | None = None,
               name: str = "G") -> str:
        """Graphviz source; edge labels render as tuples."""
        lines = [f"graph {name} {{"]
        for v in range(self._n):
            lines.append(f"  {v};")
        for e, (u, v) in enumerate(self._edges):
            attrs = f'id="e{e}"'
            if labels is not None and e in labels:
                lab = labels[e]
                attrs += f', label="({",".join(str(x) for x in lab)})"'
            lines.append(f"  {u} -- {v} [{attrs}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphError(f"line {lineno}: expected integer, got {tok!r}") from None


def _two_color(g: Multigraph, vertices: Iterable[int],
               allowed: set[int] | None = None) -> dict[int, int] | None:
    """Two-color the given vertices (closed under ``allowed`` edges)."""
    side: dict[int, int] = {}
    for s in vertices:
        if s in side:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in g.incident_edges(u):
                if allowed is not None and e not in allowed:
                    continue
                w = g.other(e, u)
                if w not in side:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return side


class MultigraphBuilder:
    """Mutable helper for assembling graphs before freezing them."""

    def __init__(self, n: int = 0):
        self.n = n
        self.edges: list[tuple[int, int]] = []

    def add_vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def add_vertices(self, k: int) -> list[int]:
        start = self.n
        self.n += k
        return list(range(start, self.n))

    def add_edge(self, u: int, v: int) -> int:
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        self.edges.append((u, v))
        return len(self.edges) - 1

    def build(self) -> Multigraph:
        return Multigraph(self.n, self.edges)


def disjoint_union(*graphs: Multigraph) -> Multigraph:
    b = MultigraphBuilder()
    for g in graphs:
        off = b.n
        b.add_vertices(g.num_vertices)
        for u, v in g.edges:
            b.add_edge(u + off, v + off)
    return b.build()
