"""Perfect matchings, 2-factors and 3-edge-colorings of multigraphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .multigraph import GraphError, Multigraph
from .structure import find_bridges

#: Graphs with fewer vertices than this may use the exhaustive matcher.
EXHAUSTIVE_MATCHING_VERTICES = 16


@dataclass(frozen=True)
class Matching:
    edges: frozenset[int]

    def covers(self, g: Multigraph) -> set[int]:
        return {v for e in self.edges for v in g.endpoints(e)}

    def is_valid(self, g: Multigraph) -> bool:
        seen: set[int] = set()
        for e in self.edges:
            u, v = g.endpoints(e)
            if u in seen or v in seen:
                return False
            seen.update((u, v))
        return True

    def is_perfect(self, g: Multigraph) -> bool:
        return self.is_valid(g) and len(self.edges) * 2 == g.num_vertices


@dataclass(frozen=True)
class TwoFactor:
    edges: frozenset[int]

    def is_valid(self, g: Multigraph) -> bool:
        deg = [0] * g.num_vertices
        for e in self.edges:
            for v in g.endpoints(e):
                deg[v] += 1
        return all(d == 2 for d in deg)

    def cycles(self, g: Multigraph) -> list[list[int]]:
        """Edge sequences of the cycles, each starting at its least edge id."""
        left = set(self.edges)
        out = []
        while left:
            start = min(left)
            left.discard(start)
            cyc = [start]
            u, v = g.endpoints(start)
            while v != u:
                nxt = min(f for f in g.incident_edges(v) if f in left)
                left.discard(nxt)
                cyc.append(nxt)
                v = g.other(nxt, v)
            out.append(cyc)
        return out


@dataclass(frozen=True)
class EdgeColoring:
    classes: tuple[frozenset[int], frozenset[int], frozenset[int]]

    def color_of(self) -> dict[int, int]:
        return {e: i for i, cls in enumerate(self.classes) for e in cls}

    def is_valid(self, g: Multigraph) -> bool:
        if sum(len(c) for c in self.classes) != g.num_edges:
            return False
        if set().union(*self.classes) != set(range(g.num_edges)):
            return False
        return all(Matching(c).is_valid(g) for c in self.classes)


def _require_cubic(g: Multigraph, what: str) -> None:
    if not g.is_cubic():
        raise GraphError(f"{what} needs a cubic graph")


def perfect_matching(g: Multigraph, avoid: Iterable[int] = ()) -> Matching | None:
    """A perfect matching (blossom algorithm), or ``None`` if none exists.

    Parallel edges collapse to their least id.
    """
    if g.num_vertices % 2:
        return None
    skip = set(avoid)
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for e, (u, v) in enumerate(g.edges):
        if e not in skip and not h.has_edge(u, v):
            h.add_edge(u, v, eid=e)
    mate = nx.max_weight_matching(h, maxcardinality=True)
    if 2 * len(mate) != g.num_vertices:
        return None
    return Matching(frozenset(h.edges[u, v]["eid"] for u, v in mate))


def perfect_matching_bruteforce(g: Multigraph, avoid: Iterable[int] = ()) -> Matching | None:
    """Exhaustive search: match the least uncovered vertex every possible way."""
    skip = set(avoid)
    covered = [False] * g.num_vertices
    chosen: list[int] = []

    def extend() -> bool:
        try:
            v = covered.index(False)
        except ValueError:
            return True
        covered[v] = True
        for e in g.incident_edges(v):
            w = g.other(e, v)
            if e in skip or covered[w]:
                continue
            covered[w] = True
            chosen.append(e)
            if extend():
                return True
            chosen.pop()
            covered[w] = False
        covered[v] = False
        return False

    return Matching(frozenset(chosen)) if extend() else None


def perfect_matching_avoiding(g: Multigraph, avoid: Iterable[int]) -> Matching | None:
    return perfect_matching(g, avoid)


def one_factor_containing(g: Multigraph, e: int) -> Matching | None:
    """Perfect matching through edge ``e``: match its ends, solve the rest."""
    _require_cubic(g, "one_factor_containing")
    u, v = g.endpoints(e)
    rest = [w for w in g.vertices if w not in (u, v)]
    h, _, emap = g.induced_subgraph(rest)
    m = perfect_matching(h)
    if m is None:
        return None
    return Matching(frozenset({e, *(emap[f] for f in m.edges)}))


def two_factor_containing(g: Multigraph, must: Iterable[int]) -> TwoFactor | None:
    """2-factor through every edge of ``must``: complement of a matching avoiding them."""
    _require_cubic(g, "two_factor_containing")
    m = perfect_matching(g, avoid=must)
    if m is None:
        return None
    return TwoFactor(frozenset(range(g.num_edges)) - m.edges)


def _bfs_edge_order(g: Multigraph) -> list[int]:
    seen_v = [False] * g.num_vertices
    seen_e = [False] * g.num_edges
    order = []
    for s in g.vertices:
        if seen_v[s]:
            continue
        seen_v[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in g.incident_edges(u):
                if seen_e[e]:
                    continue
                seen_e[e] = True
                order.append(e)
                w = g.other(e, u)
                if not seen_v[w]:
                    seen_v[w] = True
                    queue.append(w)
    return order


class ColoringBudgetExceeded(RuntimeError):
    pass


def three_edge_coloring(g: Multigraph, budget: int | None = None) -> EdgeColoring | None:
    """A proper 3-edge-coloring, or ``None`` when the chromatic index is 4.

    Cubic graphs with a bridge are never 3-edge-colorable (each colour pair
    spans even cycles, so a bridge would need two colours at once); they
    short-circuit.  Otherwise backtracking over a BFS edge order, pruning
    when a vertex has more uncolored edges than free colours.
    """
    _require_cubic(g, "three_edge_coloring")
    if find_bridges(g):
        return None
    order = _bfs_edge_order(g)
    used = [0] * g.num_vertices          # bitmask of colours present
    pending = [3] * g.num_vertices       # uncolored incident edges
    color = [-1] * g.num_edges
    nodes = 0

    def fits(v: int) -> bool:
        free = 3 - bin(used[v]).count("1")
        return pending[v] <= free

    def assign(i: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        e = order[i]
        u, v = g.endpoints(e)
        # the first edge's colour is fixed by symmetry
        palette = (0,) if i == 0 else (0, 1, 2)
        for c in palette:
            bit = 1 << c
            if used[u] & bit or used[v] & bit:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise ColoringBudgetExceeded(f"3-edge-coloring exceeded {budget} nodes")
            used[u] |= bit
            used[v] |= bit
            pending[u] -= 1
            pending[v] -= 1
            color[e] = c
            if fits(u) and fits(v) and assign(i + 1):
                return True
            used[u] &= ~bit
            used[v] &= ~bit
            pending[u] += 1
            pending[v] += 1
            color[e] = -1
        return False

    if not assign(0):
        return None
    classes = tuple(frozenset(e for e in range(g.num_edges) if color[e] == c) for c in range(3))
    return EdgeColoring(classes)  # type: ignore[arg-type]


def chromatic_index_cubic(g: Multigraph) -> int:
    return 3 if three_edge_coloring(g) is not None else 4
