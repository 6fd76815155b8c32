"""Random and exhaustive graph generators used by the tests."""

from __future__ import annotations

import random

import networkx as nx

from zsmagic.multigraph import Multigraph


def pairing_model(degrees: list[int], rng: random.Random, tries: int = 1000) -> Multigraph | None:
    """Random loopless connected multigraph with the given degree sequence."""
    if sum(degrees) % 2:
        raise ValueError("degree sum must be even")
    points = [v for v, d in enumerate(degrees) for _ in range(d)]
    for _ in range(tries):
        rng.shuffle(points)
        pairs = [(points[i], points[i + 1]) for i in range(0, len(points), 2)]
        if any(u == v for u, v in pairs):
            continue
        g = Multigraph(len(degrees), [(min(u, v), max(u, v)) for u, v in pairs])
        if g.is_connected():
            return g
    return None


def random_subcubic(rng: random.Random, max_vertices: int = 30) -> Multigraph:
    """Connected graph with degrees in {2, 3}, at least one of each, and an
    even number of degree-2 vertices."""
    while True:
        n = rng.randrange(4, max_vertices + 1, 2)
        s = rng.randrange(2, n, 2)
        degrees = [2] * s + [3] * (n - s)
        rng.shuffle(degrees)
        g = pairing_model(degrees, rng)
        if g is not None:
            return g


def _block(r: int, ports: int, rng: random.Random) -> tuple[list[tuple[int, int]], list[int], int] | None:
    """Connected r-regular-but-for-``ports`` block; ``ports`` vertices have degree r-1."""
    n = rng.randrange(max(r + 1, ports), max(r + 1, ports) + 6)
    if (r * n - ports) % 2:
        n += 1
    degrees = [r - 1] * ports + [r] * (n - ports)
    g = pairing_model(degrees, rng)
    if g is None:
        return None
    return list(g.edges), list(range(ports)), n


def random_bridged_regular(r: int, rng: random.Random, max_blocks: int = 4) -> Multigraph:
    """Connected r-regular multigraph built as a random tree of blocks joined by bridges."""
    while True:
        t = rng.randint(2, max_blocks)
        tree = [(rng.randrange(i), i) for i in range(1, t)]
        deg = [0] * t
        for a, b in tree:
            deg[a] += 1
            deg[b] += 1
        blocks = [_block(r, d, rng) for d in deg]
        if any(b is None for b in blocks):
            continue
        offset, edges, port_of = 0, [], []
        for bedges, ports, n in blocks:
            edges.extend((u + offset, v + offset) for u, v in bedges)
            port_of.append([p + offset for p in ports])
            offset += n
        used = [0] * t
        for a, b in tree:
            edges.append((port_of[a][used[a]], port_of[b][used[b]]))
            used[a] += 1
            used[b] += 1
        return Multigraph(offset, edges)


def _as_nx(n: int, edges: list[tuple[int, int]]) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(n))
    for u, v in edges:
        if h.has_edge(u, v):
            h[u][v]["mult"] += 1
        else:
            h.add_edge(u, v, mult=1)
    return h


def connected_multigraphs(max_edges: int) -> list[Multigraph]:
    """Every connected loopless multigraph with 1..max_edges edges, up to isomorphism."""
    match = nx.algorithms.isomorphism.numerical_edge_match("mult", 1)
    layer = [(2, [(0, 1)])]
    out = []
    for _ in range(max_edges):
        out.extend(Multigraph(n, e) for n, e in layer)
        buckets: dict[str, list[nx.Graph]] = {}
        nxt = []
        for n, edges in layer:
            cands = [(n, edges + [(u, v)]) for u in range(n) for v in range(u + 1, n)]
            cands += [(n + 1, edges + [(u, n)]) for u in range(n)]
            for m, e in cands:
                h = _as_nx(m, e)
                key = nx.weisfeiler_lehman_graph_hash(h, edge_attr="mult")
                seen = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(h, k, edge_match=match) for k in seen):
                    continue
                seen.append(h)
                nxt.append((m, e))
        layer = nxt
    return out
