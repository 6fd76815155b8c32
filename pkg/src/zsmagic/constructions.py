"""Explicit zero-sum labelings built from the structure of a graph.

Every builder re-checks its output with ``check_zero_sum`` and raises
``VerificationError`` if the check fails, so a returned labeling is always
valid.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .factors import (EdgeColoring, one_factor_containing, perfect_matching,
                      three_edge_coloring, two_factor_containing)
from .families import martini_family
from .groups import GroupElem, GroupSpec
from .multigraph import GraphError, Multigraph
from .solver import Labeling, Status, VerificationError, check_zero_sum, solve
from .spectra import bridge_deletion_obstruction, www_obstruction
from .structure import (ComponentType, Decomposition, decompose, find_bridges,
                        is_two_edge_connected, smooth, threading)


class ConstructionError(ValueError):
    """A builder's precondition fails (for example an obstruction is present)."""


class SearchInconclusive(RuntimeError):
    """The solver ran out of budget before settling a needed sub-labeling."""


def _verified(g: Multigraph, lab: Labeling) -> Labeling:
    report = check_zero_sum(g, lab)
    if not report:
        raise VerificationError(f"construction failed verification: {report.to_json()}")
    return lab


def _require_no_obstruction(g: Multigraph) -> None:
    if g.num_vertices == 0 or not g.is_connected():
        raise ConstructionError("graph must be connected")
    found = bridge_deletion_obstruction(g)
    if found is not None:
        b, kind = found
        raise ConstructionError(
            f"deleting bridge {b} leaves a {kind} component; "
            "no finite non-trivial abelian group labels this graph")


# -- Z_2^k on 2-edge-connected graphs --------------------------------------

def construct_z2k(g: Multigraph, budget: int | None = None) -> Labeling:
    """Zero-sum labeling over Z_2^k with the least k in {1, 2, 3}."""
    if not is_two_edge_connected(g):
        raise ConstructionError("construct_z2k needs a 2-edge-connected graph")
    for k in (1, 2, 3):
        res = solve(g, GroupSpec.power(2, k), budget)
        if res.status is Status.SAT:
            return _verified(g, res.witness)
        if res.status is Status.UNKNOWN:
            raise SearchInconclusive(f"Z2^{k} search inconclusive: {res.reason}")
    raise VerificationError("a 2-edge-connected graph must be zero-sum Z2^3-magic")


def _z2_cube(g: Multigraph, eids: Sequence[int], budget: int | None = None) -> dict[int, tuple[int, int, int]]:
    """Per-edge Z_2^3 labels of the subgraph spanned by ``eids`` (zero-padded)."""
    if not eids:
        return {}
    h, _, emap = g.edge_subgraph(eids)
    lab = construct_z2k(h, budget)
    return {emap[e]: tuple(a) + (0,) * (3 - len(a)) for e, a in lab.assignment.items()}


# -- odd cycle plus path gadgets -------------------------------------------

def odd_cycle_gadget(g: Multigraph, start: int,
                     allowed: set[int]) -> tuple[list[int], list[int]] | None:
    """A path from ``start`` to an odd cycle, using only ``allowed`` edges.

    Returns ``(path, cycle)``: ``path`` lists edges from ``start`` to the
    attachment vertex ``z``; ``cycle`` lists the cycle's edges in order
    around it, the first and last being the two at ``z``.  ``None`` when
    the reachable part is bipartite.
    """
    depth = {start: 0}
    parent: dict[int, int] = {}
    queue = deque([start])
    hit = None
    while queue and hit is None:
        u = queue.popleft()
        for e in g.incident_edges(u):
            if e not in allowed:
                continue
            w = g.other(e, u)
            if w not in depth:
                depth[w] = depth[u] + 1
                parent[w] = e
                queue.append(w)
            elif depth[w] == depth[u]:
                hit = (u, w, e)
                break
    if hit is None:
        return None
    u, w, cross = hit
    up_u, up_w = [], []
    while u != w:
        e1, e2 = parent[u], parent[w]
        up_u.append(e1)
        up_w.append(e2)
        u, w = g.other(e1, u), g.other(e2, w)
    z = u
    cycle = list(reversed(up_u)) + [cross] + up_w
    path = []
    v = z
    while v != start:
        e = parent[v]
        path.append(e)
        v = g.other(e, v)
    path.reverse()
    return path, cycle


def gadget_values(path: Sequence[int], cycle: Sequence[int], incoming: int,
                  n: int) -> dict[int, int]:
    """One Z_n coordinate of the gadget fed by label ``incoming`` at its start.

    Path labels alternate ``-incoming, incoming, ...``; the cycle alternates
    ``a, -a`` with ``2a = -p`` for the last path label ``p`` (which must be
    even, as must ``n``).
    """
    out = {}
    p = incoming % n
    for e in path:
        p = (-p) % n
        out[e] = p
    if p % 2:
        raise ConstructionError("odd value reaches the cycle")
    a = ((-p) % n) // 2
    for i, e in enumerate(cycle):
        out[e] = a if i % 2 == 0 else (-a) % n
    return out


# -- bridged graphs over Z_{2j}^k -------------------------------------------

def _side(g: Multigraph, b: int, v: int) -> set[int]:
    """Edges of the component of ``g - b`` that contains ``v``."""
    comps = g.components(skip_edges=[b])
    verts = next(set(c) for c in comps if v in c)
    return {e for e, (x, y) in enumerate(g.edges) if e != b and x in verts and y in verts}


def _bridge_label(j: int) -> int:
    return j if j % 2 == 0 else j - 1


def construct_rrr(g: Multigraph, j: int, budget: int | None = None) -> Labeling:
    """Labeling over Z_{2j}^{3+|B|}: one gadget coordinate per bridge."""
    if j < 2:
        raise ConstructionError("construct_rrr needs j >= 2")
    _require_no_obstruction(g)
    bridges = find_bridges(g)
    if not bridges:
        raise ConstructionError("construct_rrr needs at least one bridge")
    n = 2 * j
    m = len(bridges)
    group = GroupSpec.power(n, m + 3)
    coords = [[0] * (m + 3) for _ in range(g.num_edges)]
    beta = _bridge_label(j)
    for r, b in enumerate(bridges):
        coords[b][r] = beta
        for end in g.endpoints(b):
            gadget = odd_cycle_gadget(g, end, _side(g, b, end))
            if gadget is None:
                raise ConstructionError(f"no odd cycle behind bridge {b}")
            for e, x in gadget_values(*gadget, beta, n).items():
                coords[e][r] = x
    dec = decompose(g)
    for comp in dec.components:
        for e, a in _z2_cube(g, comp.edges, budget).items():
            for i in range(3):
                coords[e][m + i] = j * a[i]
    return _verified(g, Labeling.from_list(group, coords))


def _pad(lab: Labeling, group: GroupSpec) -> Labeling:
    extra = group.arity - lab.group.arity
    return Labeling(group, {e: tuple(a) + (0,) * extra for e, a in lab.assignment.items()})


def _leaf_contraction(g: Multigraph, dec: Decomposition):
    """``G'``: drop leaf components except their bridge ends, merge those ends.

    Returns ``(g_prime, emap, leaves)`` where ``emap[i]`` is the original
    edge of ``g_prime``'s edge ``i`` and ``leaves`` lists
    ``(component index, bridge, y)`` with ``y`` the bridge end inside the
    leaf.
    """
    leaves = []
    leaf_set = set()
    for ci in dec.leaves():
        b = dec.components[ci].bridges[0]
        u, v = g.endpoints(b)
        y = u if dec.comp_of[u] == ci else v
        leaves.append((ci, b, y))
        leaf_set.add(ci)
    keep = [v for v in g.vertices if dec.comp_of[v] not in leaf_set]
    index = {v: i for i, v in enumerate(keep)}
    merged = len(keep)
    for _, _, y in leaves:
        index[y] = merged
    edges, emap = [], []
    for e, (u, v) in enumerate(g.edges):
        if u in index and v in index:
            edges.append((index[u], index[v]))
            emap.append(e)
    return Multigraph(merged + 1, edges), emap, leaves


def construct_sss(g: Multigraph, j: int, budget: int | None = None) -> Labeling:
    """Labeling over Z_{2j}^6 for even ``j``."""
    if j < 2 or j % 2:
        raise ConstructionError("construct_sss needs an even j >= 2")
    _require_no_obstruction(g)
    bridges = find_bridges(g)
    if not bridges:
        raise ConstructionError("construct_sss needs at least one bridge")
    group = GroupSpec.power(2 * j, 6)
    if len(bridges) <= 3:
        return _verified(g, _pad(construct_rrr(g, j, budget), group))
    n = 2 * j
    dec = decompose(g)
    gp, emap, leaves = _leaf_contraction(g, dec)
    coords = [[0] * 6 for _ in range(g.num_edges)]
    for e, a in _z2_cube(gp, range(gp.num_edges), budget).items():
        for i in range(3):
            coords[emap[e]][i] = j * a[i]
    for ci, b, y in leaves:
        comp = dec.components[ci]
        allowed = set(comp.edges)
        gadget = odd_cycle_gadget(g, y, allowed)
        if gadget is None:
            raise ConstructionError(f"leaf component {ci} is bipartite")
        lam = list(coords[b][:3])
        for i in range(3):
            for e, x in gadget_values(*gadget, lam[i], n).items():
                coords[e][i] = x
        for e, a in _z2_cube(g, comp.edges, budget).items():
            for i in range(3):
                coords[e][3 + i] = j * a[i]
    return _verified(g, Labeling.from_list(group, coords))


# -- cubic graphs over Z_4^k -------------------------------------------------

def _require_cubic(g: Multigraph, what: str) -> None:
    if not g.is_cubic():
        raise ConstructionError(f"{what} needs a cubic graph")


def one_factor_labeling(g: Multigraph) -> Labeling | None:
    """Z_4 labeling with 2 on a perfect matching and 1 elsewhere."""
    m = perfect_matching(g)
    if m is None:
        return None
    group = GroupSpec.parse("Z4")
    return _verified(g, Labeling(group, {e: (2 if e in m.edges else 1,) for e in range(g.num_edges)}))


def construct_ppd(g: Multigraph, budget: int | None = None) -> Labeling:
    """Labeling over Z_4^3 for a connected cubic graph."""
    _require_cubic(g, "construct_ppd")
    if not g.is_connected():
        raise ConstructionError("construct_ppd needs a connected graph")
    group = GroupSpec.power(4, 3)
    bridges = find_bridges(g)
    if len(bridges) <= 2:
        lab = one_factor_labeling(g)
        if lab is None:
            raise VerificationError("a cubic graph with at most two bridges has a 1-factor")
        return _verified(g, _pad(lab, group))
    dec = decompose(g)
    gp, emap, leaves = _leaf_contraction(g, dec)
    coords: list[list[int]] = [[0] * 3 for _ in range(g.num_edges)]
    for e, a in _z2_cube(gp, range(gp.num_edges), budget).items():
        coords[emap[e]] = [2 * x for x in a]
    for ci, b, y in leaves:
        comp = dec.components[ci]
        h, vmap, hmap = comp.subgraph(g)
        yh = vmap.index(y)
        sm = smooth(h, [yh])
        chain_of = sm.chain_of()
        through = chain_of[h.incident_edges(yh)[0]]
        tf = two_factor_containing(sm.graph, [through])
        if tf is None:
            raise VerificationError(f"no 2-factor through the smoothed edge of leaf {ci}")
        lam = coords[b]
        half = [x // 2 for x in lam]
        for he in range(h.num_edges):
            coords[hmap[he]] = list(half) if chain_of[he] in tf.edges else list(lam)
    return _verified(g, Labeling.from_list(group, coords))


_KLEIN = ((2, 0), (0, 2), (2, 2))


class _ComponentView:
    """A type-III component with its smoothing bookkeeping."""

    def __init__(self, g: Multigraph, comp):
        self.g = g
        self.comp = comp
        self.h, self.vmap, self.emap = comp.subgraph(g)
        self.local = {v: i for i, v in enumerate(self.vmap)}
        self.deg2 = [v for v in self.h.vertices if self.h.degree(v) == 2]
        self.sm = smooth(self.h, self.deg2)
        self.chain_of = self.sm.chain_of()

    def chain_edge(self, v: int) -> int:
        """Smoothed edge through local degree-2 vertex ``v``."""
        return self.chain_of[self.h.incident_edges(v)[0]]

    def f_values(self, factor_edges: Iterable[int], on: int, off: int) -> list[int]:
        inside = set(factor_edges)
        return [on if self.chain_of[e] in inside else off for e in range(self.h.num_edges)]

    def threading_values(self, smoothed_at: int | None = None) -> list[int]:
        """2 on threading edges, 0 elsewhere (optionally of ``s_H(v)``)."""
        if smoothed_at is None:
            th = threading(self.h)
            used = th.edge_set()
            return [2 if e in used else 0 for e in range(self.h.num_edges)]
        part = smooth(self.h, [smoothed_at])
        th = threading(part.graph)
        used = th.edge_set()
        chain_of = part.chain_of()
        return [2 if chain_of[e] in used else 0 for e in range(self.h.num_edges)]


def _two_factor(view: _ComponentView, must: list[int]) -> frozenset[int]:
    tf = two_factor_containing(view.sm.graph, must)
    if tf is None:
        raise VerificationError("2-edge-connected cubic graph lacks a required 2-factor")
    return tf.edges


def _one_factor_through(view: _ComponentView, e: int) -> frozenset[int]:
    m = one_factor_containing(view.sm.graph, e)
    if m is None:
        raise VerificationError("2-edge-connected cubic graph lacks a required 1-factor")
    return m.edges


def _label_general(view: _ComponentView, v1: int, beta: tuple[int, int]) -> list[tuple[int, int]]:
    """Labels of a type-III component's edges, given its entry bridge label."""
    k = len(view.deg2)
    c1 = view.chain_edge(v1)
    if k % 2 == 0:
        g_vals = view.threading_values()
        if beta == (2, 2):
            f_vals = view.f_values(_two_factor(view, [c1]), 1, 2)
            return list(zip(f_vals, g_vals))
        f_vals = view.f_values(_one_factor_through(view, c1), 2, 1)
        return list(zip(g_vals, f_vals)) if beta == (2, 0) else list(zip(f_vals, g_vals))
    if k == 1:
        f_vals = view.f_values(_two_factor(view, [c1]), 1, 2)
        zero = [0] * len(f_vals)
        if beta == (2, 0):
            return list(zip(f_vals, zero))
        if beta == (0, 2):
            return list(zip(zero, f_vals))
        return list(zip(f_vals, f_vals))
    if beta == (2, 2):
        v2 = next(v for v in view.deg2 if v != v1)
        f_vals = view.f_values(_two_factor(view, [c1, view.chain_edge(v2)]), 1, 2)
        return list(zip(f_vals, view.threading_values(smoothed_at=v2)))
    f_vals = view.f_values(_two_factor(view, [c1]), 1, 2)
    g_vals = view.threading_values(smoothed_at=v1)
    return list(zip(f_vals, g_vals)) if beta == (2, 0) else list(zip(g_vals, f_vals))


def _cycle_walk(g: Multigraph, edges: Sequence[int], start: int) -> list[int]:
    eset = set(edges)
    order = []
    v = start
    prev = None
    while len(order) < len(edges):
        e = min(f for f in g.incident_edges(v) if f in eset and f != prev and f not in order)
        order.append(e)
        prev = e
        v = g.other(e, v)
    return order


def _ppp_connected(g: Multigraph) -> dict[int, tuple[int, int]]:
    dec = decompose(g)
    lab: dict[int, tuple[int, int]] = {}
    done = [False] * len(dec.components)

    def entry_end(b: int, ci: int) -> int:
        u, v = g.endpoints(b)
        return u if dec.comp_of[u] == ci else v

    def close_bridges(ci: int) -> None:
        """Give each unlabeled bridge at the component minus its vertex's other labels."""
        for b in dec.components[ci].bridges:
            v = entry_end(b, ci)
            total = [0, 0]
            for e in g.incident_edges(v):
                if e != b:
                    total[0] += lab[e][0]
                    total[1] += lab[e][1]
            need = ((-total[0]) % 4, (-total[1]) % 4)
            if b in lab:
                if lab[b] != need:
                    raise VerificationError(f"bridge {b} label {lab[b]} disagrees with {need}")
            else:
                if need not in _KLEIN:
                    raise VerificationError(f"bridge {b} would get {need}")
                lab[b] = need

    root = min(dec.leaves())
    view = _ComponentView(g, dec.components[root])
    b0 = dec.components[root].bridges[0]
    v0 = view.local[entry_end(b0, root)]
    f_vals = view.f_values(_two_factor(view, [view.chain_edge(v0)]), 1, 2)
    for he, x in enumerate(f_vals):
        lab[view.emap[he]] = (x, 0)
    lab[b0] = (2, 0)
    close_bridges(root)
    done[root] = True

    while not all(done):
        ci = min(i for i, c in enumerate(dec.components)
                 if not done[i] and any(b in lab for b in c.bridges))
        comp = dec.components[ci]
        b1 = next(b for b in comp.bridges if b in lab)
        beta = lab[b1]
        v1 = entry_end(b1, ci)
        if comp.kind is ComponentType.TRIVIAL:
            rest = [t for t in _KLEIN if t != beta]
            for b, t in zip([b for b in comp.bridges if b != b1], rest):
                lab[b] = t
        elif comp.kind is ComponentType.CYCLE:
            walk = _cycle_walk(g, comp.edges, v1)
            first, last = [t for t in _KLEIN if t != beta]
            colors = [first] + [None] * (len(walk) - 2) + [last]
            for i in range(1, len(walk) - 1):
                banned = {colors[i - 1], last if i == len(walk) - 2 else None}
                colors[i] = next(t for t in _KLEIN if t not in banned)
            for e, t in zip(walk, colors):
                lab[e] = t
            close_bridges(ci)
        else:
            view = _ComponentView(g, comp)
            for he, x in enumerate(_label_general(view, view.local[v1], beta)):
                lab[view.emap[he]] = x
            close_bridges(ci)
        done[ci] = True
    return lab


def construct_ppp(g: Multigraph) -> Labeling:
    """Z_4 labeling when a 1-factor exists, otherwise a Z_4^2 labeling.

    Bridge labels of the Z_4^2 labeling are drawn from (2,0), (0,2), (2,2).
    """
    _require_cubic(g, "construct_ppp")
    lab = one_factor_labeling(g)
    if lab is not None:
        return lab
    group = GroupSpec.power(4, 2)
    out: dict[int, GroupElem] = {}
    for comp in g.components():
        h, _, emap = g.induced_subgraph(comp)
        sub = one_factor_labeling(h)
        if sub is not None:
            part = {e: (a[0], 0) for e, a in sub.assignment.items()}
        else:
            part = _ppp_connected(h)
        for e, a in part.items():
            out[emap[e]] = a
    return _verified(g, Labeling(group, out))


# -- cubic graphs over Z_2^k x Z_4 ------------------------------------------

def zzz_condition(g: Multigraph) -> str | None:
    """Why the component condition fails, or ``None`` when it holds."""
    dec = decompose(g)
    for c in dec.components:
        if c.kind is ComponentType.TRIVIAL:
            return f"component {c.index} is trivial"
        d = len(c.degree2_vertices(g))
        if d != 1 and d % 2:
            return f"component {c.index} has {d} vertices of degree 2"
    return None


def construct_zzz(g: Multigraph, budget: int | None = None) -> Labeling:
    """Labeling over Z_2^3 x Z_4 (last coordinate is the Z_4 factor)."""
    _require_cubic(g, "construct_zzz")
    if not g.is_connected():
        raise ConstructionError("construct_zzz needs a connected graph")
    bad = www_obstruction(g)
    if bad is not None:
        raise ConstructionError(
            f"component {bad} of G - B is trivial or bipartite with an odd number of "
            "degree-2 vertices; no Z2^k x Z4 labeling exists")
    why = zzz_condition(g)
    if why is not None:
        raise ConstructionError(why)
    group = GroupSpec((2, 2, 2, 4))
    dec = decompose(g)
    coords = [[0, 0, 0, 0] for _ in range(g.num_edges)]
    for b in dec.bridges:
        coords[b][3] = 2
    for comp in dec.components:
        for e, a in _z2_cube(g, comp.edges, budget).items():
            coords[e][:3] = a
        deg2 = comp.degree2_vertices(g)
        if len(deg2) == 1:
            gadget = odd_cycle_gadget(g, deg2[0], set(comp.edges))
            if gadget is None:
                raise VerificationError(f"component {comp.index} has no odd cycle")
            for e, x in gadget_values(*gadget, 2, 4).items():
                coords[e][3] = x
        elif deg2:
            h, _, hmap = comp.subgraph(g)
            for he in threading(h).edge_set():
                coords[hmap[he]][3] = 2
    return _verified(g, Labeling.from_list(group, coords))


def lift_lemma(g: Multigraph, lab: Labeling, budget: int | None = None) -> Labeling:
    """Shrink a Z_2^k x Z_4 labeling (k > 3) to Z_2^3 x Z_4."""
    _require_cubic(g, "lift_lemma")
    if not g.is_connected():
        raise ConstructionError("lift_lemma needs a connected graph")
    moduli = lab.group.moduli
    if moduli[-1] != 4 or any(n != 2 for n in moduli[:-1]):
        raise ConstructionError(f"expected a group Z2^k x Z4, got {lab.group}")
    if not check_zero_sum(g, lab):
        raise ConstructionError("input labeling does not verify")
    k0 = len(moduli) - 1
    if k0 <= 3:
        return lab
    group = GroupSpec((2, 2, 2, 4))
    dec = decompose(g)
    coords = [[0, 0, 0, lab[e][-1]] for e in range(g.num_edges)]
    for comp in dec.components:
        for e, a in _z2_cube(g, comp.edges, budget).items():
            coords[e][:3] = a
    return _verified(g, Labeling.from_list(group, coords))


# -- M_2 over Z_2 x Z_4 -------------------------------------------------------

def construct_fff(base: Multigraph, coloring: EdgeColoring | None = None) -> Labeling:
    """Z_2 x Z_4 labeling of ``M_2(base)`` from a 3-edge-coloring of ``base``."""
    if not base.is_cubic() or not is_two_edge_connected(base):
        raise ConstructionError("construct_fff needs a 2-edge-connected cubic base graph")
    if coloring is None:
        coloring = three_edge_coloring(base)
    if coloring is None:
        raise ConstructionError("base graph has chromatic index 4")
    fam = martini_family(base, 2)
    color = coloring.color_of()
    by_class = (((1, 1),) * 3, ((0, 1),) * 3, ((1, 2), (1, 0), (1, 2)))
    out: dict[int, GroupElem] = {}
    for e, path in enumerate(fam.paths):
        for pe, x in zip(path, by_class[color[e]]):
            out[pe] = x
        for gl in fam.glasses[e]:
            out[gl.bridge] = (0, 2)
            out[gl.ab] = out[gl.ac] = out[gl.bc] = (1, 1)
            out[gl.ab2] = (0, 2)
    return _verified(fam.graph, Labeling(GroupSpec((2, 4)), out))


THEOREMS = ("rrr", "sss", "ppd", "ppp", "zzz", "fff", "z2k")
