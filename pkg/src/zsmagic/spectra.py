"""Obstruction predicates, spectra and the cubic classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .factors import chromatic_index_cubic, perfect_matching
from .groups import GroupSpec
from .multigraph import GraphError, Multigraph
from .structure import ComponentType, decompose, find_bridges, smoothing_all


def _side_kind(g: Multigraph, verts: list[int]) -> str | None:
    if len(verts) == 1:
        return "trivial"
    h, _, _ = g.induced_subgraph(verts)
    return "bipartite" if h.is_bipartite_with_parts() is not None else None


def bridge_deletion_obstruction(g: Multigraph) -> tuple[int, str] | None:
    """A bridge whose deletion leaves a trivial or bipartite component.

    Such a bridge is zero under every zero-sum labeling: summing weights
    over one colour class minus the other leaves only the bridge label.
    """
    if not g.is_connected():
        raise GraphError("bridge_deletion_obstruction needs a connected graph")
    for b in find_bridges(g):
        for side in g.components(skip_edges=[b]):
            kind = _side_kind(g, side)
            if kind is not None:
                return b, kind
    return None


def _require_cubic(g: Multigraph, what: str) -> None:
    if not g.is_cubic():
        raise GraphError(f"{what} needs a cubic graph")
    if not g.is_connected():
        raise GraphError(f"{what} needs a connected graph")


def www_obstruction(g: Multigraph) -> int | None:
    """Component of ``G - B`` that is trivial, or bipartite with an odd
    number of degree-2 vertices.  Either rules out every Z_2^k x Z_4.
    """
    _require_cubic(g, "www_obstruction")
    dec = decompose(g)
    for c in dec.components:
        if c.kind is ComponentType.TRIVIAL:
            return c.index
        h, _, _ = c.subgraph(g)
        if len(c.degree2_vertices(g)) % 2 and h.is_bipartite_with_parts() is not None:
            return c.index
    return None


def tttx_obstruction(g: Multigraph) -> int | None:
    """Component ``H`` with a degree-3 vertex, no two degree-3 vertices
    adjacent, and ``s(H)`` of chromatic index 4.  Rules out Z_2 x Z_4.
    """
    _require_cubic(g, "tttx_obstruction")
    dec = decompose(g)
    for c in dec.components:
        if c.kind is not ComponentType.GENERAL:
            continue
        h, _, _ = c.subgraph(g)
        if h.max_degree() != 3:
            continue
        if any(h.degree(u) == 3 and h.degree(v) == 3 for u, v in h.edges):
            continue
        if chromatic_index_cubic(smoothing_all(h).graph) == 4:
            return c.index
    return None


# -- zim -------------------------------------------------------------------

@dataclass(frozen=True)
class CofiniteSet:
    """The positive integers minus finitely many exceptions."""

    excluded: tuple[int, ...]

    def __contains__(self, n: object) -> bool:
        return isinstance(n, int) and n >= 1 and n not in self.excluded

    def __str__(self) -> str:
        return "N∖{" + ",".join(str(x) for x in self.excluded) + "}"


def zim_cubic(g: Multigraph) -> CofiniteSet:
    """Integer-magic spectrum of a cubic graph, decided by a 1-factor test."""
    if not g.is_cubic():
        raise GraphError("zim is only available for cubic graphs")
    return CofiniteSet((2,) if perfect_matching(g) is not None else (2, 4))


# -- zeta ------------------------------------------------------------------

@dataclass
class Evidence:
    k: int
    status: str      # "sat" / "unsat" / "unknown"
    source: str      # "solver", "construction:<name>", "theorem:<reason>", "obstruction"
    nodes: int = 0

    def to_json(self) -> dict:
        return {"k": self.k, "status": self.status, "source": self.source, "nodes": self.nodes}


@dataclass
class ZetaReport:
    """Value of the least k with the graph zero-sum Z_{2j}^k-magic.

    ``kind`` is ``"exact"`` (``lo == hi``), ``"interval"`` or
    ``"infinite"``.  ``witness`` is a verified labeling at ``hi`` when one
    was produced.
    """

    j: int
    kind: str
    lo: int | None = None
    hi: int | None = None
    bound_source: str | None = None
    theorem_bound: int | None = None
    witness: Any = None
    evidence: list[Evidence] = field(default_factory=list)
    reason: str | None = None

    @property
    def value(self) -> int | None:
        return self.lo if self.kind == "exact" else None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"j": self.j, "kind": self.kind}
        if self.kind == "exact":
            out["value"] = self.lo
        elif self.kind == "interval":
            out["lo"], out["hi"] = self.lo, self.hi
        if self.bound_source:
            out["bound_source"] = self.bound_source
            out["theorem_bound"] = self.theorem_bound
        if self.reason:
            out["reason"] = self.reason
        out["evidence"] = [e.to_json() for e in self.evidence]
        return out


def _scaled(lab, n: int, k: int):
    """Z_2^m labeling times n/2, padded to Z_n^k."""
    from .solver import Labeling

    group = GroupSpec.power(n, k)
    half = n // 2
    return Labeling(group, {e: tuple(half * x for x in a) + (0,) * (k - len(a))
                            for e, a in lab.assignment.items()})


def _theorem_bound(g: Multigraph, j: int, budget: int | None):
    """``(hi, source, builder)`` with ``builder()`` giving a witness at ``hi``."""
    from . import constructions as C

    n = 2 * j
    bridges = find_bridges(g)
    options = []
    if not bridges:
        options.append((3, "2-edge-connected: Z2^3 labeling scaled",
                        lambda: _scaled(C.construct_z2k(g, budget), n, 3)))
    if g.is_cubic():
        if j == 2:
            has_pm = perfect_matching(g) is not None
            options.append((1 if has_pm else 2, "cubic, j=2: 1-factor test",
                            lambda: C.construct_ppp(g)))
        elif j >= 3:
            options.append((1, "cubic, j>=3: integer-magic spectrum", None))
    if bridges:
        if j % 2 == 0:
            options.append((6, "bridged, even j", lambda: C.construct_sss(g, j, budget)))
        options.append((3 + len(bridges), "bridged: 3+|B|",
                        lambda: C.construct_rrr(g, j, budget)))
    return min(options, key=lambda t: t[0])


def zeta(g: Multigraph, j: int, k_max: int = 6, budget: int | None = None) -> ZetaReport:
    """Least k with ``g`` zero-sum Z_{2j}^k-magic, or bounds on it.

    The upper bound comes from the structural results and is backed by a
    construction where one exists; smaller k are tried with the solver up
    to ``k_max``.
    """
    from .solver import Status, check_zero_sum, solve

    if j < 1:
        raise ValueError("j must be a positive integer")
    if g.num_vertices == 0 or not g.is_connected():
        raise GraphError("zeta needs a connected graph")
    if g.num_edges == 0:
        return ZetaReport(j, "exact", 1, 1, "no edges")
    found = bridge_deletion_obstruction(g)
    if found is not None:
        return ZetaReport(j, "infinite", reason=f"deleting bridge {found[0]} leaves a {found[1]} component",
                          evidence=[Evidence(0, "unsat", "obstruction")])
    if j == 1 and find_bridges(g):
        return ZetaReport(j, "infinite", reason="Z2^k labelings vanish on bridges",
                          evidence=[Evidence(0, "unsat", "obstruction")])
    hi, source, builder = _theorem_bound(g, j, budget)
    report = ZetaReport(j, "interval", 1, hi, bound_source=source, theorem_bound=hi)
    if builder is not None:
        lab = builder()
        lab = _lift_to(lab, 2 * j, hi)
        if check_zero_sum(g, lab):
            report.witness = lab
            report.evidence.append(Evidence(hi, "sat", "construction"))
    # a labeling over Z_n^k lifts to Z_n^(k+1), so Unsat at k settles every
    # smaller k and Sat at k caps the value; Unknown just leaves a gap
    for k in range(1, min(hi, k_max + 1)):
        res = solve(g, GroupSpec.power(2 * j, k), budget)
        report.evidence.append(Evidence(k, res.status.value, "solver", res.nodes))
        if res.status is Status.SAT:
            report.hi = k
            report.witness = res.witness
            break
        if res.status is Status.UNSAT:
            report.lo = k + 1
    hi = report.hi
    if report.witness is None and hi <= k_max:
        res = solve(g, GroupSpec.power(2 * j, hi), budget)
        report.evidence.append(Evidence(hi, res.status.value, "solver", res.nodes))
        if res.status is Status.SAT:
            report.witness = res.witness
    if report.lo == hi:
        report.kind = "exact"
    return report


def _lift_to(lab, n: int, k: int):
    """Bring a labeling over Z_n^m (m <= k) to Z_n^k by repeating coordinate 0."""
    from .solver import Labeling

    if lab.group.moduli != (n,) * lab.group.arity or lab.group.arity > k:
        raise ValueError(f"cannot lift {lab.group} to Z{n}^{k}")
    extra = k - lab.group.arity
    return Labeling(GroupSpec.power(n, k),
                    {e: tuple(a) + (a[0],) * extra for e, a in lab.assignment.items()})


# -- classification --------------------------------------------------------

@dataclass
class Classification:
    category: str
    has_one_factor: bool
    chromatic_index: int
    bridges: int
    excluded: list[str]
    families: dict[str, str] = field(default_factory=dict)
    attempts: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"category": self.category, "has_one_factor": self.has_one_factor,
                "chromatic_index": self.chromatic_index, "bridges": self.bridges,
                "excluded": self.excluded, "families": self.families,
                "attempts": self.attempts}


def _family_key(k: int) -> str:
    return f"Z2^{k}xZ4"


def classify_cubic(g: Multigraph, budget: int | None = None) -> Classification:
    """Which finite abelian groups label a connected cubic graph."""
    from .constructions import zzz_condition
    from .solver import Status, solve

    _require_cubic(g, "classify_cubic")
    has_pm = perfect_matching(g) is not None
    chi = chromatic_index_cubic(g)
    nb = len(find_bridges(g))
    if has_pm and chi == 3:
        return Classification("a", has_pm, chi, nb, ["Z2"])
    if has_pm and nb == 0:
        return Classification("b", has_pm, chi, nb, ["Z2", "Z2^2"])
    if has_pm:
        return Classification("c", has_pm, chi, nb, ["Z2^k (k>=1)"])
    out = Classification("d", has_pm, chi, nb, ["Z4", "Z2^k (k>=1)"])
    status = {k: "unknown" for k in (1, 2, 3)}
    if www_obstruction(g) is not None:
        status = {k: "not-magic" for k in status}
    else:
        if zzz_condition(g) is None:
            status[3] = "magic"
        if tttx_obstruction(g) is not None:
            status[1] = "not-magic"
        for k in (1, 2, 3):
            if status[k] != "unknown":
                continue
            res = solve(g, GroupSpec((2,) * k + (4,)), budget)
            out.attempts.append({"group": _family_key(k), "status": res.status.value,
                                 "nodes": res.nodes})
            if res.status is Status.SAT:
                for k2 in range(k, 4):
                    status[k2] = "magic"
            elif res.status is Status.UNSAT:
                for k2 in range(1, k + 1):
                    status[k2] = "not-magic"
    out.families = {_family_key(k): s for k, s in status.items()}
    if status[3] == "not-magic":
        out.excluded.append("Z2^k x Z4 (k>=1)")
    else:
        bad = [k for k in (1, 2) if status[k] == "not-magic"]
        out.excluded.extend(_family_key(k) for k in bad)
    return out


@dataclass
class SpectrumReport:
    zim: str
    zeta: dict[int, ZetaReport]
    classification: Classification | None

    def to_json(self) -> dict:
        return {"zim": self.zim,
                "zeta": {str(j): r.to_json() for j, r in sorted(self.zeta.items())},
                "classification": None if self.classification is None else self.classification.to_json()}


def spectrum(g: Multigraph, js: tuple[int, ...] = (2,), k_max: int = 4,
             budget: int | None = None) -> SpectrumReport:
    zim = str(zim_cubic(g)) if g.is_cubic() else "out of scope (non-cubic)"
    cls = classify_cubic(g, budget) if g.is_cubic() and g.is_connected() else None
    return SpectrumReport(zim, {j: zeta(g, j, k_max, budget) for j in js}, cls)
