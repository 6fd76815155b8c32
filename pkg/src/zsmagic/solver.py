"""Deciding and verifying zero-sum A-magic labelings.

``solve`` layers three things: structural obstructions that settle a graph
outright, an echelon parametrization of the linear zero-weight conditions
(one Howell basis per cyclic factor), and a depth-first search over the free
parameters that prunes as soon as some edge's label is final and zero in
every coordinate.  Unsat is only ever reported with a reason.
"""

from __future__ import annotations

import enum
import itertools
import os
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .groups import GroupElem, GroupError, GroupSpec, is_zero
from .linalg import kernel_basis, lead_column
from .multigraph import GraphError, Multigraph

DEFAULT_BUDGET = 10_000_000
DEFAULT_ORACLE_CAP = 2_000_000


def default_budget() -> int:
    env = os.environ.get("ZSMAGIC_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class LabelingError(ValueError):
    pass


@dataclass(frozen=True)
class Labeling:
    """Map from edge ids to group elements."""

    group: GroupSpec
    assignment: Mapping[int, GroupElem]

    def __post_init__(self) -> None:
        clean = {}
        for e, a in self.assignment.items():
            clean[int(e)] = self.group.element(a)
        object.__setattr__(self, "assignment", dict(sorted(clean.items())))

    @classmethod
    def from_list(cls, group: GroupSpec, values: Sequence[Sequence[int]]) -> "Labeling":
        return cls(group, {e: tuple(v) for e, v in enumerate(values)})

    def __getitem__(self, e: int) -> GroupElem:
        return self.assignment[e]

    def __len__(self) -> int:
        return len(self.assignment)

    def values(self, num_edges: int) -> list[GroupElem]:
        try:
            return [self.assignment[e] for e in range(num_edges)]
        except KeyError as exc:
            raise LabelingError(f"edge {exc.args[0]} has no label") from None

    def to_text(self) -> str:
        lines = [f"# group {self.group}"]
        lines.extend(f"e {e} " + " ".join(str(x) for x in a)
                     for e, a in self.assignment.items())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, group: GroupSpec) -> "Labeling":
        out = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if fields[0] != "e" or len(fields) != 2 + group.arity:
                raise LabelingError(f"line {lineno}: expected 'e <edge> <c_1> ... <c_{group.arity}>'")
            try:
                nums = [int(x) for x in fields[1:]]
            except ValueError:
                raise LabelingError(f"line {lineno}: non-integer field") from None
            if nums[0] in out:
                raise LabelingError(f"line {lineno}: edge {nums[0]} labeled twice")
            out[nums[0]] = tuple(nums[1:])
        return cls(group, out)

    @classmethod
    def read(cls, path: str | Path, group: GroupSpec) -> "Labeling":
        return cls.from_text(Path(path).read_text(), group)

    def to_json(self) -> list[list[int]]:
        return [list(a) for a in self.assignment.values()]

    def restrict(self, eids: Iterable[int]) -> "Labeling":
        return Labeling(self.group, {e: self.assignment[e] for e in eids})


def weight(g: Multigraph, lab: Labeling, v: int) -> GroupElem:
    total = [0] * lab.group.arity
    for e in g.incident_edges(v):
        if e not in lab.assignment:
            raise LabelingError(f"edge {e} has no label")
        for i, x in enumerate(lab.assignment[e]):
            total[i] += x
    return lab.group.element(total)


@dataclass
class CheckReport:
    valid: bool
    bad_vertices: list[int] = field(default_factory=list)
    zero_edges: list[int] = field(default_factory=list)
    missing_edges: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {"valid": self.valid, "bad_vertices": self.bad_vertices,
                "zero_edges": self.zero_edges, "missing_edges": self.missing_edges}


def check_zero_sum(g: Multigraph, lab: Labeling) -> CheckReport:
    """Every edge labeled, every label nonzero, every weight zero."""
    missing = [e for e in range(g.num_edges) if e not in lab.assignment]
    extra = [e for e in lab.assignment if not 0 <= e < g.num_edges]
    zero = [e for e, a in lab.assignment.items() if is_zero(a) and e not in extra]
    bad = []
    if not missing:
        bad = [v for v in g.vertices if not is_zero(weight(g, lab, v))]
    valid = not (missing or extra or zero or bad)
    return CheckReport(valid, bad, zero, missing + extra)


def check_bridge_parity(g: Multigraph, lab: Labeling) -> bool:
    """Every bridge label has only even coordinates (cubic, all-even moduli)."""
    from .structure import find_bridges

    if not g.is_cubic():
        raise GraphError("bridge parity is stated for cubic graphs")
    if not lab.group.all_even:
        raise GroupError(f"group {lab.group} has an odd modulus")
    return all(x % 2 == 0 for b in find_bridges(g) for x in lab[b])


class Status(str, enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass
class SolveResult:
    status: Status
    witness: Labeling | None = None
    reason: str | None = None
    nodes: int = 0

    @property
    def sat(self) -> bool:
        return self.status is Status.SAT

    @property
    def unsat(self) -> bool:
        return self.status is Status.UNSAT

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value, "nodes": self.nodes}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        return out


class VerificationError(RuntimeError):
    """A produced labeling failed the checker (indicates a bug)."""


# -- parametrized search ---------------------------------------------------

def incidence_matrix(g: Multigraph) -> np.ndarray:
    m = np.zeros((g.num_vertices, g.num_edges), dtype=np.int64)
    for e, (u, v) in enumerate(g.edges):
        m[u, e] += 1
        m[v, e] += 1
    return m


def search_order(g: Multigraph) -> list[int]:
    """Edge order for the search: edges as met by a depth-first traversal.

    The echelon basis is taken with leads at the *last* edge of each
    generator's support, so a cycle's generator is fixed as soon as the
    traversal closes it.
    """
    seen_v = [False] * g.num_vertices
    seen_e = [False] * g.num_edges
    order: list[int] = []
    for root in g.vertices:
        if seen_v[root]:
            continue
        seen_v[root] = True
        stack = [root]
        while stack:
            u = stack.pop()
            for e in g.incident_edges(u):
                if not seen_e[e]:
                    seen_e[e] = True
                    order.append(e)
                    w = g.other(e, u)
                    if not seen_v[w]:
                        seen_v[w] = True
                        stack.append(w)
    return order


@dataclass
class Parametrization:
    """Echelon description of ``{x in A^E : N x = 0}`` for one graph.

    ``order`` lists edge ids by search position.  Variable ``v`` belongs to
    coordinate ``coord[v]`` and ranges over ``range(orders[v])``; its
    generator adds ``coef`` at each ``(position, coef)`` in ``entries[v]``.
    """

    group: GroupSpec
    order: list[int]
    coord: list[int]
    orders: list[int]
    entries: list[list[tuple[int, int]]]

    @property
    def num_vars(self) -> int:
        return len(self.coord)

    def forced_zero_positions(self) -> list[int]:
        touched = {p for ent in self.entries for p, _ in ent}
        return [p for p in range(len(self.order)) if p not in touched]

    def completion(self) -> list[list[int]]:
        """For each variable, the edge positions whose labels it finalizes."""
        last = {}
        for v, ent in enumerate(self.entries):
            for p, _ in ent:
                last[p] = v
        out: list[list[int]] = [[] for _ in self.entries]
        for p in sorted(last):
            out[last[p]].append(p)
        return out

    def labeling(self, values: Sequence[int]) -> Labeling:
        m = len(self.order)
        coords = [[0] * m for _ in self.group.moduli]
        for v, t in enumerate(values):
            c = self.coord[v]
            for p, coef in self.entries[v]:
                coords[c][p] += t * coef
        return Labeling(self.group, {
            self.order[p]: tuple(coords[c][p] for c in range(self.group.arity))
            for p in range(m)})


def parametrize(g: Multigraph, group: GroupSpec) -> Parametrization:
    order = search_order(g)
    m = len(order)
    inc = incidence_matrix(g)[:, order[::-1]] if m else np.zeros((g.num_vertices, 0), dtype=np.int64)
    per_var = []
    cache: dict[int, np.ndarray] = {}
    for c, n in enumerate(group.moduli):
        if n not in cache:
            cache[n] = kernel_basis(inc, n)
        for row in cache[n]:
            lead = lead_column(row)
            d = int(row[lead])
            ent = [(m - 1 - col, int(row[col])) for col in np.flatnonzero(row)]
            ent.sort()
            per_var.append((m - 1 - lead, c, n // d, ent))
    per_var.sort(key=lambda t: (t[0], t[1]))
    return Parametrization(group, order, [t[1] for t in per_var], [t[2] for t in per_var],
                           [t[3] for t in per_var])


def _value_lists(orders: Sequence[int], seed: int | None) -> list[list[int]]:
    rng = random.Random(seed) if seed is not None else None
    out = []
    for k in orders:
        vals = list(range(1, k)) + [0]
        if rng is not None:
            rng.shuffle(vals)
        out.append(vals)
    return out


def run_search(par: Parametrization, budget: int, seed: int | None = None,
               kernel: str | None = None) -> tuple[int, list[int], int]:
    """Flatten a parametrization and hand it to the search kernel."""
    nv = par.num_vars
    var_ptr = np.zeros(nv + 1, dtype=np.int64)
    ee, ec = [], []
    for v, ent in enumerate(par.entries):
        for p, coef in ent:
            ee.append(p)
            ec.append(coef)
        var_ptr[v + 1] = len(ee)
    checks = par.completion()
    check_ptr = np.zeros(nv + 1, dtype=np.int64)
    ce = []
    for v, lst in enumerate(checks):
        ce.extend(lst)
        check_ptr[v + 1] = len(ce)
    vals = _value_lists(par.orders, seed)
    value_ptr = np.zeros(nv + 1, dtype=np.int64)
    flat = []
    for v, lst in enumerate(vals):
        flat.extend(lst)
        value_ptr[v + 1] = len(flat)
    fn = _kernels.select(par.group.moduli, kernel)
    as_arr = lambda x: np.asarray(x, dtype=np.int64)  # noqa: E731
    return fn(nv, len(par.order), as_arr(par.group.moduli), as_arr(par.coord), var_ptr,
              as_arr(ee), as_arr(ec), check_ptr, as_arr(ce), value_ptr, as_arr(flat),
              int(budget))


def _structural_obstruction(g: Multigraph) -> str | None:
    from .spectra import bridge_deletion_obstruction

    for v in g.vertices:
        if g.degree(v) == 1:
            return f"degree-1 vertex {v}"
    if g.is_connected() and g.num_edges:
        found = bridge_deletion_obstruction(g)
        if found is not None:
            b, kind = found
            return f"deleting bridge {b} leaves a {kind} component"
    return None


def _solve_connected(g: Multigraph, group: GroupSpec, budget: int, seed: int | None,
                     kernel: str | None, oracle_cap: int) -> SolveResult:
    reason = _structural_obstruction(g)
    if reason is not None:
        return SolveResult(Status.UNSAT, reason=reason)
    par = parametrize(g, group)
    forced = par.forced_zero_positions()
    if forced:
        e = par.order[forced[0]]
        return SolveResult(Status.UNSAT, reason=f"edge {e} is zero in every solution of the weight equations")
    status, values, nodes = run_search(par, budget, seed, kernel)
    if status == _kernels.SAT:
        lab = par.labeling(values)
        if not check_zero_sum(g, lab):
            raise VerificationError("search produced an invalid labeling")
        return SolveResult(Status.SAT, lab, nodes=nodes)
    if status == _kernels.UNSAT:
        return SolveResult(Status.UNSAT, reason="parametrized search exhausted", nodes=nodes)
    if _oracle_size(g, group) <= oracle_cap:
        res = brute_force_oracle(g, group, cap=oracle_cap)
        res.nodes += nodes
        return res
    return SolveResult(Status.UNKNOWN, reason="budget exhausted", nodes=nodes)


def solve(g: Multigraph, group: GroupSpec, budget: int | None = None, *,
          seed: int | None = None, kernel: str | None = None,
          oracle_cap: int = DEFAULT_ORACLE_CAP) -> SolveResult:
    """Decide whether ``g`` is zero-sum ``group``-magic.

    Components are solved independently and their witnesses merged.  ``seed``
    shuffles value orders (to draw different witnesses); ``kernel`` forces
    the ``"python"`` or ``"compiled"`` backend.
    """
    if budget is None:
        budget = default_budget()
    merged: dict[int, GroupElem] = {}
    nodes = 0
    unknown = None
    for comp in g.components():
        h, _, emap = g.induced_subgraph(comp)
        if h.num_edges == 0:
            continue
        res = _solve_connected(h, group, max(budget - nodes, 0), seed, kernel, oracle_cap)
        nodes += res.nodes
        if res.status is Status.UNSAT:
            return SolveResult(Status.UNSAT, reason=_remap_reason(res.reason, emap, comp), nodes=nodes)
        if res.status is Status.UNKNOWN:
            unknown = res.reason
            continue
        for e, a in res.witness.assignment.items():
            merged[emap[e]] = a
    if unknown is not None:
        return SolveResult(Status.UNKNOWN, reason=unknown, nodes=nodes)
    lab = Labeling(group, merged)
    if not check_zero_sum(g, lab):
        raise VerificationError("merged witness failed verification")
    return SolveResult(Status.SAT, lab, nodes=nodes)


def _remap_reason(reason: str | None, emap: list[int], vmap: list[int]) -> str | None:
    if reason is None:
        return None
    words = reason.split()
    for i in range(len(words) - 1):
        if words[i] in ("edge", "bridge") and words[i + 1].isdigit():
            words[i + 1] = str(emap[int(words[i + 1])])
        elif words[i] == "vertex" and words[i + 1].isdigit():
            words[i + 1] = str(vmap[int(words[i + 1])])
    return " ".join(words)


# -- independent oracle ----------------------------------------------------

def _oracle_size(g: Multigraph, group: GroupSpec) -> int:
    return (group.order - 1) ** g.num_edges


def brute_force_oracle(g: Multigraph, group: GroupSpec,
                       cap: int = DEFAULT_ORACLE_CAP) -> SolveResult:
    """Enumerate every nowhere-zero labeling; never returns Unknown."""
    size = _oracle_size(g, group)
    if size > cap:
        raise GroupError(f"oracle would enumerate {size} labelings (cap {cap})")
    nonzero = list(group.enumerate_nonzero(cap=max(cap, group.order)))
    moduli = group.moduli
    inc = [g.incident_edges(v) for v in g.vertices]
    nodes = 0
    for combo in itertools.product(nonzero, repeat=g.num_edges):
        nodes += 1
        ok = True
        for edges in inc:
            for i, n in enumerate(moduli):
                if sum(combo[e][i] for e in edges) % n:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return SolveResult(Status.SAT, Labeling.from_list(group, combo), nodes=nodes)
    return SolveResult(Status.UNSAT, reason="exhaustive enumeration", nodes=nodes)
