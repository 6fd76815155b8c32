"""Martini glasses, the M_1 / M_2 families and the named fixture graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from .factors import chromatic_index_cubic, perfect_matching
from .multigraph import GraphError, Multigraph, MultigraphBuilder
from .structure import StructureError, find_bridges, is_two_edge_connected, subdivision


class FixtureError(GraphError):
    pass


def martini() -> Multigraph:
    """Triangle ``abc`` with ``ab`` doubled and a pendant stem ``cd``."""
    return Multigraph(4, [(0, 1), (0, 1), (0, 2), (1, 2), (2, 3)])


@dataclass(frozen=True)
class MartiniGlass:
    """Where one martini copy sits inside a larger graph.

    ``stem`` is the identified vertex; edges are ``ab``, the parallel
    ``ab'``, ``ac``, ``bc`` and the bridge ``c-stem``.
    """

    stem: int
    a: int
    b: int
    c: int
    ab: int
    ab2: int
    ac: int
    bc: int
    bridge: int

    @property
    def edges(self) -> tuple[int, int, int, int, int]:
        return self.ab, self.ab2, self.ac, self.bc, self.bridge


def _add_martini(b: MultigraphBuilder, stem: int) -> MartiniGlass:
    x, y, z = b.add_vertices(3)
    ab = b.add_edge(x, y)
    ab2 = b.add_edge(x, y)
    ac = b.add_edge(x, z)
    bc = b.add_edge(y, z)
    br = b.add_edge(z, stem)
    return MartiniGlass(stem, x, y, z, ab, ab2, ac, bc, br)


def attach_martinis_with_glasses(g: Multigraph, at: Sequence[int]) -> tuple[Multigraph, list[MartiniGlass]]:
    if len(set(at)) != len(at):
        raise GraphError("attach_martinis needs distinct vertices")
    for v in at:
        if not 0 <= v < g.num_vertices:
            raise GraphError(f"vertex {v} out of range")
    b = MultigraphBuilder(g.num_vertices)
    for u, v in g.edges:
        b.add_edge(u, v)
    glasses = [_add_martini(b, v) for v in at]
    return b.build(), glasses


def attach_martinis(g: Multigraph, at: Sequence[int]) -> Multigraph:
    """Identify the stem of a fresh martini glass with each vertex in ``at``."""
    return attach_martinis_with_glasses(g, at)[0]


@dataclass
class MartiniFamilyMember:
    """``M_m(G)`` with bookkeeping.

    ``paths[e]`` is the edge sequence replacing base edge ``e``;
    ``glasses[e]`` the martini copies hanging off its inner vertices, in
    path order.  Base vertices keep their ids.
    """

    base: Multigraph
    m: int
    graph: Multigraph
    paths: list[list[int]]
    glasses: list[list[MartiniGlass]] = field(default_factory=list)

    @property
    def bridges(self) -> list[int]:
        return [gl.bridge for row in self.glasses for gl in row]


def _require_base(g: Multigraph, what: str) -> None:
    if not g.is_cubic():
        raise StructureError(f"{what} needs a cubic base graph")
    if not is_two_edge_connected(g):
        raise StructureError(f"{what} needs a 2-edge-connected base graph")


def martini_family(g: Multigraph, m: int) -> MartiniFamilyMember:
    """Subdivide every edge ``m`` times and hang a martini on each new vertex."""
    _require_base(g, f"M_{m}")
    sub = subdivision(g, m)
    inner = [v for row in sub.inner for v in row]
    graph, flat = attach_martinis_with_glasses(sub.graph, inner)
    glasses = [flat[i * m:(i + 1) * m] for i in range(g.num_edges)]
    return MartiniFamilyMember(g, m, graph, sub.paths, glasses)


def m1(g: Multigraph) -> Multigraph:
    return martini_family(g, 1).graph


def m2(g: Multigraph) -> Multigraph:
    return martini_family(g, 2).graph


# -- fixtures ------------------------------------------------------------

@dataclass(frozen=True)
class Expected:
    order: int
    size: int
    bridges: int
    has_one_factor: bool
    chromatic_index: int | None   # cubic graphs only


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Multigraph
    expected: Expected


EXPECTED: dict[str, Expected] = {
    "G0": Expected(12, 18, 3, True, 4),
    "G1": Expected(18, 27, 3, True, 4),
    "G2": Expected(16, 24, 3, False, 4),
    "G3": Expected(14, 21, 3, False, 4),
    "G4": Expected(18, 27, 4, False, 4),
    "G5": Expected(16, 24, 3, False, 4),
    "PeStar": Expected(12, 18, 0, True, 4),
    "Petersen": Expected(10, 15, 0, True, 4),
    "K4": Expected(4, 6, 0, True, 3),
    "K23": Expected(5, 6, 0, False, None),
}

FIXTURE_NAMES = tuple(EXPECTED)


def fixture_text(name: str, suffix: str = ".edges") -> str:
    return resources.files(__package__).joinpath("fixtures", name.lower() + suffix).read_text()


def observed(g: Multigraph) -> Expected:
    return Expected(
        g.num_vertices, g.num_edges, len(find_bridges(g)),
        perfect_matching(g) is not None,
        chromatic_index_cubic(g) if g.is_cubic() else None)


def fixture(name: str) -> Fixture:
    """Load a named graph and check it against its expected record."""
    if name not in EXPECTED:
        raise FixtureError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    g = Multigraph.from_text(fixture_text(name))
    got = observed(g)
    if got != EXPECTED[name]:
        raise FixtureError(f"fixture {name} does not match its record: {got} != {EXPECTED[name]}")
    return Fixture(name, g, EXPECTED[name])


def fixture_graph(name: str) -> Multigraph:
    return fixture(name).graph
