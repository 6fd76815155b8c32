import pytest
from hypothesis import given, settings, strategies as st

from conftest import BACKENDS, complete, cycle
from test_multigraph import multigraphs
from zsmagic.families import fixture_text
from zsmagic.groups import GroupError, GroupSpec
from zsmagic.multigraph import GraphError, Multigraph, disjoint_union
from zsmagic.solver import (DEFAULT_BUDGET, Labeling, LabelingError, Status, brute_force_oracle,
                            check_bridge_parity, check_zero_sum, default_budget, parametrize,
                            search_order, solve, weight)

Z4 = GroupSpec.parse("Z4")
SMALL_GROUPS = [GroupSpec.parse(s) for s in ("Z2", "Z3", "Z4", "Z2^2", "Z6")]


def g1_labels(fx):
    return Labeling.from_text(fixture_text("g1_z4", ".labels"), Z4)


def test_weight_examples(fx):
    z6 = GroupSpec.parse("Z6")
    c3 = complete(3)
    lab = Labeling.from_list(z6, [(3,)] * 3)
    assert all(weight(c3, lab, v) == (0,) for v in c3.vertices)
    g1 = fx("G1")
    assert all(weight(g1, g1_labels(fx), v) == (0,) for v in g1.vertices)
    edge = Multigraph(2, [(0, 1)])
    assert weight(edge, Labeling.from_list(z6, [(5,)]), 0) == (5,)


def test_check_examples(fx):
    g1 = fx("G1")
    lab = g1_labels(fx)
    assert check_zero_sum(g1, lab)
    broken = dict(lab.assignment)
    broken[0] = (0,)
    rep = check_zero_sum(g1, Labeling(Z4, broken))
    assert not rep and rep.zero_edges == [0] and rep.bad_vertices
    assert check_zero_sum(cycle(4), Labeling.from_list(GroupSpec.parse("Z2"), [(1,)] * 4))


def test_check_reports_missing_and_extra_edges():
    g = cycle(4)
    z2 = GroupSpec.parse("Z2")
    rep = check_zero_sum(g, Labeling(z2, {0: (1,), 1: (1,), 2: (1,)}))
    assert not rep and rep.missing_edges == [3]
    rep = check_zero_sum(g, Labeling(z2, {e: (1,) for e in range(5)}))
    assert not rep and rep.missing_edges == [4]


def test_bridge_parity_examples(fx):
    g2 = fx("G2")
    res = solve(g2, GroupSpec.power(4, 2))
    assert check_bridge_parity(g2, res.witness)
    g0 = fx("G0")
    lab = dict(solve(g0, Z4).witness.assignment)
    from zsmagic.structure import find_bridges

    lab[find_bridges(g0)[0]] = (1,)
    assert not check_bridge_parity(g0, Labeling(Z4, lab))
    assert check_bridge_parity(fx("K4"), Labeling.from_list(Z4, [(1,)] * 6))
    with pytest.raises(GroupError):
        check_bridge_parity(fx("K4"), Labeling.from_list(GroupSpec.parse("Z3"), [(1,)] * 6))
    with pytest.raises(GraphError):
        check_bridge_parity(cycle(4), Labeling.from_list(Z4, [(1,)] * 4))


@pytest.mark.parametrize("name, group, status", [
    ("G2", "Z4", Status.UNSAT), ("Petersen", "Z2^2", Status.UNSAT),
    ("G2", "Z4^2", Status.SAT), ("Petersen", "Z2^3", Status.SAT),
    ("K4", "Z2^2", Status.SAT), ("K4", "Z2", Status.UNSAT), ("G0", "Z4", Status.SAT),
])
def test_solve_fixture_examples(fx, kernel, name, group, status):
    res = solve(fx(name), GroupSpec.parse(group), kernel=kernel)
    assert res.status is status
    if res.sat:
        assert check_zero_sum(fx(name), res.witness)


def test_g2_z4_unsat_by_search(fx):
    res = solve(fx("G2"), Z4)
    assert res.unsat and res.reason == "parametrized search exhausted" and res.nodes > 0


def test_small_examples():
    assert solve(cycle(4), GroupSpec.parse("Z2")).sat
    assert brute_force_oracle(complete(3), GroupSpec.parse("Z3")).unsat
    assert solve(complete(3), GroupSpec.parse("Z3")).unsat
    for group in SMALL_GROUPS:
        assert brute_force_oracle(Multigraph(2, [(0, 1)]), group).unsat
    res = brute_force_oracle(cycle(2), GroupSpec.parse("Z2"))
    assert res.sat and res.witness.to_json() == [[1], [1]]


def test_structural_shortcuts(fx):
    res = solve(Multigraph(3, [(0, 1), (1, 2), (1, 2)]), Z4)
    assert res.unsat and "degree-1" in res.reason
    res = solve(fx("G2"), GroupSpec.parse("Z2^2"))
    assert res.unsat and res.nodes == 0


def test_disconnected_graphs_merge_witnesses():
    g = disjoint_union(cycle(4), complete(4))
    res = solve(g, GroupSpec.parse("Z2^2"))
    assert res.sat and check_zero_sum(g, res.witness)
    res = solve(disjoint_union(cycle(4), Multigraph(3, [(0, 1), (1, 2), (1, 2)])), Z4)
    assert res.unsat and "vertex 4" in res.reason


def test_edgeless_graph_is_vacuously_magic():
    assert solve(Multigraph(3), Z4).sat


def test_budget_exhaustion_is_unknown(fx):
    res = solve(fx("Petersen"), GroupSpec.parse("Z2^2"), budget=5, oracle_cap=0)
    assert res.status is Status.UNKNOWN and res.nodes <= 6


def test_oracle_fallback_decides_small_unknowns(fx):
    res = solve(fx("K4"), GroupSpec.parse("Z2"), budget=0)
    assert res.unsat


def test_oracle_cap(fx):
    with pytest.raises(GroupError):
        brute_force_oracle(fx("Petersen"), Z4, cap=1000)


def test_env_budget(monkeypatch):
    monkeypatch.delenv("ZSMAGIC_BUDGET", raising=False)
    assert default_budget() == DEFAULT_BUDGET
    monkeypatch.setenv("ZSMAGIC_BUDGET", "1234")
    assert default_budget() == 1234


def test_kernels_agree_exactly(fx):
    for name, group in [("G2", "Z4"), ("Petersen", "Z2^2"), ("G4", "Z2xZ4"), ("G3", "Z4^2")]:
        g, spec = fx(name), GroupSpec.parse(group)
        a = solve(g, spec, kernel="python", seed=3)
        b = solve(g, spec, kernel="compiled", seed=3) if "compiled" in BACKENDS else a
        assert (a.status, a.nodes) == (b.status, b.nodes)
        assert (a.witness is None) == (b.witness is None)
        if a.witness is not None:
            assert a.witness.assignment == b.witness.assignment


def test_seeds_give_valid_witnesses(fx):
    g = fx("G0")
    seen = set()
    for seed in range(10):
        res = solve(g, GroupSpec.parse("Z6"), seed=seed)
        assert res.sat and check_zero_sum(g, res.witness)
        seen.add(tuple(res.witness.assignment.values()))
    assert len(seen) > 1


def test_search_order_is_a_permutation(fx):
    for name in ("G1", "Petersen"):
        g = fx(name)
        assert sorted(search_order(g)) == list(range(g.num_edges))


def test_forced_zero_edges_are_bridges_in_z2(fx):
    g = fx("G0")
    par = parametrize(g, GroupSpec.parse("Z2"))
    from zsmagic.structure import find_bridges

    assert sorted(par.order[p] for p in par.forced_zero_positions()) == find_bridges(g)


@settings(max_examples=80)
@given(multigraphs(max_n=5, max_m=7), st.sampled_from(SMALL_GROUPS[:4]))
def test_solver_matches_oracle(g, group):
    want = brute_force_oracle(g, group, cap=10**6).status
    for kernel in BACKENDS:
        res = solve(g, group, kernel=kernel, oracle_cap=0)
        assert res.status is want
        if res.sat:
            assert check_zero_sum(g, res.witness)


def test_labels_text_round_trip(fx):
    lab = solve(fx("G4"), GroupSpec.parse("Z2xZ4")).witness
    back = Labeling.from_text(lab.to_text(), lab.group)
    assert back == lab and back.to_text() == lab.to_text()


@pytest.mark.parametrize("text", ["e 0 1 2\n", "x 0 1\n", "e 0 a\n", "e 0 1\ne 0 2\n"])
def test_labels_parse_errors(text):
    with pytest.raises(LabelingError):
        Labeling.from_text(text, Z4)


def test_labels_reduce_residues():
    lab = Labeling.from_list(Z4, [(5,), (-1,)])
    assert lab.to_json() == [[1], [3]]
