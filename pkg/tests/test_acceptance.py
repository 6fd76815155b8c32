"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line and records it for the summary printed at
the end of the pytest run.
"""

import functools
import json
import random
import time

import pytest

import graphgen
from conftest import ACCEPTANCE_RESULTS, BACKENDS
from zsmagic import constructions as C
from zsmagic import families as F
from zsmagic import spectra as S
from zsmagic import structure
from zsmagic.cli import run
from zsmagic.factors import perfect_matching, perfect_matching_bruteforce, three_edge_coloring
from zsmagic.groups import GroupSpec
from zsmagic.solver import (DEFAULT_BUDGET, Labeling, Status, brute_force_oracle, check_bridge_parity,
                            check_zero_sum, solve)
from zsmagic.structure import find_bridges, threading, threading_exhaustive, validate_threading

Z4 = GroupSpec.parse("Z4")
BRIDGED_CUBIC = ["G0", "G1", "G2", "G3", "G4", "G5", "M1K4", "M1PeStar"]


def graph(name):
    if name.startswith("M1"):
        return F.m1(F.fixture_graph(name[2:]))
    if name.startswith("M2"):
        return F.m2(F.fixture_graph(name[2:]))
    return F.fixture_graph(name)


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def test(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE_RESULTS[n] = ("FAIL", title)
                print(f"criterion {n}: FAIL  {title}")
                raise
            ACCEPTANCE_RESULTS[n] = ("PASS", title)
            print(f"criterion {n}: PASS  {title}")
        return test
    return wrap


@criterion(1, "G1 labeling checks over Z4")
def test_criterion_01_g1_labeling():
    lab = Labeling.from_text(F.fixture_text("g1_z4", ".labels"), Z4)
    assert check_zero_sum(graph("G1"), lab).valid


@criterion(2, "G2 over Z4 is unsat by exhausted parametrized search")
def test_criterion_02_g2_z4_unsat():
    for kernel in BACKENDS:
        res = solve(graph("G2"), Z4, budget=DEFAULT_BUDGET, kernel=kernel, oracle_cap=0)
        assert res.status is Status.UNSAT
        assert res.reason == "parametrized search exhausted" and 0 < res.nodes <= DEFAULT_BUDGET


@criterion(3, "ppp labelings verify; zeta_4(K4) = 1 and zeta_4(G2) = 2")
def test_criterion_03_ppp_and_zeta4():
    for name in ["G2", "G3", "G4", "G5", "M1K4", "M1PeStar"]:
        g = graph(name)
        lab = C.construct_ppp(g)
        assert lab.group == GroupSpec.parse("Z4^2") and check_zero_sum(g, lab)
    for name in ["Petersen", "K4", "G0", "G1"]:
        g = graph(name)
        lab = C.construct_ppp(g)
        assert lab.group == Z4 and check_zero_sum(g, lab)
    for name, value in [("K4", 1), ("G2", 2)]:
        g = graph(name)
        rep = S.zeta(g, 2)
        assert rep.kind == "exact" and rep.value == value
        assert check_zero_sum(g, rep.witness)
        assert solve(g, GroupSpec.power(4, value)).sat
        if value > 1:
            assert solve(g, GroupSpec.power(4, value - 1), oracle_cap=0).unsat


@criterion(4, "200 witnesses over even groups have even bridge labels")
def test_criterion_04_bridge_parity():
    groups = [GroupSpec.parse(s) for s in ("Z4", "Z4^2", "Z2xZ4", "Z8", "Z2xZ8", "Z4xZ8")]
    rng = random.Random(4)
    witnesses = violations = 0
    attempts = 0
    while witnesses < 200:
        attempts += 1
        assert attempts < 2000, "not enough satisfiable instances"
        name = rng.choice(BRIDGED_CUBIC[:6])
        group = rng.choice(groups)
        g = graph(name)
        res = solve(g, group, seed=rng.randrange(10**6))
        if not res.sat:
            continue
        assert check_zero_sum(g, res.witness)
        witnesses += 1
        violations += not check_bridge_parity(g, res.witness)
    assert violations == 0


@criterion(5, "Z2^2 status matches 3-edge-colorability on cubic fixtures")
def test_criterion_05_klein_vs_coloring():
    names = ["K4", "Petersen", "PeStar", "G0", "G1", "G2", "G3", "G4", "G5"]
    checked = set()
    for name in names:
        g = graph(name)
        assert g.is_cubic() and g.num_edges <= 40
        res = solve(g, GroupSpec.parse("Z2^2"), oracle_cap=0)
        assert res.status is not Status.UNKNOWN
        assert res.sat == (three_edge_coloring(g) is not None), name
        checked.add((name, res.status))
    assert ("Petersen", Status.UNSAT) in checked and ("K4", Status.SAT) in checked


@criterion(6, "zim of cubic fixtures, 1-factors confirmed by brute force")
def test_criterion_06_zim():
    cases = {"K4": (2,), "Petersen": (2,), "G0": (2,),
             "G2": (2, 4), "G3": (2, 4), "G4": (2, 4), "G5": (2, 4), "M1K4": (2, 4)}
    for name, excluded in cases.items():
        g = graph(name)
        assert S.zim_cubic(g).excluded == excluded, name
        has_pm = perfect_matching(g) is not None
        assert has_pm == (excluded == (2,))
        if g.num_vertices <= 16:
            assert (perfect_matching_bruteforce(g) is not None) == has_pm, name


@criterion(7, "zzz verifies on G4 and M1(K4); www blocks G2 and G3 with exit 1")
def test_criterion_07_zzz(tmp_path, capsys):
    for name in ["G4", "M1K4"]:
        g = graph(name)
        lab = C.construct_zzz(g)
        assert lab.group == GroupSpec.parse("Z2^3xZ4") and check_zero_sum(g, lab)
    for name in ["G2", "G3"]:
        g = graph(name)
        assert S.www_obstruction(g) is not None
        with pytest.raises(C.ConstructionError):
            C.construct_zzz(g)
        path = tmp_path / f"{name}.edges"
        path.write_text(g.to_text())
        assert run(["construct", "--graph", str(path), "--theorem", "zzz"]) == 1
        assert "error" in json.loads(capsys.readouterr().out)


@criterion(8, "fff verifies on M2(K4); tttx fires on M2(Petersen)")
def test_criterion_08_fff_and_tttx():
    start = time.perf_counter()
    k4 = graph("K4")
    g = F.m2(k4)
    assert g.num_vertices == 52
    lab = C.construct_fff(k4)
    assert lab.group == GroupSpec.parse("Z2xZ4") and check_zero_sum(g, lab)
    big = graph("M2Petersen")
    assert big.num_vertices == 130
    assert S.tttx_obstruction(big) is not None
    assert time.perf_counter() - start < 120


@criterion(9, "solver agrees with brute force on all multigraphs with <= 6 edges")
def test_criterion_09_oracle_equivalence():
    graphs = graphgen.connected_multigraphs(6)
    assert len(graphs) == 156
    disagreements = []
    for g in graphs:
        for spec in ("Z2", "Z3", "Z4", "Z2^2"):
            group = GroupSpec.parse(spec)
            want = brute_force_oracle(g, group).status
            for kernel in BACKENDS:
                got = solve(g, group, kernel=kernel, oracle_cap=0)
                if got.status is not want or (got.sat and not check_zero_sum(g, got.witness)):
                    disagreements.append((g.edges, spec, kernel))
    assert disagreements == []


@criterion(10, "threading valid on 100 random subcubic graphs")
def test_criterion_10_threading(monkeypatch):
    # turn off the exhaustive fallback so the path-growing method is what gets tested
    monkeypatch.setattr(structure, "EXHAUSTIVE_THREADING_EDGES", -1)
    rng = random.Random(10)
    small = 0
    for _ in range(100):
        g = graphgen.random_subcubic(rng, max_vertices=30)
        th = threading(g)
        assert validate_threading(g, th) == []
        if g.num_edges <= 24:
            small += 1
            assert threading_exhaustive(g) is not None
    assert small > 0


@criterion(11, "zeta_4 upper bound <= min(6, 3+|B|) with a verified witness")
def test_criterion_11_zeta_bounds():
    rng = random.Random(11)
    witnessed = 0
    for i in range(20):
        g = graphgen.random_bridged_regular(3 if i % 2 else 5, rng)
        nb = len(find_bridges(g))
        rep = S.zeta(g, 2, budget=200_000)
        assert rep.kind != "infinite"
        assert rep.theorem_bound <= min(6, 3 + nb)
        assert rep.lo <= rep.hi <= rep.theorem_bound
        if rep.witness is not None:
            witnessed += 1
            assert rep.witness.group == GroupSpec.power(4, rep.hi)
            assert check_zero_sum(g, rep.witness)
    assert witnessed == 20
