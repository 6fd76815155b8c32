import itertools
import random

import pytest
from hypothesis import given, settings

import graphgen
from conftest import complete, cycle, k33
from test_multigraph import multigraphs
from zsmagic import families
from zsmagic.factors import (ColoringBudgetExceeded, Matching, TwoFactor, chromatic_index_cubic,
                             one_factor_containing, perfect_matching, perfect_matching_avoiding,
                             perfect_matching_bruteforce, three_edge_coloring,
                             two_factor_containing)
from zsmagic.multigraph import GraphError, Multigraph

CUBIC_FIXTURES = ["G0", "G1", "G2", "G3", "G4", "G5", "PeStar", "Petersen", "K4"]


def random_cubic(rng, n):
    return graphgen.pairing_model([3] * n, rng)


def coloring_by_enumeration(g):
    """3-edge-colorable iff some assignment in {0,1,2}^E is proper (tiny graphs)."""
    for colors in itertools.product(range(3), repeat=g.num_edges):
        if all(len({colors[e] for e in g.incident_edges(v)}) == g.degree(v) for v in g.vertices):
            return True
    return False


def test_matching_examples(fx):
    assert perfect_matching(fx("Petersen")).is_perfect(fx("Petersen"))
    assert perfect_matching(families.m1(fx("K4"))) is None
    assert perfect_matching(complete(3)) is None


def test_avoiding_examples(fx):
    k4 = fx("K4")
    m = perfect_matching_avoiding(k4, [0])
    assert m is not None and 0 not in m.edges and m.is_perfect(k4)
    assert perfect_matching_avoiding(cycle(4), [0, 1]) is None


@pytest.mark.parametrize("name", ["Petersen", "PeStar", "K4"])
def test_avoid_two_edges_in_bridgeless_cubic(fx, name):
    g = fx(name)
    for pair in itertools.combinations(range(g.num_edges), 2):
        m = perfect_matching_avoiding(g, pair)
        assert m is not None and not (m.edges & set(pair)) and m.is_perfect(g)


@pytest.mark.parametrize("name", ["Petersen", "PeStar", "K4"])
def test_two_factor_through_pairs(fx, name):
    g = fx(name)
    for e in range(g.num_edges):
        tf = two_factor_containing(g, [e])
        assert tf.is_valid(g) and e in tf.edges
    for pair in itertools.combinations(range(g.num_edges), 2):
        tf = two_factor_containing(g, pair)
        assert tf is not None and tf.is_valid(g) and set(pair) <= tf.edges


def test_two_factor_of_k4_is_a_four_cycle(fx):
    k4 = fx("K4")
    tf = two_factor_containing(k4, [0])
    cycles = tf.cycles(k4)
    assert len(cycles) == 1 and len(cycles[0]) == 4 and 0 in cycles[0]


@pytest.mark.parametrize("name", ["Petersen", "PeStar", "K4"])
def test_one_factor_through_every_edge(fx, name):
    g = fx(name)
    for e in range(g.num_edges):
        m = one_factor_containing(g, e)
        assert m is not None and e in m.edges and m.is_perfect(g)


def test_one_factor_on_g2_absent(fx):
    g = fx("G2")
    from zsmagic.structure import find_bridges

    assert one_factor_containing(g, find_bridges(g)[0]) is None


@pytest.mark.parametrize("name", CUBIC_FIXTURES)
def test_matching_complement_is_two_factor(fx, name):
    g = fx(name)
    m = perfect_matching(g)
    if m is None:
        assert perfect_matching_bruteforce(g) is None
        return
    tf = TwoFactor(frozenset(range(g.num_edges)) - m.edges)
    assert tf.is_valid(g)
    assert sorted(e for c in tf.cycles(g) for e in c) == sorted(tf.edges)


@settings(max_examples=80)
@given(multigraphs(max_n=8, max_m=14))
def test_matching_matches_bruteforce(g):
    fast = perfect_matching(g)
    slow = perfect_matching_bruteforce(g)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert fast.is_perfect(g) and slow.is_perfect(g)


def test_matching_on_random_cubic_graphs_matches_bruteforce():
    rng = random.Random(5)
    for _ in range(30):
        g = random_cubic(rng, rng.randrange(4, 17, 2))
        assert (perfect_matching(g) is None) == (perfect_matching_bruteforce(g) is None)


def test_coloring_examples(fx):
    col = three_edge_coloring(fx("K4"))
    assert col is not None and col.is_valid(fx("K4"))
    assert three_edge_coloring(fx("Petersen")) is None
    assert three_edge_coloring(fx("PeStar")) is None
    assert chromatic_index_cubic(k33()) == 3


def test_coloring_classes_are_perfect_matchings(fx):
    for base in (fx("K4"), k33()):
        col = three_edge_coloring(base)
        for cls in col.classes:
            assert Matching(cls).is_perfect(base)
        assert len(col.color_of()) == base.num_edges


def test_coloring_matches_enumeration_on_small_cubic():
    rng = random.Random(9)
    for _ in range(25):
        g = random_cubic(rng, rng.choice([4, 6, 8]))
        got = three_edge_coloring(g)
        assert (got is not None) == coloring_by_enumeration(g)
        if got is not None:
            assert got.is_valid(g)


@pytest.mark.parametrize("name", ["G0", "G2", "G4"])
def test_bridged_cubic_graphs_are_class_two(fx, name):
    assert three_edge_coloring(fx(name)) is None


def test_coloring_budget(fx):
    with pytest.raises(ColoringBudgetExceeded):
        three_edge_coloring(fx("Petersen"), budget=3)


def test_cubic_preconditions():
    with pytest.raises(GraphError):
        three_edge_coloring(cycle(4))
    with pytest.raises(GraphError):
        two_factor_containing(cycle(4), [])
    with pytest.raises(GraphError):
        one_factor_containing(Multigraph(2, [(0, 1)]), 0)


def test_parallel_edges_keep_their_ids():
    theta = Multigraph(2, [(0, 1), (0, 1), (0, 1)])
    assert perfect_matching(theta).edges == frozenset({0})
    assert perfect_matching(theta, avoid=[0]).edges == frozenset({1})
    col = three_edge_coloring(theta)
    assert sorted(len(c) for c in col.classes) == [1, 1, 1]
