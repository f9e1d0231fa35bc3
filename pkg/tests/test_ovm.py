import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from eventify.device import NoSolution
from eventify.fixtures import f_wall
from eventify.ovm import (Graph, complete_graph, exact_min_cardinality,
                          graph_3colorable_bruteforce, minimize_variator, occurring_pairs,
                          random_graph, reduce_3coloring, triangle)
from eventify.simulation import brute_force_derivative_exists
from eventify.transforms import delta_transform
from eventify.variator import Variator

from conftest import devices


def test_triangle_reduction_shape():
    f = reduce_3coloring(triangle())
    assert len(f.states) == 1 + 3 * 5
    assert f.observations == {"a", "b", "c", "x"}


def test_single_edge_reduction():
    f = reduce_3coloring(Graph.of([("p", "q")]))
    assert f.states == {"v0", "h1", "m1_1", "m2_1", "t1_1", "t2_1"}
    assert f.output_map["m1_1"] == {"1"} and f.output_map["m2_1"] == {"2"}


def test_separator_avoids_vertex_names():
    f = reduce_3coloring(Graph.of([("x", "y")]))
    assert "x'" in f.observations


def test_edgeless_graph_is_rejected():
    with pytest.raises(ValueError):
        reduce_3coloring(Graph.of([], ["a"]))


def test_triangle_needs_three_differences():
    f = reduce_3coloring(triangle())
    v = minimize_variator(f, 3)
    assert v is not None and len(v.differences) <= 3
    assert all(len(ds) == 1 for ds in v.changes.values())
    delta_transform(f, v)
    assert minimize_variator(f, 2) is None


def test_four_clique_has_no_three_difference_derivative():
    assert minimize_variator(reduce_3coloring(complete_graph(4)), 3) is None
    assert not graph_3colorable_bruteforce(complete_graph(4))


@pytest.mark.parametrize("seed", range(12))
def test_reduction_tracks_colourability(seed):
    g = random_graph(6, 0.6, random.Random(seed))
    if not g.edges:
        return
    found = minimize_variator(reduce_3coloring(g), 3) is not None
    assert found == graph_3colorable_bruteforce(g)


def test_brute_force_colouring_is_limited():
    with pytest.raises(ValueError):
        graph_3colorable_bruteforce(complete_graph(13))


def test_wall_needs_two_differences():
    assert exact_min_cardinality(f_wall(), 4) == 2
    assert minimize_variator(f_wall(), 1) is None


def test_cap_too_small_gives_none():
    assert exact_min_cardinality(reduce_3coloring(triangle()), 2) is None


@given(devices(max_states=4, max_observations=3))
def test_one_difference_per_pair_always_suffices(f):
    n = max(1, len(occurring_pairs(f)))
    assert minimize_variator(f, n) is not None


@given(devices(max_states=4, max_observations=3), st.integers(1, 3))
def test_more_differences_never_hurt(f, n):
    if minimize_variator(f, n) is not None:
        assert minimize_variator(f, n + 1) is not None


def _exhaustive_min(f, cap):
    """Try every labelling of occurring pairs, judged by the existence oracle."""
    pairs = occurring_pairs(f)
    if not pairs:
        return 1
    for n in range(1, cap + 1):
        for labels in product(range(n), repeat=len(pairs)):
            v = Variator.of((a, f"e{k}", b) for (a, b), k in zip(pairs, labels))
            if brute_force_derivative_exists(f, v):
                return n
    return None


@settings(max_examples=30)
@given(devices(max_states=3, max_observations=3))
def test_search_matches_exhaustive_enumeration(f):
    if len(occurring_pairs(f)) > 6:
        return
    assert exact_min_cardinality(f, 3) == _exhaustive_min(f, 3)


def test_found_variators_really_work():
    for seed in range(10):
        g = random_graph(5, 0.5, random.Random(seed))
        if not g.edges:
            continue
        f = reduce_3coloring(g)
        v = minimize_variator(f, 3)
        if v is not None:
            try:
                delta_transform(f, v)
            except NoSolution:  # pragma: no cover
                pytest.fail("minimizer returned a variator without a derivative")
