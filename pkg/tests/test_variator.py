import random

from hypothesis import given, strategies as st

from eventify.fixtures import (FLIPPED, HEADINGS, LEFT, RIGHT, UNCHANGED, d2, d2x2, d3_compass,
                               lane_cyclic, lane_saturating, lane_variator, robot_on_fire_monoid,
                               trivial_monoid, z2_flip, z8_compass)
from eventify.randomgen import random_monoid
from eventify.variator import (Variator, associativity_violations, is_functional,
                               is_group_with_transitive_point, is_pairwise_unique,
                               product_variator, validate_monoid, validate_variator,
                               variator_from_monoid)

from conftest import functional_variators


def test_d2_is_well_formed_functional_and_unique():
    assert validate_variator(d2(), {"0", "1"}) == []
    assert is_functional(d2())
    assert is_pairwise_unique(d2(), {"0", "1"})


def test_unknown_observation_is_reported():
    v = Variator.of([("2", UNCHANGED, "0")])
    problems = validate_variator(v, {"0", "1"})
    assert len(problems) == 1 and "unknown observation" in problems[0]


def test_empty_variator_is_well_formed():
    assert validate_variator(Variator(frozenset(), frozenset()), {"0"}) == []


def test_functional_detection():
    assert not is_functional(Variator.of([("y", "d", "a"), ("y", "d", "b")]))


def test_compass_variator_is_not_pairwise_unique():
    assert not is_pairwise_unique(d3_compass(), HEADINGS)


def test_canonical_pair_variator_is_pairwise_unique():
    ys = ["a", "b", "c"]
    v = Variator.of((y, (y, z), z) for y in ys for z in ys)
    assert is_pairwise_unique(v, ys)


def test_lane_saturating_table_fails_associativity_first_at_left_left_right():
    m = lane_saturating()
    assert associativity_violations(m)[0] == (LEFT, LEFT, RIGHT)
    assert "(left, left, right)" in validate_monoid(m)[0]


def test_lane_cyclic_table_is_associative_but_action_incompatible():
    m = lane_cyclic()
    assert associativity_violations(m) == []
    assert any("compatibility" in p for p in validate_monoid(m))


def test_valid_monoids():
    assert validate_monoid(robot_on_fire_monoid()) == []
    assert validate_monoid(trivial_monoid()) == []
    assert validate_monoid(z2_flip()) == []
    assert validate_monoid(z8_compass()) == []


def test_group_with_transitive_point():
    assert is_group_with_transitive_point(z8_compass(), HEADINGS)
    assert not is_group_with_transitive_point(robot_on_fire_monoid(), {"0", "1"})
    assert not is_group_with_transitive_point(trivial_monoid(), {"0", "1"})


def test_robot_on_fire_variator_table():
    v = variator_from_monoid(robot_on_fire_monoid())
    assert v.triples == {("0", "☺", "0"), ("0", "☹", "1"), ("1", "☺", "1"), ("1", "☹", "1")}


def test_trivial_monoid_gives_identity_triples():
    assert variator_from_monoid(trivial_monoid()).triples == {("0", "e", "0"), ("1", "e", "1")}


def test_flip_monoid_gives_the_bit_change_table():
    assert variator_from_monoid(z2_flip()) == d2()


def test_lane_variator_clamps():
    v = lane_variator()
    assert v.apply[("2", LEFT)] == {"2"}
    assert v.apply[("0", RIGHT)] == {"0"}
    assert v.apply[("1", LEFT)] == {"2"}


def test_product_of_bit_variators():
    v = d2x2()
    assert v.differences == {(a, b) for a in (UNCHANGED, FLIPPED) for b in (UNCHANGED, FLIPPED)}
    assert (("0", "1"), (UNCHANGED, FLIPPED), ("0", "0")) in v.triples


def test_product_with_neutral_factor_is_isomorphic():
    one = Variator.of([("*", "=", "*")])
    p = product_variator(d2(), one)
    assert {(y[0], d[0], z[0]) for y, d, z in p.triples} == d2().triples
    assert len(p.triples) == len(d2().triples)


@given(functional_variators({"0", "1", "2"}), functional_variators({"a", "b"}))
def test_product_counts_and_functionality(v1, v2):
    p = product_variator(v1, v2)
    assert len(p.triples) == len(v1.triples) * len(v2.triples)
    assert is_functional(p)


@given(st.integers(0, 10_000))
def test_valid_monoids_give_functional_variators(seed):
    m = random_monoid(random.Random(seed), ["0", "1", "2"])
    assert validate_monoid(m) == []
    assert is_functional(variator_from_monoid(m))
