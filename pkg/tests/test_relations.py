import random

import pytest
from hypothesis import given, strategies as st

from eventify.fixtures import FLIPPED, UNCHANGED, d2, z2_flip
from eventify.randomgen import all_words, random_functional_variator, random_monoid
from eventify.relations import (Compose, Delta, Disaggregator, Identity, Integrator, Pump, Shave,
                                Shrink, is_finite_relation, relation_image, transducer_images)
from eventify.variator import Variator, variator_from_monoid

words = st.lists(st.sampled_from(["a", "b", "n"]), max_size=6).map(tuple)


def test_shrink_deletes_neutral_symbols():
    assert relation_image(Shrink({"n"}), "anb") == {("a", "b")}


def test_identity_image():
    assert relation_image(Identity(), "ab") == {("a", "b")}


def test_delta_keeps_first_symbol_then_differences():
    assert relation_image(Delta(d2()), "011") == {("0", FLIPPED, UNCHANGED)}
    assert relation_image(Delta(d2()), "") == {()}
    assert relation_image(Delta(d2()), "1") == {("1",)}


def test_delta_without_covering_change_has_no_image():
    assert relation_image(Delta(Variator.of([("0", "=", "0")])), "01") == set()


def test_shave_drops_first_symbol():
    assert relation_image(Shave(), "abc") == {("b", "c")}
    assert relation_image(Shave(2), "a") == set()
    with pytest.raises(ValueError):
        Shave(0)


def test_pump_never_inserts_in_front():
    images = relation_image(Pump({"n"}, 1), "ab")
    assert images == {("a", "b"), ("a", "n", "b"), ("a", "b", "n")}
    assert relation_image(Pump({"n"}), "") == {()}


def test_integrator_sums_changes():
    m = z2_flip()
    assert relation_image(Integrator(m), ["0", FLIPPED, FLIPPED, UNCHANGED]) == {("0", UNCHANGED)}
    assert relation_image(Integrator(m), ["0"]) == {("0",)}


def test_disaggregator_images_share_the_total():
    m = z2_flip()
    images = relation_image(Disaggregator(m, 4), ["1", FLIPPED])
    assert images == {("1", FLIPPED), ("1", FLIPPED, UNCHANGED), ("1", UNCHANGED, FLIPPED),
                      ("1", FLIPPED, UNCHANGED, UNCHANGED), ("1", UNCHANGED, FLIPPED, UNCHANGED),
                      ("1", UNCHANGED, UNCHANGED, FLIPPED), ("1", FLIPPED, FLIPPED, FLIPPED)}


def test_compose_applies_left_to_right():
    spec = Compose([Delta(d2()), Shrink({UNCHANGED})])
    assert relation_image(spec, "0110") == {("0", FLIPPED, FLIPPED)}
    with pytest.raises(ValueError):
        Compose([])


def test_finiteness():
    assert is_finite_relation(Compose([Delta(d2()), Shrink({UNCHANGED})]))
    assert not is_finite_relation(Compose([Delta(d2()), Pump({UNCHANGED})]))
    with pytest.raises(ValueError):
        transducer_images(Pump({"n"}), "a")


@given(words)
def test_pump_then_shrink_equals_shrink(s):
    for t in relation_image(Pump({"n"}), s):
        assert relation_image(Shrink({"n"}), t) == relation_image(Shrink({"n"}), s)


@given(words)
def test_pump_images_are_padded_sources(s):
    images = relation_image(Pump({"n"}), s)
    assert s in images
    for t in images:
        assert t[:1] == s[:1]
        it = iter(t)
        assert all(y in it for y in s)
        assert len(t) - len(s) <= 2


@given(st.integers(0, 10_000))
def test_transducer_matches_definitions_for_finite_relations(seed):
    rng = random.Random(seed)
    ys = ["0", "1", "2"]
    v = random_functional_variator(rng, ys)
    diffs = sorted(v.differences)
    specs = [Identity(), Delta(v), Shave(1), Shrink({"1"}),
             Compose([Delta(v), Shave(1)]),
             Compose([Delta(v), Shrink(diffs[:1])])]
    for s in all_words(ys, 4):
        for spec in specs:
            assert transducer_images(spec, s) == relation_image(spec, s), (spec, s)


@given(st.integers(0, 10_000))
def test_integrator_transducer_matches_definition(seed):
    rng = random.Random(seed)
    ys = ["0", "1"]
    m = random_monoid(rng, ys)
    spec = Compose([Delta(variator_from_monoid(m, ys)), Integrator(m)])
    for s in all_words(ys, 4):
        assert transducer_images(spec, s) == relation_image(spec, s)


@given(st.integers(0, 10_000))
def test_disaggregator_images_total_correctly(seed):
    rng = random.Random(seed)
    m = random_monoid(rng, ["0"])
    elems = sorted(m.elements)
    for ds in all_words(elems, 3):
        if not ds:
            continue
        for t in relation_image(Disaggregator(m), ("0",) + ds):
            assert t[0] == "0" and len(t) >= 2
            assert m.total(t[1:]) == m.total(ds)
