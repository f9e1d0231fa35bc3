from itertools import product

import pytest
from hypothesis import given

from eventify.device import Device, NoSolution, is_deterministic, language_contains, outputs_of
from eventify.fixtures import (FLIPPED, UNCHANGED, f_wall, robot_on_fire, robot_on_fire_monoid,
                               stuck_counter, trivial_monoid, z2_flip)
from eventify.monoid_transforms import (ROOT, block_name, branch_name, disaggregator,
                                        eventify_pipeline, monoid_integrator)
from eventify.relations import Compose, Delta, Disaggregator, Integrator, Pump
from eventify.simulation import check_output_simulation, simulatable
from eventify.variator import variator_from_monoid

from conftest import device_and_monoid, eventify_checks


def integrator_spec(f, m):
    return Compose([Delta(variator_from_monoid(m, f.observations)), Integrator(m)])


def test_wall_integrator_has_three_layers():
    g = monoid_integrator(f_wall(), z2_flip()).device
    assert g.states == {ROOT, "y:0", "y:1", "y:0|⊥", "y:0|⊤", "y:1|⊥", "y:1|⊤"}
    assert is_deterministic(g)
    assert outputs_of(g, ["0", FLIPPED]) == {"azure"}
    assert outputs_of(g, ["1", UNCHANGED]) == {"azure"}
    assert not language_contains(g, ["0", FLIPPED, FLIPPED])
    assert check_output_simulation(g, f_wall(), integrator_spec(f_wall(), z2_flip()), 6)


def test_robot_on_fire_integrator_outputs():
    g = monoid_integrator(robot_on_fire(), robot_on_fire_monoid()).device
    assert g.output_map[block_name("0", "☹")] == {"alarm"}
    assert g.output_map[block_name("0", "☺")] == {"ok"}
    assert g.output_map[branch_name("1")] == {"alarm"}
    assert all(g.output_map[block_name("1", d)] == {"alarm"} for d in ("☺", "☹"))


def test_integrator_propagates_derivative_failure():
    with pytest.raises(NoSolution) as info:
        monoid_integrator(f_wall(), trivial_monoid())
    assert info.value.reason == "uncovered-change"


@given(device_and_monoid())
def test_integrator_is_sound(pair):
    f, m = pair
    try:
        g = monoid_integrator(f, m).device
    except NoSolution:
        return
    assert is_deterministic(g)
    assert check_output_simulation(g, f, integrator_spec(f, m), 5)


@given(device_and_monoid())
def test_integrator_agrees_with_oracle(pair):
    f, m = pair
    try:
        monoid_integrator(f, m)
        ok = True
    except NoSolution:
        ok = False
    assert ok == simulatable(f, integrator_spec(f, m)).exists


def test_trivial_monoid_disaggregator_is_a_self_loop():
    f = stuck_counter()
    m = trivial_monoid(("a",))
    d = disaggregator(monoid_integrator(f, m).device, m)
    assert d.transitions[(block_name("a", "e"), block_name("a", "e"))] == {"e"}
    assert d.states == {ROOT, branch_name("a"), block_name("a", "e")}


def test_disaggregator_language_is_first_symbol_then_any_changes():
    m = z2_flip()
    d = disaggregator(monoid_integrator(f_wall(), m).device, m)
    for n in range(5):
        for changes in product([UNCHANGED, FLIPPED], repeat=n):
            for y in ("0", "1"):
                assert language_contains(d, (y,) + changes)
            assert not language_contains(d, changes) or n == 0
    assert not language_contains(d, ["0", "1"])


def test_disaggregator_leaves_are_indexed_by_totals():
    m = z2_flip()
    d = disaggregator(monoid_integrator(f_wall(), m).device, m)
    for a in m.elements:
        leaf = block_name("0", a)
        assert d.successors[leaf][m.identity] == {leaf}
    assert outputs_of(d, ["0", FLIPPED, FLIPPED, UNCHANGED]) == {"white"}
    assert outputs_of(d, ["0", FLIPPED, UNCHANGED]) == {"azure"}


def test_disaggregator_branches_for_unseen_observations_are_unconstrained():
    f = stuck_counter()
    m = trivial_monoid(("a", "b"))
    d = disaggregator(monoid_integrator(f, m).device, m, ["a", "b"])
    assert d.output_map[branch_name("b")] == f.outputs


@given(device_and_monoid())
def test_disaggregator_simulates_when_integrator_exists(pair):
    f, m = pair
    try:
        g = monoid_integrator(f, m).device
    except NoSolution:
        return
    d = disaggregator(g, m)
    spec = Compose([Delta(variator_from_monoid(m, f.observations)), Disaggregator(m)])
    assert check_output_simulation(d, f, spec, 4)


@given(device_and_monoid())
def test_integrator_and_disaggregator_relations_agree(pair):
    f, m = pair
    v = variator_from_monoid(m, f.observations)
    down = simulatable(f, Compose([Delta(v), Integrator(m)])).exists
    spread = simulatable(f, Compose([Delta(v), Disaggregator(m)])).exists
    assert down == spread


def test_wall_event_sensor_passes_all_checks():
    f, m = f_wall(), z2_flip()
    e = eventify_pipeline(f, m).device
    assert all(len(c) == 1 for c in e.output_map.values())
    for name, verdict in eventify_checks(e, f, m, 6):
        assert verdict, (name, str(verdict))


def test_stuck_counter_has_no_event_sensor():
    f, m = stuck_counter(), trivial_monoid(("a",))
    monoid_integrator(f, m)
    with pytest.raises(NoSolution) as info:
        eventify_pipeline(f, m)
    assert info.value.reason == "stability-conflict"
    spec = Compose([Delta(variator_from_monoid(m, f.observations)), Pump({"e"})])
    verdict = simulatable(f, spec)
    assert not verdict.exists
    assert verdict.witness.image == ("a", "e")


def test_identity_observation_is_rejected():
    m = trivial_monoid(("e",))
    f = Device.build([("v", "v", ["e"])], ["v"], {"v": ["c"]})
    with pytest.raises(ValueError):
        eventify_pipeline(f, m)


@given(device_and_monoid())
def test_event_sensors_pass_all_checks(pair):
    f, m = pair
    try:
        e = eventify_pipeline(f, m).device
    except NoSolution:
        return
    for name, verdict in eventify_checks(e, f, m, 4):
        assert verdict, (name, str(verdict))
