import os

from hypothesis import HealthCheck, settings, strategies as st

from eventify.device import Device
from eventify.variator import Variator

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

OUTPUTS = ["red", "green", "blue"]


@st.composite
def devices(draw, max_states=4, max_observations=3, deterministic=False):
    n = draw(st.integers(1, max_states))
    states = [f"s{i}" for i in range(n)]
    ys = [str(i) for i in range(draw(st.integers(1, max_observations)))]
    edges = []
    for v in states:
        for y in ys:
            targets = draw(st.lists(st.sampled_from(states), max_size=1 if deterministic else 2,
                                    unique=True))
            edges += [(v, w, [y]) for w in targets]
    omap = {v: draw(st.lists(st.sampled_from(OUTPUTS), min_size=1, max_size=3, unique=True))
            for v in states}
    initials = ["s0"]
    if not deterministic and n > 1 and draw(st.booleans()):
        initials.append(draw(st.sampled_from(states[1:])))
    return Device.build(edges, initials, omap, states=states, observations=ys, outputs=OUTPUTS)


@st.composite
def functional_variators(draw, observations, max_differences=3):
    ys = sorted(observations)
    diffs = [f"δ{i}" for i in range(draw(st.integers(1, max_differences)))]
    triples = []
    for y in ys:
        for d in diffs:
            target = draw(st.none() | st.sampled_from(ys))
            if target is not None:
                triples.append((y, d, target))
    return Variator.of(triples, diffs)


@st.composite
def device_and_variator(draw, **kw):
    f = draw(devices(**kw))
    return f, draw(functional_variators(f.observations))


@st.composite
def device_and_neutral(draw, **kw):
    f = draw(devices(**kw))
    ys = sorted(f.observations)
    return f, frozenset(draw(st.lists(st.sampled_from(ys), min_size=1, unique=True)))


def eventify_checks(e, f, m, max_len):
    """The five requirements on an event sensor, as (name, verdict) pairs."""
    from eventify.relations import Compose, Delta, Disaggregator, Pump, Shrink
    from eventify.simulation import (check_output_simulation, check_output_stable,
                                     check_vertex_stable)
    from eventify.variator import variator_from_monoid

    delta = Delta(variator_from_monoid(m, f.observations))
    identity = {m.identity}
    return [
        ("disaggregated", check_output_simulation(e, f, Compose([delta, Disaggregator(m)]), max_len)),
        ("pumped", check_output_simulation(e, f, Compose([delta, Pump(identity, 2)]), max_len)),
        ("shrunk", check_output_simulation(e, f, Compose([delta, Shrink(identity)]), max_len)),
        ("vertex-stable", check_vertex_stable(e, identity)),
        ("output-stable", check_output_stable(e, identity)),
    ]


@st.composite
def device_and_monoid(draw, max_states=4):
    import random

    from eventify.randomgen import random_monoid

    f = draw(devices(max_states=max_states))
    m = random_monoid(random.Random(draw(st.integers(0, 2**32))), f.observations)
    return f, m


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
