"""Seeded random devices, variators and monoids for fuzzing."""

from __future__ import annotations

import os
import random
from itertools import product

from .device import Device
from .variator import MonoidVariator, Variator, cyclic_group, monoid_from_tables, validate_monoid

DEFAULT_SEED = 20240601


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    """``EVENTIFY_SEED`` when set, else ``default``."""
    value = os.environ.get("EVENTIFY_SEED")
    return int(value) if value not in (None, "") else default


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


def random_device(rng: random.Random, *, max_states: int = 5, max_observations: int = 3,
                  max_outputs: int = 3, edge_prob: float = 0.6,
                  nondeterminism: float = 0.1, extra_initial: float = 0.1) -> Device:
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    ys = [str(i) for i in range(rng.randint(1, max_observations))]
    cs = ["red", "green", "blue"][:rng.randint(1, max_outputs)]
    edges = []
    for v in states:
        for y in ys:
            if rng.random() < edge_prob:
                edges.append((v, rng.choice(states), [y]))
                if rng.random() < nondeterminism:
                    edges.append((v, rng.choice(states), [y]))
    omap = {v: rng.sample(cs, rng.randint(1, len(cs))) for v in states}
    initials = {states[0]}
    if n > 1 and rng.random() < extra_initial:
        initials.add(rng.choice(states[1:]))
    return Device.build(edges, initials, omap, states=states, observations=ys, outputs=cs)


def random_functional_variator(rng: random.Random, observations, max_differences: int = 3) -> Variator:
    """Partial function ``(y, d) -> y'``; pairs may be left uncovered."""
    diffs = [f"δ{i}" for i in range(rng.randint(1, max_differences))]
    triples = []
    for y in sorted(observations):
        for d in diffs:
            if rng.random() < 0.85:
                triples.append((y, d, rng.choice(sorted(observations))))
    return Variator.of(triples, diffs)


def random_neutral_set(rng: random.Random, observations) -> frozenset:
    ys = sorted(observations)
    return frozenset(y for y in ys if rng.random() < 0.4) or frozenset([rng.choice(ys)])


def _random_idempotent(rng, ys):
    image = rng.sample(ys, rng.randint(1, len(ys)))
    return {y: (y if y in image else rng.choice(image)) for y in ys}


def _random_power_map(rng, ys, order):
    while True:
        perm = dict(zip(ys, rng.sample(ys, len(ys))))
        y_map = {y: y for y in ys}
        for _ in range(order):
            y_map = {y: perm[y_map[y]] for y in ys}
        if all(y_map[y] == y for y in ys):
            return perm


def random_monoid(rng: random.Random, observations) -> MonoidVariator:
    """A valid monoid (at most three elements) with a random action on ``observations``.

    Drawn from: trivial, cyclic of order 2 or 3, the two-element semilattice,
    and the right-zero "reset" monoid.  Element names avoid observation names.
    """
    ys = sorted(observations)
    kind = rng.choice(["trivial", "z2", "z3", "semilattice", "reset"])
    if kind == "trivial":
        return monoid_from_tables(["e"], "e", {"e": {"e": "e"}}, {y: {"e": y} for y in ys})
    if kind in ("z2", "z3"):
        order = 2 if kind == "z2" else 3
        names = ["e"] + [f"g{k}" for k in range(1, order)]
        gen = _random_power_map(rng, ys, order)
        action = {}
        for y in ys:
            row, cur = {}, y
            for name in names:
                row[name] = cur
                cur = gen[cur]
            action[y] = row
        m = monoid_from_tables(names, "e", cyclic_group(order, names), action)
    elif kind == "semilattice":
        f = _random_idempotent(rng, ys)
        op = {"e": {"e": "e", "z": "z"}, "z": {"e": "z", "z": "z"}}
        m = monoid_from_tables(["e", "z"], "e", op, {y: {"e": y, "z": f[y]} for y in ys})
    else:
        consts = [rng.choice(ys), rng.choice(ys)]
        names = ["e", "r0", "r1"]
        op = {a: {b: (a if b == "e" else b) for b in names} for a in names}
        action = {y: {"e": y, "r0": consts[0], "r1": consts[1]} for y in ys}
        m = monoid_from_tables(names, "e", op, action)
    assert not validate_monoid(m), validate_monoid(m)
    return m


def random_monoid_device(rng: random.Random, **kw) -> Device:
    """A random device whose observations never collide with monoid element names."""
    return random_device(rng, **kw)


def all_words(alphabet, max_length: int):
    for n in range(max_length + 1):
        yield from product(alphabet, repeat=n)
