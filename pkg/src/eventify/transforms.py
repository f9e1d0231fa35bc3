"""Device rewrites realizing the delta, shave, shrink and pump relations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .device import (Automaton, Device, NoSolution, format_symbol, format_word,
                     initial_state, is_deterministic, subset_construct, symbol_key,
                     union_determinize)
from .variator import Variator

START_LABEL = "ε"


@dataclass(frozen=True)
class Transformed:
    """A successfully derived device plus, for each of its states, the input states it stands for."""

    device: Device
    provenance: Mapping[str, frozenset]


def _deterministic_base(f: Device) -> tuple[Device, dict]:
    """Return a deterministic device with the same strings and outputs, plus origin map."""
    if is_deterministic(f):
        return f, {v: frozenset([v]) for v in f.states}
    return union_determinize(f)


def split_name(state, label) -> str:
    return f"{state}·{format_symbol(label)}" if label is not None else f"{state}·{START_LABEL}"


def split_device(f: Device) -> Device:
    """Split every state by the label of its incoming edge.

    The result has a fresh start copy of the initial state (labelled ε) and a
    copy ``v·ℓ`` per incoming label ``ℓ``; edge ``v·k --y--> w·y`` exists
    whenever ``y`` labels ``v --> w``, self-loops included.  Each copy
    remembers its base state's outputs, so every state now has a single
    incoming label.
    """
    base, _ = _deterministic_base(f)
    v0 = initial_state(base)
    incoming: dict = {v: set() for v in base.states}
    for (src, dst), labels in base.transitions.items():
        incoming[dst] |= labels
    copies = {(v, ell) for v in base.states for ell in incoming[v]}
    copies.add((v0, None))
    edges = []
    omap = {}
    for v, ell in copies:
        omap[split_name(v, ell)] = base.output_map[v]
        for y, ws in base.successors[v].items():
            for w in ws:
                edges.append((split_name(v, ell), split_name(w, y), [y]))
    return Device.build(edges, [split_name(v0, None)], omap,
                        observations=base.observations, outputs=base.outputs)


def _split_walk(base: Device, variator: Variator | None):
    """Breadth-first walk over reachable split states of a deterministic device.

    Yields ``(src, symbol, dst, labels, word)`` where states are
    ``(base_state, incoming_label)`` pairs, ``labels`` is the set of
    differences replacing ``symbol`` (the symbol itself when leaving the start
    or when ``variator`` is None) and ``word`` is the shortest source string
    reaching ``src``.  Raises ``uncovered-change`` when no difference relates
    two consecutive observations.
    """
    start = (initial_state(base), None)
    words = {start: ()}
    queue = deque([start])
    while queue:
        src = queue.popleft()
        v, ell = src
        for y in sorted(base.successors[v], key=symbol_key):
            (w,) = base.successors[v][y]
            dst = (w, y)
            if ell is None or variator is None:
                labels = frozenset([y])
            else:
                labels = variator.between(ell, y)
                if not labels:
                    raise NoSolution(
                        "uncovered-change",
                        f"no difference relates {format_symbol(ell)} to {format_symbol(y)} "
                        f"(source {format_word(words[src] + (y,))})",
                        witness=words[src] + (y,), pair=(ell, y))
            if dst not in words:
                words[dst] = words[src] + (y,)
                queue.append(dst)
            yield src, y, dst, labels, words[src]


def _delta_automaton(f: Device, variator: Variator, *, shave: bool) -> tuple[Automaton, dict]:
    base, origin = _deterministic_base(f)
    start = (initial_state(base), None)
    aut = Automaton(initials={start}, outputs={})
    for src, _y, dst, labels, _word in _split_walk(base, variator):
        for node in (src, dst):
            aut.outputs[node] = base.output_map[node[0]]
            aut.names[node] = split_name(*node)
        if shave and src == start:
            aut.add_eps(src, dst)
        else:
            for d in labels:
                aut.add(src, d, dst)
    aut.outputs[start] = base.output_map[start[0]]
    aut.names[start] = split_name(*start)
    return aut, origin


def _finish(aut: Automaton, origin: dict, observations, outputs, base_of) -> Transformed:
    def describe(member):
        return aut.name(member), frozenset(aut.outputs[member])

    device, macros = subset_construct(aut, observations=observations, outputs=outputs,
                                      describe=describe)
    provenance = {name: frozenset().union(*(origin[base_of(m)] for m in members))
                  for name, members in macros.items()}
    return Transformed(device, provenance)


def delta_transform(f: Device, variator: Variator) -> Transformed:
    """Derivative of ``f``: a deterministic device reading the first observation, then differences."""
    aut, origin = _delta_automaton(f, variator, shave=False)
    obs = set(f.observations) | set(variator.differences)
    return _finish(aut, origin, obs, f.outputs, lambda node: node[0])


def shave_delta_transform(f: Device, variator: Variator) -> Transformed:
    """Like :func:`delta_transform` but the result reads differences only.

    Edges leaving the start copy become ε-moves before determinization, so
    the start class merges with every state one observation deep.
    """
    aut, origin = _delta_automaton(f, variator, shave=True)
    return _finish(aut, origin, set(variator.differences), f.outputs, lambda node: node[0])


def shrink_transform(f: Device, n_set: Iterable) -> Transformed:
    """Device fed only the non-neutral observations (neutral ones become ε)."""
    neutral = frozenset(n_set)
    base, origin = _deterministic_base(f)
    aut = Automaton(initials=set(base.initials), outputs=dict(base.output_map))
    for v, row in base.successors.items():
        for y, ws in row.items():
            for w in ws:
                if y in neutral:
                    aut.add_eps(v, w)
                else:
                    aut.add(v, y, w)
    return _finish(aut, origin, set(base.observations) - neutral, base.outputs, lambda v: v)


PUMP_START = "·new"


def pump_transform(f: Device, n_set: Iterable) -> Transformed:
    """Device tolerating extra neutral observations anywhere after the first one."""
    neutral = frozenset(n_set)
    base, origin = _deterministic_base(f)
    v0 = initial_state(base)
    fresh = (PUMP_START,)
    aut = Automaton(initials={fresh}, outputs=dict(base.output_map))
    aut.outputs[fresh] = base.output_map[v0]
    aut.names[fresh] = f"{v0}{PUMP_START}"
    for v, row in base.successors.items():
        for y, ws in row.items():
            for w in ws:
                aut.add(v, y, w)
                if v == v0:
                    aut.add(fresh, y, w)
        for n in neutral:
            aut.add(v, n, v)
    origin = dict(origin)
    origin[fresh] = origin[v0]
    return _finish(aut, origin, set(base.observations) | neutral, base.outputs, lambda v: v)
