"""Sensori-computational devices: finite transition systems with output sets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Mapping

Symbol = Hashable
Word = tuple


class DeviceError(ValueError):
    """Raised when a device violates a structural invariant."""


class NoSolution(Exception):
    """A transform found that no device with the requested property exists.

    ``reason`` is a machine-readable tag: ``uncovered-change``,
    ``output-conflict`` or ``stability-conflict``.  ``witness`` is the
    offending string, ``pair`` the consecutive observations lacking a
    difference, and ``conflict`` a tuple of ``(state, outputs)`` members whose
    outputs share nothing.
    """

    def __init__(self, reason: str, message: str, *, witness: Word | None = None,
                 pair: tuple | None = None, conflict: tuple = ()):
        super().__init__(f"{reason}: {message}")
        self.reason = reason
        self.message = message
        self.witness = witness
        self.pair = pair
        self.conflict = conflict


def symbol_key(sym) -> tuple:
    """Sort key usable across mixed symbol types (strings, tuples, ints)."""
    if isinstance(sym, tuple):
        return (1, tuple(symbol_key(s) for s in sym))
    return (0, str(sym))


def word_key(word: Iterable) -> tuple:
    """Length-then-lexicographic order on strings."""
    word = tuple(word)
    return (len(word), tuple(symbol_key(s) for s in word))


def format_word(word: Iterable) -> str:
    word = tuple(word)
    if not word:
        return "ε"
    parts = [format_symbol(s) for s in word]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return " ".join(parts)


def format_symbol(sym) -> str:
    if isinstance(sym, tuple):
        return "(" + ",".join(format_symbol(s) for s in sym) + ")"
    return str(sym)


def _frozen_labels(labels) -> frozenset:
    if isinstance(labels, (str, tuple)) and not isinstance(labels, frozenset):
        # a bare string names a single symbol; use a list/set for several
        return frozenset([labels])
    return frozenset(labels)


@dataclass(frozen=True, eq=False)
class Device:
    """A finite device ``(states, initials, observations, transitions, outputs, output_map)``.

    ``transitions`` maps ordered state pairs to nonempty label sets; parallel
    edges are merged by label union at construction time.
    """

    states: frozenset
    initials: frozenset
    observations: frozenset
    transitions: Mapping[tuple, frozenset]
    outputs: frozenset
    output_map: Mapping[str, frozenset]

    def __post_init__(self):
        if not self.initials:
            raise DeviceError("a device needs at least one initial state")
        if not self.initials <= self.states:
            raise DeviceError(f"initial states not in states: {sorted(self.initials - self.states)}")
        for (src, dst), labels in self.transitions.items():
            if src not in self.states or dst not in self.states:
                raise DeviceError(f"transition {src!r}->{dst!r} uses an unknown state")
            if not labels:
                raise DeviceError(f"transition {src!r}->{dst!r} has no labels")
            stray = labels - self.observations
            if stray:
                raise DeviceError(f"labels {sorted(map(str, stray))} on {src!r}->{dst!r} are not observations")
        for v in self.states:
            outs = self.output_map.get(v)
            if not outs:
                raise DeviceError(f"output_map must be total and nonempty; state {v!r} has none")
            if not outs <= self.outputs:
                raise DeviceError(f"outputs of {v!r} are not in the output alphabet")
        if set(self.output_map) - set(self.states):
            raise DeviceError("output_map mentions unknown states")

    @classmethod
    def build(cls, edges: Iterable[tuple], initials, output_map: Mapping, *,
              states: Iterable | None = None, observations: Iterable | None = None,
              outputs: Iterable | None = None) -> "Device":
        """Convenience constructor from ``(src, dst, labels)`` triples.

        Alphabets default to whatever the edges and output map mention.
        """
        trans: dict[tuple, set] = {}
        for src, dst, labels in edges:
            trans.setdefault((src, dst), set()).update(_frozen_labels(labels))
        omap = {v: frozenset(_frozen_labels(c)) for v, c in output_map.items()}
        initials = frozenset([initials]) if isinstance(initials, str) else frozenset(initials)
        all_states = set(states) if states is not None else set()
        all_states |= set(omap) | set(initials)
        for src, dst in trans:
            all_states.update((src, dst))
        labels_used = set().union(*trans.values()) if trans else set()
        obs = frozenset(observations) if observations is not None else frozenset(labels_used)
        outs = frozenset(outputs) if outputs is not None else frozenset().union(*omap.values())
        return cls(
            states=frozenset(all_states),
            initials=initials,
            observations=obs | labels_used if observations is None else obs,
            transitions={k: frozenset(v) for k, v in trans.items() if v},
            outputs=outs,
            output_map=omap,
        )

    def __eq__(self, other):
        if not isinstance(other, Device):
            return NotImplemented
        return (self.states == other.states and self.initials == other.initials
                and self.observations == other.observations
                and dict(self.transitions) == dict(other.transitions)
                and self.outputs == other.outputs
                and dict(self.output_map) == dict(other.output_map))

    __hash__ = None

    @cached_property
    def successors(self) -> dict:
        """``state -> symbol -> frozenset of successor states``."""
        succ: dict = {v: {} for v in self.states}
        for (src, dst), labels in self.transitions.items():
            row = succ[src]
            for y in labels:
                row.setdefault(y, set()).add(dst)
        return {v: {y: frozenset(ws) for y, ws in row.items()} for v, row in succ.items()}

    def step(self, states: Iterable, symbol) -> frozenset:
        out: set = set()
        for v in states:
            out |= self.successors[v].get(symbol, frozenset())
        return frozenset(out)

    def outputs_at(self, states: Iterable) -> frozenset:
        out: set = set()
        for v in states:
            out |= self.output_map[v]
        return frozenset(out)

    def edges(self) -> Iterator[tuple]:
        """Yield ``(src, dst, labels)`` in a stable order."""
        for (src, dst) in sorted(self.transitions, key=lambda k: (str(k[0]), str(k[1]))):
            yield src, dst, self.transitions[(src, dst)]

    def sorted_states(self) -> list:
        return sorted(self.states, key=str)


def trace(device: Device, s: Iterable) -> frozenset:
    """States reached by ``s`` from any initial state; empty when ``s`` crashes."""
    current = device.initials
    for y in s:
        current = device.step(current, y)
        if not current:
            break
    return current


def language_contains(device: Device, s: Iterable) -> bool:
    return bool(trace(device, s))


def outputs_of(device: Device, s: Iterable) -> frozenset:
    return device.outputs_at(trace(device, s))


def is_deterministic(device: Device) -> bool:
    if len(device.initials) != 1:
        return False
    return all(len(ws) == 1 for row in device.successors.values() for ws in row.values())


def initial_state(device: Device):
    """The unique initial state of a deterministic device."""
    if len(device.initials) != 1:
        raise DeviceError("device has several initial states")
    return next(iter(device.initials))


def enumerate_language(device: Device, max_length: int) -> Iterator[tuple]:
    """Yield ``(s, trace(s))`` for all ``s`` in the language, length-then-lex order."""
    alphabet = sorted(device.observations, key=symbol_key)
    level = [((), device.initials)]
    for length in range(max_length + 1):
        yield from level
        if length == max_length:
            break
        nxt = []
        for word, reached in level:
            for y in alphabet:
                after = device.step(reached, y)
                if after:
                    nxt.append((word + (y,), after))
        level = nxt


def reaching_words(device: Device) -> dict:
    """Shortest (length-lex) string reaching each reachable trace set of a deterministic device.

    Keys are states; only meaningful for deterministic devices.
    """
    start = initial_state(device)
    found = {start: ()}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for y in sorted(device.successors[v], key=symbol_key):
            for w in device.successors[v][y]:
                if w not in found:
                    found[w] = found[v] + (y,)
                    queue.append(w)
    return found


def macro_name(members: Iterable, name: Callable = str) -> str:
    members = sorted((name(m) for m in members))
    if len(members) == 1:
        return members[0]
    return "{" + ",".join(members) + "}"


@dataclass
class Automaton:
    """Scratch nondeterministic automaton with ε-moves, used by the transforms.

    Not part of the immutable value layer; every transform builds one, then
    hands it to :func:`subset_construct`.
    """

    initials: set
    outputs: dict
    edges: dict = field(default_factory=dict)      # state -> symbol -> set
    eps: dict = field(default_factory=dict)        # state -> set
    names: dict = field(default_factory=dict)      # state -> display name

    def add(self, src, symbol, dst):
        self.edges.setdefault(src, {}).setdefault(symbol, set()).add(dst)

    def add_eps(self, src, dst):
        self.eps.setdefault(src, set()).add(dst)

    def closure(self, states: Iterable) -> frozenset:
        seen = set(states)
        stack = list(seen)
        while stack:
            v = stack.pop()
            for w in self.eps.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def name(self, state) -> str:
        return self.names.get(state, str(state))


def subset_construct(aut: Automaton, *, observations: Iterable, outputs: Iterable,
                     combine: str = "intersection",
                     describe: Callable | None = None) -> tuple[Device, dict]:
    """Determinize ``aut`` breadth-first; returns the device and a macro-state map.

    With ``combine="intersection"`` a macro-state outputs what all members
    share and :class:`NoSolution` is raised the first time that is empty; the
    witness is the shortest string (length-lex) reaching the conflict.
    ``describe(member)`` gives the ``(label, outputs)`` reported for a
    conflicting member.
    """
    start = aut.closure(aut.initials)
    words = {start: ()}
    order = [start]
    queue = deque([start])
    delta: dict = {}
    while queue:
        macro = queue.popleft()
        labels: dict = {}
        for v in macro:
            for y, ws in aut.edges.get(v, {}).items():
                labels.setdefault(y, set()).update(ws)
        for y in sorted(labels, key=symbol_key):
            target = aut.closure(labels[y])
            delta[(macro, y)] = target
            if target not in words:
                words[target] = words[macro] + (y,)
                order.append(target)
                queue.append(target)

    out_map = {}
    naming = {m: macro_name(m, aut.name) for m in order}
    if len(set(naming.values())) != len(naming):
        naming = {m: f"q{i}" for i, m in enumerate(order)}
    for macro in order:
        sets = [frozenset(aut.outputs[v]) for v in macro]
        if combine == "intersection":
            common = frozenset.intersection(*sets)
        else:
            common = frozenset.union(*sets)
        if not common:
            describe = describe or (lambda m: (aut.name(m), frozenset(aut.outputs[m])))
            members = tuple(sorted((describe(v) for v in macro), key=lambda p: str(p[0])))
            raise NoSolution(
                "output-conflict",
                f"string {format_word(words[macro])} conflates states with no common output",
                witness=words[macro], conflict=members)
        out_map[naming[macro]] = common

    edges = [(naming[m], naming[t], [y]) for (m, y), t in delta.items()]
    device = Device.build(edges, [naming[start]], out_map,
                          observations=set(observations), outputs=set(outputs))
    return device, {naming[m]: m for m in order}


def _as_automaton(device: Device) -> Automaton:
    aut = Automaton(initials=set(device.initials), outputs=dict(device.output_map))
    for v, row in device.successors.items():
        for y, ws in row.items():
            for w in ws:
                aut.add(v, y, w)
    return aut


def determinize(device: Device, *, outputs: str = "intersection") -> Device:
    """Subset construction accepting exactly ``L(device)``.

    ``outputs="intersection"`` (default) gives a merged state the outputs all
    members share and raises :class:`NoSolution` if that is empty;
    ``outputs="union"`` keeps every output and only preserves the language.
    """
    if outputs not in ("intersection", "union"):
        raise ValueError("outputs must be 'intersection' or 'union'")
    result, _ = subset_construct(_as_automaton(device), observations=device.observations,
                                 outputs=device.outputs, combine=outputs)
    return result


def union_determinize(device: Device) -> tuple[Device, dict]:
    """Language-and-output preserving determinization.

    Each result state stands for the exact trace set of the strings reaching
    it and outputs the union, so ``outputs_of`` agrees with the input on every
    string.  Returns the device and a map from result states to input states.
    """
    result, macros = subset_construct(_as_automaton(device), observations=device.observations,
                                      outputs=device.outputs, combine="union")
    return result, {name: frozenset(m) for name, m in macros.items()}


def direct_product(f: Device, g: Device) -> Device:
    """Synchronous product; observations and outputs become pairs."""
    def pair(v, w):
        return f"({v},{w})"

    edges = []
    for (v1, v2), labels1 in f.transitions.items():
        for (w1, w2), labels2 in g.transitions.items():
            edges.append((pair(v1, w1), pair(v2, w2),
                          [(a, b) for a in labels1 for b in labels2]))
    omap = {pair(v, w): [(a, b) for a in f.output_map[v] for b in g.output_map[w]]
            for v in f.states for w in g.states}
    return Device.build(
        edges, [pair(v, w) for v in f.initials for w in g.initials], omap,
        observations={(a, b) for a in f.observations for b in g.observations},
        outputs={(a, b) for a in f.outputs for b in g.outputs})


def lexicographic(outputs: frozenset):
    return min(outputs, key=symbol_key)


def singleton_restrict(device: Device, chooser: Callable = lexicographic) -> Device:
    """Replace every output set by a single member picked by ``chooser``."""
    omap = {v: frozenset([chooser(c)]) for v, c in device.output_map.items()}
    return Device(states=device.states, initials=device.initials,
                  observations=device.observations, transitions=dict(device.transitions),
                  outputs=device.outputs, output_map=omap)


def reachable_states(device: Device) -> frozenset:
    seen = set(device.initials)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for ws in device.successors[v].values():
            for w in ws:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return frozenset(seen)
