"""String relations between observation streams and their executable semantics.

Two independent encodings live here.  :func:`relation_image` follows each
relation's defining clauses directly on whole strings.  The ``stage`` objects
read a source one symbol at a time (a finite transducer, extended with free
neutral insertions for pumping and a pending-total goal for disaggregation);
the oracles in :mod:`eventify.simulation` are built on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable

from .variator import MonoidVariator, Variator


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Delta:
    variator: Variator


@dataclass(frozen=True)
class Shave:
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("shave length must be positive")


@dataclass(frozen=True)
class Shrink:
    neutral: frozenset

    def __init__(self, neutral: Iterable):
        object.__setattr__(self, "neutral", frozenset(neutral))


@dataclass(frozen=True)
class Pump:
    neutral: frozenset
    max_insertions: int = 2

    def __init__(self, neutral: Iterable, max_insertions: int = 2):
        if max_insertions < 1:
            raise ValueError("max_insertions must be positive")
        object.__setattr__(self, "neutral", frozenset(neutral))
        object.__setattr__(self, "max_insertions", max_insertions)


@dataclass(frozen=True, eq=False)
class Integrator:
    monoid: MonoidVariator


@dataclass(frozen=True, eq=False)
class Disaggregator:
    monoid: MonoidVariator
    max_image_length: int | None = None   # None: source length + 2

    def __post_init__(self):
        if self.max_image_length is not None and self.max_image_length < 1:
            raise ValueError("max_image_length must be positive")


@dataclass(frozen=True)
class Compose:
    """Apply ``parts`` left to right."""

    parts: tuple

    def __init__(self, parts: Iterable):
        parts = tuple(parts)
        if not parts:
            raise ValueError("Compose needs at least one relation")
        object.__setattr__(self, "parts", parts)


RelationSpec = Identity | Delta | Shave | Shrink | Pump | Integrator | Disaggregator | Compose


def flatten(spec) -> list:
    if isinstance(spec, Compose):
        return [p for part in spec.parts for p in flatten(part)]
    return [spec]


# --- whole-string semantics -------------------------------------------------

def relation_image(spec, s: Iterable, bound: int | None = None) -> set:
    """All images of ``s``; infinite relations are truncated by their bounds.

    ``bound`` overrides the truncation of the last pump/disaggregator stage
    (insertions for pumps, total image length for disaggregators).
    """
    s = tuple(s)
    if isinstance(spec, Compose):
        current = {s}
        for part in spec.parts:
            current = {t for u in current for t in relation_image(part, u, bound)}
        return current
    if isinstance(spec, Identity):
        return {s}
    if isinstance(spec, Delta):
        return _delta_images(spec.variator, s)
    if isinstance(spec, Shave):
        if not s:
            return {()}
        return {s[spec.k:]} if len(s) >= spec.k else set()
    if isinstance(spec, Shrink):
        return {tuple(y for y in s if y not in spec.neutral)}
    if isinstance(spec, Pump):
        return _pump_images(spec.neutral, bound or spec.max_insertions, s)
    if isinstance(spec, Integrator):
        if len(s) <= 1:
            return {s}
        if any(d not in spec.monoid.op for d in s[1:]):
            return set()
        return {(s[0], spec.monoid.total(s[1:]))}
    if isinstance(spec, Disaggregator):
        m = spec.monoid
        if len(s) <= 1:
            return {s}
        if any(d not in m.op for d in s[1:]):
            return set()
        target = m.total(s[1:])
        limit = bound or spec.max_image_length or len(s) + 2
        return {(s[0],) + w for n in range(1, limit) for w in m.words_with_sum(n).get(target, [])}
    raise TypeError(f"unknown relation {spec!r}")


def _delta_images(v: Variator, s: tuple) -> set:
    if len(s) <= 1:
        return {s}
    images = [(s[0],)]
    for before, after in zip(s, s[1:]):
        options = v.between(before, after)
        if not options:
            return set()
        images = [t + (d,) for t in images for d in options]
    return set(images)


def _pump_images(neutral: frozenset, max_insertions: int, s: tuple) -> set:
    if not s:
        return {()}
    slots = range(1, len(s) + 1)          # insert after position k, never before the first symbol
    ordered = sorted(neutral, key=str)
    images = {s}
    for count in range(1, max_insertions + 1):
        for where in combinations_with_replacement(slots, count):
            for fill in _words(ordered, count):
                t = list(s)
                for offset, (k, n) in enumerate(zip(where, fill)):
                    t.insert(k + offset, n)
                images.add(tuple(t))
    return images


def _words(alphabet: list, length: int):
    if length == 0:
        yield ()
        return
    for rest in _words(alphabet, length - 1):
        for a in alphabet:
            yield rest + (a,)


# --- symbol-at-a-time semantics ---------------------------------------------

@dataclass(frozen=True)
class Goal:
    """Pending image suffix: any nonempty string of monoid elements totalling ``target``."""

    target: object
    partial: object = None


_START = "^"


class _IdentityStage:
    def start(self):
        return 0

    def step(self, q, y):
        return [(q, (y,))]

    def finish(self, q):
        return [(q, ())]

    def free(self, q):
        return frozenset()


class _DeltaStage(_IdentityStage):
    def __init__(self, variator: Variator):
        self.variator = variator

    def start(self):
        return _START

    def step(self, q, y):
        if q == _START:
            return [(("last", y), (y,))]
        return [(("last", y), (d,)) for d in self.variator.between(q[1], y)]


class _ShaveStage(_IdentityStage):
    def __init__(self, k: int):
        self.k = k

    def step(self, q, y):
        if q < self.k:
            return [(q + 1, ())]
        return [(q, (y,))]

    def finish(self, q):
        return [(q, ())] if q == 0 or q >= self.k else []


class _ShrinkStage(_IdentityStage):
    def __init__(self, neutral: frozenset):
        self.neutral = neutral

    def step(self, q, y):
        return [(q, ())] if y in self.neutral else [(q, (y,))]


class _PumpStage(_IdentityStage):
    def __init__(self, neutral: frozenset):
        self.neutral = neutral

    def step(self, q, y):
        return [(1, (y,))]

    def free(self, q):
        return self.neutral if q == 1 else frozenset()


class _IntegratorStage(_IdentityStage):
    def __init__(self, m: MonoidVariator):
        self.m = m

    def start(self):
        return _START

    def step(self, q, y):
        if q == _START:
            return [((y, None), ())]
        if y not in self.m.op:
            return []
        first, acc = q
        return [((first, y if acc is None else self.m.combine(acc, y)), ())]

    def finish(self, q):
        if q == _START:
            return [(q, ())]
        first, acc = q
        return [(q, (first,) if acc is None else (first, acc))]


class _DisaggregatorStage(_IntegratorStage):
    def finish(self, q):
        if q == _START:
            return [(q, ())]
        first, acc = q
        return [(q, (first,) if acc is None else (first, Goal(acc)))]


class Chain:
    """A composite transducer; stages after the first consume earlier emissions.

    Pumps and disaggregators only make sense as the final stage.
    """

    def __init__(self, stages: list):
        for st in stages[:-1]:
            if isinstance(st, (_PumpStage, _DisaggregatorStage)):
                raise NotImplementedError("pump and disaggregator stages must come last")
        self.stages = stages
        self.last = stages[-1]
        self.monoid = self.last.m if isinstance(self.last, _DisaggregatorStage) else None

    def start(self):
        return tuple(st.start() for st in self.stages)

    def _feed(self, index, q, symbols):
        """Push ``symbols`` through stages ``index..``; returns ``[(q, emitted)]``."""
        runs = [(q, ())]
        for y in symbols:
            runs = [(q2, out + e) for q1, out in runs for q2, e in self._push(index, q1, y)]
        return runs

    def _push(self, index, q, y):
        if index == len(self.stages):
            return [(q, (y,))]
        results = []
        for qi, emitted in self.stages[index].step(q[index], y):
            q2 = q[:index] + (qi,) + q[index + 1:]
            results.extend(self._feed(index + 1, q2, emitted))
        return results

    def step(self, q, y):
        return self._push(0, q, y)

    def finish(self, q):
        return self._finish(0, q)

    def _finish(self, index, q):
        if index == len(self.stages):
            return [(q, ())]
        results = []
        for qi, emitted in self.stages[index].finish(q[index]):
            q2 = q[:index] + (qi,) + q[index + 1:]
            for q3, out in self._feed(index + 1, q2, emitted):
                for q4, tail in self._finish(index + 1, q3):
                    results.append((q4, out + tail))
        return results

    def free(self, q):
        return self.last.free(q[-1])


def _stage(spec):
    if isinstance(spec, Identity):
        return _IdentityStage()
    if isinstance(spec, Delta):
        return _DeltaStage(spec.variator)
    if isinstance(spec, Shave):
        return _ShaveStage(spec.k)
    if isinstance(spec, Shrink):
        return _ShrinkStage(spec.neutral)
    if isinstance(spec, Pump):
        return _PumpStage(spec.neutral)
    if isinstance(spec, Integrator):
        return _IntegratorStage(spec.monoid)
    if isinstance(spec, Disaggregator):
        return _DisaggregatorStage(spec.monoid)
    raise TypeError(f"unknown relation {spec!r}")


def transducer(spec) -> Chain:
    return Chain([_stage(p) for p in flatten(spec)])


def is_finite_relation(spec) -> bool:
    """True when every source has finitely many images."""
    return not any(isinstance(p, (Pump, Disaggregator)) for p in flatten(spec))


def transducer_images(spec, s: Iterable) -> set:
    """Images of ``s`` computed through :func:`transducer`; finite relations only."""
    if not is_finite_relation(spec):
        raise ValueError("relation has infinitely many images")
    chain = transducer(spec)
    runs = [(chain.start(), ())]
    for y in s:
        runs = [(q2, out + e) for q, out in runs for q2, e in chain.step(q, y)]
    return {out + e for q, out in runs for _, e in chain.finish(q)}
