"""Observation variators and monoidal variators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping

from .device import symbol_key


@dataclass(frozen=True)
class Variator:
    """A difference alphabet plus triples ``(before, difference, after)``."""

    differences: frozenset
    triples: frozenset

    @classmethod
    def of(cls, triples: Iterable[tuple], differences: Iterable | None = None) -> "Variator":
        triples = frozenset(tuple(t) for t in triples)
        diffs = frozenset(differences) if differences is not None else frozenset(d for _, d, _ in triples)
        return cls(diffs, triples)

    @cached_property
    def changes(self) -> dict:
        """``(before, after) -> frozenset`` of differences relating them."""
        table: dict = {}
        for y, d, z in self.triples:
            table.setdefault((y, z), set()).add(d)
        return {k: frozenset(v) for k, v in table.items()}

    def between(self, before, after) -> frozenset:
        return self.changes.get((before, after), frozenset())

    @cached_property
    def apply(self) -> dict:
        """``(before, difference) -> frozenset`` of possible next observations."""
        table: dict = {}
        for y, d, z in self.triples:
            table.setdefault((y, d), set()).add(z)
        return {k: frozenset(v) for k, v in table.items()}

    def observations(self) -> frozenset:
        return frozenset(y for y, _, _ in self.triples) | frozenset(z for _, _, z in self.triples)


def validate_variator(v: Variator, y_alphabet: Iterable) -> list[str]:
    alphabet = set(y_alphabet)
    problems = []
    for y, d, z in sorted(v.triples, key=lambda t: tuple(map(symbol_key, t))):
        for slot, sym in (("first", y), ("third", z)):
            if sym not in alphabet:
                problems.append(f"unknown observation {sym!r} in {slot} slot of {(y, d, z)!r}")
        if d not in v.differences:
            problems.append(f"unknown difference {d!r} in {(y, d, z)!r}")
    return problems


def is_functional(v: Variator) -> bool:
    return all(len(targets) == 1 for targets in v.apply.values())


def is_pairwise_unique(v: Variator, y_alphabet: Iterable) -> bool:
    alphabet = list(y_alphabet)
    return all(len(v.between(y, z)) == 1 for y in alphabet for z in alphabet)


def product_variator(v1: Variator, v2: Variator) -> Variator:
    """Componentwise product over paired observations and paired differences."""
    triples = {((y1, y2), (d1, d2), (z1, z2))
               for (y1, d1, z1) in v1.triples for (y2, d2, z2) in v2.triples}
    diffs = {(d1, d2) for d1 in v1.differences for d2 in v2.differences}
    return Variator(frozenset(diffs), frozenset(triples))


@dataclass(frozen=True)
class MonoidVariator:
    """A finite monoid with a right action on observations.

    ``op[a][b]`` is ``a ⊕ b`` and ``action[y][d]`` is ``y ⊲ d``.  ``elements``
    keeps declaration order, which fixes the order violations are reported in.
    """

    elements: tuple
    identity: object
    op: Mapping
    action: Mapping

    @property
    def observations(self) -> tuple:
        return tuple(self.action)

    def combine(self, a, b):
        return self.op[a][b]

    def act(self, y, d):
        return self.action[y][d]

    def total(self, ds: Iterable):
        acc = self.identity
        for d in ds:
            acc = self.op[acc][d]
        return acc

    @cached_property
    def words_by_sum(self) -> dict:
        """Cache for :meth:`words_with_sum`."""
        return {}

    def words_with_sum(self, length: int) -> dict:
        """``sum -> list`` of all element strings of exactly ``length`` with that sum."""
        cache = self.words_by_sum
        if length not in cache:
            if length == 0:
                cache[0] = {self.identity: [()]}
            else:
                prev = self.words_with_sum(length - 1)
                table: dict = {}
                for acc, words in prev.items():
                    for d in self.elements:
                        table.setdefault(self.op[acc][d], []).extend(w + (d,) for w in words)
                cache[length] = table
        return cache[length]


def validate_monoid(m: MonoidVariator) -> list[str]:
    """Exhaustive check of closure, associativity, identity, action identity and compatibility."""
    els = list(m.elements)
    members = set(els)
    problems = []
    if m.identity not in members:
        problems.append(f"identity {m.identity!r} is not an element")
    for a in els:
        row = m.op.get(a, {})
        for b in els:
            if b not in row or row[b] not in members:
                problems.append(f"op table is not total/closed at ({a!r}, {b!r})")
    if problems:
        return problems
    for a, b, c in product(els, repeat=3):
        left = m.op[m.op[a][b]][c]
        right = m.op[a][m.op[b][c]]
        if left != right:
            problems.append(f"associativity fails for ({a}, {b}, {c}): "
                            f"({a}⊕{b})⊕{c} = {left} but {a}⊕({b}⊕{c}) = {right}")
    for a in els:
        if m.op[m.identity][a] != a or m.op[a][m.identity] != a:
            problems.append(f"identity law fails for {a}")
    ys = list(m.action)
    for y in ys:
        row = m.action[y]
        for d in els:
            if d not in row or row[d] not in m.action:
                problems.append(f"action table is not total/closed at ({y!r}, {d!r})")
    if problems:
        return problems
    for y in ys:
        if m.action[y][m.identity] != y:
            problems.append(f"action identity fails for {y}")
    for y, d1, d2 in product(ys, els, els):
        stepwise = m.action[m.action[y][d1]][d2]
        at_once = m.action[y][m.op[d1][d2]]
        if stepwise != at_once:
            problems.append(f"compatibility fails for ({y}, {d1}, {d2}): "
                            f"({y}⊲{d1})⊲{d2} = {stepwise} but {y}⊲({d1}⊕{d2}) = {at_once}")
    return problems


def associativity_violations(m: MonoidVariator) -> list[tuple]:
    els = list(m.elements)
    return [(a, b, c) for a, b, c in product(els, repeat=3)
            if m.op[m.op[a][b]][c] != m.op[a][m.op[b][c]]]


def is_group_with_transitive_point(m: MonoidVariator, y_alphabet: Iterable) -> bool:
    els = list(m.elements)
    for a in els:
        if not any(m.op[a][b] == m.identity and m.op[b][a] == m.identity for b in els):
            return False
    alphabet = set(y_alphabet)
    return any({m.action[y][d] for d in els} == alphabet for y in alphabet if y in m.action)


def variator_from_monoid(m: MonoidVariator, y_alphabet: Iterable | None = None) -> Variator:
    ys = list(y_alphabet) if y_alphabet is not None else list(m.action)
    triples = {(y, d, m.action[y][d]) for y in ys if y in m.action for d in m.elements}
    return Variator(frozenset(m.elements), frozenset(triples))


def monoid_from_tables(elements: Iterable, identity, op: Mapping, action: Mapping) -> MonoidVariator:
    return MonoidVariator(tuple(elements), identity,
                          {a: dict(row) for a, row in op.items()},
                          {y: dict(row) for y, row in action.items()})


def cyclic_group(order: int, names: list | None = None) -> dict:
    """Addition table of the cyclic group of the given order."""
    names = names or [str(i) for i in range(order)]
    return {names[i]: {names[j]: names[(i + j) % order] for j in range(order)}
            for i in range(order)}
