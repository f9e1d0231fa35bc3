"""Smallest difference alphabets admitting a derivative, and the 3-colouring reduction."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .device import Device, NoSolution, is_deterministic, union_determinize
from .transforms import _split_walk, delta_transform
from .variator import Variator


@dataclass(frozen=True)
class Graph:
    vertices: frozenset
    edges: frozenset     # of two-element frozensets

    @classmethod
    def of(cls, edges: Iterable, vertices: Iterable = ()) -> "Graph":
        pairs = set()
        verts = {str(v) for v in vertices}
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            pairs.add(frozenset((u, v)))
            verts.update((u, v))
        return cls(frozenset(verts), frozenset(pairs))

    def sorted_edges(self) -> list[tuple]:
        return sorted(tuple(sorted(e)) for e in self.edges)


def triangle() -> Graph:
    return Graph.of([("a", "b"), ("b", "c"), ("a", "c")])


def complete_graph(n: int) -> Graph:
    names = [chr(ord("a") + i) for i in range(n)]
    return Graph.of(combinations(names, 2))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    names = [f"v{i}" for i in range(n)]
    return Graph.of([(u, v) for u, v in combinations(names, 2) if rng.random() < p], names)


def graph_3colorable_bruteforce(g: Graph) -> bool:
    if len(g.vertices) > 12:
        raise ValueError("brute-force colouring is limited to 12 vertices")
    order = sorted(g.vertices)
    neighbours = {v: set() for v in order}
    for u, v in g.sorted_edges():
        neighbours[u].add(v)
        neighbours[v].add(u)
    colour: dict = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(3):
            if all(colour.get(u) != c for u in neighbours[v]):
                colour[v] = c
                if place(i + 1):
                    return True
                del colour[v]
        return False

    return place(0)


def reduce_3coloring(g: Graph) -> Device:
    """Device that has a derivative over three differences iff ``g`` is 3-colourable.

    Each edge ``{v, w}`` becomes a head state branching on ``v`` and ``w`` to
    two middle states (outputs 1 and 2), each followed by the same symbol
    into a tail; tails lead by a separator symbol to the next head.
    """
    if not g.edges:
        raise ValueError("graph needs at least one edge")
    sep = "x"
    while sep in g.vertices:
        sep += "'"
    edges = []
    outputs = {"v0": "0"}
    previous = [("v0", sep)]
    for i, (v, w) in enumerate(g.sorted_edges(), start=1):
        head = f"h{i}"
        outputs[head] = "0"
        for src, _ in previous:
            edges.append((src, head, [sep]))
        previous = []
        for k, sym in ((1, v), (2, w)):
            middle, tail = f"m{k}_{i}", f"t{k}_{i}"
            outputs[middle] = str(k)
            outputs[tail] = "0"
            edges += [(head, middle, [sym]), (middle, tail, [sym])]
            previous.append((tail, sep))
    return Device.build(edges, ["v0"], {v: [c] for v, c in outputs.items()},
                        observations=set(g.vertices) | {sep}, outputs={"0", "1", "2"})


def occurring_pairs(f: Device) -> list[tuple]:
    """Consecutive observation pairs realizable in the language, most-constrained first.

    Pairs leaving a split state with several outgoing symbols come first,
    since only they can force differences apart.
    """
    base = f if is_deterministic(f) else union_determinize(f)[0]
    out_pairs: dict = {}
    seen_order: list = []
    for (v, ell), y, _dst, _labels, _word in _split_walk(base, None):
        if ell is None:
            continue
        out_pairs.setdefault((v, ell), []).append((ell, y))
        if (ell, y) not in seen_order:
            seen_order.append((ell, y))
    branching = {p for pairs in out_pairs.values() if len(pairs) > 1 for p in pairs}
    return ([p for p in seen_order if p in branching]
            + [p for p in seen_order if p not in branching])


def _difference(k: int) -> str:
    return f"d{k}"


def _variator(pairs: list, assignment: list) -> Variator:
    triples = []
    for i, (before, after) in enumerate(pairs):
        d = _difference(assignment[i]) if i < len(assignment) else ("free", before, after)
        triples.append((before, d, after))
    return Variator.of(triples)


def _admits_derivative(f: Device, v: Variator) -> bool:
    try:
        delta_transform(f, v)
    except NoSolution:
        return False
    return True


def minimize_variator(f: Device, n: int) -> Variator | None:
    """A functional variator with at most ``n`` differences admitting a derivative, or None.

    Backtracking assigns a difference index to each occurring pair.  Indices
    are introduced in first-use order, which removes relabelling symmetry.  A
    partial assignment is tested with every unassigned pair given a private
    difference; merging differences only enlarges conflation classes, so a
    partial assignment failing that test fails for every completion.
    """
    if n < 1:
        raise ValueError("n must be positive")
    pairs = occurring_pairs(f)
    assignment: list = []

    def extend() -> bool:
        if not _admits_derivative(f, _variator(pairs, assignment)):
            return False
        if len(assignment) == len(pairs):
            return True
        limit = min(max(assignment, default=-1) + 2, n)
        for k in range(limit):
            assignment.append(k)
            if extend():
                return True
            assignment.pop()
        return False

    if not extend():
        return None
    used = sorted(set(assignment))
    return Variator(frozenset(_difference(k) for k in used), _variator(pairs, assignment).triples)


def exact_min_cardinality(f: Device, cap: int) -> int | None:
    """Least ``n <= cap`` admitting a derivative; None when none does."""
    for n in range(1, cap + 1):
        if minimize_variator(f, n) is not None:
            return n
    return None
