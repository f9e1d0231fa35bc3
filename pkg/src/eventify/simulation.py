"""Checking output simulation modulo a relation, stability, and existence of simulators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .device import (Device, enumerate_language, format_word, is_deterministic,
                     reaching_words, symbol_key, word_key)
from .relations import Delta, Goal, is_finite_relation, relation_image, transducer


class Status(Enum):
    HOLDS = "holds"
    HOLDS_UP_TO_BOUND = "holds-up-to-bound"
    FAILS = "fails"


@dataclass(frozen=True)
class Witness:
    source: tuple
    image: tuple | None
    reason: str
    detail: str = ""

    def __str__(self):
        image = "-" if self.image is None else format_word(self.image)
        text = f"{self.reason}: source {format_word(self.source)}, image {image}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass(frozen=True)
class Verdict:
    status: Status
    bound: int | None = None
    witness: Witness | None = None

    def __post_init__(self):
        if (self.witness is not None) != (self.status is Status.FAILS):
            raise ValueError("a witness accompanies exactly the failing verdicts")

    def __bool__(self):
        return self.status is not Status.FAILS

    def __str__(self):
        if self.status is Status.FAILS:
            return f"fails: {self.witness}"
        if self.status is Status.HOLDS_UP_TO_BOUND:
            return f"holds up to source length {self.bound}"
        return "holds"


def _fails(source, image, reason, detail="") -> Verdict:
    return Verdict(Status.FAILS, None, Witness(tuple(source), None if image is None else tuple(image),
                                               reason, detail))


def check_output_simulation(candidate: Device, reference: Device, spec,
                            max_source_length: int) -> Verdict:
    """Verify that ``candidate`` output simulates ``reference`` modulo ``spec``.

    Every source up to ``max_source_length`` is checked literally: it must
    have an image, and every image must be accepted by the candidate with
    outputs inside the source's.  The first failure (length-lex on the source,
    then on the image) is returned.  When the relation has finitely many
    images per source and ``max_source_length`` reaches
    :func:`exactness_bound`, a pass is reported as ``HOLDS``.
    """
    memo: dict = {}

    def candidate_outputs(t):
        if t not in memo:
            memo[t] = candidate.outputs_at(_run(candidate, t))
        return memo[t]

    for s, reached in enumerate_language(reference, max_source_length):
        images = relation_image(spec, s)
        if not images:
            return _fails(s, None, "no-image")
        allowed = reference.outputs_at(reached)
        bad = []
        for t in images:
            outs = candidate_outputs(t)
            if not outs:
                bad.append((t, "crash", ""))
            elif not outs <= allowed:
                extra = sorted(map(str, outs - allowed))
                bad.append((t, "output-violation", f"unexpected outputs {extra}"))
        if bad:
            t, reason, detail = min(bad, key=lambda b: word_key(b[0]))
            return _fails(s, t, reason, detail)
    bound = exactness_bound(candidate, reference, spec)
    if bound is not None and max_source_length >= bound:
        return Verdict(Status.HOLDS)
    return Verdict(Status.HOLDS_UP_TO_BOUND, max_source_length)


def _run(device: Device, word) -> frozenset:
    current = device.initials
    for y in word:
        current = device.step(current, y)
        if not current:
            break
    return current


def exactness_bound(candidate: Device, reference: Device, spec, cap: int = 50_000) -> int | None:
    """Source length beyond which no new counterexample can first appear.

    Whether a source violates the simulation depends only on its
    configuration: the reference states it reaches together with, for every
    partial image, the relation's reading state and the candidate states
    reached.  A shortest counterexample never repeats a configuration along
    its prefixes, so its length is below the number of reachable
    configurations.  Returns None for relations with unbounded image sets or
    when more than ``cap`` configurations exist.
    """
    if not is_finite_relation(spec):
        return None
    chain = transducer(spec)
    start = (reference.initials, frozenset([(chain.start(), candidate.initials)]))
    seen = {start}
    queue = deque([start])
    alphabet = sorted(reference.observations, key=symbol_key)
    while queue:
        ref_states, partial = queue.popleft()
        for y in alphabet:
            after = reference.step(ref_states, y)
            if not after:
                continue
            nxt = set()
            for q, cand in partial:
                for q2, emitted in chain.step(q, y):
                    reached = cand
                    for z in emitted:
                        reached = candidate.step(reached, z)
                    nxt.add((q2, reached))
            config = (after, frozenset(nxt))
            if config not in seen:
                if len(seen) >= cap:
                    return None
                seen.add(config)
                queue.append(config)
    return len(seen) - 1


def _require_deterministic(f: Device):
    if not is_deterministic(f):
        raise ValueError("stability is defined for deterministic devices only")


def _neutral_edges(f: Device, n_set: Iterable):
    """Yield ``(word, v, n, w)`` for reachable neutral edges, shortest reaching word first."""
    words = reaching_words(f)
    neutral = sorted(set(n_set), key=symbol_key)
    for v in sorted(words, key=lambda v: word_key(words[v])):
        for n in neutral:
            targets = f.successors[v].get(n)
            if targets:
                (w,) = targets
                yield words[v], v, n, w


def check_vertex_stable(f: Device, n_set: Iterable) -> Verdict:
    """Exact check: every reachable neutral edge is a self-loop."""
    _require_deterministic(f)
    for word, v, n, w in _neutral_edges(f, n_set):
        if v != w:
            return _fails(word + (n,), None, "vertex-instability", f"{v} --{n}--> {w}")
    return Verdict(Status.HOLDS)


def check_output_stable(f: Device, n_set: Iterable) -> Verdict:
    """Exact check: neutral edges keep a single, unchanged output."""
    _require_deterministic(f)
    for word, v, n, w in _neutral_edges(f, n_set):
        before, after = f.output_map[v], f.output_map[w]
        if before != after or len(after) != 1:
            detail = f"{v} {sorted(map(str, before))} --{n}--> {w} {sorted(map(str, after))}"
            return _fails(word + (n,), None, "output-instability", detail)
    return Verdict(Status.HOLDS)


# --- existence of a simulating device ----------------------------------------

@dataclass(frozen=True)
class Existence:
    """Answer of the existence oracle.

    ``complete`` is False when the image search stopped at its length bound
    with configurations still unexplored; a True ``exists`` is then only
    "no obstruction found so far".
    """

    exists: bool
    witness: Witness | None = None
    complete: bool = True
    explored: int = 0

    def __bool__(self):
        return self.exists


def simulatable(f: Device, spec, bound: int | None = None) -> Existence:
    """Decide whether some device output simulates ``f`` modulo ``spec``.

    Such a device exists iff every source string has an image and, for every
    image string, the sources mapping onto it share an output.  Both
    conditions are searched over configurations of the relation's transducer
    paired with trace sets of ``f``, never touching the graph rewrites of
    :mod:`eventify.transforms`.  Image strings are explored breadth-first up
    to length ``bound`` (unbounded by default; the configuration space is
    finite so the search ends).
    """
    chain = transducer(spec)
    missing = _missing_image(f, chain)
    if missing is not None:
        return Existence(False, Witness(missing, None, "no-image"))
    return _conflict_search(f, chain, bound)


def brute_force_derivative_exists(f: Device, variator, bound: int | None = None) -> Existence:
    return simulatable(f, Delta(variator), bound)


def _missing_image(f: Device, chain) -> tuple | None:
    start = (f.initials, frozenset([chain.start()]))
    words = {start: ()}
    queue = deque([start])
    alphabet = sorted(f.observations, key=symbol_key)
    while queue:
        config = queue.popleft()
        states, qs = config
        if not any(chain.finish(q) for q in qs):
            return words[config]
        for y in alphabet:
            after = f.step(states, y)
            if not after:
                continue
            nxt = (after, frozenset(q2 for q in qs for q2, _ in chain.step(q, y)))
            if nxt not in words:
                words[nxt] = words[config] + (y,)
                queue.append(nxt)
    return None


def _closure(f: Device, chain, found: dict, fresh: list) -> None:
    """Extend ``found`` (element -> representative source) with all silent source moves."""
    work = list(fresh)
    while work:
        elem = work.pop()
        q, states, pending, done = elem
        if pending or done:
            continue
        source = found[elem]
        for y in sorted(f.observations, key=symbol_key):
            after = f.step(states, y)
            if not after:
                continue
            for q2, emitted in chain.step(q, y):
                new = (q2, after, emitted, False)
                if new not in found:
                    found[new] = source + (y,)
                    work.append(new)
        for q2, emitted in chain.finish(q):
            new = (q2, states, emitted, True)
            if new not in found:
                found[new] = source
                work.append(new)


def _accepting(elem) -> bool:
    _, _, pending, done = elem
    if not done:
        return False
    if not pending:
        return True
    return (len(pending) == 1 and isinstance(pending[0], Goal)
            and pending[0].partial == pending[0].target)


def _read(chain, found: dict, b) -> dict:
    nxt = {}
    monoid = chain.monoid
    for elem, source in found.items():
        q, states, pending, done = elem
        if pending:
            head = pending[0]
            if isinstance(head, Goal):
                if monoid is None or b not in monoid.op:
                    continue
                total = b if head.partial is None else monoid.combine(head.partial, b)
                new = (q, states, (Goal(head.target, total),) + pending[1:], done)
            elif head == b:
                new = (q, states, pending[1:], done)
            else:
                continue
        elif b in chain.free(q):
            new = elem
        else:
            continue
        if new not in nxt or word_key(source) < word_key(nxt[new]):
            nxt[new] = source
    return nxt


def _next_symbols(chain, found: dict) -> list:
    symbols = set()
    for q, _, pending, _ in found:
        if pending:
            if isinstance(pending[0], Goal):
                symbols |= set(chain.monoid.elements)
            else:
                symbols.add(pending[0])
        else:
            symbols |= set(chain.free(q))
    return sorted(symbols, key=symbol_key)


def _conflict_search(f: Device, chain, bound: int | None) -> Existence:
    start_elem = (chain.start(), f.initials, (), False)
    found = {start_elem: ()}
    _closure(f, chain, found, [start_elem])
    level = [((), found)]
    seen = {frozenset(found)}
    explored = 0
    depth = 0
    while level:
        for image, config in level:
            explored += 1
            members = [(config[e], e[1]) for e in config if _accepting(e)]
            if members:
                common = None
                for _, states in members:
                    outs = f.outputs_at(states)
                    common = outs if common is None else common & outs
                if not common:
                    sources = sorted({src for src, _ in members}, key=word_key)
                    detail = "sources " + ", ".join(
                        f"{format_word(s)}→{sorted(map(str, f.outputs_at(_run(f, s))))}"
                        for s in sources[:6])
                    return Existence(False, Witness(sources[0], image, "output-conflict", detail),
                                     True, explored)
        if bound is not None and depth >= bound:
            return Existence(True, None, False, explored)
        depth += 1
        nxt_level = []
        for image, config in level:
            for b in _next_symbols(chain, config):
                stepped = _read(chain, config, b)
                if not stepped:
                    continue
                _closure(f, chain, stepped, [e for e in stepped if not e[2] and not e[3]])
                key = frozenset(stepped)
                if key in seen:
                    continue
                seen.add(key)
                nxt_level.append((image + (b,), stepped))
        level = nxt_level
    return Existence(True, None, True, explored)


def bounded_simulatable(f: Device, spec, max_length: int) -> Existence:
    """Naive check grouping the images of all sources up to ``max_length``.

    Sees only the sources it enumerates, so it can miss obstructions that
    need longer strings; any obstruction it reports is genuine.
    """
    classes: dict = {}
    for s, reached in enumerate_language(f, max_length):
        images = relation_image(spec, s)
        if not images:
            return Existence(False, Witness(s, None, "no-image"), False)
        outs = f.outputs_at(reached)
        for t in images:
            classes.setdefault(t, []).append((s, outs))
    for t in sorted(classes, key=word_key):
        members = classes[t]
        common = frozenset.intersection(*(o for _, o in members))
        if not common:
            return Existence(False, Witness(members[0][0], t, "output-conflict"), False)
    return Existence(True, None, False)
