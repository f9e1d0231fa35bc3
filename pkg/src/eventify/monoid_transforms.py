"""Accumulating differences with a monoid: integrator, disaggregator, eventify."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .device import (Device, NoSolution, format_symbol, format_word, initial_state,
                     lexicographic, singleton_restrict, symbol_key)
from .transforms import Transformed, delta_transform
from .variator import MonoidVariator, variator_from_monoid

ROOT = "root"


def branch_name(y) -> str:
    return f"y:{format_symbol(y)}"


def block_name(y, d) -> str:
    return f"y:{format_symbol(y)}|{format_symbol(d)}"


def monoid_integrator(f: Device, m: MonoidVariator) -> Transformed:
    """Three-layer device reading the first observation then the total of all changes.

    The derivative under the monoid's action is walked breadth-first from
    each first-symbol state; the visited set holds ``(accumulated, state)``
    pairs, which bounds the walk by ``|D|·|states|`` per branch.
    """
    derived = delta_transform(f, variator_from_monoid(m, f.observations))
    fp = derived.device
    start = initial_state(fp)

    edges = []
    omap = {ROOT: fp.output_map[start]}
    provenance = {ROOT: derived.provenance[start]}
    for y in sorted(fp.successors[start], key=symbol_key):
        (second,) = fp.successors[start][y]
        branch = branch_name(y)
        omap[branch] = fp.output_map[second]
        provenance[branch] = derived.provenance[second]
        edges.append((ROOT, branch, [y]))

        seen: set = set()   # (total so far, state) pairs already given a leaf
        queue = deque([(m.identity, second, ())])
        while queue:
            acc, state, path = queue.popleft()
            for d in sorted(fp.successors[state], key=symbol_key):
                (nxt,) = fp.successors[state][d]
                key = m.combine(acc, d)
                if (key, nxt) in seen:
                    continue
                seen.add((key, nxt))
                leaf = block_name(y, key)
                previous = omap.get(leaf)
                merged = fp.output_map[nxt] if previous is None else previous & fp.output_map[nxt]
                if not merged:
                    raise NoSolution(
                        "output-conflict",
                        f"changes after {format_symbol(y)} totalling {format_symbol(key)} "
                        f"lead to states with no common output",
                        witness=(y, key),
                        conflict=((leaf, previous), (f"{nxt} via {format_word((y,) + path + (d,))}",
                                                     fp.output_map[nxt])))
                if previous is None:
                    edges.append((branch, leaf, [key]))
                omap[leaf] = merged
                provenance[leaf] = provenance.get(leaf, frozenset()) | derived.provenance[nxt]
                queue.append((key, nxt, path + (d,)))
    device = Device.build(edges, [ROOT], omap,
                          observations=set(f.observations) | set(m.elements), outputs=f.outputs)
    return Transformed(device, provenance)


def disaggregator(g: Device, m: MonoidVariator, observations: Iterable | None = None) -> Device:
    """Graft one Cayley block of the monoid under every first observation.

    Block state ``w_a`` moves to ``w_(a⊕b)`` on ``b``, so the state reached
    after any string of changes is indexed by their total.  Branches are built
    for every symbol in ``observations`` (default: the integrator's own first
    symbols); states the integrator never constrained get the full output set.
    """
    root_edges = {y: next(iter(ws)) for y, ws in g.successors[ROOT].items()}
    ys = set(observations) if observations is not None else set(root_edges)
    full = g.outputs
    edges = []
    omap = {ROOT: g.output_map[ROOT]}
    for y in ys:
        branch = branch_name(y)
        integrated = root_edges.get(y)
        omap[branch] = g.output_map[integrated] if integrated is not None else full
        edges.append((ROOT, branch, [y]))
        for a in m.elements:
            leaf = block_name(y, a)
            omap[leaf] = g.output_map.get(leaf, full) if integrated is not None else full
            edges.append((branch, leaf, [a]))
            for b in m.elements:
                edges.append((leaf, block_name(y, m.combine(a, b)), [b]))
    return Device.build(edges, [ROOT], omap,
                        observations=set(ys) | set(m.elements), outputs=full)


def eventify_pipeline(f: Device, m: MonoidVariator, chooser=lexicographic) -> Transformed:
    """Chatter-free event sensor for ``f`` under monoid ``m``.

    Builds the integrator and its disaggregated universal shape, then folds
    each first-symbol state into the identity state of its block, so that an
    identity change never moves the device.  The folded state must satisfy
    both its sources, so it outputs their intersection; an empty one raises
    ``stability-conflict``.  Finally each output set is cut to one symbol.
    """
    if m.identity in f.observations:
        raise ValueError(f"identity element {m.identity!r} must not be an observation")
    integrated = monoid_integrator(f, m)
    shape = disaggregator(integrated.device, m, f.observations)

    branches = {branch_name(y) for y in f.observations}
    omap = {}
    edges = []
    provenance = {}
    for (src, dst), labels in shape.transitions.items():
        if src == ROOT:
            (y,) = labels
            dst = block_name(y, m.identity)
        elif src in branches:
            continue
        edges.append((src, dst, labels))
    for v, outs in shape.output_map.items():
        if v not in branches:
            omap[v] = outs
            provenance[v] = integrated.provenance.get(v, frozenset())
    for y in f.observations:
        anchor = block_name(y, m.identity)
        before = shape.output_map[branch_name(y)]
        merged = omap[anchor] & before
        if not merged:
            raise NoSolution(
                "stability-conflict",
                f"after {format_symbol(y)}, the first reading and a net-identity change "
                f"require disjoint outputs {sorted(map(str, before))} and "
                f"{sorted(map(str, omap[anchor]))}",
                witness=(y,),
                conflict=((branch_name(y), before), (anchor, omap[anchor])))
        omap[anchor] = merged
        provenance[anchor] = (provenance.get(anchor, frozenset())
                              | integrated.provenance.get(branch_name(y), frozenset()))
    folded = Device.build(edges, [ROOT], omap, observations=shape.observations,
                          outputs=shape.outputs)
    return Transformed(singleton_restrict(folded, chooser), provenance)
