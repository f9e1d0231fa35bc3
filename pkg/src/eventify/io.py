"""Canonical JSON documents, relation-spec grammar and DOT export."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable

from .device import Device, DeviceError, format_symbol, symbol_key
from .ovm import Graph
from .relations import (Compose, Delta, Disaggregator, Identity, Integrator, Pump, Shave,
                        Shrink)
from .variator import MonoidVariator, Variator, monoid_from_tables, validate_monoid

SCHEMA_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


# --- symbols ----------------------------------------------------------------

def _encode(sym):
    return [_encode(s) for s in sym] if isinstance(sym, tuple) else sym


def _decode(value, path: str):
    if isinstance(value, list):
        return tuple(_decode(v, path) for v in value)
    if isinstance(value, str):
        return value
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return str(value)
    raise ParseError(f"expected a symbol, got {value!r}", path)


def _sorted(values) -> list:
    return sorted((_encode(v) for v in values), key=lambda v: json.dumps(v, ensure_ascii=False))


def canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load_json(text: str, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON: {err.msg}", f"line {err.lineno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    found = doc.get("kind", kind)
    if found != kind:
        raise ParseError(f"expected a {kind} document, found {found!r}", "kind")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}", "schema_version")
    return doc


def _field(doc: dict, key: str, typ, path: str = ""):
    where = f"{path}.{key}" if path else key
    if key not in doc:
        raise ParseError("missing field", where)
    value = doc[key]
    if not isinstance(value, typ):
        raise ParseError(f"expected {typ.__name__}", where)
    return value


# --- devices ----------------------------------------------------------------

def device_to_doc(device: Device) -> dict:
    return {
        "kind": "device",
        "schema_version": SCHEMA_VERSION,
        "states": sorted(device.states, key=str),
        "initial": sorted(device.initials, key=str),
        "observations": _sorted(device.observations),
        "output_alphabet": _sorted(device.outputs),
        "outputs": {v: _sorted(c) for v, c in device.output_map.items()},
        "transitions": sorted(({"from": src, "to": dst, "labels": _sorted(labels)}
                               for (src, dst), labels in device.transitions.items()),
                              key=lambda e: (e["from"], e["to"])),
    }


def serialize_device(device: Device) -> str:
    return canonical(device_to_doc(device))


def parse_device(text: str) -> Device:
    doc = _load_json(text, "device")
    states = [str(s) for s in _field(doc, "states", list)]
    initials = [str(s) for s in _field(doc, "initial", list)]
    observations = [_decode(y, f"observations[{i}]")
                    for i, y in enumerate(_field(doc, "observations", list))]
    outputs_doc = _field(doc, "outputs", dict)
    missing = [s for s in states if s not in outputs_doc or not outputs_doc[s]]
    if missing:
        raise ParseError(f"output_map must be total; no outputs for {missing}", "outputs")
    omap = {s: [_decode(c, f"outputs.{s}") for c in outs] for s, outs in outputs_doc.items()}
    alphabet = doc.get("output_alphabet")
    edges = []
    for i, t in enumerate(_field(doc, "transitions", list)):
        where = f"transitions[{i}]"
        if not isinstance(t, dict):
            raise ParseError("expected an object", where)
        labels = [_decode(y, f"{where}.labels") for y in _field(t, "labels", list, where)]
        edges.append((str(_field(t, "from", str, where)), str(_field(t, "to", str, where)), labels))
    try:
        return Device.build(
            edges, initials, omap, states=states, observations=observations,
            outputs=None if alphabet is None else [_decode(c, "output_alphabet") for c in alphabet])
    except DeviceError as err:
        raise ParseError(str(err)) from None


# --- variators and monoids --------------------------------------------------

def variator_to_doc(v: Variator) -> dict:
    return {"kind": "variator", "schema_version": SCHEMA_VERSION,
            "differences": _sorted(v.differences),
            "triples": sorted(([_encode(y), _encode(d), _encode(z)] for y, d, z in v.triples),
                              key=lambda t: json.dumps(t, ensure_ascii=False))}


def serialize_variator(v: Variator) -> str:
    return canonical(variator_to_doc(v))


def parse_variator(text: str) -> Variator:
    doc = _load_json(text, "variator")
    diffs = [_decode(d, "differences") for d in _field(doc, "differences", list)]
    triples = []
    for i, t in enumerate(_field(doc, "triples", list)):
        if not isinstance(t, list) or len(t) != 3:
            raise ParseError("a triple has three entries", f"triples[{i}]")
        triples.append(tuple(_decode(x, f"triples[{i}]") for x in t))
    v = Variator.of(triples, diffs)
    stray = {d for _, d, _ in v.triples} - v.differences
    if stray:
        raise ParseError(f"triples use undeclared differences {sorted(map(str, stray))}", "triples")
    return v


def monoid_to_doc(m: MonoidVariator) -> dict:
    return {"kind": "monoid", "schema_version": SCHEMA_VERSION,
            "elements": list(m.elements), "identity": m.identity,
            "op": {a: dict(row) for a, row in m.op.items()},
            "action": {y: dict(row) for y, row in m.action.items()}}


def serialize_monoid(m: MonoidVariator) -> str:
    return canonical(monoid_to_doc(m))


def parse_monoid(text: str, *, validate: bool = True) -> MonoidVariator:
    """Load a monoid document; ``validate`` rejects tables breaking the monoid/action laws."""
    doc = _load_json(text, "monoid")
    elements = [str(e) for e in _field(doc, "elements", list)]
    identity = _field(doc, "identity", str)
    op = _field(doc, "op", dict)
    action = _field(doc, "action", dict)
    for name, table in (("op", op), ("action", action)):
        for key, row in table.items():
            if not isinstance(row, dict):
                raise ParseError("expected a nested map", f"{name}.{key}")
    m = monoid_from_tables(elements, identity, op, action)
    if validate:
        problems = validate_monoid(m)
        if problems:
            raise ParseError(problems[0], "op/action")
    return m


# --- graphs -----------------------------------------------------------------

def graph_to_doc(g: Graph) -> dict:
    return {"kind": "graph", "schema_version": SCHEMA_VERSION,
            "vertices": sorted(g.vertices), "edges": [list(e) for e in g.sorted_edges()]}


def parse_graph(text: str) -> Graph:
    """JSON graph document, or a plain edge list with one ``u v`` pair per line."""
    if text.lstrip().startswith("{"):
        doc = _load_json(text, "graph")
        edges = _field(doc, "edges", list)
        for i, e in enumerate(edges):
            if not isinstance(e, list) or len(e) != 2:
                raise ParseError("an edge has two endpoints", f"edges[{i}]")
        try:
            return Graph.of(edges, doc.get("vertices", []))
        except ValueError as err:
            raise ParseError(str(err), "edges") from None
    edges, vertices = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) == 1:
            vertices.append(parts[0])
        elif len(parts) == 2:
            edges.append(parts)
        else:
            raise ParseError("expected 'u v'", f"line {lineno}")
    try:
        return Graph.of(edges, vertices)
    except ValueError as err:
        raise ParseError(str(err)) from None


# --- relation grammar -------------------------------------------------------

def _split_top(text: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == ";" and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def _symbols(text: str) -> list[str]:
    return [s for s in (p.strip() for p in text.split(",")) if s]


def parse_relation(text: str, load_variator: Callable, load_monoid: Callable):
    """Parse ``id``, ``delta:V``, ``shave:k``, ``shrink:a,b``, ``pump:a,b@k``,
    ``integrate:M``, ``disaggregate:M@k`` and ``compose(R;R;...)``."""
    text = text.strip()
    if text == "id":
        return Identity()
    if text.startswith("compose(") and text.endswith(")"):
        inner = text[len("compose("):-1]
        if inner.count("(") != inner.count(")"):
            raise ParseError("unbalanced parentheses", "relation")
        return Compose(parse_relation(p, load_variator, load_monoid) for p in _split_top(inner))
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ParseError(f"cannot parse relation {text!r}", "relation")
    arg, at, bound = arg.partition("@")
    try:
        limit = int(bound) if at else None
    except ValueError:
        raise ParseError(f"bound {bound!r} is not an integer", "relation") from None
    try:
        if kind == "delta":
            return Delta(load_variator(arg))
        if kind == "shave":
            return Shave(int(arg or 1))
        if kind == "shrink":
            return Shrink(_symbols(arg))
        if kind == "pump":
            return Pump(_symbols(arg), limit or 2)
        if kind == "integrate":
            return Integrator(load_monoid(arg))
        if kind == "disaggregate":
            return Disaggregator(load_monoid(arg), limit)
    except ValueError as err:
        if isinstance(err, ParseError):
            raise
        raise ParseError(str(err), "relation") from None
    raise ParseError(f"unknown relation kind {kind!r}", "relation")


# --- DOT --------------------------------------------------------------------

def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _quote(text: str) -> str:
    return '"' + _escape(text) + '"'


def _set_label(symbols) -> str:
    return "{" + ",".join(format_symbol(s) for s in sorted(symbols, key=symbol_key)) + "}"


def export_dot(device: Device, name: str = "device") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];",
             '  "·start" [shape=point, label=""];']
    for v in device.sorted_states():
        label = f"{_escape(v)}\\n{_escape(_set_label(device.output_map[v]))}"
        lines.append(f"  {_quote(v)} [label=\"{label}\"];")
    for v in sorted(device.initials, key=str):
        lines.append(f'  "·start" -> {_quote(v)};')
    for src, dst, labels in device.edges():
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [label={_quote(_set_label(labels))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")
