"""Worked example devices, variators and monoids."""

from __future__ import annotations

from .device import Device, direct_product
from .variator import (MonoidVariator, Variator, cyclic_group, monoid_from_tables,
                       product_variator)

UNCHANGED, FLIPPED = "⊥", "⊤"


def f_wall() -> Device:
    """Wall sensor: remembers whether the last bit read was 0 (white) or 1 (azure)."""
    return Device.build(
        [("read0", "read0", ["0"]), ("read0", "read1", ["1"]),
         ("read1", "read1", ["1"]), ("read1", "read0", ["0"])],
        ["read0"], {"read0": ["white"], "read1": ["azure"]})


def d2() -> Variator:
    """Two differences over bits: unchanged and flipped."""
    return Variator.of([("0", UNCHANGED, "0"), ("0", FLIPPED, "1"),
                        ("1", FLIPPED, "0"), ("1", UNCHANGED, "1")])


def z2_flip() -> MonoidVariator:
    """Two-element group acting on bits by flipping."""
    op = {UNCHANGED: {UNCHANGED: UNCHANGED, FLIPPED: FLIPPED},
          FLIPPED: {UNCHANGED: FLIPPED, FLIPPED: UNCHANGED}}
    action = {"0": {UNCHANGED: "0", FLIPPED: "1"}, "1": {UNCHANGED: "1", FLIPPED: "0"}}
    return monoid_from_tables([UNCHANGED, FLIPPED], UNCHANGED, op, action)


def bump_pair() -> Device:
    """Left and right bump sensors read together."""
    return direct_product(f_wall(), f_wall())


def d2x2() -> Variator:
    return product_variator(d2(), d2())


# --- compass --------------------------------------------------------------

HEADINGS = ("↑", "↗", "→", "↘", "↓", "↙", "←", "↖")
TURN_LEFT, STEADY, TURN_RIGHT = "-", "Ø", "+"


def _compass(turns: tuple) -> Device:
    edges = [("start", "↑", ["↑"])]
    for i, h in enumerate(HEADINGS):
        for turn in turns:
            edges.append((h, HEADINGS[(i + turn) % 8], [HEADINGS[(i + turn) % 8]]))
    return Device.build(edges, ["start"], {"start": ["↑"], **{h: [h] for h in HEADINGS}})


def minispot45() -> Device:
    """Compass of a robot that steps (heading kept) or turns by ±45°, starting north."""
    return _compass((0, 1, -1))


def minispot90() -> Device:
    """As :func:`minispot45` but also able to turn by ±90°."""
    return _compass((0, 1, -1, 2, -2))


def d3_compass() -> Variator:
    triples = []
    for i, h in enumerate(HEADINGS):
        triples += [(h, STEADY, h), (h, TURN_RIGHT, HEADINGS[(i + 1) % 8]),
                    (h, TURN_LEFT, HEADINGS[(i - 1) % 8])]
    return Variator.of(triples)


def z8_compass() -> MonoidVariator:
    """Rotations by multiples of 45° acting on the eight headings."""
    names = [f"r{45 * k}" for k in range(8)]
    action = {h: {names[k]: HEADINGS[(i + k) % 8] for k in range(8)}
              for i, h in enumerate(HEADINGS)}
    return monoid_from_tables(names, names[0], cyclic_group(8, names), action)


# --- neutral symbols --------------------------------------------------------

def f_tiny() -> Device:
    return Device.build(
        [("q0", "q1", ["a"]), ("q1", "q2", ["n"]), ("q2", "q3", ["b"])],
        ["q0"], {"q0": ["red"], "q1": ["cyan"], "q2": ["cyan", "blue"], "q3": ["orange"]})


def f_small() -> Device:
    """:func:`f_tiny` with the extra string ``nab``."""
    return Device.build(
        [("q0", "q1", ["a"]), ("q1", "q2", ["n"]), ("q2", "q3", ["b"]),
         ("q0", "p1", ["n"]), ("p1", "p2", ["a"]), ("p2", "p3", ["b"])],
        ["q0"], {"q0": ["red"], "q1": ["cyan"], "q2": ["cyan", "blue"], "q3": ["orange"],
                 "p1": ["red"], "p2": ["red", "blue", "orange"], "p3": ["orange"]})


def g2() -> Device:
    """Tolerates repeated neutral symbols after ``a`` but insists on at least one."""
    return Device.build(
        [("g0", "g1", ["a"]), ("g1", "g2", ["n"]), ("g2", "g2", ["n"]),
         ("g2", "g3", ["b"]), ("g3", "g3", ["n"])],
        ["g0"], {"g0": ["red"], "g1": ["cyan"], "g2": ["cyan"], "g3": ["orange"]},
        observations=["a", "b", "n"])


def unstable() -> Device:
    """A neutral symbol moves the device between differently coloured states."""
    return Device.build(
        [("s0", "x", ["a"]), ("x", "y", ["n"]), ("y", "y", ["n"]), ("y", "z", ["b"])],
        ["s0"], {"s0": ["red"], "x": ["orange"], "y": ["blue"], "z": ["green"]})


# --- monoids ----------------------------------------------------------------

SMILE, FROWN = "☺", "☹"


def robot_on_fire_monoid() -> MonoidVariator:
    op = {SMILE: {SMILE: SMILE, FROWN: FROWN}, FROWN: {SMILE: FROWN, FROWN: FROWN}}
    action = {"0": {SMILE: "0", FROWN: "1"}, "1": {SMILE: "1", FROWN: "1"}}
    return monoid_from_tables([SMILE, FROWN], SMILE, op, action)


def robot_on_fire() -> Device:
    """Irreversible alarm: once 1 is read, only 1 follows."""
    return Device.build(
        [("normal", "normal", ["0"]), ("normal", "burning", ["1"]),
         ("burning", "burning", ["1"])],
        ["normal"], {"normal": ["ok"], "burning": ["alarm"]})


LEFT, NULL, RIGHT = "left", "null", "right"
LANE_SHIFT = {LEFT: 1, NULL: 0, RIGHT: -1}


def lane_action() -> dict:
    """Lanes 0..2 shifted by the change and clamped to the road."""
    return {str(i): {d: str(min(max(i + v, 0), 2)) for d, v in LANE_SHIFT.items()}
            for i in range(3)}


def lane_variator() -> Variator:
    return Variator.of((y, d, z) for y, row in lane_action().items() for d, z in row.items())


def lane_saturating() -> MonoidVariator:
    """The saturating lane-change table; not associative."""
    op = {LEFT: {LEFT: LEFT, NULL: LEFT, RIGHT: NULL},
          NULL: {LEFT: LEFT, NULL: NULL, RIGHT: RIGHT},
          RIGHT: {LEFT: NULL, NULL: RIGHT, RIGHT: RIGHT}}
    return monoid_from_tables([LEFT, NULL, RIGHT], NULL, op, lane_action())


def lane_cyclic() -> MonoidVariator:
    """The associative lane table whose square of right is left; the clamp action breaks it."""
    op = {LEFT: {LEFT: RIGHT, NULL: LEFT, RIGHT: NULL},
          NULL: {LEFT: LEFT, NULL: NULL, RIGHT: RIGHT},
          RIGHT: {LEFT: NULL, NULL: RIGHT, RIGHT: LEFT}}
    return monoid_from_tables([LEFT, NULL, RIGHT], NULL, op, lane_action())


def trivial_monoid(observations=("0", "1")) -> MonoidVariator:
    return monoid_from_tables(["e"], "e", {"e": {"e": "e"}}, {y: {"e": y} for y in observations})


def stuck_counter() -> Device:
    """One symbol, three distinct outputs along the way, then a loop.

    Under the trivial monoid every reading after the first is an identity
    change, yet the second and later readings output differently from the
    first, so no device can be both correct and unmoved by identity changes.
    """
    return Device.build(
        [("v0", "v1", ["a"]), ("v1", "v2", ["a"]), ("v2", "v2", ["a"])],
        ["v0"], {"v0": ["x"], "v1": ["p"], "v2": ["q"]})


CATALOG = {
    "f_wall": f_wall, "bump_pair": bump_pair, "minispot45": minispot45,
    "minispot90": minispot90, "f_tiny": f_tiny, "f_small": f_small, "g2": g2,
    "unstable": unstable, "robot_on_fire": robot_on_fire, "stuck_counter": stuck_counter,
}
VARIATORS = {"d2": d2, "d2x2": d2x2, "d3": d3_compass, "lane": lane_variator}
MONOIDS = {"z2": z2_flip, "z8": z8_compass, "robot_on_fire": robot_on_fire_monoid,
           "lane_saturating": lane_saturating, "lane_cyclic": lane_cyclic,
           "trivial": lambda: trivial_monoid(("a",))}
