"""Command-line front end: ``eventify <command> ...``.

Exit status is 0 on success or a passing check, 1 when no device exists or a
check fails (the witness is printed), and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures
from .device import NoSolution, direct_product, format_symbol
from .io import (ParseError, export_dot, parse_device, parse_graph, parse_monoid,
                 parse_relation, parse_variator, read_text, serialize_device, serialize_variator)
from .monoid_transforms import disaggregator, eventify_pipeline, monoid_integrator
from .ovm import exact_min_cardinality, minimize_variator, random_graph, reduce_3coloring
from .randomgen import make_rng
from .simulation import check_output_simulation, check_output_stable, check_vertex_stable
from .transforms import (delta_transform, pump_transform, shave_delta_transform,
                         shrink_transform)
from .variator import product_variator, validate_monoid, validate_variator

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _resolve(ref: str, parse, catalog: dict, what: str):
    """A path to a document, or the name of a built-in example."""
    path = Path(ref)
    if path.is_file():
        return parse(read_text(path))
    if ref in catalog:
        return catalog[ref]()
    raise UsageError(f"no {what} file or built-in example named {ref!r} "
                     f"(built-ins: {', '.join(sorted(catalog))})")


def load_device(ref):
    return _resolve(ref, parse_device, fixtures.CATALOG, "device")


def load_variator(ref):
    return _resolve(ref, parse_variator, fixtures.VARIATORS, "variator")


def load_monoid(ref, validate=True):
    return _resolve(ref, lambda text: parse_monoid(text, validate=validate),
                    fixtures.MONOIDS, "monoid")


def _symbols(text: str) -> list[str]:
    return [s for s in (p.strip() for p in text.split(",")) if s]


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _no_solution(err: NoSolution) -> int:
    print(f"no solution: {err}", file=sys.stderr)
    for state, outs in err.conflict:
        shown = "-" if outs is None else "{" + ", ".join(sorted(map(format_symbol, outs))) + "}"
        print(f"  {state}: {shown}", file=sys.stderr)
    if err.pair is not None:
        print(f"  uncovered pair: {format_symbol(err.pair[0])} -> {format_symbol(err.pair[1])}",
              file=sys.stderr)
    return EXIT_FAIL


def _transform(args, run) -> int:
    try:
        result = run()
    except NoSolution as err:
        return _no_solution(err)
    _emit(serialize_device(result.device), args.out)
    return EXIT_OK


def cmd_delta(args):
    return _transform(args, lambda: delta_transform(load_device(args.device), load_variator(args.variator)))


def cmd_shave(args):
    return _transform(args, lambda: shave_delta_transform(load_device(args.device),
                                                          load_variator(args.variator)))


def cmd_shrink(args):
    return _transform(args, lambda: shrink_transform(load_device(args.device), _symbols(args.nset)))


def cmd_pump(args):
    return _transform(args, lambda: pump_transform(load_device(args.device), _symbols(args.nset)))


def cmd_integrate(args):
    return _transform(args, lambda: monoid_integrator(load_device(args.device), load_monoid(args.monoid)))


def cmd_eventify(args):
    return _transform(args, lambda: eventify_pipeline(load_device(args.device), load_monoid(args.monoid)))


def cmd_disaggregate(args):
    observations = _symbols(args.observations) if args.observations else None
    g = disaggregator(load_device(args.device), load_monoid(args.monoid), observations)
    _emit(serialize_device(g), args.out)
    return EXIT_OK


def cmd_product(args):
    if args.device and args.variator:
        raise UsageError("give either two devices or two variators")
    if len(args.device) == 2:
        _emit(serialize_device(direct_product(*map(load_device, args.device))), args.out)
    elif len(args.variator) == 2:
        _emit(serialize_variator(product_variator(*map(load_variator, args.variator))), args.out)
    else:
        raise UsageError("product needs exactly two --device or two --variator arguments")
    return EXIT_OK


def _verdict(verdict) -> int:
    print(verdict)
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_check_os(args):
    spec = parse_relation(args.relation, load_variator, load_monoid)
    return _verdict(check_output_simulation(load_device(args.candidate), load_device(args.reference),
                                            spec, args.max_len))


def cmd_check_stability(args):
    device = load_device(args.device)
    neutral = _symbols(args.nset)
    status = EXIT_OK
    try:
        if args.kind in ("vertex", "both"):
            verdict = check_vertex_stable(device, neutral)
            print(f"vertex: {verdict}")
            status = max(status, EXIT_OK if verdict else EXIT_FAIL)
        if args.kind in ("output", "both"):
            verdict = check_output_stable(device, neutral)
            print(f"output: {verdict}")
            status = max(status, EXIT_OK if verdict else EXIT_FAIL)
    except ValueError as err:
        raise UsageError(str(err)) from None
    return status


def cmd_minimize(args):
    device = load_device(args.device)
    if args.cap is not None:
        n = exact_min_cardinality(device, args.cap)
        if n is None:
            print(f"no variator with at most {args.cap} differences", file=sys.stderr)
            return EXIT_FAIL
        print(n)
        variator = minimize_variator(device, n)
    else:
        variator = minimize_variator(device, args.n)
        if variator is None:
            print(f"no variator with at most {args.n} differences", file=sys.stderr)
            return EXIT_FAIL
    _emit(serialize_variator(variator), args.out)
    return EXIT_OK


def cmd_gen_3col(args):
    if args.graph:
        graph = parse_graph(read_text(args.graph))
    elif args.random:
        graph = random_graph(args.random, args.p, make_rng(args.seed))
    else:
        raise UsageError("gen-3col needs --graph FILE or --random N")
    if not graph.edges:
        raise UsageError("graph has no edges")
    _emit(serialize_device(reduce_3coloring(graph)), args.out)
    return EXIT_OK


def cmd_validate(args):
    chosen = [x for x in (args.device, args.variator, args.monoid) if x]
    if len(chosen) != 1:
        raise UsageError("validate needs exactly one of --device, --variator, --monoid")
    problems: list[str] = []
    if args.device:
        load_device(args.device)
    elif args.variator:
        v = load_variator(args.variator)
        alphabet = load_device(args.observations_of).observations if args.observations_of \
            else v.observations()
        problems = validate_variator(v, alphabet)
    else:
        problems = validate_monoid(load_monoid(args.monoid, validate=False))
    for p in problems:
        print(p)
    if problems:
        return EXIT_FAIL
    print("valid")
    return EXIT_OK


def cmd_export_dot(args):
    _emit(export_dot(load_device(args.device)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eventify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    def with_out(p):
        p.add_argument("--out", help="write the result here instead of stdout")
        return p

    for name, func, text in (("delta", cmd_delta, "derivative under a variator"),
                             ("shave", cmd_shave, "derivative reading differences only")):
        p = with_out(command(name, func, text))
        p.add_argument("--device", required=True)
        p.add_argument("--variator", required=True)
    for name, func, text in (("shrink", cmd_shrink, "drop neutral observations"),
                             ("pump", cmd_pump, "tolerate extra neutral observations")):
        p = with_out(command(name, func, text))
        p.add_argument("--device", required=True)
        p.add_argument("--nset", required=True, help="comma-separated neutral symbols")
    for name, func, text in (("integrate", cmd_integrate, "first reading plus total change"),
                             ("eventify", cmd_eventify, "chatter-free event sensor")):
        p = with_out(command(name, func, text))
        p.add_argument("--device", required=True)
        p.add_argument("--monoid", required=True)
    p = with_out(command("disaggregate", cmd_disaggregate, "universal device for an integrator"))
    p.add_argument("--device", required=True, help="an integrator device")
    p.add_argument("--monoid", required=True)
    p.add_argument("--observations", help="comma-separated first symbols to branch on")
    p = with_out(command("product", cmd_product, "direct product of devices or variators"))
    p.add_argument("--device", action="append", default=[])
    p.add_argument("--variator", action="append", default=[])
    p = command("check-os", cmd_check_os, "check output simulation modulo a relation")
    p.add_argument("--candidate", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--relation", required=True,
                   help="id | delta:V | shave:1 | shrink:a,b | pump:a,b@k | integrate:M | "
                        "disaggregate:M@k | compose(R;R)")
    p.add_argument("--max-len", type=int, default=6)
    p = command("check-stability", cmd_check_stability, "vertex and output stability")
    p.add_argument("--device", required=True)
    p.add_argument("--nset", required=True)
    p.add_argument("--kind", choices=["vertex", "output", "both"], default="both")
    p = with_out(command("minimize", cmd_minimize, "smallest difference alphabet"))
    p.add_argument("--device", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="search with at most N differences")
    group.add_argument("--cap", type=int, help="find the least N up to CAP")
    p = with_out(command("gen-3col", cmd_gen_3col, "3-colouring instance as a device"))
    p.add_argument("--graph", help="graph document or edge list")
    p.add_argument("--random", type=int, metavar="N", help="random graph on N vertices")
    p.add_argument("--p", type=float, default=0.5, help="edge probability")
    p.add_argument("--seed", type=int, help="defaults to EVENTIFY_SEED")
    p = command("validate", cmd_validate, "validate a document")
    p.add_argument("--device")
    p.add_argument("--variator")
    p.add_argument("--monoid")
    p.add_argument("--observations-of", help="device whose observations the variator must use")
    p = with_out(command("export-dot", cmd_export_dot, "Graphviz rendering"))
    p.add_argument("--device", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
