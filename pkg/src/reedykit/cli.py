"""Command-line front end.

Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for usage or
parse errors.  Reports go to stdout as JSON, a one-line summary to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import __version__
from . import chainlab as ch
from . import fibration as fb
from . import fincat as fc
from . import instances as ins
from . import io
from . import reedy as rd
from . import suites
from .diagram import core
from .diagram import limits as lm
from .diagram.boxdot import cell_generators, generating_map

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class Usage(Exception):
    pass


def _emit(report: dict, summary: str, fmt: str = "json", text: str | None = None) -> None:
    if fmt == "text":
        sys.stdout.write(text if text is not None else io.dumps(report))
    else:
        sys.stdout.write(io.dumps(report))
    print(summary, file=sys.stderr)


def _read(path: str, kind: str | None = None):
    try:
        if kind is None:
            return io.read_any(path)
        return kind, io.read(path, kind)
    except FileNotFoundError:
        raise Usage(f"no such file: {path}") from None
    except (io.FormatError, json.JSONDecodeError, fc.CategoryError, core.DiagramError, ValueError) as e:
        raise Usage(f"cannot parse {path}: {e}") from None


# -- verify --------------------------------------------------------------------------

def _violations(kind: str, obj) -> list[dict]:
    if kind == "reedy":
        return [v.to_json() for v in rd.verify_reedy(obj)]
    if kind == "category":
        return [v.to_json() for v in fc.validate_category(obj)]
    if kind == "functor":
        return [v.to_json() for v in rd.verify_reedy_functor(obj)]
    if kind == "complex":
        return [{"kind": "complex", "message": m} for m in ch.validate_complex(obj)]
    if kind == "map":
        return [{"kind": "map", "message": m} for m in ch.validate_map(obj)]
    if kind == "diagram":
        return [v.to_json() for v in core.validate_diagram(obj)]
    if kind == "diagram-map":
        return [v.to_json() for v in core.validate_diagram_map(obj)]
    if kind == "presheaf":
        return [v.to_json() for v in core.validate_set_presheaf(obj)]
    raise Usage(f"cannot verify files of kind {kind}")


def cmd_verify(args) -> int:
    kind, obj = _read(args.path)
    bad = _violations(kind, obj)
    report = {"path": args.path, "kind": kind, "valid": not bad, "violations": bad}
    _emit(report, f"{args.path}: {kind} {'valid' if not bad else f'INVALID ({len(bad)} violations)'}")
    return EXIT_OK if not bad else EXIT_NEGATIVE


# -- fibration -----------------------------------------------------------------------

def cmd_fibration(args) -> int:
    _, f = _read(args.path, "functor")
    bad = rd.verify_reedy_functor(f)
    if bad:
        raise Usage(f"not a Reedy functor: {bad[0]}")
    side = "right" if args.right else "left"
    verdict = fb.is_right_fibration(f) if args.right else fb.is_left_fibration(f)
    report = {"path": args.path, **verdict.to_json()}
    _emit(report, f"{args.path}: {'is' if verdict else 'is NOT'} a {side} fibration")
    return EXIT_OK if verdict else EXIT_NEGATIVE


# -- classify ------------------------------------------------------------------------

def cmd_classify(args) -> int:
    _, phi = _read(args.path, "diagram-map")
    bad = core.validate_diagram_map(phi)
    if bad:
        raise Usage(f"not a natural map: {bad[0]}")
    cls = lm.classify_reedy(phi)
    obj = lm.classify_objectwise(phi)
    report = {"path": args.path, "reedy": cls.to_json(), "objectwise": obj.to_json()}
    flags = ", ".join(k for k, v in cls.to_json().items() if v) or "none"
    _emit(report, f"{args.path}: {flags}")
    return EXIT_OK


# -- suite ---------------------------------------------------------------------------

def cmd_suite(args) -> int:
    try:
        report = suites.run_suite(args.name, args.seed, args.instances, args.max_objects)
    except suites.UnknownSuite:
        raise Usage(f"unknown suite {args.name!r}; known: {', '.join(suites.SUITES)}") from None
    _emit(report.to_json(), report.summary(), args.format, report.to_text())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


# -- instances -----------------------------------------------------------------------

def _functor_instances() -> dict[str, Callable[[], rd.ReedyFunctor]]:
    return {
        "parallel-pair-to-terminal": lambda: rd.to_terminal(ins.fixture("parallel-pair")),
        "delta2-diagonal": lambda: rd.diagonal(ins.fixture("delta2")),
        "delta2-identity": lambda: rd.identity_reedy_functor(ins.fixture("delta2")),
        "span-to-terminal": lambda: rd.to_terminal(ins.fixture("span")),
    }


def _map_instances() -> dict[str, Callable[[], core.DiagramMap]]:
    def zero_to_constant():
        return core.from_zero(core.constant(ins.fixture("delta1"), ch.unit(), core.COVARIANT))

    def generating():
        k_i, _ = cell_generators()
        return generating_map(ins.fixture("delta1"), "[1]", k_i[1], core.PRESHEAF).map

    def constant_quasi_iso():
        d = ch.disk(1)
        return core.constant_map(ins.fixture("delta1"), ch.to_zero(d), core.PRESHEAF)

    return {
        "zero-to-constant-delta1": zero_to_constant,
        "generating-map-delta1": generating,
        "constant-quasi-iso-delta1": constant_quasi_iso,
    }


def instance_catalogue() -> list[dict]:
    out = [{"name": n, "kind": "reedy", "valid": f.valid, "note": f.note} for n, f in ins.FIXTURES.items()]
    out += [{"name": n, "kind": "functor", "valid": True, "note": ""} for n in _functor_instances()]
    out += [{"name": n, "kind": "diagram-map", "valid": True, "note": ""} for n in _map_instances()]
    return out


def emit_instance(name: str) -> dict:
    if name in ins.FIXTURES:
        return io.reedy_to_json(ins.fixture(name))
    functors = _functor_instances()
    if name in functors:
        return io.functor_to_json(functors[name]())
    maps = _map_instances()
    if name in maps:
        return io.diagram_map_to_json(maps[name]())
    raise Usage(f"unknown instance {name!r}")


def cmd_instances(args) -> int:
    if args.action == "list":
        cat = instance_catalogue()
        if args.format == "text":
            text = "".join(f"{e['name']:<28} {e['kind']:<12} {e['note']}\n".rstrip() + "\n" for e in cat)
        else:
            text = None
        _emit({"instances": cat}, f"{len(cat)} instances", args.format, text)
        return EXIT_OK
    if not args.name:
        raise Usage("instances emit needs a name")
    data = emit_instance(args.name)
    if args.output:
        io.write(args.output, data)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(io.dumps(data))
        print(f"emitted {args.name}", file=sys.stderr)
    return EXIT_OK


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reedykit", description="Reedy categories, fibrations and Reedy diagrams of chain complexes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="validate a category, Reedy, functor, complex, map, diagram or presheaf file")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fibration", help="decide whether a Reedy functor is a left or right fibration")
    side = f.add_mutually_exclusive_group()
    side.add_argument("--left", action="store_true", help="left fibration (default)")
    side.add_argument("--right", action="store_true", help="right fibration")
    f.add_argument("path")
    f.set_defaults(func=cmd_fibration)

    c = sub.add_parser("classify", help="Reedy classification of a diagram map")
    c.add_argument("path")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("suite", help="run a named verification suite")
    s.add_argument("name", help=", ".join(suites.SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-objects", type=int, default=None)
    s.add_argument("--instances", type=int, default=None)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_suite)

    i = sub.add_parser("instances", help="list or emit fixture files")
    i.add_argument("action", choices=("list", "emit"))
    i.add_argument("name", nargs="?")
    i.add_argument("-o", "--output", help="write to a file instead of stdout")
    i.add_argument("--format", choices=("json", "text"), default="json")
    i.set_defaults(func=cmd_instances)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_USAGE
    if getattr(args, "seed", 0) is not None and getattr(args, "seed", 0) < 0:
        print("error: --seed must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except Usage as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
