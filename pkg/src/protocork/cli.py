"""Command-line front end.

Every command prints a JSON report (also written to ``--report`` when given)
and exits with 0 on success, 2 on a domain violation or a failed check, 3 on
parse/IO errors and 4 on usage errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cobordisms import (
    build_C,
    build_Q,
    build_T,
    build_W,
    check_trivial,
    compose,
    protocork_as_cobordism,
)
from .errors import DeltaConstraintViolated, DomainError, FormatError, ProtocorkError
from .floer import (
    FiniteUModule,
    bar_gr,
    dimension_additivity_check,
    formal_dimension,
    ms_gate,
    split_package,
)
from .graphs import canonical_form, enumerate_graphs, is_symmetric, is_trivial, stats, validate
from .homology import boundary_presentation, protocork_homology
from .kirby import build_diagram, diagram_counts, parse_stage, render

SCHEMA = "protocork-report/1"
EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_USAGE = 0, 2, 3, 4
STAGE_NAMES = {"0": "0", "half": "half", "1": "1"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    if isinstance(x, float):
        raise TypeError("reports carry no floating point values")
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_json(path: str):
    data = _read(path)
    try:
        return data, json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from None


def _load_graph(path: str):
    data, raw = _load_json(path)
    return data, validate(raw)


def _write(path: Path, data: bytes):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc.strerror or exc}") from None


# ----------------------------------------------------------------------------
# commands; each returns (input bytes, results, exit code)


def cmd_validate(args):
    data, raw = _load_json(args.path)
    try:
        g = validate(raw)
    except DeltaConstraintViolated as exc:
        results = {
            "valid": False,
            "violations": [
                {"i": i, "j": j, "expected": int(i == j), "actual": a} for i, j, a in exc.violations
            ],
        }
        return data, results, EXIT_DOMAIN
    return data, {"valid": True, "n": g.n, "edge_count": len(g)}, EXIT_OK


def cmd_info(args):
    data, g = _load_graph(args.path)
    st = stats(g)
    bp = boundary_presentation(g)
    results = {
        "graph": g.to_json(),
        "canonical_form": canonical_form(g).hex(),
        "stats": st,
        "symmetric": is_symmetric(g),
        "trivial": is_trivial(g),
        "homology": {
            f"stage_{name}": protocork_homology(g, name) for name in ("0", "half", "1")
        },
        "H1_boundary": bp.h1,
    }
    return data, results, EXIT_OK


def cmd_kirby(args):
    data, g = _load_graph(args.path)
    out_dir = Path(args.out)
    stem = Path(args.path).stem
    files = []
    for name in args.stage:
        d = build_diagram(g, parse_stage(name))
        if args.format == "json":
            blob = dumps(d.to_json()).encode("utf-8")
        else:
            blob = render(d, args.format)
        target = out_dir / f"{stem}-stage-{name}.{args.format}"
        _write(target, blob)
        files.append(
            {"stage": name, "file": target.name, "digest": _digest(blob), "counts": diagram_counts(d)}
        )
    return data, {"files": files}, EXIT_OK


def cmd_floer(args):
    data = b""
    if args.path:
        data, g = _load_graph(args.path)
        b1 = stats(g).b1_boundary
    elif args.b1 is not None:
        b1 = args.b1
    else:
        raise UsageError("give a graph file or --b1")
    if b1 < 0:
        raise UsageError("--b1 must be non-negative")
    reduced = FiniteUModule()
    if args.reduced:
        rdata, raw = _load_json(args.reduced)
        data += rdata
        try:
            reduced = FiniteUModule.of(raw)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"malformed reduced module: {exc}") from None
    pkg = split_package(b1, args.flavor, reduced)
    return data, {"package": pkg, "tower_rank": pkg.tower_rank}, EXIT_OK


def cmd_msgate(args):
    gate = ms_gate(args.c1sq, args.chi, args.sigma, args.ddelta)
    return None, gate, EXIT_OK


def cmd_dims(args):
    results = {
        "formal_dimension": formal_dimension(args.b1, args.indexf, args.i),
        "additivity": dimension_additivity_check(args.b1, args.indexf, args.i),
        "bar_gr_from_top": bar_gr(args.b1, 0, args.indexf, args.i),
    }
    return None, results, EXIT_OK


CHECKS = {
    "QW": lambda g: compose(build_W(g), build_Q(g)),
    "C0": lambda g: compose(protocork_as_cobordism(g, 0), build_C(g)),
    "C1": lambda g: compose(protocork_as_cobordism(g, 1), build_C(g)),
    "T": lambda g: compose(protocork_as_cobordism(g, 0), build_T(g)),
}


def cmd_cobordism(args):
    data, g = _load_graph(args.path)
    c = CHECKS[args.check](g)
    result = check_trivial(c)
    results = {"check": args.check, "cobordism": c, "cancellation": result}
    return data, results, EXIT_OK if result.trivial else EXIT_DOMAIN


def cmd_enumerate(args):
    if args.n < 1 or args.max_edges < args.n:
        raise UsageError("need --n >= 1 and --max-edges >= n")
    graphs = enumerate_graphs(args.n, args.max_edges, cap=args.cap)
    by_size: dict[int, int] = {}
    files = []
    for k, g in enumerate(graphs):
        by_size[len(g)] = by_size.get(len(g), 0) + 1
        if args.out:
            name = f"n{g.n}-e{len(g)}-{k:04d}.json"
            _write(Path(args.out) / name, dumps(g.to_json()).encode("utf-8"))
            files.append(name)
    results = {
        "n": args.n,
        "max_edges": args.max_edges,
        "classes": len(graphs),
        "by_edge_count": {str(k): v for k, v in sorted(by_size.items())},
    }
    if args.out:
        results["files"] = files
    return None, results, EXIT_OK


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--report", help="also write the JSON report to this file")
    p = _Parser(prog="protocork", description="Protocork plumbing graph toolkit.")
    p.add_argument("--version", action="version", version=f"protocork {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check a graph file")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("info", parents=[common], help="statistics and homology")
    s.add_argument("path")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("kirby", parents=[common], help="write Kirby diagrams")
    s.add_argument("path")
    s.add_argument("--stage", choices=list(STAGE_NAMES), action="append")
    s.add_argument("--format", choices=["json", "text", "svg"], default="text")
    s.add_argument("--out", default=".")
    s.set_defaults(func=cmd_kirby)

    s = sub.add_parser("floer", parents=[common], help="Floer package of the boundary")
    s.add_argument("path", nargs="?")
    s.add_argument("--b1", type=int)
    s.add_argument("--flavor", choices=["hat", "check", "bar"], default="hat")
    s.add_argument("--reduced", help="JSON list of {gr, order} records")
    s.set_defaults(func=cmd_floer)

    s = sub.add_parser("msgate", parents=[common], help="Morgan-Szabo degree gate")
    for flag in ("--c1sq", "--chi", "--sigma", "--ddelta"):
        s.add_argument(flag, type=int, required=True)
    s.set_defaults(func=cmd_msgate)

    s = sub.add_parser("dims", parents=[common], help="formal dimensions")
    s.add_argument("--b1", type=int, required=True)
    s.add_argument("--indexf", type=int, required=True)
    s.add_argument("--i", type=int, required=True)
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("cobordism", parents=[common], help="verify a trivial composition")
    s.add_argument("path")
    s.add_argument("--check", choices=list(CHECKS), required=True)
    s.set_defaults(func=cmd_cobordism)

    s = sub.add_parser("enumerate", parents=[common], help="one graph per isomorphism class")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-edges", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--cap", type=int, default=100_000)
    s.set_defaults(func=cmd_enumerate)
    return p


def _arg_digest(args) -> str:
    fields = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "report")}
    return _digest(json.dumps(fields, sort_keys=True).encode("utf-8"))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "stage", None) is None and args.command == "kirby":
            args.stage = ["0", "half", "1"]
    except UsageError as exc:
        print(f"protocork: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    start = time.perf_counter_ns()
    try:
        data, results, code = args.func(args)
    except UsageError as exc:
        print(f"protocork: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, ProtocorkError, ValueError) as exc:
        code = EXIT_DOMAIN if isinstance(exc, DomainError) else EXIT_IO
        if isinstance(exc, ValueError) and not isinstance(exc, ProtocorkError):
            code = EXIT_DOMAIN
        data, results = None, {"error": {"type": type(exc).__name__, "message": str(exc)}}
    report = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": args.command,
        "input_digest": _digest(data) if data else _arg_digest(args),
        "results": results,
        "timing": {"elapsed_ns": time.perf_counter_ns() - start},
    }
    text = dumps(report)
    sys.stdout.write(text)
    if args.report:
        try:
            Path(args.report).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"protocork: cannot write report: {exc}", file=sys.stderr)
            return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
