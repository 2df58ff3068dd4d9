"""Command-line driver: ``lcac check|classify|reduce|annihilation-table|paper-verify``.

Exit codes: 0 when every task passes or completes, 1 when a task fails,
2 on I/O or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .dsl import BuildError, TaskDecl, Workspace, load
from .expr import DSLSyntaxError
from .extensions import parse_shift
from .report import Config, Entry, default_tasks, emit_json, emit_text, run_document, run_task
from .verify import run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--degree-bound", type=int, default=None, metavar="D",
                   help="degree cap for unknown polynomials (default 10, or $LCAC_DEGREE_BOUND)")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    p.add_argument("--max-index", type=int, default=None, metavar="N", help="largest annihilation index (default 10)")
    p.add_argument("--timings", action="store_true", help="record elapsed milliseconds (off by default for reproducible output)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="lcac", description="Exact computations with finite Lie conformal algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run the tasks of a document")
    p.add_argument("file")

    p = sub.add_parser("classify", parents=[common], help="rank-one modules over a rank-two algebra")
    p.add_argument("file")
    p.add_argument("--algebra", required=True)
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE", help="bind a parameter to a rational")

    p = sub.add_parser("reduce", parents=[common], help="remove cocycle components by a basis change")
    p.add_argument("file")
    p.add_argument("--extension", required=True)
    p.add_argument("--shift", required=True, metavar="GEN", help="generator absorbing g(d) v; a leading '-' flips the sign")
    p.add_argument("--sign", choices=["+", "-"], default=None)
    p.add_argument("--ideal", default=None, help="ideal generator (default: the last one)")

    p = sub.add_parser("annihilation-table", parents=[common], help="brackets of annihilation algebra symbols")
    p.add_argument("file")
    p.add_argument("--algebra", default=None)

    sub.add_parser("paper-verify", parents=[common], help="run the built-in reproduction suite")
    return parser


def _load(path: str) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return load(text)
    except DSLSyntaxError as exc:
        raise InputError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from exc
    except BuildError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _require(ws: Workspace, name: str, what: str) -> None:
    if name not in ws.objects:
        raise InputError(f"no {what} named {name!r}")


def _entries(args, cfg: Config) -> list[Entry]:
    if args.command == "paper-verify":
        return run_suite(args.seed, cfg.timings)
    ws = _load(args.file)
    if args.command == "check":
        tasks = ws.document.tasks or default_tasks(ws)
        return run_document(ws, cfg, tasks)
    if args.command == "classify":
        _require(ws, args.algebra, "algebra")
        options = []
        for item in args.set:
            key, sep, value = item.partition("=")
            if not sep or key.strip() not in ws.document.parameters:
                raise InputError(f"--set expects PARAM=VALUE for a declared parameter, got {item!r}")
            options.append((key.strip(), value.strip()))
        return [run_task(ws, TaskDecl("classify", args.algebra, tuple(options)), cfg)]
    if args.command == "reduce":
        _require(ws, args.extension, "extension")
        name, sign = parse_shift(args.shift)
        if args.sign is not None:
            sign = 1 if args.sign == "+" else -1
        options = [("shift", f"{'-' if sign < 0 else '+'}{name}")]
        if args.ideal:
            options.append(("ideal", args.ideal))
        return [run_task(ws, TaskDecl("reduce", args.extension, tuple(options)), cfg)]
    if args.command == "annihilation-table":
        name = args.algebra
        if name is None:
            algebras = [d.name for d in ws.document.declarations if type(d).__name__ == "AlgebraDecl"]
            if not algebras:
                raise InputError("the document declares no algebra")
            name = algebras[0]
        _require(ws, name, "algebra")
        return [run_task(ws, TaskDecl("annihilation", name), cfg)]
    raise InputError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = Config.from_env(degree_bound=args.degree_bound, max_index=args.max_index, timings=args.timings)
    try:
        entries = _entries(args, cfg)
    except InputError as exc:
        print(f"lcac: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(emit_json(entries) if args.json else emit_text(entries))
    return EXIT_OK if all(e.ok for e in entries) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
