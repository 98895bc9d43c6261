"""Command-line front end: ``posetdiff validate|check|export FILE``.

Exit codes: 0 pass, 1 axiom failure, 2 validation failure, 3 I/O or parse
failure, 4 resource cap exceeded, 64 usage error.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import formats
from .chains import LinearOperator
from .differential import DifferentialStructure, verify
from .errors import (
    CapExceededError,
    InvalidComplexError,
    InvalidPosetError,
    NotJordanHolderError,
    ParseError,
    PastingError,
)
from .greechie import greechie_border, proper_poset, validate_logic
from .incidence import IncidenceAlgebra
from .poset import DEFAULT_CAP, Poset
from .simplicial import border, face_poset

EXIT_OK = 0
EXIT_AXIOM = 1
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_CAP = 4
EXIT_USAGE = 64

KINDS = {".poset": "poset", ".cx": "complex", ".gdl": "greechie"}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    input: Path
    kind: str
    format: str = "text"
    output: Path | None = None
    cap: int = DEFAULT_CAP
    vertex_order: Path | None = None
    border: Path | None = None
    dot: str | None = None
    json: str | None = None


@dataclass
class Loaded:
    kind: str
    poset: Poset
    border: LinearOperator | None
    elements: dict | None = None
    summary: str = ""


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read input: {exc}", str(path)) from None


def load(config: RunConfig) -> Loaded:
    text = _read(config.input)
    path = str(config.input)
    order = None
    if config.vertex_order is not None:
        order = formats.parse_vertex_order(_read(config.vertex_order), str(config.vertex_order))

    if config.kind == "poset":
        poset = formats.parse_poset(text, path, cap=config.cap)
        d = None
        if config.border is not None:
            d = formats.parse_border(_read(config.border), poset, str(config.border))
        return Loaded("poset", poset, d, summary=f"poset with {len(poset)} elements")

    if config.kind == "complex":
        cx = formats.parse_complex(text, path, vertex_order=order, cap=config.cap)
        poset = face_poset(cx, cap=config.cap)
        return Loaded(
            "complex",
            poset,
            border(cx, poset),
            summary=f"simplicial complex with {len(cx.vertices)} vertices and {len(cx)} simplices",
        )

    blocks = formats.parse_greechie(text, path)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        logic = validate_logic(blocks, order)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    poset, elements = proper_poset(logic, cap=config.cap)
    return Loaded(
        "greechie",
        poset,
        greechie_border(logic, poset),
        elements,
        summary=f"Greechie logic with {len(logic.blocks)} blocks and {len(poset)} proper elements",
    )


def _invalid_payload(exc: Exception) -> dict:
    payload: dict = {"valid": False, "error": str(exc)}
    if isinstance(exc, PastingError) and exc.blocks is not None:
        payload["blocks"] = list(exc.blocks)
        payload["shared_atoms"] = list(exc.shared)
    if isinstance(exc, InvalidComplexError) and exc.missing_face is not None:
        payload["missing_face"] = list(exc.missing_face)
    if isinstance(exc, NotJordanHolderError):
        payload["violating_pair"] = list(exc.pair)
    return payload


def _emit(config: RunConfig, text: str) -> None:
    if config.output is None:
        sys.stdout.write(text)
    else:
        try:
            config.output.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot write output: {exc}", str(config.output)) from None


def cmd_validate(config: RunConfig) -> int:
    try:
        loaded = load(config)
        ok, pair = loaded.poset.is_jordan_holder()
    except (PastingError, InvalidComplexError, InvalidPosetError) as exc:
        payload = _invalid_payload(exc)
        if config.format == "json":
            _emit(config, formats.dumps(payload))
        else:
            _emit(config, f"invalid: {exc}\n")
        return EXIT_INVALID
    payload = {
        "valid": True,
        "kind": loaded.kind,
        "elements": len(loaded.poset),
        "jordan_holder": ok,
    }
    if config.format == "json":
        _emit(config, formats.dumps(payload))
    else:
        extra = "" if ok else f" (not Jordan-Holder at {pair[0]} < {pair[1]})"
        _emit(config, f"valid: {loaded.summary}{extra}\n")
    return EXIT_OK


def cmd_check(config: RunConfig) -> int:
    if config.kind == "poset" and config.border is None:
        raise UsageError(
            "a border operator is only constructed for simplicial complexes (.cx) "
            "and Greechie logics (.gdl); pass --border FILE to check a plain poset"
        )
    try:
        loaded = load(config)
        structure = DifferentialStructure(loaded.poset, loaded.border)
    except (PastingError, InvalidComplexError, InvalidPosetError, NotJordanHolderError) as exc:
        payload = _invalid_payload(exc)
        if config.format == "json":
            _emit(config, formats.dumps(payload))
        else:
            _emit(config, f"invalid: {exc}\n")
        return EXIT_INVALID
    report = verify(structure)
    if config.format == "json":
        data = {"input": config.input.name, "kind": loaded.kind, **report.to_json()}
        _emit(config, formats.dumps(data))
    else:
        _emit(config, f"{config.input.name}: {loaded.summary}\n{report.to_text()}")
    return EXIT_OK if report.all_passed else EXIT_AXIOM


def cmd_export(config: RunConfig) -> int:
    if (config.dot is None) == (config.json is None):
        raise UsageError("export needs exactly one of --dot hasse or --json poset|border|omega")
    if config.dot is not None and config.dot != "hasse":
        raise UsageError(f"unknown DOT target {config.dot!r}; expected 'hasse'")
    if config.json is not None and config.json not in ("poset", "border", "omega"):
        raise UsageError(f"unknown JSON target {config.json!r}; expected poset, border or omega")
    if config.json == "border" and config.kind == "poset" and config.border is None:
        raise UsageError("--json border on a plain poset needs --border FILE")
    try:
        loaded = load(config)
    except (PastingError, InvalidComplexError, InvalidPosetError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if config.dot is not None:
        _emit(config, formats.hasse_dot(loaded.poset, config.input.stem))
    elif config.json == "poset":
        _emit(config, formats.dumps(formats.poset_json(loaded.poset, loaded.elements)))
    elif config.json == "border":
        _emit(config, formats.dumps(formats.border_json(loaded.border)))
    else:
        try:
            data = formats.omega_json(IncidenceAlgebra(loaded.poset))
        except NotJordanHolderError as exc:
            print(f"invalid: {exc}", file=sys.stderr)
            return EXIT_INVALID
        _emit(config, formats.dumps(data))
    return EXIT_OK


COMMANDS = {"validate": cmd_validate, "check": cmd_check, "export": cmd_export}


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="posetdiff",
        description="Build and certify discrete differential calculi on finite posets.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    for name, help_text in (
        ("validate", "check that an input file describes a valid structure"),
        ("check", "build D and verify the differential-calculus axioms"),
        ("export", "emit the Hasse diagram (DOT) or structures as JSON"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", type=Path)
        p.add_argument("--kind", choices=sorted(set(KINDS.values())))
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--output", "-o", type=Path)
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of poset elements")
        p.add_argument("--vertex-order", type=Path, help="file listing vertices in sign order")
        p.add_argument("--border", type=Path, help="border operator for a plain poset")
        if name == "export":
            p.add_argument("--dot", metavar="TARGET")
            p.add_argument("--json", metavar="TARGET")
    return parser


def parse_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    kind = args.kind or KINDS.get(args.input.suffix)
    if kind is None:
        raise UsageError(f"cannot infer the kind of {args.input}; pass --kind")
    if args.cap < 1:
        raise UsageError("--cap must be positive")
    return RunConfig(
        command=args.command,
        input=args.input,
        kind=kind,
        format=args.format,
        output=args.output,
        cap=args.cap,
        vertex_order=args.vertex_order,
        border=args.border,
        dot=getattr(args, "dot", None),
        json=getattr(args, "json", None),
    )


def main(argv=None) -> int:
    try:
        try:
            config = parse_config(argv)
        except SystemExit as exc:
            return exc.code
        return COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"posetdiff: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"posetdiff: {exc}", file=sys.stderr)
        return EXIT_IO
    except CapExceededError as exc:
        print(f"posetdiff: overflow: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
