"""Text input formats and deterministic JSON / DOT exports.

Input formats are line based; ``#`` starts a comment and blank lines are
ignored.

* poset (``.poset``): ``element <name>`` and ``cover <lower> <upper>``
* complex (``.cx``): ``vertex <name>`` and ``simplex <v1> <v2> ...``
* Greechie diagram (``.gdl``): ``block <atom> <atom> ...``
* border (for posets): ``d <column> <row> <coeff>``, meaning the image of
  ``|column>`` contains ``coeff |row>``
* vertex order: vertex names separated by whitespace, in order
"""
from __future__ import annotations

import json
from collections.abc import Iterator

from .chains import LinearOperator
from .errors import CapExceededError, ParseError, PosetDiffError
from .incidence import IncidenceAlgebra
from .poset import DEFAULT_CAP, Poset
from .simplicial import SimplicialComplex, close_downward


def _lines(text: str, path=None) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if words:
            yield number, words


def parse_poset(text: str, path=None, *, cap: int | None = DEFAULT_CAP) -> Poset:
    elements: list[str] = []
    covers: list[tuple[str, str, int]] = []
    for line, words in _lines(text, path):
        keyword, args = words[0], words[1:]
        if keyword == "element" and len(args) == 1:
            if args[0] in elements:
                raise ParseError(f"element {args[0]!r} declared twice", path, line)
            elements.append(args[0])
        elif keyword == "cover" and len(args) == 2:
            covers.append((args[0], args[1], line))
        else:
            raise ParseError(f"cannot parse {' '.join(words)!r}", path, line)
    declared = set(elements)
    for lower, upper, line in covers:
        for name in (lower, upper):
            if name not in declared:
                raise ParseError(f"cover uses undeclared element {name!r}", path, line)
    return Poset(elements, [(lo, hi) for lo, hi, _ in covers], cap=cap)


def parse_complex(
    text: str, path=None, *, vertex_order=None, cap: int | None = DEFAULT_CAP
) -> SimplicialComplex:
    """Read generator simplices and close them downward.

    Declared ``vertex`` lines fix the sign order; without them (and without
    an explicit ``vertex_order``) vertices are ordered lexicographically.
    """
    declared: list[str] = []
    generators: list[tuple[list[str], int]] = []
    for line, words in _lines(text, path):
        keyword, args = words[0], words[1:]
        if keyword == "vertex" and len(args) == 1:
            if args[0] in declared:
                raise ParseError(f"vertex {args[0]!r} declared twice", path, line)
            declared.append(args[0])
        elif keyword == "simplex" and args:
            if len(set(args)) != len(args):
                raise ParseError("simplex repeats a vertex", path, line)
            generators.append((args, line))
        else:
            raise ParseError(f"cannot parse {' '.join(words)!r}", path, line)
    if declared:
        known = set(declared)
        for gen, line in generators:
            for v in gen:
                if v not in known:
                    raise ParseError(f"simplex uses undeclared vertex {v!r}", path, line)
    order = list(vertex_order) if vertex_order is not None else (declared or None)
    if order is None:
        order = sorted({v for gen, _ in generators for v in gen} | set(declared))
    else:
        used = {v for gen, _ in generators for v in gen} | set(declared)
        missing = used - set(order)
        if missing:
            raise ParseError(f"vertex order omits {sorted(missing)[0]!r}", path)
    if cap is not None:
        for gen, _ in generators:
            if 2 ** len(gen) - 1 > cap:
                raise CapExceededError(2 ** len(gen) - 1, cap)
    return close_downward([gen for gen, _ in generators], vertices=order)


def parse_greechie(text: str, path=None) -> list[list[str]]:
    """Blocks as atom lists; pasting rules are checked by ``validate_logic``."""
    blocks = []
    for line, words in _lines(text, path):
        if words[0] != "block" or len(words) < 2:
            raise ParseError(f"cannot parse {' '.join(words)!r}", path, line)
        blocks.append(words[1:])
    return blocks


def parse_vertex_order(text: str, path=None) -> list[str]:
    order = [w for _, words in _lines(text, path) for w in words]
    if len(set(order)) != len(order):
        raise ParseError("vertex order repeats a vertex", path)
    return order


def parse_border(text: str, poset: Poset, path=None) -> LinearOperator:
    columns: dict[str, dict[str, int]] = {}
    for line, words in _lines(text, path):
        if words[0] != "d" or len(words) != 4:
            raise ParseError(f"cannot parse {' '.join(words)!r}", path, line)
        _, column, row, coeff = words
        for name in (column, row):
            if name not in poset:
                raise ParseError(f"unknown element {name!r}", path, line)
        try:
            value = int(coeff)
        except ValueError:
            raise ParseError(f"coefficient {coeff!r} is not an integer", path, line) from None
        col = columns.setdefault(column, {})
        col[row] = col.get(row, 0) + value
    try:
        return LinearOperator(poset, poset, columns)
    except PosetDiffError as exc:
        raise ParseError(str(exc), path) from None


def poset_json(poset: Poset, elements=None) -> dict:
    """Elements (with block representations when given) and the cover list."""
    records = []
    for name in poset.elements:
        record: dict = {"id": name}
        if elements is not None:
            record["representations"] = [
                {"block": i, "atoms": list(atoms)} for i, atoms in elements[name].representations
            ]
        records.append(record)
    return {
        "size": len(poset),
        "elements": records,
        "covers": [list(c) for c in poset.covers()],
    }


def border_json(op: LinearOperator) -> dict:
    return {
        "columns": [
            {"element": p, "image": [{"element": s, "coeff": c} for s, c in image]}
            for p, image in op.columns.items()
        ]
    }


def omega_json(algebra: IncidenceAlgebra) -> dict:
    """The incidence basis with grades, plus the unit as a term list."""
    basis = algebra.basis()
    return {
        "basis_size": len(basis),
        "basis": [{"ket": b.ket, "bra": b.bra, "grade": algebra.grade(b)} for b in basis],
        "grade_histogram": {str(k): v for k, v in algebra.grade_histogram().items()},
        "unit": algebra.unit().to_json(),
    }


def hasse_dot(poset: Poset, name: str = "hasse") -> str:
    """Hasse diagram as a DOT digraph with edges pointing upward."""

    def q(s):
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {q(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for element in poset.elements:
        lines.append(f"  {q(element)};")
    for lower, upper in poset.covers():
        lines.append(f"  {q(lower)} -> {q(upper)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
