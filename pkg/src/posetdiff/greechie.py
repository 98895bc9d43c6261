"""Atomic Greechie logics pasted from finite Boolean blocks.

Each block is the Boolean algebra of all subsets of its atoms, so an element
of a block is an atom set and joins inside a block are unions.  Two blocks
may share at most one atom ``v``; they then also share its complement
``v'``, which is ``B_i minus {v}`` in one block and ``B_j minus {v}`` in the
other.  The logic minus its bottom and top is the poset of proper elements.
"""
from __future__ import annotations

import warnings
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .chains import LinearOperator
from .errors import (
    CapExceededError,
    IncomparableError,
    NotInBlockError,
    PastingError,
    UnknownElementError,
)
from .poset import DEFAULT_CAP, Poset
from .simplicial import SimplicialComplex, simplex_name

JOIN = "∨"
PRIME = "'"

_RESERVED = set("{},'") | {JOIN, " ", "\t"}


class DegenerateBlockWarning(UserWarning):
    """A block with two atoms; its proper elements are both atoms."""


@dataclass(frozen=True)
class Block:
    atoms: tuple[str, ...]

    def __post_init__(self):
        if len(self.atoms) < 2:
            raise PastingError(f"a block needs at least 2 atoms, got {list(self.atoms)}")
        if len(set(self.atoms)) != len(self.atoms):
            raise PastingError(f"block {list(self.atoms)} repeats an atom")
        for a in self.atoms:
            if not isinstance(a, str) or not a or _RESERVED & set(a):
                raise PastingError(f"bad atom name {a!r}")

    @property
    def atom_set(self) -> frozenset[str]:
        return frozenset(self.atoms)


@dataclass(frozen=True)
class ProperElement:
    """A proper element and every ``(block index, atom subset)`` naming it."""

    canonical_id: str
    representations: tuple[tuple[int, tuple[str, ...]], ...]

    @property
    def preimages(self) -> list[tuple[str, ...]]:
        """Distinct simplices of the block complex that join to this element."""
        seen = []
        for _, atoms in self.representations:
            if atoms not in seen:
                seen.append(atoms)
        return seen


class GreechieLogic:
    """A validated pasting of Boolean blocks.  Build it with :func:`validate_logic`."""

    def __init__(self, blocks: Sequence[Block], vertex_order: Sequence[str] | None = None):
        self.blocks: tuple[Block, ...] = tuple(blocks)
        universe = {a for b in self.blocks for a in b.atoms}
        if vertex_order is None:
            order = sorted(universe)
        else:
            order = [v for v in vertex_order if v in universe]
            missing = universe - set(order)
            if missing:
                raise PastingError(f"vertex order omits atom {sorted(missing)[0]!r}")
            if len(set(order)) != len(order):
                raise PastingError("vertex order repeats an atom")
        self.atoms: tuple[str, ...] = tuple(order)
        self._position = {a: i for i, a in enumerate(self.atoms)}

    def __repr__(self):
        return f"GreechieLogic({[list(b.atoms) for b in self.blocks]})"

    def sort(self, atoms: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(atoms, key=self._position.__getitem__))

    def shared_atoms(self, i: int, j: int) -> frozenset[str]:
        return self.blocks[i].atom_set & self.blocks[j].atom_set

    @cached_property
    def _classes(self) -> tuple[dict, dict]:
        """Union-find over representations, returning rep -> id and id -> element."""
        parent: dict[tuple[int, frozenset], tuple[int, frozenset]] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry, key=_rep_key)] = min(rx, ry, key=_rep_key)

        for i, block in enumerate(self.blocks):
            for k in range(1, len(block.atoms)):
                for sub in combinations(block.atoms, k):
                    rep = (i, frozenset(sub))
                    parent[rep] = rep

        first_block: dict[str, int] = {}
        for i, block in enumerate(self.blocks):
            for a in block.atoms:
                if a in first_block:
                    union((first_block[a], frozenset([a])), (i, frozenset([a])))
                else:
                    first_block[a] = i
        for i, j in combinations(range(len(self.blocks)), 2):
            for v in self.shared_atoms(i, j):
                union(
                    (i, self.blocks[i].atom_set - {v}),
                    (j, self.blocks[j].atom_set - {v}),
                )

        groups: dict = {}
        for rep in parent:
            groups.setdefault(find(rep), []).append(rep)

        rep_to_id: dict = {}
        elements: dict[str, ProperElement] = {}
        for members in groups.values():
            members.sort(key=_rep_key)
            name = self._name_class(members)
            if name in elements:
                raise PastingError(f"two distinct elements would both be named {name!r}")
            elements[name] = ProperElement(
                name, tuple((i, self.sort(s)) for i, s in members)
            )
            for rep in members:
                rep_to_id[rep] = name
        elements = {k: elements[k] for k in sorted(elements)}
        return rep_to_id, elements

    def _name_class(self, members) -> str:
        singles = sorted(next(iter(s)) for _, s in members if len(s) == 1)
        if singles:
            return singles[0]
        complements = []
        for i, s in members:
            missing = self.blocks[i].atom_set - s
            if len(missing) == 1:
                v = next(iter(missing))
                if any(v in b.atom_set for j, b in enumerate(self.blocks) if j != i):
                    complements.append(v)
        if complements:
            return min(complements) + PRIME
        i, s = members[0]
        return JOIN.join(sorted(s))

    @property
    def proper_elements(self) -> dict[str, ProperElement]:
        return dict(self._classes[1])

    def element(self, name: str) -> ProperElement:
        try:
            return self._classes[1][name]
        except KeyError:
            raise UnknownElementError(name) from None

    def element_of(self, block_index: int, atoms: Iterable[str]) -> str:
        """Canonical id of the element represented by ``atoms`` in one block."""
        rep = (block_index, frozenset(atoms))
        try:
            return self._classes[0][rep]
        except KeyError:
            raise NotInBlockError(
                f"{sorted(rep[1])} is not a proper element of block {block_index}"
            ) from None


def _rep_key(rep):
    i, s = rep
    return (i, len(s), sorted(s))


def validate_logic(
    blocks: Iterable[Iterable[str]], vertex_order: Sequence[str] | None = None
) -> GreechieLogic:
    """Check that the blocks paste into an atomic Greechie logic.

    Distinct blocks may share no atom or exactly one.  A duplicated block or
    two blocks sharing two or more atoms raise :class:`PastingError` with the
    offending block indices and shared atoms attached.
    """
    parsed = [b if isinstance(b, Block) else Block(tuple(b)) for b in blocks]
    for i, j in combinations(range(len(parsed)), 2):
        shared = parsed[i].atom_set & parsed[j].atom_set
        if parsed[i].atom_set == parsed[j].atom_set:
            raise PastingError(
                f"blocks {i} and {j} are the same block {sorted(shared)}",
                blocks=(i, j),
                shared=tuple(sorted(shared)),
            )
        if len(shared) >= 2:
            raise PastingError(
                f"blocks {i} and {j} share atoms {{{', '.join(sorted(shared))}}}; "
                "blocks may share at most one atom",
                blocks=(i, j),
                shared=tuple(sorted(shared)),
            )
    for i, b in enumerate(parsed):
        if len(b.atoms) == 2:
            warnings.warn(
                f"block {i} {list(b.atoms)} has only two atoms; pasting may identify atoms",
                DegenerateBlockWarning,
                stacklevel=2,
            )
    logic = GreechieLogic(parsed, vertex_order)
    logic._classes  # surface naming conflicts at validation time
    return logic


def proper_poset(
    logic: GreechieLogic, *, cap: int | None = DEFAULT_CAP
) -> tuple[Poset, dict[str, ProperElement]]:
    """The poset of proper elements, ordered by inclusion inside blocks."""
    if cap is not None:
        # each shared atom identifies at most two representations
        pairs = combinations(range(len(logic.blocks)), 2)
        shared = sum(len(logic.shared_atoms(i, j)) for i, j in pairs)
        least = sum(2 ** len(b.atoms) - 2 for b in logic.blocks) - 2 * shared
        if least > cap:
            raise CapExceededError(least, cap)
    elements = logic.proper_elements
    relations = []
    for i, block in enumerate(logic.blocks):
        for k in range(1, len(block.atoms) - 1):
            for sub in combinations(block.atoms, k):
                lower = logic.element_of(i, sub)
                for a in block.atoms:
                    if a not in sub:
                        relations.append((lower, logic.element_of(i, sub + (a,))))
    return Poset.from_order(elements, relations, cap=cap), elements


def block_count(logic: GreechieLogic, block_index: int, p: str) -> int:
    """Number of atoms of block ``block_index`` lying below ``p``."""
    reps = [s for i, s in logic.element(p).representations if i == block_index]
    if not reps:
        raise NotInBlockError(f"{p!r} is not an element of block {block_index}")
    if len(reps) > 1:
        raise NotInBlockError(f"{p!r} has several representations in block {block_index}")
    return len(reps[0])


def block_degree(logic: GreechieLogic, p: str, q: str) -> int:
    """``#_i q - #_i p`` in a block ``i`` holding both with ``p`` below ``q``.

    Every block witnessing ``p <= q`` must give the same value.
    """
    ep, eq = logic.element(p), logic.element(q)
    values = set()
    for i, s in ep.representations:
        for j, t in eq.representations:
            if i == j and set(s) <= set(t):
                values.add(len(t) - len(s))
    if not values:
        raise IncomparableError(p, q)
    if len(values) > 1:
        raise NotInBlockError(f"blocks disagree on the degree of ({p!r}, {q!r}): {sorted(values)}")
    return values.pop()


def block_complex(logic: GreechieLogic) -> SimplicialComplex:
    """Simplices are the nonempty proper atom subsets of each block."""
    family = set()
    for block in logic.blocks:
        for k in range(1, len(block.atoms)):
            family.update(combinations(block.atoms, k))
    return SimplicialComplex(logic.atoms, family)


def f_map(logic: GreechieLogic, simplex: Iterable[str]) -> str:
    """The join in the logic of the atoms of a simplex of the block complex."""
    s = frozenset(simplex)
    for i, block in enumerate(logic.blocks):
        if s and s < block.atom_set:
            return logic.element_of(i, s)
    raise NotInBlockError(f"{simplex_name(logic.sort(s))} is not a simplex of the block complex")


def greechie_border(logic: GreechieLogic, poset: Poset | None = None) -> LinearOperator:
    """``d|p> = sum over simplices s with f(s) = p of f(d s)``.

    ``d s`` is the alternating-sign simplicial border in the logic's vertex
    order.  ``poset`` may pass an already built proper poset to reuse.
    """
    if poset is None:
        poset, _ = proper_poset(logic)
    columns = {}
    for name, element in logic.proper_elements.items():
        image: dict[str, int] = {}
        for s in element.preimages:
            if len(s) < 2:
                continue
            for k in range(len(s)):
                target = f_map(logic, s[:k] + s[k + 1:])
                image[target] = image.get(target, 0) + (-1) ** k
        if image:
            columns[name] = image
    return LinearOperator(poset, poset, columns)
