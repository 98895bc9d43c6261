"""Abstract simplicial complexes, their face posets and border operators."""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from itertools import combinations

from .chains import LinearOperator
from .errors import InvalidComplexError
from .poset import DEFAULT_CAP, Poset

Simplex = tuple  # vertex names sorted by the complex's vertex order

_RESERVED = set("{},") | {" ", "\t"}


def simplex_name(simplex: Sequence[str]) -> str:
    """Element name used for a simplex in the face poset, e.g. ``{a,b}``."""
    return "{" + ",".join(simplex) + "}"


def dim(simplex: Sequence[str]) -> int:
    if len(simplex) == 0:
        raise InvalidComplexError("the empty set is not a simplex")
    return len(simplex) - 1


class SimplicialComplex:
    """A family of nonempty vertex sets over a totally ordered vertex set.

    The constructor only checks that simplices are nonempty sets of declared
    vertices; downward closure is checked by :meth:`validate` and required by
    :func:`face_poset` and :func:`border`.  Use :func:`close_downward` to
    generate a complex from generator simplices.
    """

    def __init__(self, vertices: Iterable[str], simplices: Iterable[Iterable[str]] = ()):
        verts = list(vertices)
        if len(set(verts)) != len(verts):
            raise InvalidComplexError("duplicate vertex in vertex order")
        for v in verts:
            if not isinstance(v, str) or not v or _RESERVED & set(v):
                raise InvalidComplexError(f"bad vertex name {v!r}")
        self.vertices: tuple[str, ...] = tuple(verts)
        self._position = {v: i for i, v in enumerate(verts)}
        family = set()
        for s in simplices:
            s = set(s)
            if not s:
                raise InvalidComplexError("the empty set is not a simplex")
            unknown = s - self._position.keys()
            if unknown:
                raise InvalidComplexError(f"simplex uses undeclared vertex {sorted(unknown)[0]!r}")
            family.add(self.sort(s))
        self.simplices: tuple[Simplex, ...] = tuple(
            sorted(family, key=lambda s: (len(s), [self._position[v] for v in s]))
        )
        self._members = frozenset(self.simplices)

    def sort(self, vertices: Iterable[str]) -> Simplex:
        """Order vertices by the complex's vertex order."""
        return tuple(sorted(vertices, key=self._position.__getitem__))

    def __contains__(self, simplex) -> bool:
        try:
            return self.sort(simplex) in self._members
        except KeyError:
            return False

    def __len__(self) -> int:
        return len(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self)} simplices)"

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def validate(self) -> tuple[bool, Simplex | None]:
        """Return ``(True, None)`` if downward closed, else the first missing face."""
        for s in self.simplices:
            for k in range(len(s) - 1, 0, -1):
                for face in combinations(s, k):
                    if face not in self._members:
                        return False, face
        return True, None

    def require_valid(self) -> None:
        ok, missing = self.validate()
        if not ok:
            raise InvalidComplexError(
                f"missing face {simplex_name(missing)}", missing_face=missing
            )


def close_downward(
    simplices: Iterable[Iterable[str]], vertices: Sequence[str] | None = None
) -> SimplicialComplex:
    """Smallest complex containing the given generator simplices.

    Without an explicit ``vertices`` order the used vertex names are sorted
    lexicographically.
    """
    gens = [tuple(s) for s in simplices]
    for s in gens:
        if not s:
            raise InvalidComplexError("the empty set is not a simplex")
    if vertices is None:
        vertices = sorted({v for s in gens for v in s})
    family = set()
    for s in gens:
        s = tuple(sorted(set(s)))
        for k in range(1, len(s) + 1):
            family.update(combinations(s, k))
    return SimplicialComplex(vertices, family)


def face_poset(complex: SimplicialComplex, *, cap: int | None = DEFAULT_CAP) -> Poset:
    """Simplices ordered by inclusion; covers are codimension-one faces."""
    complex.require_valid()
    names = [simplex_name(s) for s in complex.simplices]
    covers = []
    for s in complex.simplices:
        if len(s) > 1:
            for i in range(len(s)):
                covers.append((simplex_name(s[:i] + s[i + 1:]), simplex_name(s)))
    return Poset(names, covers, cap=cap)


def border(complex: SimplicialComplex, poset: Poset | None = None) -> LinearOperator:
    """Alternating-sign border ``d|v0..vm> = sum_i (-1)^i |v0..^vi..vm>``.

    Vertices are numbered by the complex's vertex order; ``d`` of a vertex is
    zero.  ``poset`` may pass an already built face poset to reuse.
    """
    if poset is None:
        poset = face_poset(complex)
    else:
        complex.require_valid()
    columns = {}
    for s in complex.simplices:
        if len(s) < 2:
            continue
        columns[simplex_name(s)] = {
            simplex_name(s[:i] + s[i + 1:]): (-1) ** i for i in range(len(s))
        }
    return LinearOperator(poset, poset, columns)
