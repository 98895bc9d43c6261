"""The incidence algebra of a finite poset.

The algebra is spanned by symbols ``|p><q|`` for ``p <= q`` with the product
``|p><q| . |r><s| = |p><s|`` when ``q == r`` and zero otherwise.  The
diagonal symbols span the commutative algebra of scalars; the strictly
increasing ones span the module of differentials.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from typing import NamedTuple

from .errors import DomainMismatchError, IncomparableError, UnknownElementError
from .poset import Poset


class BasisPair(NamedTuple):
    """The symbol ``|ket><bra|``; legal only when ``ket <= bra``."""

    ket: str
    bra: str

    def __str__(self):
        return f"|{self.ket}><{self.bra}|"


class AlgebraElement:
    """A finite integer combination of basis pairs of one incidence algebra."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: IncidenceAlgebra, terms: Mapping | Iterable = ()):
        self.algebra = algebra
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[BasisPair, int] = {}
        for pair, c in items:
            pair = algebra.pair(*pair)
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be integers, got {c!r}")
            out[pair] = out.get(pair, 0) + c
        self._terms = {k: out[k] for k in sorted(out) if out[k]}

    @classmethod
    def _raw(cls, algebra, terms):
        x = cls.__new__(cls)
        x.algebra = algebra
        x._terms = {k: terms[k] for k in sorted(terms) if terms[k]}
        return x

    @property
    def terms(self) -> dict[BasisPair, int]:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, pair) -> int:
        return self._terms.get(BasisPair(*pair), 0)

    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        if other.algebra.poset is not self.algebra.poset:
            raise DomainMismatchError("elements of different incidence algebras")
        return True

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.poset is other.algebra.poset and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return self._raw(self.algebra, out)

    def __neg__(self):
        return self._raw(self.algebra, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._raw(self.algebra, {k: other * c for k, c in self._terms.items()})
        if not self._same(other):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return self * scalar

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for pair, c in self._terms.items():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign} {mag}{pair}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self) -> list[dict]:
        """Terms as ``{ket, bra, coeff}`` records ordered by ket then bra."""
        return [{"ket": p.ket, "bra": p.bra, "coeff": c} for p, c in self._terms.items()]


class IncidenceAlgebra:
    """Incidence algebra of ``poset`` with a grade cache for its basis."""

    def __init__(self, poset: Poset):
        self.poset = poset
        self._grades: dict[BasisPair, int] = {}

    def pair(self, ket: str, bra: str) -> BasisPair:
        if ket not in self.poset:
            raise UnknownElementError(ket)
        if bra not in self.poset:
            raise UnknownElementError(bra)
        if not self.poset.leq(ket, bra):
            raise IncomparableError(ket, bra)
        return BasisPair(ket, bra)

    def element(self, terms=()) -> AlgebraElement:
        return AlgebraElement(self, terms)

    def zero(self) -> AlgebraElement:
        return AlgebraElement._raw(self, {})

    def basis(self) -> list[BasisPair]:
        """Every pair ``|p><q|`` with ``p <= q``, ordered by ket then bra."""
        return [BasisPair(p, q) for p, q in self.poset.comparable_pairs()]

    def unit(self) -> AlgebraElement:
        return AlgebraElement._raw(self, {BasisPair(p, p): 1 for p in self.poset})

    def grade(self, pair) -> int:
        pair = BasisPair(*pair)
        g = self._grades.get(pair)
        if g is None:
            g = self._grades[pair] = self.poset.chain_degree(pair.ket, pair.bra)
        return g

    def grade_histogram(self) -> dict[int, int]:
        counts = Counter(self.grade(b) for b in self.basis())
        return dict(sorted(counts.items()))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra.poset is not y.algebra.poset:
        raise DomainMismatchError("elements of different incidence algebras")
    by_ket: dict[str, list[tuple[str, int]]] = {}
    for (r, s), c in y._terms.items():
        by_ket.setdefault(r, []).append((s, c))
    out: dict[BasisPair, int] = {}
    for (p, q), a in x._terms.items():
        for s, b in by_ket.get(q, ()):
            key = BasisPair(p, s)
            out[key] = out.get(key, 0) + a * b
    return AlgebraElement._raw(x.algebra, out)


def unit(algebra: IncidenceAlgebra) -> AlgebraElement:
    return algebra.unit()


def is_scalar(x: AlgebraElement) -> bool:
    return all(p.ket == p.bra for p in x._terms)


def split_scalar_differential(x: AlgebraElement) -> tuple[AlgebraElement, AlgebraElement]:
    """Split ``x`` into its diagonal part and its part in the module of differentials."""
    diag = {p: c for p, c in x._terms.items() if p.ket == p.bra}
    rest = {p: c for p, c in x._terms.items() if p.ket != p.bra}
    return AlgebraElement._raw(x.algebra, diag), AlgebraElement._raw(x.algebra, rest)


def decompose(x: AlgebraElement) -> dict[int, AlgebraElement]:
    """Homogeneous components of ``x`` keyed by grade; zero parts are omitted."""
    parts: dict[int, dict[BasisPair, int]] = {}
    for pair, c in x._terms.items():
        parts.setdefault(x.algebra.grade(pair), {})[pair] = c
    return {g: AlgebraElement._raw(x.algebra, parts[g]) for g in sorted(parts)}
