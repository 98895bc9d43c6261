"""Integer ket and bra vectors over the elements of a poset, and operators on them."""
from __future__ import annotations

from collections.abc import Iterable, Mapping

from .errors import DomainMismatchError, UnknownElementError
from .poset import Poset


def _clean(poset: Poset, coefficients: Mapping[str, int] | Iterable[tuple[str, int]]) -> dict[str, int]:
    items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
    out: dict[str, int] = {}
    for name, c in items:
        if name not in poset:
            raise UnknownElementError(name)
        if not isinstance(c, int):
            raise TypeError(f"coefficients must be integers, got {c!r}")
        out[name] = out.get(name, 0) + c
    return {k: out[k] for k in sorted(out) if out[k]}


class _Vector:
    _bracket = ("?", "?")

    __slots__ = ("poset", "_coeffs")

    def __init__(self, poset: Poset, coefficients=()):
        self.poset = poset
        self._coeffs = _clean(poset, coefficients)

    @classmethod
    def basis(cls, poset: Poset, name: str):
        return cls(poset, {name: 1})

    @classmethod
    def _raw(cls, poset, coeffs):
        v = cls.__new__(cls)
        v.poset = poset
        v._coeffs = {k: coeffs[k] for k in sorted(coeffs) if coeffs[k]}
        return v

    @property
    def coefficients(self) -> dict[str, int]:
        return dict(self._coeffs)

    def __getitem__(self, name: str) -> int:
        return self._coeffs.get(name, 0)

    def __iter__(self):
        return iter(self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.poset is not self.poset:
            raise DomainMismatchError("vectors live over different posets")
        return None

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.poset is other.poset and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((id(self.poset), tuple(self._coeffs.items())))

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return self._raw(self.poset, out)

    def __neg__(self):
        return self._raw(self.poset, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rmul__(self, scalar: int):
        if not isinstance(scalar, int):
            return NotImplemented
        return self._raw(self.poset, {k: scalar * c for k, c in self._coeffs.items()})

    def __repr__(self):
        if not self._coeffs:
            return "0"
        left, right = self._bracket
        parts = []
        for k, c in self._coeffs.items():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign} {mag}{left}{k}{right}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


class Chain(_Vector):
    """A finite integer combination of kets ``|p>``."""

    _bracket = ("|", ">")
    __slots__ = ()


class Cochain(_Vector):
    """A finite integer combination of bras ``<p|``."""

    _bracket = ("<", "|")
    __slots__ = ()


def pairing(b: Cochain, k: Chain) -> int:
    """Evaluate ``<b|k>`` with ``<p|q> = 1`` if p == q and 0 otherwise."""
    if b.poset is not k.poset:
        raise DomainMismatchError("bra and ket live over different posets")
    small, large = (b._coeffs, k._coeffs) if len(b) <= len(k) else (k._coeffs, b._coeffs)
    return sum(c * large.get(name, 0) for name, c in small.items())


class LinearOperator:
    """A linear map between chain spaces, stored column by column.

    ``columns[p]`` is the image of the basis ket ``|p>``; basis kets with no
    entry map to zero.
    """

    def __init__(
        self,
        domain: Poset,
        codomain: Poset | None = None,
        columns: Mapping[str, Mapping[str, int] | Chain] | None = None,
    ):
        self.domain = domain
        self.codomain = domain if codomain is None else codomain
        cols: dict[str, Chain] = {}
        for p, image in (columns or {}).items():
            if p not in domain:
                raise UnknownElementError(p)
            if isinstance(image, Chain):
                if image.poset is not self.codomain:
                    raise DomainMismatchError(f"column {p!r} lives over another poset")
            else:
                image = Chain(self.codomain, image)
            if image:
                cols[p] = image
        self._columns = {p: cols[p] for p in sorted(cols)}

    @classmethod
    def identity(cls, poset: Poset) -> LinearOperator:
        return cls(poset, poset, {p: {p: 1} for p in poset})

    @classmethod
    def zero(cls, domain: Poset, codomain: Poset | None = None) -> LinearOperator:
        return cls(domain, codomain)

    @property
    def columns(self) -> dict[str, Chain]:
        return dict(self._columns)

    def column(self, p: str) -> Chain:
        if p not in self.domain:
            raise UnknownElementError(p)
        return self._columns.get(p) or Chain(self.codomain)

    def is_zero(self) -> bool:
        return not self._columns

    def entries(self):
        """Yield ``(column, row, coefficient)`` for every nonzero matrix entry."""
        for p, image in self._columns.items():
            for s, c in image:
                yield p, s, c

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return (
            self.domain is other.domain
            and self.codomain is other.codomain
            and self._columns == other._columns
        )

    def __repr__(self):
        body = ", ".join(f"{p}: {img!r}" for p, img in self._columns.items())
        return f"LinearOperator({{{body}}})"

    def apply(self, k: Chain) -> Chain:
        return apply(self, k)

    def adjoint_apply(self, b: Cochain) -> Cochain:
        return adjoint_apply(self, b)


def apply(op: LinearOperator, k: Chain) -> Chain:
    if k.poset is not op.domain:
        raise DomainMismatchError("chain does not live over the operator's domain")
    out: dict[str, int] = {}
    for p, c in k:
        image = op._columns.get(p)
        if image is None:
            continue
        for s, e in image:
            out[s] = out.get(s, 0) + c * e
    return Chain._raw(op.codomain, out)


def adjoint_apply(op: LinearOperator, b: Cochain) -> Cochain:
    """The coborder action ``<b| -> <b d|`` fixed by ``<b d|k> = <b|d k>``."""
    if b.poset is not op.codomain:
        raise DomainMismatchError("cochain does not live over the operator's codomain")
    out: dict[str, int] = {}
    for p, image in op._columns.items():
        value = pairing(b, image)
        if value:
            out[p] = value
    return Cochain._raw(op.domain, out)


def compose(op2: LinearOperator, op1: LinearOperator) -> LinearOperator:
    """The operator ``op2 . op1`` (apply op1 first)."""
    if op1.codomain is not op2.domain:
        raise DomainMismatchError("codomain of the inner operator is not the domain of the outer")
    cols = {p: apply(op2, image) for p, image in op1._columns.items()}
    return LinearOperator(op1.domain, op2.codomain, cols)
