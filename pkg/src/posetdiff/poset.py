"""Finite posets given by their cover relation.

Elements are identified by name.  Internally every element gets an integer
index in lexicographic order and the order relation is kept as one bitset
(a Python ``int``) of up-set members per element.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import (
    CapExceededError,
    IncomparableError,
    InvalidPosetError,
    NotJordanHolderError,
    UnknownElementError,
)

DEFAULT_CAP = 4096


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """An immutable finite partial order.

    >>> P = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    >>> P.leq("a", "c"), P.chain_degree("a", "c")
    (True, 2)
    """

    def __init__(
        self,
        elements: Iterable[str],
        covers: Iterable[tuple[str, str]] = (),
        *,
        cap: int | None = DEFAULT_CAP,
    ):
        names = list(elements)
        for name in names:
            if not isinstance(name, str) or not name:
                raise InvalidPosetError(f"element names must be non-empty strings, got {name!r}")
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise InvalidPosetError(f"duplicate element {dupes[0]!r}")
        if cap is not None and len(names) > cap:
            raise CapExceededError(len(names), cap)

        self._elements: tuple[str, ...] = tuple(sorted(names))
        self._index = {name: i for i, name in enumerate(self._elements)}
        n = len(self._elements)

        up: list[list[int]] = [[] for _ in range(n)]
        cover_set = set()
        for lower, upper in covers:
            i, j = self._idx(lower), self._idx(upper)
            if i == j:
                raise InvalidPosetError(f"cover {lower!r} < {upper!r} is a loop")
            if (i, j) not in cover_set:
                cover_set.add((i, j))
                up[i].append(j)
        self._upper_covers = tuple(tuple(sorted(row)) for row in up)
        lower_covers: list[list[int]] = [[] for _ in range(n)]
        for i, row in enumerate(self._upper_covers):
            for j in row:
                lower_covers[j].append(i)
        self._lower_covers = tuple(tuple(row) for row in lower_covers)

        self._topo = self._toposort()
        self._up = [0] * n
        for i in reversed(self._topo):
            mask = 1 << i
            for j in self._upper_covers[i]:
                mask |= self._up[j]
            self._up[i] = mask
        for i, j in sorted(cover_set):
            for k in self._upper_covers[i]:
                if k != j and self._up[k] >> j & 1:
                    raise InvalidPosetError(
                        f"{self._elements[i]!r} < {self._elements[j]!r} is not a cover: "
                        f"{self._elements[k]!r} lies strictly between"
                    )
        self._up = tuple(self._up)
        self._down = [0] * n
        for i in range(n):
            for j in _bits(self._up[i]):
                self._down[j] |= 1 << i
        self._down = tuple(self._down)

        # source index -> (shortest, longest) cover-path lengths to every index
        self._lengths: dict[int, tuple[list[int], list[int]]] = {}
        self._jordan_holder: tuple[bool, tuple[str, str] | None] | None = None

    @classmethod
    def from_order(
        cls,
        elements: Iterable[str],
        relations: Iterable[tuple[str, str]],
        *,
        cap: int | None = DEFAULT_CAP,
    ) -> Poset:
        """Build a poset from any generating set of relations ``p <= q``.

        The relations are closed reflexively and transitively and the covers
        are read off as the transitive reduction.
        """
        names = sorted(set(elements))
        if cap is not None and len(names) > cap:
            raise CapExceededError(len(names), cap)
        index = {name: i for i, name in enumerate(names)}
        n = len(names)
        succ = [0] * n
        for p, q in relations:
            if p not in index:
                raise UnknownElementError(p)
            if q not in index:
                raise UnknownElementError(q)
            if p != q:
                succ[index[p]] |= 1 << index[q]
        reach = [s | (1 << i) for i, s in enumerate(succ)]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                mask = reach[i]
                for j in _bits(mask & ~(1 << i)):
                    mask |= reach[j]
                if mask != reach[i]:
                    reach[i] = mask
                    changed = True
        covers = []
        for i in range(n):
            strict = reach[i] & ~(1 << i)
            for j in _bits(strict):
                if reach[j] >> i & 1:
                    raise InvalidPosetError(
                        f"relations are not antisymmetric: {names[i]!r} and {names[j]!r}"
                    )
                between = 0
                for k in _bits(strict & ~(1 << j)):
                    between |= reach[k]
                if not between >> j & 1:
                    covers.append((names[i], names[j]))
        return cls(names, covers, cap=cap)

    def _idx(self, name: str) -> int:
        try:
            return self._index[name]
        except (KeyError, TypeError):
            raise UnknownElementError(name) from None

    def _toposort(self) -> list[int]:
        indegree = [len(row) for row in self._lower_covers]
        ready = [i for i, d in enumerate(indegree) if d == 0]
        order = []
        while ready:
            i = ready.pop()
            order.append(i)
            for j in self._upper_covers[i]:
                indegree[j] -= 1
                if indegree[j] == 0:
                    ready.append(j)
        if len(order) != len(indegree):
            stuck = min(i for i, d in enumerate(indegree) if d > 0)
            raise InvalidPosetError(f"cover relation has a cycle through {self._elements[stuck]!r}")
        return order

    @property
    def elements(self) -> tuple[str, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self._elements)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.covers())} covers)"

    def index(self, name: str) -> int:
        return self._idx(name)

    def covers(self) -> list[tuple[str, str]]:
        """All cover pairs ``(lower, upper)`` in lexicographic order."""
        el = self._elements
        return [(el[i], el[j]) for i, row in enumerate(self._upper_covers) for j in row]

    def upper_covers(self, p: str) -> tuple[str, ...]:
        return tuple(self._elements[j] for j in self._upper_covers[self._idx(p)])

    def lower_covers(self, p: str) -> tuple[str, ...]:
        return tuple(self._elements[j] for j in self._lower_covers[self._idx(p)])

    def leq(self, p: str, q: str) -> bool:
        return bool(self._up[self._idx(p)] >> self._idx(q) & 1)

    def lt(self, p: str, q: str) -> bool:
        return p != q and self.leq(p, q)

    def up_set(self, p: str) -> list[str]:
        return [self._elements[j] for j in _bits(self._up[self._idx(p)])]

    def down_set(self, p: str) -> list[str]:
        return [self._elements[j] for j in _bits(self._down[self._idx(p)])]

    def comparable_pairs(self) -> Iterator[tuple[str, str]]:
        """Every pair ``(p, q)`` with ``p <= q``, ordered by p then q."""
        el = self._elements
        for i in range(len(el)):
            for j in _bits(self._up[i]):
                yield el[i], el[j]

    # index-level access used by the algebra layers
    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def maximal_chains(self, p: str, q: str) -> list[tuple[str, ...]]:
        """All saturated chains ``p < r < ... < q``, in lexicographic order."""
        i, j = self._idx(p), self._idx(q)
        if not self._up[i] >> j & 1:
            raise IncomparableError(p, q)
        el = self._elements
        below_q = self._down[j]
        chains = []
        path = [i]

        def walk(k):
            if k == j:
                chains.append(tuple(el[x] for x in path))
                return
            for nxt in self._upper_covers[k]:
                if below_q >> nxt & 1:
                    path.append(nxt)
                    walk(nxt)
                    path.pop()

        walk(i)
        return sorted(chains)

    def _chain_lengths(self, i: int) -> tuple[list[int], list[int]]:
        cached = self._lengths.get(i)
        if cached is not None:
            return cached
        n = len(self._elements)
        shortest = [-1] * n
        longest = [-1] * n
        shortest[i] = longest[i] = 0
        reach = self._up[i]
        for k in self._topo:
            if not reach >> k & 1 or shortest[k] < 0:
                continue
            for nxt in self._upper_covers[k]:
                if shortest[nxt] < 0 or shortest[k] + 1 < shortest[nxt]:
                    shortest[nxt] = shortest[k] + 1
                if longest[k] + 1 > longest[nxt]:
                    longest[nxt] = longest[k] + 1
        self._lengths[i] = (shortest, longest)
        return shortest, longest

    def is_jordan_holder(self) -> tuple[bool, tuple[str, str] | None]:
        """Check that maximal chains between any comparable pair share a length.

        Returns ``(True, None)`` or ``(False, (p, q))`` for the first
        violating pair in lexicographic order.
        """
        if self._jordan_holder is None:
            result: tuple[bool, tuple[str, str] | None] = (True, None)
            for i in range(len(self._elements)):
                shortest, longest = self._chain_lengths(i)
                bad = [j for j in _bits(self._up[i]) if shortest[j] != longest[j]]
                if bad:
                    result = (False, (self._elements[i], self._elements[bad[0]]))
                    break
            self._jordan_holder = result
        return self._jordan_holder

    def require_jordan_holder(self) -> None:
        ok, pair = self.is_jordan_holder()
        if not ok:
            raise NotJordanHolderError(pair)

    def chain_degree(self, p: str, q: str) -> int:
        """Length (number of covers) of any maximal chain from p to q."""
        return self.degree_at(self._idx(p), self._idx(q))

    def degree_at(self, i: int, j: int) -> int:
        if not self._up[i] >> j & 1:
            raise IncomparableError(self._elements[i], self._elements[j])
        self.require_jordan_holder()
        return self._chain_lengths(i)[0][j]
