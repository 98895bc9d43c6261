"""Cartan differential on the incidence algebra and its axiom certifier.

Given a Jordan-Hoelder poset and a border operator ``d`` on its chain space,
the differential of a basis pair of grade ``m`` is

    D |p><q| = |dp><q| - (-1)^m |p><qd|

where ``|dp><q|`` keeps only the terms ``|s>`` of ``d|p>`` with ``s <= q`` and
``<qd|`` (the coborder image of ``<q|``) keeps only the terms ``<t|`` with
``p <= t``.  :func:`verify` checks exhaustively over the basis that D raises
grade by one, squares to zero, kills the unit and obeys the graded Leibniz
rule ``D(w w') = Dw w' + (-1)^m w Dw'``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .chains import Chain, LinearOperator
from .errors import CertifierError, DomainMismatchError
from .incidence import AlgebraElement, BasisPair, IncidenceAlgebra
from .poset import Poset, _bits

LEIBNIZ_CONVENTION = "D(w.w') = Dw.w' + (-1)^m w.Dw' for w of grade m"

Term = tuple[int, int]


class DifferentialStructure:
    """A poset together with a border operator, ready for building D."""

    def __init__(self, poset: Poset, border: LinearOperator):
        if border.domain is not poset or border.codomain is not poset:
            raise DomainMismatchError("border operator must act on the poset's own chain space")
        poset.require_jordan_holder()
        self.poset = poset
        self.border = border
        self.algebra = IncidenceAlgebra(poset)

        n = len(poset)
        idx = poset.index
        self._names = poset.elements
        self._up = [poset.up_mask(i) for i in range(n)]
        self._grade_rows = [poset._chain_lengths(i)[0] for i in range(n)]
        self._d: list[dict[int, int]] = [{} for _ in range(n)]
        self._cod: list[dict[int, int]] = [{} for _ in range(n)]
        for p, s, c in border.entries():
            i, k = idx(p), idx(s)
            self._d[i][k] = c
            self._cod[k][i] = c
        self._basis: list[Term] = [
            (i, j) for i in range(n) for j in range(n) if self._up[i] >> j & 1
        ]
        self._D_cache: dict[Term, dict[Term, int]] = {}
        self._certified: bool | None = None

    def __repr__(self):
        return f"DifferentialStructure({self.poset!r}, basis size {len(self._basis)})"

    def _leq(self, i: int, j: int) -> bool:
        return bool(self._up[i] >> j & 1)

    def _grade(self, i: int, j: int) -> int:
        return self._grade_rows[i][j]

    def _D_basis(self, i: int, j: int) -> dict[Term, int]:
        cached = self._D_cache.get((i, j))
        if cached is not None:
            return cached
        out: dict[Term, int] = {}
        for s, c in self._d[i].items():
            if self._leq(s, j):
                out[(s, j)] = c
        sign = -1 if self._grade(i, j) % 2 == 0 else 1
        for t, c in self._cod[j].items():
            if self._leq(i, t):
                key = (i, t)
                out[key] = out.get(key, 0) + sign * c
        out = {k: v for k, v in out.items() if v}
        self._D_cache[(i, j)] = out
        return out

    def _D_sparse(self, x: dict[Term, int]) -> dict[Term, int]:
        out: dict[Term, int] = {}
        for (i, j), c in x.items():
            for key, e in self._D_basis(i, j).items():
                out[key] = out.get(key, 0) + c * e
        return {k: v for k, v in out.items() if v}

    def _named(self, term: Term) -> list[str]:
        return [self._names[term[0]], self._names[term[1]]]

    def _to_element(self, sparse: dict[Term, int]) -> AlgebraElement:
        names = self._names
        return AlgebraElement._raw(
            self.algebra, {BasisPair(names[i], names[j]): c for (i, j), c in sparse.items()}
        )

    def structure_issues(self) -> list[str]:
        """Violations of ``d^2 = 0`` and of the border grading condition."""
        issues = []
        bad = _d_squared_failure(self)
        if bad is not None:
            issues.append(f"d^2 |{bad['column']}> is nonzero")
        bad = _border_grading_failure(self)
        if bad is not None:
            issues.append(f"|d {bad['pair'][0]}><{bad['pair'][1]}| does not raise grade by one")
        return issues

    def require_certified(self) -> None:
        if self._certified is None:
            self._certified = not self.structure_issues()
        if not self._certified:
            raise CertifierError("; ".join(self.structure_issues()))


def restrict_ket(structure: DifferentialStructure, d_image: Chain, q: str) -> Chain:
    """Keep the terms ``|s>`` of ``d_image`` with ``s <= q``."""
    poset = structure.poset
    if d_image.poset is not poset:
        raise DomainMismatchError("chain does not live over the structure's poset")
    return Chain._raw(poset, {s: c for s, c in d_image if poset.leq(s, q)})


def cartan_D(
    structure: DifferentialStructure, x: AlgebraElement, *, strict: bool = True
) -> AlgebraElement:
    """Apply D to ``x`` term by term.

    With ``strict`` (the default) the border is first certified to satisfy
    ``d^2 = 0`` and the grading condition, raising :class:`CertifierError`
    otherwise.
    """
    if x.algebra.poset is not structure.poset:
        raise DomainMismatchError("element does not belong to the structure's algebra")
    if strict:
        structure.require_certified()
    idx = structure.poset.index
    sparse = {(idx(p.ket), idx(p.bra)): c for p, c in x}
    return structure._to_element(structure._D_sparse(sparse))


@dataclass
class CheckResult:
    passed: bool
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "counterexample": self.counterexample}


@dataclass
class AxiomReport:
    grading_shift: CheckResult
    d_squared: CheckResult
    D_squared: CheckResult
    unit_annihilated: CheckResult
    leibniz: CheckResult
    border_grading: CheckResult
    basis_size: int
    grade_histogram: dict[int, int]
    leibniz_pairs_checked: int = 0
    conventions: dict = field(default_factory=lambda: {"leibniz": LEIBNIZ_CONVENTION})

    CHECKS = ("grading_shift", "d_squared", "D_squared", "unit_annihilated", "leibniz", "border_grading")

    @property
    def all_passed(self) -> bool:
        return all(getattr(self, name).passed for name in self.CHECKS)

    @property
    def counterexamples(self) -> list[dict]:
        out = []
        for name in self.CHECKS:
            result = getattr(self, name)
            if result.counterexample is not None:
                out.append({"check": name, **result.counterexample})
        return out

    def to_json(self) -> dict:
        data = {name: getattr(self, name).to_json() for name in self.CHECKS}
        data.update(
            all_passed=self.all_passed,
            basis_size=self.basis_size,
            grade_histogram={str(k): v for k, v in self.grade_histogram.items()},
            leibniz_pairs_checked=self.leibniz_pairs_checked,
            counterexamples=self.counterexamples,
            conventions=self.conventions,
        )
        return data

    def to_text(self) -> str:
        labels = {
            "grading_shift": "D raises grade by one",
            "d_squared": "d^2 = 0",
            "D_squared": "D^2 = 0",
            "unit_annihilated": "D1 = 0",
            "leibniz": "graded Leibniz rule",
            "border_grading": "border raises |dp><q| grade by one",
        }
        lines = []
        for name in self.CHECKS:
            result = getattr(self, name)
            status = "PASS" if result.passed else "FAIL"
            line = f"{status}  {name:<17} {labels[name]}"
            if result.counterexample is not None:
                line += f"  counterexample: {_describe(result.counterexample)}"
            lines.append(line)
        hist = ", ".join(f"{k}:{v}" for k, v in self.grade_histogram.items())
        lines.append(f"basis size {self.basis_size}; grades {{{hist}}}")
        lines.append(f"leibniz pairs checked {self.leibniz_pairs_checked}")
        lines.append(f"leibniz convention: {LEIBNIZ_CONVENTION}")
        lines.append("RESULT: " + ("all checks pass" if self.all_passed else "axioms violated"))
        return "\n".join(lines) + "\n"


def _describe(example: dict) -> str:
    parts = []
    for key, value in example.items():
        if isinstance(value, list) and value and isinstance(value[0], str):
            value = f"|{value[0]}><{value[1]}|"
        elif isinstance(value, list) and value and isinstance(value[0], list):
            value = " * ".join(f"|{a}><{b}|" for a, b in value)
        parts.append(f"{key}={value}")
    return ", ".join(parts)


def _sparse_json(structure, sparse: dict[Term, int]) -> list[dict]:
    names = structure._names
    return [
        {"ket": names[i], "bra": names[j], "coeff": c}
        for (i, j), c in sorted(sparse.items(), key=lambda kv: (names[kv[0][0]], names[kv[0][1]]))
    ]


def _d_squared_failure(structure: DifferentialStructure) -> dict | None:
    names = structure._names
    for i in range(len(names)):
        out: dict[int, int] = {}
        for k, c in structure._d[i].items():
            for s, e in structure._d[k].items():
                out[s] = out.get(s, 0) + c * e
        out = {s: v for s, v in out.items() if v}
        if out:
            return {
                "column": names[i],
                "image": [{"element": names[s], "coeff": v} for s, v in sorted(out.items())],
            }
    return None


def _border_grading_failure(structure: DifferentialStructure) -> dict | None:
    for i, j in structure._basis:
        m = structure._grade(i, j)
        for s in structure._d[i]:
            if structure._leq(s, j) and structure._grade(s, j) != m + 1:
                return {"pair": structure._named((i, j)), "term": structure._names[s]}
    return None


def verify(structure: DifferentialStructure) -> AxiomReport:
    """Check every differential-calculus axiom exhaustively over the basis.

    Failures are reported with the first counterexample in basis order; no
    exception is raised for a failing axiom.
    """
    s = structure
    basis = s._basis
    grade = s._grade

    shift = CheckResult(True)
    for i, j in basis:
        m = grade(i, j)
        for (x, y) in s._D_basis(i, j):
            if grade(x, y) != m + 1:
                shift = CheckResult(
                    False, {"pair": s._named((i, j)), "term": s._named((x, y)), "grade": m}
                )
                break
        if not shift.passed:
            break

    dd = _d_squared_failure(s)
    d_squared = CheckResult(dd is None, dd)

    bg = _border_grading_failure(s)
    border_grading = CheckResult(bg is None, bg)

    D_squared = CheckResult(True)
    for i, j in basis:
        twice = s._D_sparse(s._D_basis(i, j))
        if twice:
            D_squared = CheckResult(
                False, {"pair": s._named((i, j)), "image": _sparse_json(s, twice)}
            )
            break

    unit_image = s._D_sparse({(i, i): 1 for i in range(len(s._names))})
    unit = CheckResult(
        not unit_image, {"image": _sparse_json(s, unit_image)} if unit_image else None
    )

    leibniz = CheckResult(True)
    checked = 0
    for p, q in basis:
        m = grade(p, q)
        d_left = s._D_basis(p, q)
        sign = -1 if m % 2 else 1
        for r in sorted({q, *s._cod[q]}):
            for t in _bits(s._up[r]):
                checked += 1
                lhs = dict(s._D_basis(p, t)) if q == r else {}
                rhs: dict[Term, int] = {}
                for (x, y), c in d_left.items():
                    if y == r:
                        rhs[(x, t)] = rhs.get((x, t), 0) + c
                for (x, y), c in s._D_basis(r, t).items():
                    if x == q:
                        rhs[(p, y)] = rhs.get((p, y), 0) + sign * c
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    leibniz = CheckResult(
                        False,
                        {
                            "pairs": [s._named((p, q)), s._named((r, t))],
                            "lhs": _sparse_json(s, lhs),
                            "rhs": _sparse_json(s, rhs),
                        },
                    )
                    break
            if not leibniz.passed:
                break
        if not leibniz.passed:
            break

    histogram = Counter(grade(i, j) for i, j in basis)
    return AxiomReport(
        grading_shift=shift,
        d_squared=d_squared,
        D_squared=D_squared,
        unit_annihilated=unit,
        leibniz=leibniz,
        border_grading=border_grading,
        basis_size=len(basis),
        grade_histogram=dict(sorted(histogram.items())),
        leibniz_pairs_checked=checked,
    )
