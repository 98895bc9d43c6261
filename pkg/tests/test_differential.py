import json

import numpy as np
import pytest

from conftest import (
    GREECHIE_CORPUS,
    flip_sign,
    full_simplex,
    greechie_structure,
    random_complexes,
    simplicial_structure,
)
from posetdiff.chains import Chain, LinearOperator, apply
from posetdiff.differential import DifferentialStructure, cartan_D, restrict_ket, verify
from posetdiff.errors import CertifierError, NotJordanHolderError
from posetdiff.poset import Poset


@pytest.fixture
def triangle():
    return simplicial_structure(full_simplex(2))


def test_restrict_ket(triangle):
    P, d = triangle.poset, triangle.border
    image = apply(d, Chain.basis(P, "{a,b}"))
    assert restrict_ket(triangle, image, "{a,b,c}") == Chain(P, {"{b}": 1, "{a}": -1})
    # faces of p lie below p itself, so nothing is dropped for q = p
    assert restrict_ket(triangle, image, "{a,b}") == image
    assert restrict_ket(triangle, image, "{b,c}") == Chain(P, {"{b}": 1})
    assert not restrict_ket(triangle, Chain(P), "{a}")


def test_cartan_D_two_blocks():
    S = greechie_structure("two_blocks")
    A = S.algebra
    assert cartan_D(S, A.element({("a", "a"): 1})) == A.element(
        {("a", "a∨c"): 1, ("a", "c'"): 1}
    )
    assert cartan_D(S, A.zero()) == A.zero()
    assert cartan_D(S, A.element({("a", "a∨c"): 1})) == A.zero()


def test_cartan_D_is_linear(triangle):
    A = triangle.algebra
    x = A.element({("{a}", "{a,b}"): 3, ("{b}", "{b}"): -2})
    y = A.element({("{a,b}", "{a,b,c}"): 5})
    assert cartan_D(triangle, x + y) == cartan_D(triangle, x) + cartan_D(triangle, y)
    assert cartan_D(triangle, 4 * x) == 4 * cartan_D(triangle, x)


def test_D_squared_and_unit(triangle):
    A = triangle.algebra
    for pair in A.basis():
        once = cartan_D(triangle, A.element({pair: 1}))
        for term, _ in once:
            assert A.grade(term) == A.grade(pair) + 1
        assert not cartan_D(triangle, once)
    assert not cartan_D(triangle, A.unit())


def test_verify_passes_on_families():
    for K in [full_simplex(n) for n in range(5)] + random_complexes(20, seed=7, max_vertices=5):
        assert verify(simplicial_structure(K)).all_passed
    assert verify(greechie_structure("two_blocks")).all_passed


def test_corrupted_border_is_caught(triangle):
    bad = flip_sign(triangle.border, "{a,b,c}", "{a,b}")
    report = verify(DifferentialStructure(triangle.poset, bad))
    assert not report.all_passed
    assert not report.d_squared.passed
    assert report.d_squared.counterexample["column"] == "{a,b,c}"
    assert report.counterexamples
    with pytest.raises(CertifierError):
        cartan_D(DifferentialStructure(triangle.poset, bad), triangle.algebra.unit())


def test_grading_violation_reported():
    P = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    # d jumps two levels: |c> -> |a>
    d = LinearOperator(P, P, {"c": {"a": 1}})
    report = verify(DifferentialStructure(P, d))
    assert not report.border_grading.passed
    assert not report.grading_shift.passed
    # <a d| = <c| so D|a><a| = -|a><c|, of grade 2
    assert report.grading_shift.counterexample["pair"] == ["a", "a"]


def test_upward_border_is_restricted():
    P = Poset(["a", "b"], [("a", "b")])
    # d|a> = |b> would give the illegal |b><a| in D|a><a|; it is dropped
    d = LinearOperator(P, P, {"a": {"b": 1}})
    S = DifferentialStructure(P, d)
    A = S.algebra
    assert cartan_D(S, A.element({("a", "a"): 1}), strict=False) == A.zero()
    assert cartan_D(S, A.element({("a", "b"): 1}), strict=False) == A.element(
        {("a", "a"): 1, ("b", "b"): 1}
    )
    report = verify(S)
    assert report.d_squared.passed


def test_plain_poset_with_supplied_border():
    P = Poset(["a", "x", "y", "b"], [("a", "x"), ("a", "y"), ("x", "b"), ("y", "b")])
    d = LinearOperator(P, P, {"b": {"x": 1, "y": -1}, "x": {"a": 1}, "y": {"a": 1}})
    assert verify(DifferentialStructure(P, d)).all_passed


def test_structure_requires_jordan_holder():
    skewed = Poset(
        ["a", "x", "y", "z", "b"],
        [("a", "x"), ("x", "y"), ("y", "b"), ("a", "z"), ("z", "b")],
    )
    with pytest.raises(NotJordanHolderError):
        DifferentialStructure(skewed, LinearOperator.zero(skewed))


def test_report_json_fields():
    report = verify(greechie_structure("two_blocks"))
    data = report.to_json()
    for key in (
        "grading_shift", "d_squared", "D_squared", "unit_annihilated", "leibniz",
        "basis_size", "grade_histogram", "counterexamples",
    ):
        assert key in data
    assert data["basis_size"] == 22
    assert data["grade_histogram"] == {"0": 10, "1": 12}
    assert data["counterexamples"] == []
    json.dumps(data)


def _dense_square_is_zero(op):
    names = op.domain.elements
    index = {p: i for i, p in enumerate(names)}
    M = np.zeros((len(names), len(names)), dtype=np.int64)
    for col, row, c in op.entries():
        M[index[row], index[col]] = c
    return not (M @ M).any()


STRUCTURES = {
    **{f"gdl:{n}": (lambda n=n: greechie_structure(n)) for n in sorted(GREECHIE_CORPUS)},
    **{f"simplex{n}": (lambda n=n: simplicial_structure(full_simplex(n))) for n in range(1, 5)},
}


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_single_flips_caught_exactly_when_d_squared_breaks(name):
    S = STRUCTURES[name]()
    for col, row, _ in S.border.entries():
        bad = flip_sign(S.border, col, row)
        report = verify(DifferentialStructure(S.poset, bad))
        assert report.all_passed == _dense_square_is_zero(bad), (col, row)
        if not report.all_passed:
            assert report.counterexamples
