import random
import warnings
from pathlib import Path

import pytest

from posetdiff import (
    DifferentialStructure,
    LinearOperator,
    border,
    close_downward,
    face_poset,
    greechie_border,
    proper_poset,
    validate_logic,
)
from posetdiff.greechie import DegenerateBlockWarning

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

GREECHIE_CORPUS = {
    "boolean2": [["a", "b"]],
    "boolean3": [list("abc")],
    "boolean4": [list("abcd")],
    "boolean5": [list("abcde")],
    "two_blocks": [list("abc"), list("cde")],
    "chain3": [list("abc"), list("cde"), list("efg")],
    "loop4": [list("abc"), list("cde"), list("efg"), list("gha")],
    "loop5": [list("abc"), list("cde"), list("efg"), list("ghi"), list("ija")],
    "two_blocks4": [list("abcd"), list("defg")],
    "loop4_4": [list("abcx"), list("cdey"), list("efgz"), list("ghaw")],
}

VERTICES = "abcdef"


def logic(name):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateBlockWarning)
        return validate_logic(GREECHIE_CORPUS[name])


def greechie_structure(name):
    L = logic(name)
    P, _ = proper_poset(L)
    return DifferentialStructure(P, greechie_border(L, P))


def simplicial_structure(complex):
    P = face_poset(complex)
    return DifferentialStructure(P, border(complex, P))


def full_simplex(n):
    """The n-simplex on the first n + 1 vertices."""
    return close_downward([VERTICES[: n + 1]])


def random_complexes(count, seed=20261019, max_vertices=6):
    """Downward closures of random generator sets over at most six vertices."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_vertices)
        verts = VERTICES[:n]
        gens = []
        for _ in range(rng.randint(1, 5)):
            size = rng.randint(1, n)
            gens.append(rng.sample(verts, size))
        out.append(close_downward(gens, vertices=list(verts)))
    return out


def flip_sign(op, column, row):
    """Copy of ``op`` with the sign of one matrix entry reversed."""
    cols = {p: dict(image) for p, image in op.columns.items()}
    cols[column][row] = -cols[column][row]
    return LinearOperator(op.domain, op.codomain, cols)


@pytest.fixture
def two_blocks():
    return logic("two_blocks")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in test_acceptance.RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}  [{detail}]")
