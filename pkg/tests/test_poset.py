import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetdiff.errors import (
    CapExceededError,
    IncomparableError,
    InvalidPosetError,
    NotJordanHolderError,
    UnknownElementError,
)
from posetdiff.poset import Poset


@pytest.fixture
def chain():
    return Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def diamond():
    return Poset(["a", "x", "y", "b"], [("a", "x"), ("a", "y"), ("x", "b"), ("y", "b")])


def test_leq_basic(chain):
    assert chain.leq("a", "c")
    assert chain.leq("b", "b")
    assert not chain.leq("c", "a")
    antichain = Poset(["a", "b"])
    assert not antichain.leq("a", "b")


def test_unknown_element_is_named(chain):
    with pytest.raises(UnknownElementError, match="'z'"):
        chain.leq("a", "z")


def test_non_cover_rejected():
    with pytest.raises(InvalidPosetError, match="not a cover"):
        Poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


def test_cycle_rejected():
    with pytest.raises(InvalidPosetError, match="cycle"):
        Poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_duplicate_and_empty_names():
    with pytest.raises(InvalidPosetError):
        Poset(["a", "a"])
    with pytest.raises(InvalidPosetError):
        Poset([""])


def test_cap():
    with pytest.raises(CapExceededError):
        Poset([str(i) for i in range(11)], cap=10)
    assert len(Poset([str(i) for i in range(10)], cap=10)) == 10


def test_maximal_chains(chain, diamond):
    assert chain.maximal_chains("a", "c") == [("a", "b", "c")]
    assert diamond.maximal_chains("a", "b") == [("a", "x", "b"), ("a", "y", "b")]
    assert diamond.maximal_chains("x", "x") == [("x",)]
    with pytest.raises(IncomparableError):
        diamond.maximal_chains("x", "y")


def test_jordan_holder(chain, diamond):
    assert chain.is_jordan_holder() == (True, None)
    assert diamond.is_jordan_holder() == (True, None)
    skewed = Poset(
        ["a", "x", "y", "z", "b"],
        [("a", "x"), ("x", "y"), ("y", "b"), ("a", "z"), ("z", "b")],
    )
    assert skewed.is_jordan_holder() == (False, ("a", "b"))
    with pytest.raises(NotJordanHolderError):
        skewed.chain_degree("a", "b")


def test_chain_degree(chain):
    assert chain.chain_degree("b", "b") == 0
    assert chain.chain_degree("a", "c") == 2
    with pytest.raises(IncomparableError):
        chain.chain_degree("c", "a")


def test_from_order_reduces_to_covers():
    P = Poset.from_order("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert P.covers() == [("a", "b"), ("b", "c")]
    with pytest.raises(InvalidPosetError, match="antisymmetric"):
        Poset.from_order("ab", [("a", "b"), ("b", "a")])


# random posets: a random strict order on up to 8 points, via random DAG edges
@st.composite
def posets(draw, max_size=8):
    n = draw(st.integers(1, max_size))
    names = [f"e{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset.from_order(names, [(names[i], names[j]) for i, j in chosen])


def _brute_relation(P):
    return {(p, q) for p in P for q in P if P.leq(p, q)}


def _brute_chains(P, p, q):
    """Enumerate saturated chains over all orderings of subsets of the interval."""
    rel = _brute_relation(P)

    def lt(x, y):
        return x != y and (x, y) in rel

    def covered(x, y):
        return lt(x, y) and not any(lt(x, z) and lt(z, y) for z in P)

    inner = [r for r in P if lt(p, r) and lt(r, q)]
    found = set()
    for k in range(len(inner) + 1):
        for middle in itertools.permutations(inner, k):
            seq = (p, *middle, q) if p != q else (p,)
            if p == q and k:
                continue
            if all(covered(a, b) for a, b in zip(seq, seq[1:])):
                found.add(seq)
    return sorted(found)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_order_axioms(P):
    for p, q, r in itertools.product(P, repeat=3):
        if P.leq(p, q) and P.leq(q, r):
            assert P.leq(p, r)
    for p, q in itertools.product(P, repeat=2):
        if P.leq(p, q) and P.leq(q, p):
            assert p == q
    for p in P:
        assert P.leq(p, p)


@settings(max_examples=40, deadline=None)
@given(posets(max_size=6))
def test_maximal_chains_match_brute_force(P):
    for p, q in P.comparable_pairs():
        assert P.maximal_chains(p, q) == _brute_chains(P, p, q)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_jordan_holder_and_degree_additivity(P):
    ok, pair = P.is_jordan_holder()
    lengths = {
        (p, q): {len(c) - 1 for c in P.maximal_chains(p, q)} for p, q in P.comparable_pairs()
    }
    assert ok == all(len(v) == 1 for v in lengths.values())
    if not ok:
        assert len(lengths[pair]) > 1
        return
    for p, q, r in itertools.product(P, repeat=3):
        if P.leq(p, q) and P.leq(q, r):
            assert P.chain_degree(p, q) + P.chain_degree(q, r) == P.chain_degree(p, r)
