"""GF(2) bitset linear algebra: shifts, RREF bases, subspace enumeration."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f2cayley import (
    BudgetExceededError,
    ElemSet,
    PreconditionError,
    Subspace,
    cosets,
    enumerate_subspaces,
    gaussian_binomial,
    rref,
    rref_insert,
    span,
    subspace_members,
    xor_shift,
)


def test_xor_shift_matches_elementwise_translation():
    rng = random.Random(101)
    for _ in range(300):
        n = rng.randrange(1, 8)
        mask = rng.getrandbits(1 << n)
        t = rng.getrandbits(n)
        expect = 0
        for v in range(1 << n):
            if mask >> v & 1:
                expect |= 1 << (v ^ t)
        assert xor_shift(mask, t, n) == expect


def test_elemset_basics():
    X = ElemSet.from_elements(3, [0, 3, 5])
    assert X.size == len(X) == 3
    assert 3 in X and 1 not in X
    assert sorted(X) == X.elements() == [0, 3, 5]
    assert ElemSet.empty(3).size == 0
    assert ElemSet.full(3).size == 8


def test_elemset_translate_is_involution():
    rng = random.Random(77)
    for _ in range(100):
        n = rng.randrange(1, 7)
        X = ElemSet(n, rng.getrandbits(1 << n))
        t = rng.getrandbits(n)
        assert X.translate(t).translate(t) == X
        assert X.translate(t).size == X.size


def test_elemset_rejects_out_of_range():
    with pytest.raises(PreconditionError):
        ElemSet.from_elements(2, [4])
    with pytest.raises(PreconditionError):
        ElemSet(2, 1 << 4)


@given(st.lists(st.integers(min_value=0, max_value=255), max_size=8),
       st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_rref_canonical_under_row_operations(vectors, rng):
    """Shuffling and adding rows into each other never changes the RREF."""
    base = rref(vectors)
    mixed = list(vectors)
    rng.shuffle(mixed)
    if len(mixed) >= 2:
        i, j = rng.randrange(len(mixed)), rng.randrange(len(mixed))
        if i != j:
            mixed[i] ^= mixed[j]
    assert rref(mixed) == base


def test_rref_insert_dependent_vector_returns_none():
    basis = rref([0b110, 0b011])
    assert rref_insert(basis, 0b101) is None  # 110 ^ 011
    assert rref_insert(basis, 0) is None
    grown = rref_insert(basis, 0b1000)
    assert grown is not None and len(grown) == 3


def test_subspace_validation_demands_canonical_basis():
    Subspace(3, (0b100, 0b010))  # fine: decreasing pivots, reduced
    with pytest.raises(PreconditionError):
        Subspace(3, (0b010, 0b100))  # pivots not decreasing
    with pytest.raises(PreconditionError):
        Subspace(3, (0b110, 0b010))  # higher row contains lower pivot


def test_subspace_reduce_is_min_of_coset():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randrange(1, 7)
        V = span(ElemSet.from_elements(n, [rng.getrandbits(n) for _ in range(3)]))
        v = rng.getrandbits(n)
        coset = sorted(v ^ w for w in subspace_members(V))
        assert V.reduce(v) == coset[0]


def test_span_and_members():
    V = span(ElemSet.from_elements(4, [0b0011, 0b0101]))
    assert V.dim == 2 and V.size == 4
    assert sorted(subspace_members(V)) == [0, 0b0011, 0b0101, 0b0110]
    assert V.contains(0b0110) and not V.contains(0b1000)


def test_gaussian_binomial_table():
    # number of m-dim subspaces of F_2^n, small table computed by hand
    assert gaussian_binomial(4, 0) == 1
    assert gaussian_binomial(4, 1) == 15
    assert gaussian_binomial(4, 2) == 35
    assert gaussian_binomial(4, 3) == 15
    assert gaussian_binomial(9, 4) == 3309747
    with pytest.raises(PreconditionError):
        gaussian_binomial(3, 4)


@given(st.integers(min_value=0, max_value=10), st.integers(min_value=0, max_value=10))
def test_gaussian_binomial_symmetry(n, m):
    if m <= n:
        assert gaussian_binomial(n, m) == gaussian_binomial(n, n - m)


def test_enumerate_subspaces_counts_and_uniqueness():
    for n in range(0, 5):
        for m in range(0, n + 1):
            subs = list(enumerate_subspaces(n, m))
            assert len(subs) == gaussian_binomial(n, m)
            assert len(set(subs)) == len(subs)
            for V in subs:
                assert V.dim == m


def test_enumerate_subspaces_budget_refusal():
    with pytest.raises(BudgetExceededError):
        list(enumerate_subspaces(20, 10, budget=10))


def test_cosets_partition_and_order():
    V = Subspace(4, (0b1000, 0b0001))
    cs = cosets(V)
    assert len(cs) == 4  # 2^(4-2)
    seen = set()
    for c in cs:
        assert c.size == 4
        seen |= set(c)
    assert seen == set(range(16))
    assert [min(c) for c in cs] == sorted(min(c) for c in cs)
