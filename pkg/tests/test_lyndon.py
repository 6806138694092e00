"""Lyndon enumeration, factorization, Witt ranks, normal forms."""

import random
from itertools import product

import pytest

from freenil.lyndon import (
    LyndonWord,
    commutator_word,
    d_rank,
    enumerate_lyndon,
    is_lyndon,
    lyndon_basis_through,
    lyndon_commutator_word,
    normal_form,
    normal_form_residual_depth,
    standard_factorization,
    witt_rank,
)
from freenil.magnus import lcs_depth
from freenil.rings import Zmod
from freenil.words import commutator, generator, multiply, parse_word, reduce


def brute_force_lyndon(n, k):
    """Filter all n^k indices by the definition; oracle for enumerate."""
    out = []
    for idx in product(range(1, n + 1), repeat=k):
        if all(idx < idx[m:] for m in range(1, k)):
            out.append(idx)
    return out


def test_enumerate_examples():
    assert [lw.index for lw in enumerate_lyndon(2, 1)] == [(1,), (2,)]
    assert [lw.index for lw in enumerate_lyndon(2, 3)] == [(1, 1, 2), (1, 2, 2)]
    assert is_lyndon((1, 2, 2)) and is_lyndon((1, 1, 2, 2))
    assert not is_lyndon((1, 2, 1)) and not is_lyndon((1, 3, 1, 2))


def test_enumerate_matches_brute_force():
    for n in (1, 2, 3):
        for k in range(1, 6):
            assert [lw.index for lw in enumerate_lyndon(n, k)] == \
                brute_force_lyndon(n, k)


def test_counts_match_witt():
    for n in (2, 3, 4):
        for k in range(1, 6):
            assert len(enumerate_lyndon(n, k)) == witt_rank(n, k)


def test_standard_factorization_examples():
    assert standard_factorization(LyndonWord((1, 2, 2))) == \
        (LyndonWord((1, 2)), LyndonWord((2,)))
    assert standard_factorization(LyndonWord((1, 1, 1, 2))) == \
        (LyndonWord((1,)), LyndonWord((1, 1, 2)))
    assert standard_factorization(LyndonWord((1, 2))) == \
        (LyndonWord((1,)), LyndonWord((2,)))
    with pytest.raises(ValueError):
        standard_factorization(LyndonWord((1,)))


def test_standard_factorization_parts_are_lyndon():
    for n in (2, 3):
        for k in range(2, 6):
            for lw in enumerate_lyndon(n, k):
                a, b = standard_factorization(lw)
                assert a.index + b.index == lw.index
                assert is_lyndon(a.index) and is_lyndon(b.index)
                # b is the longest Lyndon proper end
                longer = [m for m in range(1, len(lw.index))
                          if is_lyndon(lw.index[m:])]
                assert len(b.index) == len(lw.index) - min(longer)


def test_witt_table_values():
    assert witt_rank(2, 2) == 1
    assert witt_rank(2, 5) == 6
    assert witt_rank(3, 3) == 8
    assert witt_rank(9, 9) == 43046640
    for n in (1, 2, 5):
        assert witt_rank(n, 1) == n


def test_d_rank_values():
    assert d_rank(2, 3) == 1
    assert d_rank(2, 5) == 3
    assert d_rank(4, 2) == 4
    assert d_rank(2, 4) == 0
    assert d_rank(2, 1) == 2 * 2 - witt_rank(2, 2) == 3


def test_basis_order():
    basis = lyndon_basis_through(2, 3)
    assert [lw.index for lw in basis] == \
        [(1,), (2,), (1, 2), (1, 1, 2), (1, 2, 2)]
    assert all(basis[i] < basis[i + 1] for i in range(len(basis) - 1))


def test_normal_form_example():
    # x2 x1 collects to x1 x2 [x1,x2]^-1 modulo depth 3
    w = multiply(generator(2, 2), generator(2, 1))
    nf = normal_form(w, 3)
    assert [(lw.index, e) for lw, e in nf.factors] == \
        [((1,), 1), ((2,), 1), ((1, 2), -1)]
    assert normal_form_residual_depth(w, nf) >= 3


def test_normal_form_identity_and_commutator():
    from freenil.words import identity
    assert normal_form(identity(2), 4).factors == ()
    c = commutator(generator(2, 1), generator(2, 2))
    nf = normal_form(c, 3)
    assert [(lw.index, e) for lw, e in nf.factors] == [((1, 2), 1)]


def test_normal_form_round_trip_randomized():
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(2, 3)
        k = rng.randint(2, 4)
        raw = [(rng.randint(1, n), rng.choice([-2, -1, 1, 2]))
               for _ in range(rng.randint(0, 6))]
        w = reduce(raw, n)
        nf = normal_form(w, k)
        assert normal_form_residual_depth(w, nf, K=k) >= k
        weights = [lw.weight for lw, _ in nf.factors]
        assert weights == sorted(weights)


def test_normal_form_modular():
    w = parse_word("x1^10 x2^-4", 2)
    nf = normal_form(w, 3, Zmod(3, 2))
    exps = {lw.index: e for lw, e in nf.factors}
    assert exps[(1,)] == 10 % 9
    assert exps[(2,)] == (-4) % 9


def test_commutator_word_examples():
    e1, e2 = LyndonWord((1,)), LyndonWord((2,))
    nf = commutator_word(e1, e2, 2, 3)
    assert [(lw.index, e) for lw, e in nf.factors] == [((1, 2), -1)]
    # a = x1 against the degree-2 element: only weight-3 factors remain
    nf2 = commutator_word(e1, LyndonWord((1, 2)), 2, 4)
    assert all(lw.weight >= 3 for lw, _ in nf2.factors)
    assert nf2.factors  # nontrivial
    with pytest.raises(ValueError):
        commutator_word(e2, e1, 2, 3)


def test_commutator_word_trivial_when_deep():
    # weight sum already at the nilpotency bound: empty normal form
    a, b = LyndonWord((1, 2)), LyndonWord((1, 2, 2))
    nf = commutator_word(a, b, 2, 5)
    assert nf.factors == ()


def test_lyndon_commutator_word_realizes_basis():
    for n in (2, 3):
        for k in range(1, 5):
            for lw in enumerate_lyndon(n, k):
                w = lyndon_commutator_word(lw, n)
                assert lcs_depth(w, k + 1) == k or k == 1
