"""Free-group word layer: reduction, products, inverses, commutators."""

import random

import pytest

from freenil.words import (
    Word,
    abelianization,
    commutator,
    generator,
    identity,
    invert,
    multiply,
    parse_word,
    reduce,
)


def naive_reduce(raw, n):
    """Letter-by-letter stack reduction; independent oracle for reduce."""
    letters = []
    for gen, exp in raw:
        step = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            if letters and letters[-1] == (gen, -step):
                letters.pop()
            else:
                letters.append((gen, step))
    out = []
    for gen, step in letters:
        if out and out[-1][0] == gen:
            out[-1] = (gen, out[-1][1] + step)
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append((gen, step))
    return Word(n, tuple(out))


def random_raw(rng, n, length=8, max_exp=3):
    return [(rng.randint(1, n), rng.choice([e for e in range(-max_exp, max_exp + 1) if e]))
            for _ in range(rng.randint(0, length))]


def test_reduce_examples():
    assert reduce([(1, 1), (1, -1)], 1).is_identity()
    assert reduce([(1, 2), (1, 3)], 1) == Word(1, ((1, 5),))
    assert reduce([(1, 1), (2, 1), (2, -1), (1, 1)], 2) == Word(2, ((1, 2),))


def test_reduce_matches_naive_oracle():
    rng = random.Random(0)
    for _ in range(300):
        n = rng.randint(1, 4)
        raw = random_raw(rng, n)
        assert reduce(raw, n) == naive_reduce(raw, n)


def test_reduce_idempotent():
    rng = random.Random(1)
    for _ in range(100):
        w = reduce(random_raw(rng, 3), 3)
        assert reduce(w.syllables, 3) == w


def test_reduce_rejects_bad_input():
    with pytest.raises(ValueError):
        reduce([(3, 1)], 2)
    with pytest.raises(ValueError):
        reduce([(1, 1)], 0)


def test_multiply_examples():
    x1, x2, x3 = (generator(3, i) for i in (1, 2, 3))
    assert multiply(x1, invert(x1)).is_identity()
    lhs = multiply(multiply(x1, x2), multiply(invert(x2), x3))
    assert lhs == multiply(x1, x3)
    w = parse_word("x1^2 x2^-1 x3", 3)
    assert multiply(identity(3), w) == w
    assert multiply(w, identity(3)) == w


def test_multiply_mismatched_n():
    with pytest.raises(ValueError):
        multiply(generator(2, 1), generator(3, 1))


def test_invert_examples():
    assert invert(identity(2)).is_identity()
    assert invert(parse_word("x1 x2", 2)) == parse_word("x2^-1 x1^-1", 2)
    w = parse_word("x1^2 x2^-1", 2)
    assert invert(w) == parse_word("x2 x1^-2", 2)
    assert multiply(w, invert(w)).is_identity()


def test_commutator_examples():
    x1, x2 = generator(2, 1), generator(2, 2)
    assert commutator(x1, x1).is_identity()
    assert commutator(x1, x2) == parse_word("x1 x2 x1^-1 x2^-1", 2)
    nested = commutator(commutator(x1, x2), x2)
    assert nested.length() == 8


def test_group_axioms_randomized():
    rng = random.Random(2)
    for _ in range(250):
        n = rng.randint(1, 3)
        a = reduce(random_raw(rng, n), n)
        b = reduce(random_raw(rng, n), n)
        c = reduce(random_raw(rng, n), n)
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        assert invert(invert(a)) == a
        assert multiply(a, invert(a)).is_identity()
        assert commutator(a, b) == invert(commutator(b, a))


def test_parse_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        w = reduce(random_raw(rng, 3), 3)
        assert parse_word(str(w), 3) == w
    assert parse_word("1", 2).is_identity()


def test_abelianization():
    w = parse_word("x1 x2 x1^-1 x2^-1", 2)
    assert abelianization(w) == (0, 0)
    assert abelianization(parse_word("x1^3 x2^-1 x1^-1", 2)) == (2, -1)
