"""Free Lie algebra: brackets, decomposition, kernel dimensions."""

import random

import pytest

from freenil.lie import (
    LieElement,
    TensorElement,
    bracket,
    certify_unitriangular,
    decompose,
    dk_kernel_basis,
    group_graded_decompose,
    lyndon_bracket_tensor,
    lyndon_pairing_matrix,
    tensor_commutator,
)
from freenil.lyndon import LyndonWord, d_rank, enumerate_lyndon, witt_rank
from freenil.words import commutator, generator, multiply


def test_bracket_tensor_examples():
    assert lyndon_bracket_tensor(LyndonWord((1, 2)), 2).coeffs == \
        {(1, 2): 1, (2, 1): -1}
    t = lyndon_bracket_tensor(LyndonWord((1, 2, 2)), 2)
    assert t.coeffs == {(1, 2, 2): 1, (2, 1, 2): -2, (2, 2, 1): 1}
    # (1112) brackets as [X1,[X1,[X1,X2]]]
    x1 = TensorElement(2, 1, {(1,): 1})
    x2 = TensorElement(2, 1, {(2,): 1})
    nested = tensor_commutator(x1, tensor_commutator(x1, tensor_commutator(x1, x2)))
    assert lyndon_bracket_tensor(LyndonWord((1, 1, 1, 2)), 2) == nested


def test_decompose_examples():
    d = decompose(TensorElement(2, 2, {(1, 2): 1, (2, 1): -1}))
    assert d == {LyndonWord((1, 2)): 1}
    t = lyndon_bracket_tensor(LyndonWord((1, 2, 2)), 2)
    assert decompose(t) == {LyndonWord((1, 2, 2)): 1}
    with pytest.raises(ValueError):
        decompose(TensorElement(2, 2, {(1, 2): 1}))  # fails antisymmetry


def test_decompose_re_expansion_oracle():
    rng = random.Random(9)
    for _ in range(50):
        n, k = rng.choice([(2, 3), (2, 4), (3, 3)])
        coeffs = {lw: rng.randint(-3, 3) for lw in enumerate_lyndon(n, k)}
        t = TensorElement(n, k, {})
        acc = {}
        for lw, c in coeffs.items():
            for idx, s in lyndon_bracket_tensor(lw, n).coeffs.items():
                acc[idx] = acc.get(idx, 0) + c * s
        t = TensorElement(n, k, acc)
        got = decompose(t)
        assert got == {lw: c for lw, c in coeffs.items() if c}


def test_bracket_examples():
    e1 = LieElement.basis(2, LyndonWord((1,)))
    e2 = LieElement.basis(2, LyndonWord((2,)))
    e12 = LieElement.basis(2, LyndonWord((1, 2)))
    assert bracket(e1, e2) == e12
    assert bracket(e12, e2) == LieElement.basis(2, LyndonWord((1, 2, 2)))
    assert bracket(e12, e12).is_zero()
    assert bracket(e2, e1) == e12.scale(-1)


def test_bracket_bilinear_and_jacobi():
    rng = random.Random(10)
    pool = [LieElement.basis(3, lw) for k in (1, 2)
            for lw in enumerate_lyndon(3, k)]
    for _ in range(60):
        a, b, c = (rng.choice(pool) for _ in range(3))
        jac = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + \
            bracket(bracket(c, a), b)
        assert jac.is_zero()
        assert bracket(a + b, c) == bracket(a, c) + bracket(b, c)
        assert bracket(a, b) == bracket(b, a).scale(-1)


def test_rank_of_graded_pieces():
    for n in (2, 3):
        for k in range(1, 6):
            assert len(enumerate_lyndon(n, k)) == witt_rank(n, k)


def test_pairing_unitriangular():
    # diagonal one and zero above, in lex order; the certificate backing
    # the direct-read fast path of decompose
    for n in (2, 3, 4):
        for k in range(1, 5):
            assert certify_unitriangular(n, k)
            M = lyndon_pairing_matrix(n, k)
            for i in range(len(M)):
                assert M[i][i] == 1
                for j in range(i + 1, len(M)):
                    assert M[i][j] == 0


def test_pairing_not_always_identity():
    # the word-coefficient pairing has a strictly lower-triangular entry
    # from degree 3 on three generators onward
    M = lyndon_pairing_matrix(3, 3)
    off = [(i, j) for i in range(len(M)) for j in range(len(M))
           if i != j and M[i][j] != 0]
    assert off, "expected a nontrivial below-diagonal entry at n=3, k=3"


def test_dk_kernel_dimensions():
    for n, k in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2)]:
        kernel = dk_kernel_basis(n, k)
        assert kernel.dimension == d_rank(n, k)


def test_dk_kernel_membership():
    kernel = dk_kernel_basis(2, 3)
    assert kernel.dimension == 1
    vec = kernel.vectors[0]
    assert kernel.contains(vec)
    bad = [v + 1 for v in vec]
    assert not kernel.contains(bad)


def test_group_graded_decompose_examples():
    x1, x2 = generator(2, 1), generator(2, 2)
    c = commutator(x1, x2)
    assert group_graded_decompose(c, 2) == {LyndonWord((1, 2)): 1}
    assert group_graded_decompose(commutator(c, x2), 3) == \
        {LyndonWord((1, 2, 2)): 1}
    assert group_graded_decompose(multiply(c, c), 2) == {LyndonWord((1, 2)): 2}
    with pytest.raises(ValueError):
        group_graded_decompose(x1, 2)
