"""Tree diagrams: canonical forms, dimensions, the bracket-kernel map."""

import pytest

from freenil.intlinalg import rational_rank
from freenil.jacobi import (
    DiagramSpaceElement,
    JacobiDiagram,
    canonicalize,
    caterpillar,
    ct_dimension,
    palindromic_vanishing,
    phi_coordinates,
    phi_in_kernel,
    phi_map,
    rooted_views,
    strut,
)
from freenil.lie import LieElement, bracket, dk_kernel_basis
from freenil.lyndon import LyndonWord, d_rank


def test_strut_canonical():
    canon, sign = canonicalize(strut(2, 1, 2))
    assert sign == 1
    assert canon.key() == canonicalize(strut(2, 2, 1))[0].key()


def test_branch_swap_flips_sign():
    a = JacobiDiagram(3, 1, (2, 3))
    b = JacobiDiagram(3, 1, (3, 2))
    ca, sa = canonicalize(a)
    cb, sb = canonicalize(b)
    assert ca.key() == cb.key()
    assert sa == -sb != 0


def test_equal_siblings_vanish():
    assert canonicalize(JacobiDiagram(2, 1, (2, 2)))[1] == 0
    assert canonicalize(JacobiDiagram(2, 2, ((1, 2), (1, 2))))[1] == 0


def test_canonicalize_idempotent():
    D = JacobiDiagram(2, 1, ((1, 2), 2))
    canon, sign = canonicalize(D)
    assert sign != 0
    again, sign2 = canonicalize(canon)
    assert again.key() == canon.key() and sign2 == 1
    # a zero class stays zero under re-canonicalization
    zero, s0 = canonicalize(JacobiDiagram(2, 2, ((1, 2), 2)))
    assert s0 == 0 and canonicalize(zero)[1] == 0


def test_rerooting_covers_all_legs():
    D = caterpillar(2, [1, 2, 2, 1])
    views = rooted_views(D)
    assert len(views) == 4
    assert sorted(lbl for lbl, _ in views) == [1, 1, 2, 2]


def test_dimensions_match_kernel_ranks():
    for n, k in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3)]:
        space = ct_dimension(n, k)
        assert space.dimension == d_rank(n, k), (n, k)


def test_dimension_with_nontrivial_relations():
    # from degree 6 on two labels the exchange relations actually cut
    space = ct_dimension(2, 6)
    assert space.relations and space.dimension == d_rank(2, 6) == 0
    space = ct_dimension(3, 4)
    assert space.relations and space.dimension == d_rank(3, 4) == 6


def test_phi_strut():
    image = phi_map(strut(2, 1, 2))
    assert image[1] == LieElement.basis(2, LyndonWord((2,)))
    assert image[2] == LieElement.basis(2, LyndonWord((1,)))


def test_phi_figure_convention():
    # the (1, 2, 1, 2)-labeled H-shaped diagram: the term at the root leg
    # is the left-nested double bracket
    from freenil.jacobi import _code_to_lie
    L = _code_to_lie(((1, 2), 2), 2)
    e = LieElement.basis
    expected = bracket(bracket(e(2, LyndonWord((1,))), e(2, LyndonWord((2,)))),
                       e(2, LyndonWord((2,))))
    assert L == expected


def test_phi_lands_in_kernel():
    for n, k in [(2, 3), (2, 5), (3, 2), (3, 3)]:
        kernel = dk_kernel_basis(n, k)
        space = ct_dimension(n, k)
        for D in space.basis:
            assert phi_in_kernel(D, kernel)


def test_phi_injective_on_basis():
    for n, k in [(2, 3), (2, 5), (3, 3)]:
        kernel = dk_kernel_basis(n, k)
        space = ct_dimension(n, k)
        vecs = [phi_coordinates(D, kernel) for D in space.basis]
        assert rational_rank(vecs) == space.dimension == kernel.dimension


def test_phi_kills_as_pairs():
    a = JacobiDiagram(3, 1, (2, 3))
    b = JacobiDiagram(3, 1, (3, 2))
    total = {}
    for D in (a, b):
        for i, elt in phi_map(D).items():
            total[i] = total.get(i, LieElement(3)) + elt
    assert all(elt.is_zero() for elt in total.values())


def test_phi_kills_exchange_rows():
    # every relation row maps to zero under phi
    from freenil.jacobi import exchange_relations
    n, k = 2, 6
    kernel = dk_kernel_basis(n, k)
    spanning, rows = exchange_relations(n, k)
    vecs = [phi_coordinates(D, kernel) for D in spanning]
    for row in rows:
        combo = [sum(row[j] * vecs[j][t] for j in range(len(row)))
                 for t in range(len(kernel.columns))]
        assert all(x == 0 for x in combo)


def test_space_element_canonicalizes():
    elt = DiagramSpaceElement(3, 2, {
        JacobiDiagram(3, 1, (2, 3)): 1,
        JacobiDiagram(3, 1, (3, 2)): 1,  # the same class with opposite sign
    })
    assert elt.terms == {}


def test_palindromic_vanishing():
    for k in (0, 1):
        rep = palindromic_vanishing(k)
        assert rep["zero_by_symmetry"]
        assert rep["zero_in_quotient"]
        assert rep["verdict"]
        assert rep["control_nonzero"]


def test_palindromic_caterpillar_direct():
    # odd middle count: the flip is an odd automorphism
    assert canonicalize(caterpillar(2, [1, 2, 2, 2, 1]))[1] == 0
    # even middle count survives
    assert canonicalize(caterpillar(2, [1, 2, 2, 1]))[1] != 0


def test_malformed_diagrams_rejected():
    with pytest.raises(ValueError):
        JacobiDiagram(2, 3, (1, 2))
    with pytest.raises(ValueError):
        JacobiDiagram(2, 1, (1, (2,)))
