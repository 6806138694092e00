"""Graded exterior complex: differentials, homology, reduction maps."""

import pytest

from freenil.intlinalg import is_zero_matrix, matmul
from freenil.koszul import (
    build_complex,
    h3_weight_rank_formula,
    homology,
    orr_pi3_rank,
    reduction_map,
    table3_cell,
)
from freenil.lyndon import d_rank, witt_rank


def test_abelian_case_all_zero():
    cx = build_complex(2, 2, 3)
    for mat in cx.matrix.values():
        assert is_zero_matrix(mat)
    h = homology(2, 2, 1, cx)
    assert h.rank_at(1) == 2 and h.total_rank == 2


def test_degree2_differential_by_hand():
    # d(g1 ^ g2) = [g1, g2] with the positive sign at positions (1, 2)
    cx = build_complex(2, 3, 2)
    assert cx.basis[(2, 2)] == [(0, 1)]
    assert cx.basis[(1, 2)] == [(2,)]  # the weight-2 basis element
    assert cx.matrix[(2, 2)] == [[1]]


def test_boundary_squares_vanish():
    for n, k in [(2, 3), (2, 4), (3, 3)]:
        cx = build_complex(n, k, 4)
        for w in cx.weights(3):
            lower = cx.matrix.get((3, w))
            upper = cx.matrix.get((4, w))
            if lower and upper and cx.block_dim(4, w):
                assert is_zero_matrix(matmul(lower, upper))


def test_h1_h2_concentration():
    for n, k in [(2, 3), (2, 4), (3, 3)]:
        cx = build_complex(n, k, 3)
        h1 = homology(n, k, 1, cx)
        assert h1.rank_at(1) == n and h1.total_rank == n
        h2 = homology(n, k, 2, cx)
        assert h2.rank_at(k) == witt_rank(n, k)
        assert h2.total_rank == witt_rank(n, k)
        assert h2.torsion_free


def test_h3_against_printed_cells():
    # the per-weight degree-3 ranks match the closed-form cells
    known = {
        (2, 3): {4: 1, 5: 0},
        (3, 3): {4: 6, 5: 6},
        (2, 4): {5: 0, 6: 3, 7: 0},
    }
    for (n, k), expected in known.items():
        h3 = homology(n, k, 3)
        for w, r in expected.items():
            assert h3.rank_at(w) == r
        assert h3.torsion_free
        for w in h3.blocks:
            assert h3.rank_at(w) == h3_weight_rank_formula(n, k, w)


def test_table3_cells():
    assert table3_cell(2, 2) == "0"
    assert table3_cell(2, 3) == "1⊕0"
    assert table3_cell(2, 5) == "3⊕0⊕6⊕4"
    assert table3_cell(3, 4) == "6⊕28⊕36"


def test_h3_total_rank_formula():
    for n, k in [(2, 3), (2, 4), (3, 3)]:
        h3 = homology(n, k, 3)
        assert h3.total_rank == sum(
            n * witt_rank(n, i) - witt_rank(n, i + 1)
            for i in range(k, 2 * k - 1))


def test_orr_pi3_rank():
    assert orr_pi3_rank(2, 3) == sum(d_rank(2, i) for i in range(3, 6))
    assert orr_pi3_rank(2, 2) == d_rank(2, 2) + d_rank(2, 3)


def test_reduction_map_pattern_n2():
    # excluded weights k+1, 2k, 2k+1 give the zero map, others full rank
    k = 3
    for w in range(4, 8):
        rm = reduction_map(2, k + 1, k, 3, w)
        if w in (k + 1, 2 * k, 2 * k + 1):
            assert rm.is_zero
        else:
            assert rm.is_isomorphism


def test_reduction_map_substantive_iso():
    rm = reduction_map(3, 4, 3, 3, 5)
    assert rm.dim_source == rm.dim_target == 6
    assert rm.is_isomorphism
    rm4 = reduction_map(3, 4, 3, 3, 4)
    assert rm4.is_zero and rm4.dim_target == 6


def test_h2_reduction_is_zero():
    for n, k in [(2, 3), (3, 3)]:
        for w in (k, k + 1):
            rm = reduction_map(n, k + 1, k, 2, w)
            assert rm.is_zero


def test_image_filtration_matches_weight_filtration():
    # image rank of the level l-1 reduction into degree-3 homology at
    # level k equals the tail sum of kernel dimensions
    n, k = 2, 3
    for level in range(k + 1, 2 * k + 1):
        total = sum(
            reduction_map(n, level - 1, k, 3, w).rank
            for w in range(k + 1, 2 * k))
        expected = sum(d_rank(n, i) for i in range(level - 1, 2 * k - 1))
        assert total == expected, (level, total, expected)


def test_reduction_requires_deeper_source():
    with pytest.raises(ValueError):
        reduction_map(2, 3, 4, 3, 5)
