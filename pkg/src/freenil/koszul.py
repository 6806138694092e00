"""Weight-graded exterior complex of the free nilpotent Lie algebra.

Chains in homological degree m are wedges of m distinct Lyndon basis
elements of weight < k; the differential pairs off two factors into
their bracket (truncated below weight k) with the classical alternating
sign.  Each weight is an independent subcomplex, so boundary matrices
stay small and Smith normal form over the integers gives exact ranks
and torsion.  In degrees <= 3 these homology groups are the homology of
the free nilpotent group of class k - 1 with ell-adic coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .intlinalg import (
    is_zero_matrix,
    matmul,
    rational_kernel_basis,
    rational_rank,
    smith_normal_form,
    solve_rational,
)
from .lie import LieElement, bracket
from .lyndon import LyndonWord, lyndon_basis_through, witt_rank

BasisTuple = Tuple[int, ...]  # positions into the ordered basis B


@dataclass
class WeightGradedComplex:
    """Bases and integer boundary matrices per (degree m, weight w).

    basis[(m, w)] lists the wedge monomials as increasing tuples of
    positions into `elements` (the Lyndon basis of weight < k in the
    weight-major order); matrix[(m, w)] is the matrix of the degree-m
    differential restricted to weight w, with rows indexed by the
    (m-1, w) basis.  Matrices are column-major-free plain row lists.
    """

    n: int
    k: int
    m_max: int
    elements: List[LyndonWord]
    basis: Dict[Tuple[int, int], List[BasisTuple]]
    matrix: Dict[Tuple[int, int], List[List[int]]]

    def block_dim(self, m: int, w: int) -> int:
        return len(self.basis.get((m, w), []))

    def weights(self, m: int) -> List[int]:
        return sorted(w for (mm, w) in self.basis if mm == m)


def _pair_brackets(n: int, k: int, elements: List[LyndonWord]
                   ) -> Dict[Tuple[int, int], Dict[int, int]]:
    """[e_p, e_q] for p < q, decomposed into basis positions, truncated
    to weight < k."""
    pos = {lw: i for i, lw in enumerate(elements)}
    out: Dict[Tuple[int, int], Dict[int, int]] = {}
    for p in range(len(elements)):
        for q in range(p + 1, len(elements)):
            a, b = elements[p], elements[q]
            if a.weight + b.weight >= k:
                out[(p, q)] = {}
                continue
            br = bracket(LieElement.basis(n, a), LieElement.basis(n, b))
            out[(p, q)] = {
                pos[R]: c for R, c in br.homogeneous_part(a.weight + b.weight).items()
            }
    return out


def build_complex(n: int, k: int, m_max: int = 4) -> WeightGradedComplex:
    """Assemble bases and differentials for degrees m <= m_max.

    The square of the differential is checked to vanish on every weight
    block before returning.
    """
    if k < 2:
        raise ValueError("nilpotency index k must be >= 2")
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    elements = lyndon_basis_through(n, k - 1)
    weights = [lw.weight for lw in elements]
    brackets = _pair_brackets(n, k, elements)

    basis: Dict[Tuple[int, int], List[BasisTuple]] = {}
    index_of: Dict[Tuple[int, int], Dict[BasisTuple, int]] = {}
    for m in range(0, m_max + 1):
        if m == 0:
            basis[(0, 0)] = [()]
            index_of[(0, 0)] = {(): 0}
            continue
        for combo in combinations(range(len(elements)), m):
            w = sum(weights[p] for p in combo)
            key = (m, w)
            index_of.setdefault(key, {})[combo] = len(basis.setdefault(key, []))
            basis[key].append(combo)

    matrix: Dict[Tuple[int, int], List[List[int]]] = {}
    for (m, w), monomials in basis.items():
        if m < 2:
            continue  # the degree-1 differential is zero (trivial coefficients)
        target = basis.get((m - 1, w), [])
        tgt_index = index_of.get((m - 1, w), {})
        mat = [[0] * len(monomials) for _ in target]
        for col, combo in enumerate(monomials):
            for a in range(m):
                for b in range(a + 1, m):
                    sign_ab = (-1) ** ((a + 1) + (b + 1) + 1)
                    rest = combo[:a] + combo[a + 1:b] + combo[b + 1:]
                    for r, c in brackets[(combo[a], combo[b])].items():
                        if r in rest:
                            continue
                        insert_at = sum(1 for x in rest if x < r)
                        target_combo = tuple(sorted(rest + (r,)))
                        row = tgt_index[target_combo]
                        mat[row][col] += sign_ab * ((-1) ** insert_at) * c
        matrix[(m, w)] = mat

    complex_ = WeightGradedComplex(n, k, m_max, elements, basis, matrix)
    _check_boundary_squares(complex_)
    return complex_


def _check_boundary_squares(cx: WeightGradedComplex):
    for (m, w), mat in cx.matrix.items():
        upper = cx.matrix.get((m + 1, w))
        if upper is None or not mat or not upper:
            continue
        if not is_zero_matrix(matmul(mat, upper)):
            raise AssertionError(f"boundary square nonzero at degree {m + 1}, weight {w}")


@dataclass
class HomologyResult:
    """Per-weight rank and torsion of one homological degree."""

    n: int
    k: int
    degree: int
    blocks: Dict[int, Tuple[int, List[int]]]  # weight -> (rank, divisors > 1)

    @property
    def total_rank(self) -> int:
        return sum(r for r, _ in self.blocks.values())

    @property
    def torsion_free(self) -> bool:
        return all(not div for _, div in self.blocks.values())

    def rank_at(self, w: int) -> int:
        return self.blocks.get(w, (0, []))[0]

    def nonzero_weights(self) -> List[int]:
        return sorted(w for w, (r, div) in self.blocks.items() if r or div)

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "degree": self.degree,
            "weights": {
                str(w): {"rank": r, "divisors": div}
                for w, (r, div) in sorted(self.blocks.items())
            },
            "total_rank": self.total_rank,
        }


def homology(n: int, k: int, i: int,
             cx: WeightGradedComplex | None = None) -> HomologyResult:
    """Rank and elementary divisors of the degree-i homology, by weight.

    rank H_i = dim Lambda_i - rank(d_i) - rank(d_{i+1}); divisors > 1 of
    d_{i+1} are the torsion.  For i <= 3 this is the group homology of
    the free nilpotent quotient of class k - 1.
    """
    if i < 0:
        raise ValueError("degree must be >= 0")
    if cx is None or cx.m_max < i + 1:
        cx = build_complex(n, k, m_max=i + 1)
    blocks: Dict[int, Tuple[int, List[int]]] = {}
    for w in cx.weights(i):
        dim = cx.block_dim(i, w)
        below = cx.matrix.get((i, w))
        rank_out = 0
        if i >= 2 and below:
            _, rank_out = smith_normal_form(below)
        above = cx.matrix.get((i + 1, w))
        divisors: List[int] = []
        rank_in = 0
        if above and cx.block_dim(i + 1, w):
            divisors, rank_in = smith_normal_form(above)
        blocks[w] = (dim - rank_out - rank_in, [d for d in divisors if d > 1])
    return HomologyResult(n, k, i, blocks)


def h3_weight_rank_formula(n: int, k: int, w: int) -> int:
    """Predicted degree-3 rank at weight w: n N_{w-1} - N_w inside the
    window k + 1 <= w <= 2k - 1, zero outside."""
    if k + 1 <= w <= 2 * k - 1:
        return n * witt_rank(n, w - 1) - witt_rank(n, w)
    return 0


def orr_pi3_rank(n: int, k: int) -> int:
    """Rank of the third homotopy group of the completed tower space:
    the sum of n N_i - N_{i+1} for i = k .. 2k - 1."""
    return sum(n * witt_rank(n, i) - witt_rank(n, i + 1)
               for i in range(k, 2 * k))


@dataclass
class ReductionMap:
    """Induced map on degree-i, weight-w homology between nilpotency levels."""

    n: int
    k_from: int
    k_to: int
    degree: int
    weight: int
    dim_source: int
    dim_target: int
    rank: int
    matrix: List[List[Fraction]]  # rows: target homology basis, cols: source

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    @property
    def is_isomorphism(self) -> bool:
        return self.rank == self.dim_source == self.dim_target


def _homology_basis(cx: WeightGradedComplex, i: int, w: int
                    ) -> Tuple[List[List[Fraction]], List[List[Fraction]]]:
    """(cycle representatives completing the boundaries, boundary spanning
    vectors), both as chain vectors in the (i, w) block."""
    dim = cx.block_dim(i, w)
    below = cx.matrix.get((i, w))
    if i >= 2 and below and dim:
        cycles = rational_kernel_basis(below)
    else:
        cycles = [[Fraction(int(r == c)) for c in range(dim)] for r in range(dim)]
    above = cx.matrix.get((i + 1, w))
    boundaries: List[List[Fraction]] = []
    if above and cx.block_dim(i + 1, w):
        cols = len(above[0])
        for j in range(cols):
            vec = [Fraction(above[r][j]) for r in range(dim)]
            if any(vec):
                boundaries.append(vec)
    # choose cycles extending the boundary span to a basis of the cycles
    chosen: List[List[Fraction]] = []
    stack = [list(v) for v in boundaries]
    base_rank = rational_rank(stack) if stack else 0
    current = base_rank
    for z in cycles:
        cand = stack + [list(z)]
        r = rational_rank(cand)
        if r > current:
            chosen.append(list(z))
            stack = cand
            current = r
    return chosen, boundaries


def reduction_map(n: int, k_from: int, k_to: int, i: int, w: int,
                  cx_from: WeightGradedComplex | None = None,
                  cx_to: WeightGradedComplex | None = None) -> ReductionMap:
    """Matrix and rank of the quotient-induced map on weight-w homology.

    The chain-level map keeps a wedge monomial when all its factors have
    weight < k_to and kills it otherwise; bases of both homologies are
    chosen as cycle representatives modulo boundaries, and the matrix is
    solved exactly over the rationals.
    """
    if k_from < k_to:
        raise ValueError("reduction goes from the deeper level: k_from >= k_to")
    if cx_from is None:
        cx_from = build_complex(n, k_from, m_max=i + 1)
    if cx_to is None:
        cx_to = build_complex(n, k_to, m_max=i + 1)
    src_cycles, _ = _homology_basis(cx_from, i, w)
    tgt_cycles, tgt_bounds = _homology_basis(cx_to, i, w)
    dim_src, dim_tgt = len(src_cycles), len(tgt_cycles)

    src_basis = cx_from.basis.get((i, w), [])
    tgt_index = {combo: r for r, combo in enumerate(cx_to.basis.get((i, w), []))}
    keep = len(cx_to.elements)  # prefix of the source basis that survives

    def push(chain: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * len(tgt_index)
        for pos, c in enumerate(chain):
            if c == 0:
                continue
            combo = src_basis[pos]
            if all(p < keep for p in combo):
                out[tgt_index[combo]] += c
        return out

    matrix = [[Fraction(0)] * dim_src for _ in range(dim_tgt)]
    rank_cols: List[List[Fraction]] = []
    solve_cols = [list(col) for col in zip(*(tgt_cycles + tgt_bounds))] \
        if (tgt_cycles or tgt_bounds) else []
    for col, z in enumerate(src_cycles):
        image = push(z)
        rank_cols.append(image)
        if not solve_cols:
            continue
        sol = solve_rational(solve_cols, image)
        assert sol is not None, "image of a cycle is not a cycle in the target"
        for row in range(dim_tgt):
            matrix[row][col] = sol[row]
    bound_rank = rational_rank(tgt_bounds) if tgt_bounds else 0
    joint = rank_cols + tgt_bounds
    rank = (rational_rank(joint) - bound_rank) if joint else 0
    return ReductionMap(n, k_from, k_to, i, w, dim_src, dim_tgt, rank, matrix)


def table3_cell(n: int, k: int) -> str:
    """Degree-3 rank decomposition over weights k+1 .. 2k-1, joined by
    the direct-sum glyph (one part per weight)."""
    parts = [str(h3_weight_rank_formula(n, k, w)) for w in range(k + 1, 2 * k)]
    return "⊕".join(parts)
