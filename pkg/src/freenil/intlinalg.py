"""Exact dense linear algebra: integer Smith normal form and rational
elimination.

Matrices are lists of row lists holding ints or Fractions.  Sizes here
stay in the hundreds (weight blocks of the graded complexes), so dense
arithmetic with arbitrary-precision scalars is the simple and safe
choice; SNF pivots on the smallest nonzero magnitude to keep entries
from exploding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity_matrix(k: int) -> Matrix:
    out = zeros(k, k)
    for i in range(k):
        out[i][i] = 1
    return out


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise ValueError("dimension mismatch")
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = zeros(rows, cols)
    for i in range(rows):
        Ai = A[i]
        Oi = out[i]
        for t in range(inner):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            for j in range(cols):
                if Bt[j]:
                    Oi[j] += a * Bt[j]
    return out


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def is_zero_matrix(A: Sequence[Sequence]) -> bool:
    return all(all(x == 0 for x in row) for row in A)


def smith_normal_form(A: Sequence[Sequence[int]],
                      want_transforms: bool = False):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (divisors, rank) where divisors are the nonzero diagonal
    entries d_1 | d_2 | ... (positive, with divisibility), rank their
    count.  With want_transforms, also returns (S, T) with S A T = D as
    square unimodular matrices, for integer solving and kernels.
    """
    M = [list(map(int, row)) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    S = identity_matrix(rows) if want_transforms else None
    T = identity_matrix(cols) if want_transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if S is not None:
            S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if T is not None:
            for row in T:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        Ms, Md = M[src], M[dst]
        for j in range(cols):
            if Ms[j]:
                Md[j] += c * Ms[j]
        if S is not None:
            Ss, Sd = S[src], S[dst]
            for j in range(rows):
                if Ss[j]:
                    Sd[j] += c * Ss[j]

    def add_col(src, dst, c):
        for row in M:
            if row[src]:
                row[dst] += c * row[src]
        if T is not None:
            for row in T:
                if row[src]:
                    row[dst] += c * row[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        if S is not None:
            S[i] = [-x for x in S[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # smallest nonzero magnitude pivot in the trailing block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(M[i][j])
                if v and (pivot is None or v < pivot[0]):
                    pivot = (v, i, j)
                    if v == 1:
                        break
            if pivot and pivot[0] == 1:
                break
        if pivot is None:
            break
        _, pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        if M[t][t] < 0:
            negate_row(t)
        clean = True
        for i in range(t + 1, rows):
            if M[i][t]:
                q = M[i][t] // M[t][t]
                if q:
                    add_row(t, i, -q)
                if M[i][t]:
                    clean = False
        for j in range(t + 1, cols):
            if M[t][j]:
                q = M[t][j] // M[t][t]
                if q:
                    add_col(t, j, -q)
                if M[t][j]:
                    clean = False
        if not clean:
            continue  # remainders left; re-pick a smaller pivot
        # enforce divisibility d_t | rest of block
        d = M[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if M[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1

    divisors = [M[i][i] for i in range(limit) if i < limit and M[i][i] != 0]
    rank = len(divisors)
    if want_transforms:
        return divisors, rank, S, T
    return divisors, rank


def integer_kernel_basis(A: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis (as rows) of the integer nullspace {x : A x = 0}."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return identity_matrix(cols)
    divisors, rank, S, T = smith_normal_form(A, want_transforms=True)
    # A = S^-1 D T^-1, so A (T e_j) = 0 for j >= rank: kernel columns of T.
    return [[T[i][j] for i in range(cols)] for j in range(rank, cols)]


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]):
    """One integer solution x of A x = b, or None when none exists."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    divisors, rank, S, T = smith_normal_form(A, want_transforms=True)
    c = [sum(S[i][t] * b[t] for t in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        if i < rank:
            if c[i] % divisors[i]:
                return None
            if i < cols:
                y[i] = c[i] // divisors[i]
        elif c[i] != 0:
            return None
    return [sum(T[i][j] * y[j] for j in range(cols)) for i in range(cols)]


def _to_fraction_rows(A: Sequence[Sequence]) -> List[List[Fraction]]:
    return [[Fraction(x) for x in row] for row in A]


def row_echelon(A: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over the rationals; returns (R, pivot cols)."""
    M = _to_fraction_rows(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for j in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][j] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = Fraction(1) / M[r][j]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][j] != 0:
                f = M[i][j]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == rows:
            break
    return M, pivots


def rational_rank(A: Sequence[Sequence]) -> int:
    return len(row_echelon(A)[1])


def rational_kernel_basis(A: Sequence[Sequence]) -> List[List[Fraction]]:
    """Basis (as rows) of the rational nullspace of A."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    R, pivots = row_echelon(A)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def solve_rational(A: Sequence[Sequence], b: Sequence):
    """One rational solution of A x = b, or None when inconsistent."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, pivots = row_echelon(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, p in enumerate(pivots):
        x[p] = R[r][cols]
    return x
