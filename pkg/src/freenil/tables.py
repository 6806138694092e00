"""Rank tables and generating-function identities.

The three appendix-style tables: the degree ranks N_k(n) of the free
Lie algebra, the kernel dimensions D_k(n) = n N_k - N_{k+1}, and the
per-weight decomposition of the third homology of the free nilpotent
quotients.  The infinite products tying these to rational functions are
checked as exact truncated power series over the integers.
"""

from __future__ import annotations

from math import comb
from typing import List, Sequence

from .koszul import table3_cell
from .lyndon import d_rank, witt_rank


def witt_table(n_values: Sequence[int], k_values: Sequence[int]) -> List[List[int]]:
    return [[witt_rank(n, k) for k in k_values] for n in n_values]


def d_table(n_values: Sequence[int], k_values: Sequence[int]) -> List[List[int]]:
    return [[d_rank(n, k) for k in k_values] for n in n_values]


def h3_table(n_values: Sequence[int], k_values: Sequence[int]) -> List[List[str]]:
    return [[table3_cell(n, k) for k in k_values] for n in n_values]


def render_tsv(rows: List[List[object]], n_values: Sequence[int],
               k_values: Sequence[int]) -> str:
    """Grid layout with an n\\k corner, one row per n."""
    out = ["n\\k\t" + "\t".join(str(k) for k in k_values)]
    for n, row in zip(n_values, rows):
        out.append(str(n) + "\t" + "\t".join(str(c) for c in row))
    return "\n".join(out) + "\n"


# -- truncated integer power series -------------------------------------


def ps_mul(a: List[int], b: List[int], degree: int) -> List[int]:
    out = [0] * (degree + 1)
    for i, ai in enumerate(a[:degree + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[:degree + 1 - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def geometric_factor(k: int, exponent: int, degree: int) -> List[int]:
    """(1 - z^k)^(-exponent) as a series, exponent >= 0."""
    out = [0] * (degree + 1)
    for j in range(0, degree // k + 1):
        out[k * j] = comb(exponent + j - 1, j) if exponent > 0 else (1 if j == 0 else 0)
    return out


def binomial_factor(sign_coeff: int, power: int, degree: int) -> List[int]:
    """(1 + sign_coeff * z)^power as a series, power >= 0."""
    out = [0] * (degree + 1)
    for j in range(min(power, degree) + 1):
        out[j] = comb(power, j) * sign_coeff ** j
    return out


def cyclotomic_identity_check(n: int, degree: int = 12) -> dict:
    """Product over k of (1 - z^k)^(-N_k(n)) against 1/(1 - n z).

    Exact comparison of integer coefficients through the degree; the
    report carries the first mismatch if any.
    """
    lhs = [1] + [0] * degree
    for k in range(1, degree + 1):
        lhs = ps_mul(lhs, geometric_factor(k, witt_rank(n, k), degree), degree)
    rhs = [n ** j for j in range(degree + 1)]
    return _series_report(lhs, rhs, n, degree)


def d_rank_identity_check(n: int, degree: int = 12) -> dict:
    """Product over k of (1 - z^k)^(-D_k(n)) against
    (1 - z)^n / (1 - n z)^(n - 1)."""
    lhs = [1] + [0] * degree
    for k in range(1, degree + 1):
        lhs = ps_mul(lhs, geometric_factor(k, d_rank(n, k), degree), degree)
    # (1 - n z)^-(n-1) = sum of binom(n-2+j, j) n^j z^j
    inv_part = [comb((n - 1) + j - 1, j) * n ** j if n >= 2 else (1 if j == 0 else 0)
                for j in range(degree + 1)]
    rhs = ps_mul(binomial_factor(-1, n, degree), inv_part, degree)
    return _series_report(lhs, rhs, n, degree)


def _series_report(lhs: List[int], rhs: List[int], n: int, degree: int) -> dict:
    for j in range(degree + 1):
        if lhs[j] != rhs[j]:
            return {"n": n, "degree": degree, "passed": False,
                    "first_mismatch": {"power": j, "lhs": lhs[j], "rhs": rhs[j]}}
    return {"n": n, "degree": degree, "passed": True}
