"""Degree-truncated Magnus expansion of free-group words.

The expansion sends x_i to 1 + X_i and x_i^-1 to the geometric series
1 - X_i + X_i^2 - ..., landing in noncommutative power series truncated
at a hard degree cap K.  Series are sparse maps from multi-indices
(tuples over 1..n) to exact ring elements; the coefficient of the word
X_{i_1}...X_{i_k} in the expansion of w is the Magnus coefficient
mu(I; w), the workhorse for everything downstream: lower-central-series
depth, Lyndon decompositions, Milnor invariants, Massey products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Dict, Tuple

from .rings import Ring, ZZ
from .words import Word

MultiIndex = Tuple[int, ...]


@dataclass(frozen=True)
class MagnusSeries:
    """Noncommutative power series truncated above degree K.

    coeffs maps multi-indices of length 0..K to ring elements; absent
    means zero.  The empty index () holds the constant term.  Mixing
    series with different (n, K, ring) is an error, never a silent
    re-truncation.
    """

    n: int
    K: int
    ring: Ring
    coeffs: Dict[MultiIndex, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("truncation degree K must be >= 1")
        clean = {}
        for idx, c in self.coeffs.items():
            if len(idx) > self.K:
                raise ValueError(f"index {idx} exceeds truncation degree {self.K}")
            if any(not 1 <= i <= self.n for i in idx):
                raise ValueError(f"index {idx} out of range for n={self.n}")
            c = self.ring.normalize(c)
            if c != 0:
                clean[idx] = c
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, index: MultiIndex):
        """mu(index; -) of this series; 0 if absent."""
        if len(index) > self.K:
            raise ValueError(f"index length {len(index)} exceeds truncation {self.K}")
        return self.coeffs.get(tuple(index), 0)

    def constant_term(self):
        return self.coeffs.get((), 0)

    def degree_part(self, d: int) -> Dict[MultiIndex, object]:
        return {idx: c for idx, c in self.coeffs.items() if len(idx) == d}

    def lowest_positive_degree(self) -> int | None:
        """Smallest d >= 1 carrying a nonzero coefficient, or None."""
        degrees = [len(idx) for idx in self.coeffs if len(idx) >= 1]
        return min(degrees) if degrees else None

    def __eq__(self, other):
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return (self.n, self.K, self.ring) == (other.n, other.K, other.ring) and \
            self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.K, self.ring, frozenset(self.coeffs.items())))

    def to_json(self) -> dict:
        terms = [
            {"index": list(idx), "coeff": str(c)}
            for idx, c in sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
        ring = {"Z": "Z", "Q": "Q"}.get(self.ring.kind) or \
            f"Z/{self.ring.ell}^{self.ring.M}"
        return {"n": self.n, "K": self.K, "ring": ring, "terms": terms}


def _check_compatible(a: MagnusSeries, b: MagnusSeries):
    if (a.n, a.K, a.ring) != (b.n, b.K, b.ring):
        raise ValueError(
            f"incompatible series: (n={a.n}, K={a.K}, {a.ring}) vs "
            f"(n={b.n}, K={b.K}, {b.ring})"
        )


def series_one(n: int, K: int, ring: Ring = ZZ) -> MagnusSeries:
    return MagnusSeries(n, K, ring, {(): 1})


def series_add(a: MagnusSeries, b: MagnusSeries) -> MagnusSeries:
    _check_compatible(a, b)
    out = dict(a.coeffs)
    for idx, c in b.coeffs.items():
        out[idx] = a.ring.add(out.get(idx, 0), c)
    return MagnusSeries(a.n, a.K, a.ring, out)


def series_scale(a: MagnusSeries, c) -> MagnusSeries:
    return MagnusSeries(a.n, a.K, a.ring,
                        {idx: a.ring.mul(v, c) for idx, v in a.coeffs.items()})


def series_multiply(a: MagnusSeries, b: MagnusSeries) -> MagnusSeries:
    """Truncated noncommutative product.  Associative by construction."""
    _check_compatible(a, b)
    ring, K = a.ring, a.K
    out: Dict[MultiIndex, object] = {}
    # Group by degree so the inner loop can skip pairs past the cap.
    b_by_deg: Dict[int, list] = {}
    for idx, c in b.coeffs.items():
        b_by_deg.setdefault(len(idx), []).append((idx, c))
    for idx_a, ca in a.coeffs.items():
        room = K - len(idx_a)
        for deg_b, terms in b_by_deg.items():
            if deg_b > room:
                continue
            for idx_b, cb in terms:
                idx = idx_a + idx_b
                out[idx] = ring.add(out.get(idx, 0), ring.mul(ca, cb))
    return MagnusSeries(a.n, a.K, ring, out)


def series_inverse(a: MagnusSeries) -> MagnusSeries:
    """Inverse of a series with unit constant term, by geometric series."""
    c0 = a.constant_term()
    if not a.ring.is_unit(c0):
        raise ValueError("series has non-unit constant term")
    inv0 = a.ring.inv(c0)
    # a = c0 (1 + u) with u of positive degree; 1/a = (1 - u + u^2 - ...) / c0.
    u = MagnusSeries(a.n, a.K, a.ring,
                     {idx: a.ring.mul(c, inv0) for idx, c in a.coeffs.items() if idx})
    out = series_one(a.n, a.K, a.ring)
    power = series_one(a.n, a.K, a.ring)
    for j in range(1, a.K + 1):
        power = series_multiply(power, u)
        if not power.coeffs:
            break
        out = series_add(out, series_scale(power, (-1) ** j))
    return series_scale(out, inv0)


def _generator_power_series(n: int, i: int, exp: int, K: int, ring: Ring) -> MagnusSeries:
    """Expansion of x_i^exp: sum of binom(exp, j) X_i^j for j <= K.

    The generalized binomial of an integer is an integer, so this covers
    negative exponents (giving the alternating geometric series for
    exp = -1) in the same formula.
    """
    coeffs = {(): 1}
    for j in range(1, K + 1):
        c = _int_binom(exp, j)
        if c:
            coeffs[(i,) * j] = c
    return MagnusSeries(n, K, ring, coeffs)


def _int_binom(c: int, j: int) -> int:
    """binom(c, j) for any integer c (falling factorial over j!)."""
    if j == 0:
        return 1
    if c >= 0:
        return comb(c, j)
    # binom(-m, j) = (-1)^j binom(m + j - 1, j)
    return (-1) ** j * comb(-c + j - 1, j)


def expand(w: Word, K: int, ring: Ring = ZZ) -> MagnusSeries:
    """Magnus expansion of a word, truncated at degree K.

    Multiplicative: expand(a*b) == series_multiply(expand(a), expand(b)).
    """
    out = series_one(w.n, K, ring)
    for gen, exp in w.syllables:
        out = series_multiply(out, _generator_power_series(w.n, gen, exp, K, ring))
    return out


def coefficient(w: Word, I: MultiIndex, K: int | None = None, ring: Ring = ZZ):
    """The Magnus coefficient mu(I; w)."""
    I = tuple(I)
    if K is None:
        K = max(len(I), 1)
    if len(I) > K:
        raise ValueError(f"index length {len(I)} exceeds truncation {K}")
    return expand(w, K, ring).coefficient(I)


def ell_valuation(x: int, ell: int) -> int:
    """Exponent of ell in x (x != 0)."""
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


def guard_precision(K: int, ell: int, M: int) -> int:
    """Exponent M' = M + v_ell(K!) needed of a residue c so that
    binom(c, j) mod ell^M is well defined for all j <= K."""
    return M + ell_valuation(factorial(K), ell)


def power_expand(i: int, c: int, n: int, K: int, ring: Ring,
                 c_precision: int | None = None) -> MagnusSeries:
    """Expansion of x_i^c for an ell-adic exponent residue c.

    c is an integer representative of the exponent mod ell^{M'}; it must
    carry guard digits M' >= M + v_ell(K!) for the binomials to be well
    defined mod ell^M.  Pass c_precision to assert the guard explicitly;
    integer-exact callers may omit it.
    """
    if ring.kind != "Zmod":
        if c_precision is not None:
            raise ValueError("exponent precision only applies to modular rings")
        return _generator_power_series(n, i, c, K, ring)
    needed = guard_precision(K, ring.ell, ring.M)
    if c_precision is not None and c_precision < needed:
        raise ValueError(
            f"exponent residue carries {c_precision} digits; "
            f"need M' >= {needed} = M + v_ell(K!) guard digits"
        )
    return _generator_power_series(n, i, c, K, ring)


def series_power(s: MagnusSeries, c: int) -> MagnusSeries:
    """s^c for a series with constant term 1 and any integer exponent c.

    Computed as the binomial series sum of binom(c, j) (s - 1)^j, which
    terminates at the truncation degree; for modular rings c is read as
    an exponent residue representative under the same guard-digit
    contract as power_expand.
    """
    if s.constant_term() != 1:
        raise ValueError("series power needs constant term 1")
    u = MagnusSeries(s.n, s.K, s.ring,
                     {idx: v for idx, v in s.coeffs.items() if idx})
    out = series_one(s.n, s.K, s.ring)
    power = series_one(s.n, s.K, s.ring)
    for j in range(1, s.K + 1):
        power = series_multiply(power, u)
        if not power.coeffs:
            break
        b = _int_binom(c, j)
        if b:
            out = series_add(out, series_scale(power, b))
    return out


def lcs_depth(w: Word, K: int, ring: Ring = ZZ) -> int:
    """Largest k <= K+1 with mu(I; w) = 0 for all indices of length < k.

    A return value of K+1 means "at least K+1": every coefficient up to
    the truncation vanishes.  Over the integers this certifies
    membership in the k-th lower central subgroup up to the truncation
    bound; a k-fold nested commutator of distinct generators returns
    exactly k.
    """
    s = expand(w, K, ring)
    d = s.lowest_positive_degree()
    return K + 1 if d is None else d
