"""Lyndon words, Witt ranks, and collection normal forms.

A multi-index is Lyndon (the classical "standard" condition) when it is
strictly lexicographically smaller than every proper end.  Lyndon words
of length k index a basis of the degree-k part of the free Lie algebra;
their count is the Witt number N_k(n).  Words of length < k, ordered by
weight then lex, form the basis B through which every element of the
free nilpotent group of class k - 1 gets a unique collection normal
form with exponents read off from Magnus coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from .magnus import expand, lcs_depth
from .rings import Ring, ZZ
from .words import Word, commutator, generator, identity, invert, multiply

MultiIndex = Tuple[int, ...]


@dataclass(frozen=True, order=False)
class LyndonWord:
    """A Lyndon multi-index.  Ordered weight-major, then lex (the B order)."""

    index: MultiIndex

    def __post_init__(self):
        idx = tuple(self.index)
        object.__setattr__(self, "index", idx)
        if not idx:
            raise ValueError("empty index")
        if not is_lyndon(idx):
            raise ValueError(f"{idx} is not a Lyndon word")

    def __len__(self):
        return len(self.index)

    @property
    def weight(self) -> int:
        return len(self.index)

    def _key(self):
        return (len(self.index), self.index)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __str__(self):
        return "".join(str(i) for i in self.index)

    def __repr__(self):
        return f"LyndonWord({self})"


def is_lyndon(index: MultiIndex) -> bool:
    """True when the index is strictly smaller than each proper end."""
    idx = tuple(index)
    if not idx:
        return False
    return all(idx < idx[m:] for m in range(1, len(idx)))


def enumerate_lyndon(n: int, k: int) -> List[LyndonWord]:
    """All Lyndon words of length exactly k over {1..n}, lex sorted.

    Duval's generation; the count equals witt_rank(n, k).
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    out = []
    w = [0]
    while w:
        w[-1] += 1
        if len(w) == k:
            out.append(LyndonWord(tuple(w)))
        m = len(w)
        while len(w) < k:
            w.append(w[-m])
        while w and w[-1] == n:
            w.pop()
    return out


def lyndon_basis_through(n: int, max_weight: int) -> List[LyndonWord]:
    """All Lyndon words of weight 1..max_weight in the B order."""
    out: List[LyndonWord] = []
    for k in range(1, max_weight + 1):
        out.extend(enumerate_lyndon(n, k))
    return out


@lru_cache(maxsize=None)
def standard_factorization(I: LyndonWord) -> Tuple[LyndonWord, LyndonWord]:
    """Split I = I1 I2 with I2 the longest Lyndon proper end."""
    idx = I.index
    if len(idx) < 2:
        raise ValueError("length-1 words do not factor")
    for m in range(1, len(idx)):
        if is_lyndon(idx[m:]):
            return LyndonWord(idx[:m]), LyndonWord(idx[m:])
    raise AssertionError(f"no Lyndon end found for {idx}")  # unreachable


def _divisors(k: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= k:
        if k % d == 0:
            small.append(d)
            if d != k // d:
                large.append(k // d)
        d += 1
    return small + large[::-1]


def _mobius(d: int) -> int:
    if d == 1:
        return 1
    sign, p = 1, 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            sign = -sign
        p += 1
    if d > 1:
        sign = -sign
    return sign


def witt_rank(n: int, k: int) -> int:
    """N_k(n) = (1/k) sum over d | k of mobius(d) n^{k/d}."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    total = sum(_mobius(d) * n ** (k // d) for d in _divisors(k))
    assert total % k == 0
    return total // k


def d_rank(n: int, k: int) -> int:
    """D_k(n) = n N_k(n) - N_{k+1}(n)."""
    return n * witt_rank(n, k) - witt_rank(n, k + 1)


@lru_cache(maxsize=None)
def lyndon_commutator_word(I: LyndonWord, n: int) -> Word:
    """Group word realizing the Lyndon bracketing of I.

    Length 1 gives the generator; otherwise the iterated group
    commutator [w(I1), w(I2)] along the standard factorization, whose
    lower-central class realizes the corresponding Lie basis element.
    """
    if len(I) == 1:
        return generator(n, I.index[0])
    I1, I2 = standard_factorization(I)
    return commutator(lyndon_commutator_word(I1, n), lyndon_commutator_word(I2, n))


@dataclass(frozen=True)
class NormalForm:
    """Collection normal form in the free nilpotent group of class k-1.

    factors lists (basis element, exponent) pairs in the B order; the
    product of the realizing words reproduces the original element
    modulo the k-th lower central subgroup.
    """

    n: int
    k: int
    ring: Ring
    factors: Tuple[Tuple[LyndonWord, object], ...]

    def as_word(self) -> Word:
        out = identity(self.n)
        for lw, exp in self.factors:
            out = multiply(out, lyndon_commutator_word(lw, self.n) ** int(exp))
        return out

    def exponent(self, lw: LyndonWord):
        for w, e in self.factors:
            if w == lw:
                return e
        return 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "factors": [{"word": str(lw), "exp": str(e)} for lw, e in self.factors],
        }


def normal_form(w: Word, k: int, ring: Ring = ZZ) -> NormalForm:
    """Unique product of basis words with weight < k representing w.

    Strips one degree at a time: at degree j the Magnus coefficients
    mu(I; residual) over Lyndon I of length j are converted to basis
    exponents through the unitriangular word-coefficient pairing (they
    agree on the diagonal but differ below it from degree 3 on), and
    dividing off those factors pushes the residual into depth j + 1.
    """
    if k < 2:
        raise ValueError("nilpotency bound k must be >= 2")
    if ring.kind == "Q":
        raise ValueError("normal forms take integer or modular exponents")
    factors: List[Tuple[LyndonWord, object]] = []
    residual = w
    K = k - 1
    for j in range(1, k):
        series = expand(residual, K, ring)
        words_j = enumerate_lyndon(w.n, j)
        mu_vec = [series.coefficient(lw.index) for lw in words_j]
        exponents = _pairing_solve(w.n, j, mu_vec, ring)
        stage = identity(w.n)
        for lw, a in zip(words_j, exponents):
            if a == 0:
                continue
            factors.append((lw, a))
            stage = multiply(stage, lyndon_commutator_word(lw, w.n) ** int(a))
        if not stage.is_identity():
            residual = multiply(invert(stage), residual)
    return NormalForm(w.n, k, ring, tuple(factors))


def _pairing_solve(n: int, j: int, mu_vec: List[object], ring: Ring) -> List[object]:
    """Exponents a with P a = mu_vec, P the unitriangular pairing matrix
    (coefficient of word I in the bracketing of J); forward substitution
    in lex order, exact over any of the coefficient rings."""
    from .lie import lyndon_pairing_matrix  # deferred: lie imports this module

    P = lyndon_pairing_matrix(n, j)
    out: List[object] = [0] * len(mu_vec)
    for i in range(len(mu_vec)):
        acc = mu_vec[i]
        for t in range(i):
            if P[i][t] and out[t]:
                acc = acc - P[i][t] * out[t]
        out[i] = ring.normalize(acc)
    return out


def commutator_word(a: LyndonWord, b: LyndonWord, n: int, k: int,
                    ring: Ring = ZZ) -> NormalForm:
    """Normal form of b^-1 a^-1 b a for basis elements a < b of weight < k.

    Every factor has weight at least wt(a) + wt(b); the result is empty
    when the commutator already lies in the k-th lower central subgroup.
    """
    if not a < b:
        raise ValueError(f"need a < b in the basis order, got {a} >= {b}")
    if a.weight >= k or b.weight >= k:
        raise ValueError("basis elements must have weight < k")
    wa = lyndon_commutator_word(a, n)
    wb = lyndon_commutator_word(b, n)
    g = multiply(multiply(invert(wb), invert(wa)), multiply(wb, wa))
    nf = normal_form(g, k, ring)
    floor = a.weight + b.weight
    assert all(lw.weight >= floor for lw, _ in nf.factors), \
        f"normal form of [{a},{b}] dips below weight {floor}"
    return nf


def normal_form_residual_depth(w: Word, nf: NormalForm, K: int | None = None) -> int:
    """Depth of (product of nf factors)^-1 * w; >= nf.k certifies the form."""
    if K is None:
        K = nf.k
    residual = multiply(invert(nf.as_word()), w)
    return lcs_depth(residual, K, nf.ring if nf.ring.kind != "Q" else ZZ)
