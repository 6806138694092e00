"""Massey products on free nilpotent quotients, built from Magnus
coefficient cochains.

The defining system attached to a multi-index I = (i_1 .. i_m) has
entries indexed by spans (r, s): the 1-cochain is the Magnus functional
of the subindex (i_r .. i_{s-1}), negated.  Cochains are intensional
(functions evaluated through words); the group is infinite so there are
no value tables.  Evaluation against second homology goes through the
unitriangular Magnus matrix of a depth >= k word: its off-corner
entries vanish and the corner is the Magnus coefficient, normalized by
the parity sign so that the dual-basis pairing against Lyndon basis
words is +/- identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .lyndon import enumerate_lyndon, lyndon_commutator_word
from .magnus import expand, lcs_depth
from .rings import Ring, ZZ
from .words import Word, abelianization, multiply
from .words import reduce as word_reduce

MultiIndex = Tuple[int, ...]
Cochain = Callable[[Word], object]


def magnus_cochain(index: MultiIndex, ring: Ring = ZZ) -> Cochain:
    """The 1-cochain w -> mu(index; w)."""
    index = tuple(index)
    K = max(len(index), 1)

    def f(w: Word):
        return expand(w, K, ring).coefficient(index)

    return f


def coboundary(f: Cochain, ring: Ring = ZZ) -> Callable[[Word, Word], object]:
    """Inhomogeneous coboundary of a 1-cochain with trivial action:
    (df)(g1, g2) = f(g2) - f(g1 g2) + f(g1)."""

    def df(g1: Word, g2: Word):
        return ring.normalize(f(g2) - f(multiply(g1, g2)) + f(g1))

    return df


def cup(u: Cochain, v: Cochain, ring: Ring = ZZ) -> Callable[[Word, Word], object]:
    """Cup product of 1-cochains, with the sign (-1)^{pq} = -1."""

    def uv(g1: Word, g2: Word):
        return ring.normalize(-u(g1) * v(g2))

    return uv


@dataclass
class DefiningSystem:
    """Magnus-coefficient defining system for a base index on F/Gamma_k.

    mu_entry(r, s) is the subindex functional for 1 <= r < s <= m+1;
    entry(r, s) is its negation, the array entry proper.  Every span
    except the full (1, m+1) corner has length < k, so the functionals
    descend to the nilpotent quotient.
    """

    index: MultiIndex
    k: int
    ring: Ring = ZZ

    def __post_init__(self):
        self.index = tuple(self.index)
        if len(self.index) < 2:
            raise ValueError("base index must have length >= 2")
        if self.k < 2:
            raise ValueError("nilpotency index k must be >= 2")

    @property
    def m(self) -> int:
        return len(self.index)

    def subindex(self, r: int, s: int) -> MultiIndex:
        if not (1 <= r < s <= self.m + 1):
            raise ValueError(f"span ({r}, {s}) out of range")
        return self.index[r - 1:s - 1]

    def mu_entry(self, r: int, s: int) -> Cochain:
        return magnus_cochain(self.subindex(r, s), self.ring)

    def entry(self, r: int, s: int) -> Cochain:
        if (r, s) == (1, self.m + 1):
            raise ValueError("the full-span corner is not part of the system")
        f = self.mu_entry(r, s)
        return lambda w: self.ring.neg(f(w))


def random_word(n: int, rng: random.Random, max_syllables: int = 6,
                max_exp: int = 3) -> Word:
    syllables = []
    for _ in range(rng.randint(0, max_syllables)):
        gen = rng.randint(1, n)
        exp = rng.choice([e for e in range(-max_exp, max_exp + 1) if e])
        syllables.append((gen, exp))
    return word_reduce(syllables, n)


@dataclass
class CheckReport:
    passed: bool
    samples: int
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"passed": self.passed, "samples": self.samples}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def defining_system_check(index: MultiIndex, k: int, samples: int = 50,
                          n: int | None = None, ring: Ring = ZZ,
                          seed: int = 0,
                          corrupt: Tuple[int, int] | None = None) -> CheckReport:
    """Verify the defining-system identities on random word pairs.

    For every span (r, s) with s > r + 1 the coboundary of the subindex
    functional must equal the sum of cup products over intermediate
    cuts; this is the comultiplication rule in cochain form.  Passing
    corrupt=(r, s) perturbs that entry by the constant cochain 1, which
    must break the identity and produce a witness pair.
    """
    system = DefiningSystem(tuple(index), k, ring)
    n = n if n is not None else max(system.index)
    rng = random.Random(seed)
    m = system.m

    def mu(r, s) -> Cochain:
        f = system.mu_entry(r, s)
        if corrupt == (r, s):
            return lambda w: ring.add(f(w), 1)
        return f

    for count in range(1, samples + 1):
        g1 = random_word(n, rng)
        g2 = random_word(n, rng)
        for r in range(1, m + 1):
            for s in range(r + 2, m + 2):
                if (r, s) == (1, m + 1):
                    continue  # corner excluded from the system
                lhs = coboundary(mu(r, s), ring)(g1, g2)
                rhs = 0
                for t in range(r + 1, s):
                    rhs = ring.add(rhs, cup(mu(r, t), mu(t, s), ring)(g1, g2))
                if lhs != rhs:
                    return CheckReport(False, count, {
                        "span": [r, s],
                        "g1": str(g1), "g2": str(g2),
                        "lhs": str(lhs), "rhs": str(rhs),
                    })
    return CheckReport(True, samples)


def massey_evaluate(index: MultiIndex, f: Word, ring: Ring = ZZ):
    """Value of the length-k Massey product on the homology class of f.

    f must have depth >= k = len(index).  The unitriangular Magnus
    matrix of f over the subindices of the base index is central (all
    proper spans vanish, which is asserted), and the corner entry gives
    the value up to the parity sign (-1)^{k+1}.
    """
    index = tuple(index)
    k = len(index)
    if k < 1:
        raise ValueError("empty index")
    if lcs_depth(f, k, ring) < k:
        raise ValueError(f"word has depth < {k}; the class is not defined")
    series = expand(f, k, ring)
    m = k
    for r in range(1, m + 1):
        for s in range(r + 1, m + 2):
            if (r, s) == (1, m + 1):
                continue
            sub = index[r - 1:s - 1]
            assert series.coefficient(sub) == 0, \
                "proper span coefficient nonzero despite depth"
    corner = series.coefficient(index)
    return ring.normalize((-1) ** (k + 1) * corner)


def general_massey_evaluate(alphas: Sequence[Dict[int, object]],
                            system_on_generators: Dict[Tuple[int, int], Dict[int, object]],
                            f: Word, ring: Ring = ZZ):
    """Full multi-composition evaluation of a Massey product on f.

    alphas[t] gives the values of the (t+1)-st 1-cocycle on the
    generators; system_on_generators[(r, s)] the values of the (r, s)
    array entry, with adjacent spans defaulting to the alphas.  f must
    have zero abelianization, which kills the full-span r = 1 block of
    the sum, so the missing corner entry never evaluates.

    The sum runs over r parts, compositions c_1 + ... + c_r = m, and
    generator tuples, weighting Magnus coefficients mu((i_1..i_r); f)
    by the staircase product of array entries and the sign (-1)^{r+1}.
    """
    m = len(alphas)
    if m < 1:
        raise ValueError("need at least one cocycle")
    if any(abelianization(f)):
        raise ValueError("word must have zero abelianization")
    n = f.n

    def entry_value(r: int, s: int, gen: int):
        if s == r + 1:
            return alphas[r - 1].get(gen, 0)
        return system_on_generators.get((r, s), {}).get(gen, 0)

    series = expand(f, m, ring)
    total = 0
    for r in range(1, m + 1):
        for cuts in _compositions(m, r):
            if r == 1:
                continue  # full span; mu((i); f) = 0 by the precondition
            positions = [1]
            for c in cuts:
                positions.append(positions[-1] + c)
            # positions: 1 = p_0 < p_1 < ... < p_r = m + 1
            for gens in _tuples(n, r):
                coeff = series.coefficient(gens)
                if coeff == 0:
                    continue
                prod = 1
                for t in range(r):
                    prod = ring.mul(prod, entry_value(positions[t], positions[t + 1], gens[t]))
                    if prod == 0:
                        break
                if prod == 0:
                    continue
                term = ring.mul(prod, coeff)
                total = ring.add(total, (-1) ** (r + 1) * term)
    return ring.normalize(total)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _tuples(n: int, r: int):
    if r == 0:
        yield ()
        return
    for head in range(1, n + 1):
        for tail in _tuples(n, r - 1):
            yield (head,) + tail


def magnus_system_on_generators(index: MultiIndex, n: int, ring: Ring = ZZ
                                ) -> Tuple[List[Dict[int, object]],
                                           Dict[Tuple[int, int], Dict[int, object]]]:
    """Generator values of the Magnus defining system for the index.

    Normalized so that the staircase sum of general_massey_evaluate
    reproduces massey_evaluate: adjacent spans are the coordinate
    cocycles, longer spans are the subindex Magnus functionals (zero on
    generators, since a generator has no coefficients past degree 1).
    """
    index = tuple(index)
    m = len(index)
    alphas = [{index[t]: 1} for t in range(m)]
    system: Dict[Tuple[int, int], Dict[int, object]] = {}
    for r in range(1, m + 1):
        for s in range(r + 2, m + 2):
            if (r, s) == (1, m + 1):
                continue
            system[(r, s)] = {}  # mu(subindex; x_j) = 0 for spans of length >= 2
    return alphas, system


def dual_basis_matrix(n: int, k: int, ring: Ring = ZZ) -> List[List[object]]:
    """Massey products of the coordinate cocycles against Lyndon words.

    Rows and columns run over Lyndon words of length k (lex order);
    entry (I, J) evaluates the I-indexed product on the group word
    realizing e(J).  The expected value is (-1)^{k+1} times identity.
    """
    words = enumerate_lyndon(n, k)
    realizations = [lyndon_commutator_word(J, n) for J in words]
    return [
        [massey_evaluate(I.index, w, ring) for w in realizations]
        for I in words
    ]


def identity_matrix_sign(matrix: List[List[object]], sign: int) -> bool:
    return all(
        matrix[i][j] == (sign if i == j else 0)
        for i in range(len(matrix)) for j in range(len(matrix))
    )
