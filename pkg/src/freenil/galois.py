"""Simulated Galois-like automorphisms of a truncated free group.

An automorphism acts by x_i -> y_i^-1 x_i^chi y_i with a unit character
residue chi and conjugator words y_i, normalized so the abelianized y_i
has no x_i component.  Everything is measured through Magnus series
truncated at degree K with coefficients mod ell^M; chi is stored as an
integer representative carrying guard digits so that power series in
the exponent stay well defined.  On top of the action sit the Johnson
depth, the Milnor invariants mu(sigma; I) read off the conjugators, the
definedness/vanishing criteria for the tower invariants, and the
double-indexed obstruction ladder report.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .intlinalg import solve_integer
from .lie import LieElement, group_graded_decompose
from .lyndon import LyndonWord, enumerate_lyndon, lyndon_commutator_word
from .magnus import (
    MagnusSeries,
    expand,
    guard_precision,
    lcs_depth,
    power_expand,
    series_inverse,
    series_multiply,
    series_one,
    series_power,
)
from .rings import ZZ, Zmod
from .words import Word, abelianization, identity, invert, multiply, parse_word

MultiIndex = Tuple[int, ...]


def boundary_word(n: int) -> Word:
    """x_0 = (x_n ... x_1)^-1, the word closing the generator relation."""
    return invert(Word(n, tuple((i, 1) for i in range(n, 0, -1))))


class GaloisAutomorphism:
    """Conjugation-form automorphism data at truncation (K, ell^M).

    y words are renormalized on construction: the abelianized x_i
    coefficient of y_i is cleared by a left power of x_i, which does not
    change the action.  chi is an integer representative of a unit
    residue mod ell^{M'}, M' = M + v_ell(K!).
    """

    def __init__(self, n: int, K: int, ell: int, M: int, chi: int,
                 y: Sequence[Word]):
        if len(y) != n:
            raise ValueError(f"need {n} conjugator words, got {len(y)}")
        if any(w.n != n for w in y):
            raise ValueError("conjugator words live on a different generator count")
        if K < 1:
            raise ValueError("truncation degree K must be >= 1")
        self.n = n
        self.K = K
        self.ell = ell
        self.M = M
        self.ring = Zmod(ell, M)
        self.guard_M = guard_precision(K, ell, M)
        self.guard_ring = Zmod(ell, self.guard_M)
        chi = int(chi) % self.guard_ring.modulus
        if chi % ell == 0:
            raise ValueError("chi must be a unit residue")
        self.chi = chi
        self.y = tuple(_renormalize(w, i + 1) for i, w in enumerate(y))
        self._y_series: Dict[Tuple[int, int], MagnusSeries] = {}

    # -- basic data ----------------------------------------------------

    def chi_is_trivial(self) -> bool:
        return self.chi % self.ring.modulus == 1 % self.ring.modulus

    def _series_of_y(self, i: int, K: int) -> MagnusSeries:
        key = (i, K)
        if key not in self._y_series:
            self._y_series[key] = expand(self.y[i - 1], K, self.ring)
        return self._y_series[key]

    def generator_image_series(self, i: int, K: int | None = None) -> MagnusSeries:
        """Series of sigma(x_i) = y_i^-1 x_i^chi y_i."""
        K = self.K if K is None else K
        yi = self._series_of_y(i, K)
        mid = power_expand(i, self.chi, self.n, K, self.ring,
                           c_precision=self.guard_M)
        return series_multiply(series_multiply(series_inverse(yi), mid), yi)

    def substitute(self, w: Word) -> Word:
        """Exact word image of w: conjugate powers collapse, so each
        syllable x_i^e maps to y_i^-1 x_i^{chi e} y_i."""
        out = identity(self.n)
        for gen, exp in w.syllables:
            yi = self.y[gen - 1]
            piece = multiply(multiply(invert(yi), Word(self.n, ((gen, self.chi * exp),))), yi)
            out = multiply(out, piece)
        return out

    def to_config(self, strict_x0: bool = False) -> dict:
        return {
            "n": self.n, "K": self.K, "ell": self.ell, "M": self.M,
            "chi": str(self.chi), "y": [str(w) for w in self.y],
            "strict_x0": strict_x0,
        }

    def __repr__(self):
        return (f"GaloisAutomorphism(n={self.n}, K={self.K}, "
                f"ell^M={self.ell}^{self.M}, chi={self.chi}, "
                f"y={[str(w) for w in self.y]})")


def _renormalize(w: Word, i: int) -> Word:
    c = abelianization(w)[i - 1]
    if c == 0:
        return w
    return multiply(Word(w.n, ((i, -c),)), w)


def identity_automorphism(n: int, K: int, ell: int, M: int) -> GaloisAutomorphism:
    return GaloisAutomorphism(n, K, ell, M, 1, [identity(n)] * n)


def from_config(config: dict | str) -> Tuple[GaloisAutomorphism, dict]:
    """Build an automorphism from the JSON config mapping; returns the
    automorphism and a validation report (x0 check when strict)."""
    if isinstance(config, str):
        config = json.loads(config)
    n = int(config["n"])
    sigma = GaloisAutomorphism(
        n, int(config["K"]), int(config["ell"]), int(config["M"]),
        int(str(config["chi"])),
        [parse_word(s, n) for s in config.get("y", ["1"] * n)],
    )
    report = {}
    if config.get("strict_x0"):
        report["x0"] = x0_constraint_report(sigma)
    return sigma, report


# -- the defining x0 constraint ---------------------------------------


def x0_defect_depth(sigma: GaloisAutomorphism, K: int | None = None) -> int:
    """Depth of sigma(x_0) x_0^{-chi} measured mod ell^M; K + 1 means the
    constraint holds through the truncation."""
    K = sigma.K if K is None else K
    x0 = boundary_word(sigma.n)
    image = series_one(sigma.n, K, sigma.ring)
    for gen, exp in x0.syllables:
        yi = sigma._series_of_y(gen, K)
        mid = power_expand(gen, sigma.chi * exp, sigma.n, K, sigma.ring,
                           c_precision=sigma.guard_M)
        piece = series_multiply(series_multiply(series_inverse(yi), mid), yi)
        image = series_multiply(image, piece)
    target = series_power(expand(x0, K, sigma.ring), sigma.chi)
    defect = series_multiply(image, series_inverse(target))
    d = defect.lowest_positive_degree()
    return K + 1 if d is None else d


def x0_constraint_report(sigma: GaloisAutomorphism, K: int | None = None) -> dict:
    K = sigma.K if K is None else K
    depth = x0_defect_depth(sigma, K)
    return {"holds": depth > K, "defect_depth": depth, "checked_through": K}


# -- composition and twisting ------------------------------------------


def compose(s1: GaloisAutomorphism, s2: GaloisAutomorphism,
            verify: bool = True) -> GaloisAutomorphism:
    """The automorphism acting as s1 after s2 (phi(ab) = phi(a) o phi(b)).

    Conjugators follow the cocycle rule y_i' = y_i(s1) * s1(y_i(s2)),
    then renormalize; chi multiplies, reduced to the guard precision.
    With verify the composed action is compared series-wise against the
    two-step action on every generator.
    """
    if (s1.n, s1.K, s1.ell, s1.M) != (s2.n, s2.K, s2.ell, s2.M):
        raise ValueError("automorphism parameters differ")
    chi = (s1.chi * s2.chi) % s1.guard_ring.modulus
    y = [multiply(s1.y[i], s1.substitute(s2.y[i])) for i in range(s1.n)]
    out = GaloisAutomorphism(s1.n, s1.K, s1.ell, s1.M, chi, y)
    if verify:
        for i in range(1, s1.n + 1):
            direct = out.generator_image_series(i)
            stepped = expand(s1.substitute(s2.substitute(
                Word(s1.n, ((i, 1),)))), s1.K, s1.ring)
            if direct != stepped:
                raise AssertionError(
                    f"composed action disagrees on x_{i} at (K={s1.K}, mod "
                    f"{s1.ell}^{s1.M})"
                )
    return out


def apply(sigma: GaloisAutomorphism, w: Word,
          K: int | None = None) -> MagnusSeries:
    """Magnus series of sigma(w) at truncation K mod ell^M."""
    K = sigma.K if K is None else K
    image = series_one(sigma.n, K, sigma.ring)
    for gen, exp in w.syllables:
        yi = sigma._series_of_y(gen, K)
        mid = power_expand(gen, sigma.chi * exp, sigma.n, K, sigma.ring,
                           c_precision=sigma.guard_M)
        piece = series_multiply(series_multiply(series_inverse(yi), mid), yi)
        image = series_multiply(image, piece)
    return image


def basis_conjugating_inverse(words: Sequence[Word], K: int) -> List[Word]:
    """Conjugators v_i of the inverse of x_i -> w_i^-1 x_i w_i, solved
    iteratively so that psi(v_i) = w_i^-1 holds mod the (K+1)-st lower
    central subgroup."""
    n = words[0].n

    def psi(u: Word) -> Word:
        out = identity(n)
        for gen, exp in u.syllables:
            wi = words[gen - 1]
            out = multiply(out, multiply(multiply(invert(wi), Word(n, ((gen, exp),))), wi))
        return out

    v = [invert(w) for w in words]
    for _ in range(K + 1):
        done = True
        for i in range(n):
            defect = multiply(psi(v[i]), words[i])  # want identity
            if lcs_depth(defect, K) <= K:
                v[i] = multiply(v[i], invert(defect))
                done = False
        if done:
            break
    return v


def twist(sigma: GaloisAutomorphism, basing_words: Sequence[Word],
          verify: bool = True) -> GaloisAutomorphism:
    """Conjugation-twisted automorphism psi o sigma o psi^-1 for the
    basing change psi: x_i -> w_i^-1 x_i w_i.

    The twisted conjugators come out in closed form as
    w_i * psi(y_i(sigma) * sigma(v_i)) with v_i the conjugators of
    psi^-1; no invariance across basings is claimed, the raw twisted
    data is returned.
    """
    n = sigma.n
    if len(basing_words) != n:
        raise ValueError("need one basing word per generator")

    def psi(u: Word) -> Word:
        out = identity(n)
        for gen, exp in u.syllables:
            wi = basing_words[gen - 1]
            out = multiply(out, multiply(multiply(invert(wi), Word(n, ((gen, exp),))), wi))
        return out

    v = basis_conjugating_inverse(basing_words, sigma.K)
    y = [
        multiply(basing_words[i],
                 psi(multiply(sigma.y[i], sigma.substitute(v[i]))))
        for i in range(n)
    ]
    out = GaloisAutomorphism(n, sigma.K, sigma.ell, sigma.M, sigma.chi, y)
    if verify:
        for i in range(1, n + 1):
            psi_inv_xi = multiply(multiply(invert(v[i - 1]),
                                           Word(n, ((i, 1),))), v[i - 1])
            direct = out.generator_image_series(i)
            stepped = expand(psi(sigma.substitute(psi_inv_xi)),
                             sigma.K, sigma.ring)
            if direct != stepped:
                raise AssertionError(f"twisted action disagrees on x_{i}")
    return out


# -- invariants ---------------------------------------------------------


def johnson_depth(sigma: GaloisAutomorphism, cap: int | None = None) -> int:
    """Largest k <= cap with chi trivial mod ell^M and every y_i of
    depth >= k; cap + 1 means at least cap + 1."""
    cap = sigma.K if cap is None else cap
    if not sigma.chi_is_trivial():
        return 0
    depth = cap + 1
    for w in sigma.y:
        depth = min(depth, lcs_depth(w, cap, sigma.ring))
        if depth == 0:
            break
    return depth


def milnor_invariant(sigma: GaloisAutomorphism, J: Sequence[int]):
    """mu(sigma; (i_1 .. i_k i)) = mu((i_1 .. i_k); y_i), mod ell^M."""
    J = tuple(J)
    if len(J) < 2:
        raise ValueError("Milnor indices have length >= 2")
    head, last = J[:-1], J[-1]
    if not 1 <= last <= sigma.n:
        raise ValueError(f"generator index {last} out of range")
    if len(head) > sigma.K:
        raise ValueError(f"index length {len(J)} exceeds truncation K+1 = {sigma.K + 1}")
    return sigma._series_of_y(last, max(len(head), 1)).coefficient(head)


def _indices(n: int, length: int):
    if length == 0:
        yield ()
        return
    for head in _indices(n, length - 1):
        for i in range(1, n + 1):
            yield head + (i,)


def first_nonvanishing(sigma: GaloisAutomorphism, max_length: int
                       ) -> Tuple[int, MultiIndex] | None:
    """Minimal length and lex-least index of a nonzero Milnor invariant
    of length <= max_length, or None when all vanish."""
    for length in range(2, max_length + 1):
        for head in _indices(sigma.n, length - 1):
            for i in range(1, sigma.n + 1):
                if milnor_invariant(sigma, head + (i,)) != 0:
                    return length, head + (i,)
    return None


def milnor_table(sigma: GaloisAutomorphism, max_length: int) -> Dict[str, object]:
    """All nonzero invariants of length <= max_length, keyed by index string."""
    out = {}
    for length in range(2, max_length + 1):
        for head in _indices(sigma.n, length - 1):
            for i in range(1, sigma.n + 1):
                v = milnor_invariant(sigma, head + (i,))
                if v != 0:
                    out["".join(map(str, head + (i,)))] = v
    return out


def theta_defined(sigma: GaloisAutomorphism, k: int) -> bool:
    """The tower invariant at level k is defined exactly when all Milnor
    invariants of length <= k vanish, i.e. the Johnson depth is >= k."""
    if k > sigma.K:
        raise ValueError(f"k = {k} exceeds truncation K = {sigma.K}")
    return johnson_depth(sigma, cap=k) >= k


@dataclass
class TauReport:
    k: int
    vanishes: bool
    witness: MultiIndex | None = None
    witness_value: object | None = None

    def to_json(self) -> dict:
        out = {"k": self.k, "vanishes": self.vanishes}
        if self.witness is not None:
            out["witness"] = "".join(map(str, self.witness))
            out["value"] = str(self.witness_value)
        return out


def tau_vanishes(sigma: GaloisAutomorphism, k: int) -> TauReport:
    """Vanishing of the Hurewicz image at level k: all Milnor invariants
    of length <= 2k - 1 are zero.  Reports a minimal-length witness on
    failure.  Requires depth >= k (else the invariant is undefined) and
    2k - 1 within the truncation."""
    if 2 * k - 1 > sigma.K:
        raise ValueError(f"need 2k - 1 <= K, got k = {k}, K = {sigma.K}")
    if johnson_depth(sigma, cap=k) < k:
        raise ValueError(f"depth < {k}: the level-{k} invariant is not defined")
    hit = first_nonvanishing(sigma, 2 * k - 1)
    if hit is None:
        return TauReport(k, True)
    length, index = hit
    return TauReport(k, False, index, milnor_invariant(sigma, index))


_N2_INVARIANTS = {
    2: [],
    3: [(1, 2, 2, 1)],
    4: [(1, 1, 1, 2, 2, 1), (1, 2, 1, 2, 2, 1), (1, 2, 2, 2, 2, 1)],
}


def n2_report(sigma: GaloisAutomorphism, k: int) -> dict:
    """Two-generator vanishing report at level k in {2, 3, 4}.

    Evaluates exactly the spanning invariants of the diagram analysis
    (none at k = 2, the length-4 palindrome-free index at k = 3, the
    three length-6 indices at k = 4) and reports the verdict."""
    if sigma.n != 2:
        raise ValueError("report is specific to n = 2")
    if k not in _N2_INVARIANTS:
        raise ValueError("k must be one of 2, 3, 4")
    if johnson_depth(sigma, cap=k) < k:
        raise ValueError(f"depth < {k}: level-{k} report undefined")
    values = {
        "".join(map(str, J)): milnor_invariant(sigma, J)
        for J in _N2_INVARIANTS[k]
    }
    return {
        "k": k,
        "invariants": {key: str(v) for key, v in values.items()},
        "vanishes": all(v == 0 for v in values.values()),
    }


@dataclass
class TowerLevel:
    level: int
    restriction: int
    vacuous: bool
    passes: bool
    witness: MultiIndex | None = None


@dataclass
class TowerReport:
    m: int
    l: int
    levels: List[TowerLevel]
    verdict: bool

    def to_json(self) -> dict:
        return {
            "m": self.m, "l": self.l,
            "levels": [
                {
                    "level": lv.level, "restriction": lv.restriction,
                    "status": "vacuous" if lv.vacuous else
                              ("pass" if lv.passes else "fail"),
                    **({"witness": "".join(map(str, lv.witness))}
                       if lv.witness else {}),
                }
                for lv in self.levels
            ],
            "verdict": "vanishes" if self.verdict else "obstructed",
        }


def obstruction_tower(sigma: GaloisAutomorphism, m: int, l: int) -> TowerReport:
    """Milnor-invariant side of the double-indexed lifting ladder.

    Levels j = m .. l sit at Johnson restriction l and are vacuous (the
    restricted cocycle classes are already zero there); levels
    j = l+1 .. 2m-1 each pass when all Milnor invariants of length
    <= j + 1 vanish.  The overall verdict matches the level-m cocycle
    vanishing criterion: depth >= 2m."""
    if not (1 <= m <= l <= sigma.K):
        raise ValueError(f"need 1 <= m <= l <= K, got m={m}, l={l}, K={sigma.K}")
    if johnson_depth(sigma, cap=min(l, sigma.K)) < l:
        raise ValueError(f"depth < {l}: ladder starts at restriction {l}")
    levels: List[TowerLevel] = []
    for j in range(m, l + 1):
        levels.append(TowerLevel(j, l, True, True))
    all_pass = True
    for j in range(l + 1, 2 * m):
        hit = first_nonvanishing(sigma, j + 1)
        ok = hit is None
        levels.append(TowerLevel(j, j, False, ok,
                                 hit[1] if hit is not None else None))
        all_pass = all_pass and ok
    verdict = all_pass
    return TowerReport(m, l, levels, verdict)


def theta_cocycle_vanishes(sigma: GaloisAutomorphism, m: int) -> bool:
    """Level-m cocycle vanishing restated on Milnor invariants: depth at
    least 2m, so all invariants of length <= 2m are zero."""
    return johnson_depth(sigma, cap=2 * m) >= 2 * m


def ihara_consistency(sigma: GaloisAutomorphism, k: int, chi_value: int) -> dict:
    """Check a supplied odd character value against the repeated-index
    invariant: (2k)! (1 - ell^{2k}) mu(sigma; (1 2^{2k} 1)) should equal
    the value mod ell^M.  The character values are opaque inputs; this
    only cross-multiplies the closed form."""
    if sigma.n != 2:
        raise ValueError("repeated-index formula lives on n = 2")
    J = (1,) + (2,) * (2 * k) + (1,)
    mu = milnor_invariant(sigma, J)
    from math import factorial
    lhs = sigma.ring.normalize(factorial(2 * k) * (1 - sigma.ell ** (2 * k)) * mu)
    rhs = sigma.ring.normalize(chi_value)
    return {
        "index": "".join(map(str, J)),
        "mu": str(mu),
        "lhs": str(lhs),
        "rhs": str(rhs),
        "consistent": lhs == rhs,
    }


# -- construction of boundary-respecting test data ---------------------


def realize_classes(n: int, K: int, ell: int, M: int,
                    classes: Dict[int, "LieElement | None"],
                    fix_through: int | None = None,
                    ) -> GaloisAutomorphism:
    """Build a chi = 1 automorphism whose conjugators realize the given
    graded classes and whose x_0 defect vanishes through fix_through.

    classes maps generator index i to a homogeneous LieElement (the
    intended lowest class of y_i) or None for the identity conjugator.
    The bracket sum over i must vanish (the kernel condition), or the
    defect cannot be repaired at the first degree.  Higher defects are
    cancelled degree by degree with integer solves against the bracket
    pairing, which is onto in every degree.
    """
    fix_through = (K - 1) if fix_through is None else fix_through
    y = [identity(n) for _ in range(n)]
    for i, elt in classes.items():
        if elt is None or elt.is_zero():
            continue
        for deg in elt.degrees():
            for J, c in elt.homogeneous_part(deg).items():
                y[i - 1] = multiply(y[i - 1],
                                    lyndon_commutator_word(J, n) ** int(c))
    x0 = boundary_word(n)

    def defect_word(ys: List[Word]) -> Word:
        out = identity(n)
        for gen, exp in x0.syllables:
            yi = ys[gen - 1]
            out = multiply(out, multiply(multiply(invert(yi),
                                                  Word(n, ((gen, exp),))), yi))
        return multiply(out, invert(x0))

    while True:
        defect = defect_word(y)
        d = lcs_depth(defect, fix_through)
        if d > fix_through:
            break
        gamma = group_graded_decompose(defect, d)
        correction = _solve_bracket(n, d, gamma)
        trial = list(y)
        for i in range(1, n + 1):
            word = identity(n)
            for J, c in correction.get(i, {}).items():
                word = multiply(word, lyndon_commutator_word(J, n) ** int(c))
            trial[i - 1] = multiply(trial[i - 1], word)
        if lcs_depth(defect_word(trial), fix_through) > d:
            y = trial
            continue
        # wrong orientation: subtract instead
        trial = list(y)
        for i in range(1, n + 1):
            word = identity(n)
            for J, c in correction.get(i, {}).items():
                word = multiply(word, lyndon_commutator_word(J, n) ** (-int(c)))
            trial[i - 1] = multiply(trial[i - 1], word)
        new_d = lcs_depth(defect_word(trial), fix_through)
        assert new_d > d, "defect correction failed in both orientations"
        y = trial
    return GaloisAutomorphism(n, K, ell, M, 1, y)


def _solve_bracket(n: int, degree: int, gamma: Dict[LyndonWord, object]
                   ) -> Dict[int, Dict[LyndonWord, int]]:
    """Integer solution of the bracket correction against a defect class.

    gamma carries the defect as Magnus readouts mu(I; defect) over
    Lyndon I, so the system is set up in the same coordinates: the
    column for (i, J) is the word-coefficient vector of the tensor
    [X_i, e(J)].  The readout matrix differs from the basis-coordinate
    one by a unimodular triangular factor, so integer solvability (the
    pairing is onto) carries over."""
    from .lie import TensorElement, lyndon_bracket_tensor, tensor_commutator

    lw_lower = enumerate_lyndon(n, degree - 1)
    lw_target = enumerate_lyndon(n, degree)
    columns = [(i, J) for i in range(1, n + 1) for J in lw_lower]
    A = [[0] * len(columns) for _ in lw_target]
    for col, (i, J) in enumerate(columns):
        xi = TensorElement(n, 1, {(i,): 1})
        t = tensor_commutator(xi, lyndon_bracket_tensor(J, n))
        for row, I in enumerate(lw_target):
            A[row][col] = t.coeffs.get(I.index, 0)
    b = [int(gamma.get(R, 0)) for R in lw_target]
    x = solve_integer(A, b)
    assert x is not None, "bracket pairing unexpectedly not onto"
    out: Dict[int, Dict[LyndonWord, int]] = {}
    for (i, J), c in zip(columns, x):
        if c:
            out.setdefault(i, {})[J] = c
    return out


def random_kernel_automorphism(n: int, K: int, ell: int, M: int, k: int,
                               rng: random.Random,
                               scale_range: Tuple[int, int] = (-2, 2),
                               fix_through: int | None = None,
                               ) -> GaloisAutomorphism:
    """A chi = 1 automorphism of depth >= k whose degree-k classes are a
    random integer combination of the bracket-kernel basis, with the
    boundary constraint repaired through fix_through."""
    from math import lcm

    from .lie import dk_kernel_basis
    kernel = dk_kernel_basis(n, k)
    classes: Dict[int, LieElement] = {
        i: LieElement(n, ZZ) for i in range(1, n + 1)
    }
    for vec in kernel.vectors:
        c = rng.randint(*scale_range)
        if c == 0:
            continue
        clear = lcm(*(val.denominator for val in vec)) if vec else 1
        for (i, J), val in zip(kernel.columns, vec):
            if val == 0:
                continue
            classes[i] = classes[i] + LieElement.basis(n, J, ZZ, int(c * clear * val))
    return realize_classes(n, K, ell, M, classes, fix_through=fix_through)
