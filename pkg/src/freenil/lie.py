"""Free Lie algebra in the Lyndon basis, over exact coefficient rings.

Basis elements e(I) are iterated brackets along the standard
factorization of Lyndon words.  Brackets of general elements are
computed in the tensor algebra (ab - ba on words) and decomposed back
into the basis; the direct-read decomposition is verified by
re-expansion per degree, with an exact linear solve as fallback, so
correctness never rests on the triangularity of the basis change.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .intlinalg import rational_kernel_basis, solve_rational
from .lyndon import LyndonWord, enumerate_lyndon, standard_factorization, witt_rank
from .magnus import expand, lcs_depth
from .rings import QQ, Ring, ZZ
from .words import Word

MultiIndex = Tuple[int, ...]


@dataclass
class TensorElement:
    """Homogeneous element of the tensor algebra: sparse word -> coeff map."""

    n: int
    degree: int
    coeffs: Dict[MultiIndex, object]

    def __post_init__(self):
        clean = {}
        for idx, c in self.coeffs.items():
            if len(idx) != self.degree:
                raise ValueError(f"word {idx} breaks homogeneity (degree {self.degree})")
            if c != 0:
                clean[tuple(idx)] = c
        self.coeffs = clean

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (self.n, self.degree) == (other.n, other.degree) and \
            self.coeffs == other.coeffs


def tensor_concat(a: TensorElement, b: TensorElement) -> TensorElement:
    out: Dict[MultiIndex, object] = {}
    for u, cu in a.coeffs.items():
        for v, cv in b.coeffs.items():
            w = u + v
            out[w] = out.get(w, 0) + cu * cv
    return TensorElement(a.n, a.degree + b.degree, out)


def tensor_commutator(a: TensorElement, b: TensorElement) -> TensorElement:
    ab = tensor_concat(a, b)
    ba = tensor_concat(b, a)
    out = dict(ab.coeffs)
    for w, c in ba.coeffs.items():
        out[w] = out.get(w, 0) - c
    return TensorElement(a.n, a.degree + b.degree, out)


_bracket_tensor_cache: Dict[MultiIndex, TensorElement] = {}


def lyndon_bracket_tensor(I: LyndonWord, n: int | None = None) -> TensorElement:
    """Tensor-algebra expansion of the basis element e(I)."""
    n = max(I.index) if n is None else n
    key = I.index
    cached = _bracket_tensor_cache.get(key)
    if cached is None:
        if len(I) == 1:
            cached = TensorElement(max(key), 1, {key: 1})
        else:
            I1, I2 = standard_factorization(I)
            cached = tensor_commutator(
                lyndon_bracket_tensor(I1), lyndon_bracket_tensor(I2)
            )
        _bracket_tensor_cache[key] = cached
    if n != cached.n:
        cached = TensorElement(n, cached.degree, dict(cached.coeffs))
    return cached


_pairing_certificates: Dict[Tuple[int, int], bool] = {}


def lyndon_pairing_matrix(n: int, k: int) -> List[List[int]]:
    """M[I][J] = coefficient of the word I in e(J), over LW_k lex order."""
    words = enumerate_lyndon(n, k)
    tensors = [lyndon_bracket_tensor(J, n) for J in words]
    return [[t.coeffs.get(I.index, 0) for t in tensors] for I in words]


def certify_unitriangular(n: int, k: int) -> bool:
    """Check (once per (n, k)) that the Lyndon pairing matrix is
    unitriangular for the lex order: diagonal 1, zero above it."""
    key = (n, k)
    if key not in _pairing_certificates:
        M = lyndon_pairing_matrix(n, k)
        ok = all(M[i][i] == 1 for i in range(len(M))) and \
            all(M[i][j] == 0 for i in range(len(M)) for j in range(i + 1, len(M)))
        _pairing_certificates[key] = ok
    return _pairing_certificates[key]


def decompose(t: TensorElement, ring: Ring = ZZ) -> Dict[LyndonWord, object]:
    """Coefficients c_I with t = sum of c_I e(I), for t in the Lie span.

    Primary path reads c_I off the word-I coefficient and verifies by
    re-expansion; on failure, solves the linear system against the
    basis expansions.  Raises ValueError when t is not a Lie element.
    """
    if t.is_zero():
        return {}
    k = t.degree
    words = enumerate_lyndon(t.n, k)
    coeffs = None
    if certify_unitriangular(t.n, k):
        guess = {I: ring.normalize(t.coeffs.get(I.index, 0)) for I in words}
        if _reexpands_to(guess, t, ring):
            coeffs = guess
    if coeffs is None:
        coeffs = _decompose_by_solve(t, words, ring)
    return {I: c for I, c in coeffs.items() if c != 0}


def _reexpands_to(coeffs: Dict[LyndonWord, object], t: TensorElement,
                  ring: Ring) -> bool:
    residual = {idx: ring.normalize(c) for idx, c in t.coeffs.items()}
    residual = {idx: c for idx, c in residual.items() if c != 0}
    for I, c in coeffs.items():
        if c == 0:
            continue
        for idx, s in lyndon_bracket_tensor(I, t.n).coeffs.items():
            v = ring.sub(residual.get(idx, 0), ring.mul(c, s))
            if v == 0:
                residual.pop(idx, None)
            else:
                residual[idx] = v
    return not residual


def _decompose_by_solve(t: TensorElement, words: List[LyndonWord],
                        ring: Ring) -> Dict[LyndonWord, object]:
    if ring.kind == "Zmod":
        raise ValueError("linear-solve fallback needs Z or Q coefficients")
    all_words = sorted({idx for I in words
                        for idx in lyndon_bracket_tensor(I, t.n).coeffs}
                       | set(t.coeffs))
    pos = {idx: r for r, idx in enumerate(all_words)}
    A = [[0] * len(words) for _ in all_words]
    for j, I in enumerate(words):
        for idx, c in lyndon_bracket_tensor(I, t.n).coeffs.items():
            A[pos[idx]][j] = c
    b = [t.coeffs.get(idx, 0) for idx in all_words]
    x = solve_rational(A, b)
    if x is None:
        raise ValueError("tensor element is not in the Lie span")
    if ring.kind == "Z" and any(c.denominator != 1 for c in x):
        raise ValueError("tensor element is not in the integer Lie span")
    return {I: ring.normalize(c) for I, c in zip(words, x)}


class LieElement:
    """Graded free-Lie-algebra element: degree -> {LyndonWord: coeff}."""

    def __init__(self, n: int, ring: Ring = ZZ,
                 parts: Dict[int, Dict[LyndonWord, object]] | None = None):
        self.n = n
        self.ring = ring
        self.parts: Dict[int, Dict[LyndonWord, object]] = {}
        for deg, term in (parts or {}).items():
            for I, c in term.items():
                if I.weight != deg:
                    raise ValueError(f"{I} is not degree {deg}")
                c = ring.normalize(c)
                if c != 0:
                    self.parts.setdefault(deg, {})[I] = c

    @classmethod
    def basis(cls, n: int, I: LyndonWord, ring: Ring = ZZ,
              coeff=1) -> "LieElement":
        return cls(n, ring, {I.weight: {I: coeff}})

    def is_zero(self) -> bool:
        return not self.parts

    def coefficient(self, I: LyndonWord):
        return self.parts.get(I.weight, {}).get(I, 0)

    def degrees(self) -> List[int]:
        return sorted(self.parts)

    def homogeneous_part(self, degree: int) -> Dict[LyndonWord, object]:
        return dict(self.parts.get(degree, {}))

    def _check(self, other: "LieElement"):
        if (self.n, self.ring) != (other.n, other.ring):
            raise ValueError("mismatched Lie algebra parameters")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        parts: Dict[int, Dict[LyndonWord, object]] = {
            d: dict(t) for d, t in self.parts.items()
        }
        for d, term in other.parts.items():
            dst = parts.setdefault(d, {})
            for I, c in term.items():
                dst[I] = dst.get(I, 0) + c
        return LieElement(self.n, self.ring, parts)

    def scale(self, c) -> "LieElement":
        return LieElement(self.n, self.ring, {
            d: {I: self.ring.mul(v, c) for I, v in term.items()}
            for d, term in self.parts.items()
        })

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return (self.n, self.ring, self.parts) == (other.n, other.ring, other.parts)

    def to_tensor(self, degree: int) -> TensorElement:
        out: Dict[MultiIndex, object] = {}
        for I, c in self.parts.get(degree, {}).items():
            for idx, s in lyndon_bracket_tensor(I, self.n).coeffs.items():
                out[idx] = out.get(idx, 0) + c * s
        return TensorElement(self.n, degree, out)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "parts": {
                str(d): {str(I): str(c) for I, c in sorted(term.items())}
                for d, term in sorted(self.parts.items())
            },
        }

    def __repr__(self):
        terms = []
        for d in self.degrees():
            for I, c in sorted(self.parts[d].items()):
                terms.append(f"{c}*e({I})")
        return " + ".join(terms) if terms else "0"


_bracket_struct_cache: Dict[Tuple[int, MultiIndex, MultiIndex], Dict] = {}


def _basis_bracket(n: int, I: LyndonWord, J: LyndonWord) -> Dict[LyndonWord, int]:
    """Structure constants of [e(I), e(J)] over the integers, cached."""
    if I == J:
        return {}
    if J < I:
        return {R: -c for R, c in _basis_bracket(n, J, I).items()}
    key = (n, I.index, J.index)
    if key not in _bracket_struct_cache:
        t = tensor_commutator(lyndon_bracket_tensor(I, n), lyndon_bracket_tensor(J, n))
        _bracket_struct_cache[key] = decompose(t, ZZ)
    return _bracket_struct_cache[key]


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Lie bracket, bilinear over the cached basis structure constants."""
    a._check(b)
    ring = a.ring
    parts: Dict[int, Dict[LyndonWord, object]] = {}
    for da, ta in a.parts.items():
        for db, tb in b.parts.items():
            dst = parts.setdefault(da + db, {})
            for I, ca in ta.items():
                for J, cb in tb.items():
                    c = ring.mul(ca, cb)
                    if c == 0:
                        continue
                    for R, s in _basis_bracket(a.n, I, J).items():
                        dst[R] = dst.get(R, 0) + c * s
    return LieElement(a.n, ring, parts)


def group_graded_decompose(w: Word, k: int, ring: Ring = ZZ) -> Dict[LyndonWord, object]:
    """Class of a depth >= k word in the degree-k graded piece.

    The coefficients are the Magnus coefficients mu(I; w) over Lyndon
    indices of length k.
    """
    if lcs_depth(w, k, ring) < k:
        raise ValueError(f"word has Magnus coefficients below degree {k}")
    series = expand(w, k, ring)
    out = {}
    for I in enumerate_lyndon(w.n, k):
        c = series.coefficient(I.index)
        if c != 0:
            out[I] = c
    return out


@dataclass
class DkKernel:
    """Basis of ker(bracket: H tensor L_k -> L_{k+1}) over the rationals.

    columns fixes the coordinate order on H tensor L_k as (generator i,
    Lyndon word J); vectors are basis rows in those coordinates.
    """

    n: int
    k: int
    columns: List[Tuple[int, LyndonWord]]
    vectors: List[List[Fraction]]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def contains(self, coords: List) -> bool:
        """Exact membership of a coordinate vector in the kernel span."""
        if not self.vectors:
            return all(Fraction(c) == 0 for c in coords)
        A = [list(col) for col in zip(*self.vectors)]
        return solve_rational(A, [Fraction(c) for c in coords]) is not None


def dk_kernel_basis(n: int, k: int, ring: Ring = QQ) -> DkKernel:
    """Kernel of the bracket pairing into degree k + 1.

    Its dimension is n N_k - N_{k+1}, the degree-k rank of the space
    the tree-diagram map lands in.
    """
    if ring != QQ:
        raise ValueError("kernel basis is computed over the rationals")
    lw_k = enumerate_lyndon(n, k)
    lw_next = enumerate_lyndon(n, k + 1)
    row_of = {I: r for r, I in enumerate(lw_next)}
    columns = [(i, J) for i in range(1, n + 1) for J in lw_k]
    A = [[0] * len(columns) for _ in lw_next]
    for col, (i, J) in enumerate(columns):
        xi = LieElement.basis(n, LyndonWord((i,)))
        for R, c in bracket(xi, LieElement.basis(n, J)).homogeneous_part(k + 1).items():
            A[row_of[R]][col] = c
    vectors = rational_kernel_basis(A)
    kernel = DkKernel(n, k, columns, vectors)
    expected = n * witt_rank(n, k) - witt_rank(n, k + 1)
    assert kernel.dimension == expected, \
        f"kernel dimension {kernel.dimension} != n N_k - N_(k+1) = {expected}"
    return kernel
