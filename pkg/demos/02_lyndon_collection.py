"""Lyndon words, Witt ranks, and collection normal forms.

Lyndon words of length k index a basis of the degree-k piece of the
free Lie algebra; their count is the Witt number N_k(n).  Inside the
free nilpotent group of class k-1, every element collects uniquely into
an ordered product of iterated-commutator basis words, with exponents
read off (through a unitriangular change of basis) from Magnus
coefficients.
"""

from freenil import (
    d_rank,
    enumerate_lyndon,
    lcs_depth,
    lyndon_commutator_word,
    multiply,
    normal_form,
    parse_word,
    standard_factorization,
    witt_rank,
)
from freenil.lyndon import normal_form_residual_depth

print("Lyndon words, n=2, lengths 1..5:")
for k in range(1, 6):
    words = enumerate_lyndon(2, k)
    print(f"  k={k}: {[str(w) for w in words]}  (count {len(words)} = "
          f"N_{k} = {witt_rank(2, k)})")

lw = enumerate_lyndon(2, 4)[1]
print(f"\nstandard factorization of {lw}: "
      f"{tuple(str(p) for p in standard_factorization(lw))}")
print(f"group word realizing e({lw}):", lyndon_commutator_word(lw, 2))

print("\nkernel dimensions D_k(2) = 2 N_k - N_(k+1) for k = 1..9:",
      [d_rank(2, k) for k in range(1, 10)])

w = parse_word("x2 x1", 2)
nf = normal_form(w, 4)
print(f"\ncollection of {w} in class 3:")
for basis_word, exponent in nf.factors:
    print(f"  e({basis_word})^{exponent}")
residual = multiply(~nf.as_word(), w)
print("residual depth (>= 4 certifies the form):",
      normal_form_residual_depth(w, nf, K=4))
assert lcs_depth(residual, 4) >= 4
