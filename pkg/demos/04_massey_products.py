"""Massey products from Magnus-coefficient defining systems.

The subindex functionals of a base multi-index satisfy the defining
system identities exactly (a cochain-level restatement of the Magnus
comultiplication rule); evaluating the resulting product on the class
of a depth-k word produces the Magnus coefficient up to a parity sign.
Against words realizing the Lyndon basis this pairing is unitriangular,
and plus-or-minus the identity in the small ranges.
"""

from freenil import (
    defining_system_check,
    dual_basis_matrix,
    enumerate_lyndon,
    general_massey_evaluate,
    lyndon_commutator_word,
    magnus_system_on_generators,
    massey_evaluate,
)
from freenil.words import commutator, generator

check = defining_system_check((1, 2, 2), k=4, samples=40)
print("defining-system identities on 40 random pairs:",
      "pass" if check.passed else f"fail {check.witness}")

c12 = commutator(generator(2, 1), generator(2, 2))
print("\n<-x1*, -x2*> evaluated on [x1,x2]:", massey_evaluate((1, 2), c12))

for n, k in [(2, 2), (2, 3), (3, 2)]:
    M = dual_basis_matrix(n, k)
    words = [str(w) for w in enumerate_lyndon(n, k)]
    print(f"\ndual-basis matrix (n={n}, k={k}), rows/cols {words}:")
    for row in M:
        print("  ", row)

# the full multi-composition sum specializes to the closed form
index = (1, 2, 2)
f = lyndon_commutator_word(enumerate_lyndon(2, 3)[1], 2)
alphas, system = magnus_system_on_generators(index, 2)
print("\nverbatim staircase sum:", general_massey_evaluate(alphas, system, f),
      "== closed form:", massey_evaluate(index, f))
