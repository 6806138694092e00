"""Milnor invariants of conjugation-form automorphisms.

An automorphism sends each generator to a conjugate of its chi-power;
everything is measured mod ell^M through series truncated at K.  The
Johnson depth tracks how deep the conjugators sit; the invariants are
their Magnus coefficients; vanishing of the level-k tower invariant is
equivalent to all invariants of length <= 2k-1 dying.  For two
generators and boundary-respecting data, a single length-4 invariant
controls the level-3 criterion, and the lifting ladder agrees with the
cocycle vanishing condition.
"""

import random

from freenil import (
    GaloisAutomorphism,
    compose,
    identity,
    johnson_depth,
    lyndon_commutator_word,
    milnor_invariant,
    n2_report,
    obstruction_tower,
    random_kernel_automorphism,
    tau_vanishes,
    theta_cocycle_vanishes,
    x0_constraint_report,
)
from freenil.lyndon import LyndonWord

# hand-built depth-3 data: y_1 realizes the double bracket, y_2 trivial
y1 = lyndon_commutator_word(LyndonWord((1, 2, 2)), 2)
sigma = GaloisAutomorphism(n=2, K=8, ell=3, M=4, chi=1, y=[y1, identity(2)])
print("sigma:", sigma)
print("Johnson depth:", johnson_depth(sigma))
print("mu(sigma; (1221)) =", milnor_invariant(sigma, (1, 2, 2, 1)))
rep = tau_vanishes(sigma, 3)
print("level-3 vanishing:", rep.to_json())
print("two-generator report:", n2_report(sigma, 3))
print("lifting ladder:", obstruction_tower(sigma, 3, 3).to_json())
print("boundary constraint:", x0_constraint_report(sigma, K=5))

# boundary-respecting random family: the invariants become additive
rng = random.Random(0)
a = random_kernel_automorphism(2, 8, 3, 4, 3, rng, fix_through=5)
b = random_kernel_automorphism(2, 8, 3, 4, 3, rng, fix_through=5)
ab = compose(a, b)
J = (1, 2, 2, 1)
print("\nadditivity of the first nonvanishing invariant:",
      milnor_invariant(ab, J),
      "=", milnor_invariant(a, J), "+", milnor_invariant(b, J), "mod 81")
print("boundary defect pushed past degree 5:",
      x0_constraint_report(a, K=5)["holds"])
print("cocycle vanishing criterion (depth >= 6):",
      theta_cocycle_vanishes(a, 3))
