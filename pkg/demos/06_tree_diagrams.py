"""Labeled tree diagrams and the map onto the bracket kernel.

Diagrams are uni-trivalent trees with labeled legs and cyclic orders,
modulo antisymmetry (child swaps cost a sign; odd self-symmetries kill
a class) and the four-term exchange relation.  The degree-k span maps
into ker(H tensor L_k -> L_{k+1}) by summing, over legs, generator
tensor the iterated bracket of the remaining tree; over the rationals
this map is injective with matching dimensions, which is what makes a
short list of invariant indices span everything at low degree.
"""

from freenil import (
    JacobiDiagram,
    canonicalize,
    caterpillar,
    ct_dimension,
    d_rank,
    dk_kernel_basis,
    palindromic_vanishing,
    phi_map,
)
from freenil.jacobi import phi_coordinates

D = JacobiDiagram(2, 1, ((1, 2), 2))
print("diagram:", D, "degree", D.degree)
canon, sign = canonicalize(D)
print("canonical form:", canon, "sign", sign)

print("\nphi image (generator -> Lie part):")
for i, elt in sorted(phi_map(D).items()):
    print(f"  X_{i} (x) {elt!r}")

kernel = dk_kernel_basis(2, 3)
print("lies in the bracket kernel:", kernel.contains(phi_coordinates(D, kernel)))

print("\ndiagram-space dimensions over two labels:")
for k in range(1, 6):
    space = ct_dimension(2, k)
    print(f"  degree {k}: dim {space.dimension} (= D_k = {d_rank(2, k)}), "
          f"basis {[str(b) for b in space.basis]}")

print("\nodd-middle caterpillars vanish by the flip symmetry:")
for k in (0, 1):
    rep = palindromic_vanishing(k)
    print(f"  degree {rep['degree']}: zero {rep['verdict']}, "
          f"even-middle control nonzero {rep['control_nonzero']}")

swap = canonicalize(caterpillar(2, [1, 2, 2, 2, 1]))
print("\ncaterpillar 1,2,2,2,1 sign under canonicalization (0 = zero class):",
      swap[1])
