"""Free-group words and their Magnus expansions.

A word is a run-length list of generator powers; multiplying sends
x_i to 1 + X_i inside noncommutative power series truncated at a chosen
degree.  The coefficients detect how deep a word sits in the lower
central series: a k-fold nested commutator has its first nonzero
coefficient in degree exactly k.
"""

from freenil import (
    Zmod,
    commutator,
    expand,
    generator,
    lcs_depth,
    parse_word,
    power_expand,
    series_multiply,
)

w = parse_word("x1^2 x2^-1", 2)
print("word:", w)
print("inverse:", ~w)
print("product with inverse is identity:", (w * ~w).is_identity())

x1, x2 = generator(2, 1), generator(2, 2)
c = commutator(x1, x2)
print("\ncommutator [x1, x2] =", c)

series = expand(c, 3)
print("expansion to degree 3:")
for idx, coeff in sorted(series.coeffs.items(), key=lambda t: (len(t[0]), t[0])):
    print(f"  X{'X'.join(map(str, idx)) if idx else '(const)'}: {coeff}")

print("\nmultiplicativity: expand(a) * expand(b) == expand(ab):",
      series_multiply(expand(x1, 3), expand(x2, 3)) == expand(x1 * x2, 3))

nested = commutator(c, x2)
print("\ndepth of [x1,x2]:", lcs_depth(c, 6))
print("depth of [[x1,x2],x2]:", lcs_depth(nested, 6))

# exponent residues: x^c for an ell-adic c, with guard digits
ring = Zmod(3, 2)
s = power_expand(1, 10, n=2, K=3, ring=ring)
print("\nx1^10 mod 3^2, coefficients of X1^j:",
      [s.coefficient((1,) * j) for j in range(4)])
