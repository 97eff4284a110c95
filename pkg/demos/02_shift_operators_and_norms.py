"""The backward shift B, its transpose S, and operator norms.

B sums a vector over children (moving mass toward the root/anchor); S spreads
it over children.  On weighted l^p spaces the norm of B is a supremum of
per-vertex weight-ratio quantities, evaluated here over a truncation.
"""

from fractions import Fraction

import treeshift as ts
from treeshift import VertexAddress as VA

spine = ts.example_7_2()
L2 = ts.SpaceSpec.ell(2)

u1, v1 = ts.chain_vertex(0, 1), ts.chain_vertex(1, 1)
f = ts.basis(u1) + ts.basis(v1)
print("B (e_u1 + e_v1) =", ts.apply_B(f, spine))
print("S e_o0          =", ts.apply_S(ts.basis(VA(0)), spine))

# duality: <Bf, g> = <f, Sg>
g = 2 * ts.basis(VA(0)) - ts.basis(ts.spine_vertex(1))
print("<Bf, g> =", ts.pairing(ts.apply_B(f, spine), g),
      " <f, Sg> =", ts.pairing(f, ts.apply_S(g, spine)))

print("\noperator norms on the spine-plus-chains tree:")
for p in (1, 2, 4):
    result = ts.operator_norm(ts.SpaceSpec.ell(p), spine, ts.Truncation(6, 6))
    print(f"  l^{p}: {result.value:.10f}   (2^(2-1/p) = {2 ** (2 - 1 / p):.10f})")
print("  c0 :", ts.operator_norm(ts.SpaceSpec.c_zero(), spine, ts.Truncation(6, 6)).value)

# exact mode keeps the powered supremum rational
blocks_exact = ts.example_4_1(exact=True)
result = ts.operator_norm(L2, blocks_exact, ts.Truncation(depth=8))
print("\ntwo-chain block tree, squared norm (exact):", result.powered,
      "=", Fraction(17, 4))
print("is a lower bound over the truncation only:", result.is_sup_over_truncation)

# orbits of finitely supported vectors on a rooted tree die at the root
binary = ts.full_binary()
for point in ts.orbit(ts.basis(VA(0, (0, 1))), 5, binary, L2):
    print(f"  n={point.n}  ||B^n f|| = {point.norm}")
