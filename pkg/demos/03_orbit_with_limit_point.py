"""A non-hypercyclic shift whose orbit still clusters at a nonzero vector.

On the spine-plus-chains tree, the signed indicator vector with +1 at u_(2^k)
and -1 at v_(2^k) is mapped by B^(2^k - 1) closer and closer to e_u1 - e_v1:
the orbit has a nonzero limit point even though no orbit is dense.
"""

import treeshift as ts

tree = ts.example_7_2()
L2 = ts.SpaceSpec.ell(2)

f = ts.example_7_2_vector(k_max=7)
limit = ts.basis(ts.chain_vertex(0, 1)) - ts.basis(ts.chain_vertex(1, 1))
print(f"start vector has {len(f)} entries; target ||e_u1 - e_v1|| =",
      ts.norm(limit, L2, tree))

print("\nresiduals along n = 2^k - 1:")
for k in range(1, 7):
    n = 2 ** k - 1
    residual = ts.norm(ts.apply_B_pow(f, n, tree) - limit, L2, tree)
    print(f"  k={k}  n={n:3d}  ||B^n f - limit|| = {residual:.3e}")

# the horizon-bounded criteria agree with both halves of the story:
# no dense orbit (the spine quantity is capped) ...
dyn = ts.dynamics_report(tree, L2, horizon=50)
print("\ntransitivity criterion satisfied:", dyn.satisfied)
u1_entry = next(e for e in dyn.entries if e.vertices == (ts.chain_vertex(0, 1),))
print("spine-augmented quantity ceiling at u_1:", u1_entry.j_sup)

# ... and for NON-NEGATIVE vectors even the limit point is impossible,
# because the spine weights refuse to decay
report = ts.limit_point_report(tree, L2, horizon=64)
print("\nnon-negative-vector limit point verdict:", report.status)
for obs in report.decay:
    print(f"  spine weight along n_k - n_{obs.i}: tail minimum {obs.tail_min} (wants -> 0)")

# contrast: the rooted two-chain block tree has a diverging root quantity,
# so an orbit with a nonzero limit point exists
blocks = ts.example_4_1()
print("\nrooted block tree limit-point verdict:",
      ts.limit_point_report(blocks, L2, horizon=64).status)
