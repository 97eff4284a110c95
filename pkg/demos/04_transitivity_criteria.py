"""Return-time sets, Furstenberg families, and transitivity verdicts.

The weight criteria reduce dynamics to arithmetic: q(v, n) aggregates the
inverse weights of the n-th descendant fiber, and the times where it exceeds
every threshold N must form a "large" set of the chosen family.  All verdicts
are horizon-stamped: nothing pretends to know a true limit.
"""

import treeshift as ts
from treeshift import VertexAddress as VA

L2 = ts.SpaceSpec.ell(2)
binary, unary = ts.full_binary(), ts.unary_path()

print("fiber quantity at the root, q(root, n) = 2^(n/2) on the binary tree:")
print("  ", [round(ts.q_value(VA(0), n, binary, L2), 3) for n in range(8)])

print("\nI({root}, N=2) on the binary tree, horizon 10:",
      sorted(ts.I_set([VA(0)], 2, binary, L2, 10)))
print("I({root}, N=2) on the unary path:",
      sorted(ts.I_set([VA(0)], 2, unary, L2, 10)), "(never exceeds 1)")

# family verdicts on plain integer sets
evens = set(range(0, 101, 2))
print("\nevens vs syndetic(2):", ts.family_verdict(evens, ts.syndetic_family(2), 100).status)
print("evens vs thick(3):  ", ts.family_verdict(evens, ts.thick_family(3), 100).status)

# the three headline verdicts
for tree, label in ((binary, "full binary"), (unary, "unary path"), (ts.example_7_2(), "spine tree")):
    report = ts.dynamics_report(tree, L2, horizon=40)
    print(f"\n{label}: criterion satisfied at horizon -> {report.satisfied}")
    if report.witness_vertex is not None:
        print("  diverging witness at", report.witness_vertex,
              "n_k =", report.witness_sequence[:6], "...")

# the two branches of the block tree are never simultaneously heavy:
blocks = ts.example_4_1()
u1, v1 = ts.chain_vertex(0, 1), ts.chain_vertex(1, 1)
print("\nblock tree, I(u_1, 2) within horizon 12:",
      sorted(ts.I_set([u1], 2, blocks, L2, 12)))
print("block tree, I(v_1, 2) within horizon 12:",
      sorted(ts.I_set([v1], 2, blocks, L2, 12)))
print("intersection:",
      ts.I_set([u1], 2, blocks, L2, 1000) & ts.I_set([v1], 2, blocks, L2, 1000))

# constructive return-set witnesses: certified times carry checked vectors
ball = ts.BallSpec(ts.basis(VA(0)), 0.5, L2)
rep = ts.return_set_report(ball, ball, 6, binary)
print("\nreturn set N(U, U) on the binary tree, certified times:",
      sorted(rep.certified_in))
