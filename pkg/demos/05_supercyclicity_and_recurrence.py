"""Scaled orbits and synthesised recurrent vectors.

Allowing scalar factors from a set Gamma weakens density requirements: a shift
that is not hypercyclic can still have a dense scaled orbit when the scalars
grow.  Going the other way, on trees satisfying the divergence criterion one
can synthesise a single vector whose orbit provably keeps returning to
e_root, with certified residual bounds.
"""

import treeshift as ts

L2 = ts.SpaceSpec.ell(2)

# a two-sided path with weights 1 below the anchor and decaying above:
# not hypercyclic, but powers-of-two scalings make both displays diverge
spine = ts.bi_infinite_path(lambda d: 2.0 ** min(d, 0))
print("plain transitivity:", ts.dynamics_report(spine, L2, horizon=64).satisfied)
report = ts.supercyclicity_report(spine, L2, ts.gamma_powers(2), horizon=64)
print("Gamma = 2^k scaled-orbit criterion:", report.satisfied)
for R, n, k, lam in report.achieved[:5]:
    print(f"  threshold {R}: n={n}, lambda_{k}={lam}")

# the unweighted two-sided path stays out of reach even with scalars
flat = ts.bi_infinite_path()
print("\nunweighted path, Gamma = 2^k:",
      ts.supercyclicity_report(flat, L2, ts.gamma_powers(2), horizon=64).satisfied)

# rooted trees reduce structurally: bounded Gamma defers to hypercyclicity,
# unbounded Gamma only needs dense range (no leaves)
binary = ts.full_binary()
print("\nbinary tree, Gamma = {1}:",
      ts.supercyclicity_report(binary, L2, ts.gamma_constant(1)).satisfied)
print("unary path, Gamma = 2^k:",
      ts.supercyclicity_report(ts.unary_path(), L2, ts.gamma_powers(2)).satisfied)

# recurrent-vector synthesis on the block tree: each retained power n_j gets
# a budget 2^-j, and the certificates re-verify every residual directly
blocks = ts.example_4_1()
syn = ts.build_recurrent_vector(range(1, 64), blocks, L2, terms=3)
print("\nsynthesised vector with", len(syn.vector), "entries; retained powers:",
      [t.n for t in syn.terms])
for cert in syn.certificates:
    print(f"  step {cert.j} (n={cert.n}): ||B^n f - e_root|| = {cert.residual:.4g}"
          f" <= {cert.residual_bound:.4g}  verified={cert.verified}")

# where the criterion is too weak, the synthesis says so instead of guessing
try:
    ts.build_recurrent_vector(range(1, 32), ts.unary_path(), L2, terms=2)
except ts.CriterionTooWeakError as exc:
    print("\nunary path:", exc)
