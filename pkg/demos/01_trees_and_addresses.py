"""Lazily generated directed trees and canonical vertex addresses.

Every vertex of a (possibly infinite) tree gets a finite name: go `up` parent
steps from the anchor, then descend a path of child indices.  Trees are rules,
so nothing is materialised until navigated.
"""

import treeshift as ts
from treeshift import VertexAddress as VA

binary = ts.full_binary()
print("full binary tree, root children:", [str(c) for c in ts.children(VA(0), binary)])
print("descendants at depth 3:", len(list(ts.chi_n(VA(0), 3, binary))))

# the spine-plus-chains tree is unrooted: the anchor has an infinite ancestor
# line o_1, o_2, ... above it and two weighted chains below
spine = ts.example_7_2()
o0 = VA(0)
print("\nunrooted tree:")
print("parent of the anchor:", ts.parent(o0, spine))
print("children of the anchor:", [str(c) for c in ts.children(o0, spine)])

# addresses that climb and re-descend the spine reduce to canonical form
detour = ts.VertexAddress(2, (0,))
print(f"canonicalize {detour} ->", ts.canonicalize(detour, spine))

# navigation works at any distance; only what you touch is generated
u1 = ts.chain_vertex(0, 1)
print("three-fold parent of u_1:", ts.p_n(u1, 3, spine))
print("weight at chain depth 9:", spine.weight(ts.chain_vertex(0, 9)))

# a finite truncation is enough to validate the tree axioms
report = ts.validate(spine, ts.Truncation(depth=12, ancestry=12))
print("\nvalidation on a 12/12 truncation:", "OK" if report.ok else report.violations)

# explicit edge lists are checked for the axioms before they become models
broken = ts.EdgeData(
    edges=(("a", "b"), ("a", "c"), ("c", "b")),  # b acquires two parents
    weights={"a": 1, "b": 1, "c": 1},
    anchor="a",
)
print("double-parent edge list:", [v.code for v in ts.validate(broken).violations])
