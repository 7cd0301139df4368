#!/usr/bin/env python3
"""Two upper-triangular algebras that look alike but behave differently.

Both algebras below consist of 3x3 upper-triangular matrices with constant
diagonal, so their block structure is identical: three 1-dimensional
diagonal blocks, all carrying the same scalar action.  The multiplicity
test (block dimension >= number of isomorphic copies) fails for both.

Yet the chained family has a cyclic vector while the uncoupled one has
none: with off-diagonal coupling the multiplicity condition is sufficient
but not necessary.
"""

from cyclica import (
    GeneratorSet,
    Matrix,
    block_triangularize,
    classify_blocks,
    find_cyclic_vector,
    is_cyclic_vector,
    multiplicity_condition,
)

# the chain: a*I + b*N + c*N^2 for the full Jordan block N
N = Matrix.exact([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
chained = GeneratorSet(3, [N])

# the uncoupled variant: a*I + b*E12 + c*E13 (both strictly-upper
# generators only reach the first coordinate)
E12 = Matrix.exact([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
E13 = Matrix.exact([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
uncoupled = GeneratorSet(3, [E12, E13])

for name, G in [("chained", chained), ("uncoupled", uncoupled)]:
    summary = classify_blocks(block_triangularize(G))
    cls = summary.classes[0]
    print(f"{name}: {len(summary.classes)} class(es), "
          f"block dim {cls.block_dim}, multiplicity {cls.multiplicity}, "
          f"multiplicity condition: {multiplicity_condition(summary)}")

print()
cert = is_cyclic_vector(chained, (0, 0, 1))
print(f"chained family, vector (0,0,1): {cert.verdict} "
      f"(orbit dimension {cert.orbit_dim})")

cert = is_cyclic_vector(chained, (1, 0, 0))
print(f"chained family, vector (1,0,0): {cert.verdict} "
      f"(orbit dimension {cert.orbit_dim})")

found = find_cyclic_vector(uncoupled, trials=32, seed=0)
print(f"uncoupled family, randomized search: {found.verdict}")
mu, P = found.obstruction_locus
print(f"  proof: at mu = {tuple(str(v) for v in mu)} a "
      f"{P.dim}-dimensional space of covectors kills every generator "
      "image, and 2 covector dimensions rule out every single vector")
