#!/usr/bin/env python3
"""Reachability of switched linear systems and the input-design problem.

A switched system chooses among mode matrices A_1..A_m over time; its
reachable set from the origin is the smallest subspace containing the
input range and invariant under every mode.  For a single mode this is
the classical controllability span {B, AB, A^2 B, ...}.

The design problem turns this around: given only the modes, how few
input columns suffice, and which matrix works?
"""

from cyclica import Matrix, Mode, SwitchedSystem, design_inputs, reachable_subspace
from cyclica.mrb import InertiaSpec, axis_operator

# single mode: the shift (Jordan) chain driven from its last coordinate
J = Matrix.exact([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
sys = SwitchedSystem(3, [Mode(J)], shared_B=Matrix.exact([[0], [0], [1]]))
R = reachable_subspace(sys)
print(f"shift chain with input at the last coordinate: reachable "
      f"dimension {R.dim} of 3")

# same mode, but the input feeds the top of the chain: nothing propagates
sys2 = SwitchedSystem(3, [Mode(J)], shared_B=Matrix.exact([[1], [0], [0]]))
print(f"input at the first coordinate instead: reachable dimension "
      f"{reachable_subspace(sys2).dim} of 3")
print()

# design for a single mode with a repeated eigenvalue: one input column
# can never separate the two copies, two can
A = Matrix.exact([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
rep = design_inputs([A], trials=32, seed=0)
print(f"mode diag(1,1,2): minimal input dimension r = {rep.r} "
      f"(lower bound {rep.lower_bound}, certified: {rep.certified})")
for line in rep.trail:
    print("   ", line)
print()

# two rigid-body axis operators with disjoint axes: single inputs fail,
# a generic planar input works
C = InertiaSpec(4, [1, 2, 3, 4])
modes = [axis_operator(C, (1, 2)), axis_operator(C, (3, 4))]
rep = design_inputs(modes, trials=32, seed=0)
print(f"two disjoint-axis modes on so(4): r = {rep.r}, "
      f"bracket {rep.bracket}, certified: {rep.certified}")
print("witness input matrix B (columns span the certified subspace):")
for i in range(rep.witness_B.rows):
    print("  [" + "  ".join(f"{str(rep.witness_B.entry(i, j)):>4}"
                            for j in range(rep.witness_B.cols)) + "]")
