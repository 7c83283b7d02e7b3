"""Infinitely near base points: multiplicity sequences and the quadrifolium."""

from hyperlin import (
    BlowupChainSpec,
    LinearSys,
    affine_space,
    impose_chain,
    multiplicity_sequence,
    quadrifolium,
    rationals,
)

A2 = affine_space(rationals(), 2)
ring = A2.ring
x, y = ring.gens()

# the cusp and the tacnode tell themselves apart under blowup
cusp = y * y - x * x * x
tacnode = y * y - x * x * x * x
print("cusp sequence:   ", multiplicity_sequence(cusp, (0, 0), [(1, 0), (1, 0)]))
print("tacnode sequence:", multiplicity_sequence(tacnode, (0, 0), [(1, 0)]))

# quartics with a tacnode at the origin and a cusp-like chain at (2, 3)
quartics = LinearSys.complete(A2, 4)
L = impose_chain(
    quartics,
    [
        BlowupChainSpec((0, 0), [2, 2], [(1, 1)]),
        BlowupChainSpec((2, 3), [2, 1, 1], [(1, 1), (1, 0)]),
    ],
)
print("constrained quartics:", L.nsections(), "sections")
total = ring.zero()
for s in L.sections():
    total = total + s
print("generic member keeps both chains:",
      multiplicity_sequence(total, (0, 0), [(1, 1)]),
      multiplicity_sequence(total, (2, 3), [(1, 1), (1, 0)]))

# five carefully chosen chains pin down a single sextic: the quadrifolium
q = quadrifolium()
print("quadrifolium:", q)
print("  mult sequence along the x axis:", multiplicity_sequence(q, (0, 0), [(1, 0)]))
print("  mult sequence along the y axis:", multiplicity_sequence(q, (0, 0), [(0, 1)]))
