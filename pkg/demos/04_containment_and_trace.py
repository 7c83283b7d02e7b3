"""Containment of a subscheme, traces, and images under maps."""

import random

from hyperlin import (
    GF,
    LinearSys,
    SchemeSpec,
    image_system,
    impose_containment,
    projective_space,
    random_poly,
    rationals,
)

QQ = rationals()
P2 = projective_space(QQ, 2)
ring = P2.ring
x, y, z = ring.gens()

# cubics containing the conic x*z - y^2: they all factor through it
conic = x * z - y * y
L = impose_containment(LinearSys.complete(P2, 3), SchemeSpec([conic], saturated=True))
print("cubics containing the conic:", L.nsections(), "= one linear factor each")

# the trace is the complement: cubics modulo those multiples
T = LinearSys.complete(P2, 3).trace(SchemeSpec([conic], saturated=True))
print("trace on the conic:", T.nsections(), "sections")

# quadrics on P^6 traced on a random complete intersection of 4 quadrics
F101 = GF(101)
P6 = projective_space(F101, 6)
rng = random.Random(0)
quadrics = [random_poly(P6.ring, P6.monomial_basis(2), rng, lo=0, hi=100)
            for _ in range(4)]
T6 = LinearSys.complete(P6, 2).trace(SchemeSpec(quadrics, saturated=True))
print("quadrics on P^6 traced on 4 random quadrics:", T6.nsections(), "= 28 - 4")

# image systems: the degree-2 Veronese image of P^1 is the conic
P1 = projective_space(QQ, 1, names=["s", "t"])
s, t = P1.ring.gens()
target = projective_space(QQ, 2, names=["a", "b", "c"])
img = image_system([s * s, s * t, t * t], target, 2)
print("conics vanishing on the Veronese image:", [str(f) for f in img.sections()])
