"""Base points: simple, fat, and in bulk over a finite field."""

import random
import time

from hyperlin import (
    GF,
    LinearSys,
    affine_space,
    impose_points,
    projective_space,
    random_points,
    rationals,
)

QQ = rationals()

# conics through five general points: the classical pencil count
P2 = projective_space(QQ, 2)
rng = random.Random(4)
pts = random_points(P2, 5, rng, lo=-9, hi=9)
L = impose_points(LinearSys.complete(P2, 2), pts, [1] * 5)
print("conics through 5 points:", L.nsections(), "section")
print("  ", L.sections()[0])

# a fat point: multiplicity m imposes m(m+1)/2 conditions
A2 = affine_space(QQ, 2)
quartics = LinearSys.complete(A2, 4)
fat = impose_points(quartics, [(0, 0)], [3])
print("quartics with a triple point:", fat.nsections(), "= 15 - 6")

# the large finite-field run: 3275 simple points on degree-25 surfaces
P3 = projective_space(GF(397), 3)
t0 = time.time()
pts = random_points(P3, 3275, random.Random(0))
J = impose_points(LinearSys.complete(P3, 25), pts, [1] * len(pts))
print(f"degree 25 on P^3(GF(397)), 3275 points: nsections = {J.nsections()}"
      f"  ({time.time() - t0:.1f}s)")

# heavy rational multiplicities at random integer points
mults = [2] * 6 + [3] * 5 + [5] * 3 + [7] * 2 + [8, 9]
t0 = time.time()
pts = random_points(A2, len(mults), random.Random(0), lo=1, hi=40)
K = impose_points(LinearSys.complete(A2, 20), pts, mults)
print(f"degree 20 over QQ with multiplicities {mults}:"
      f" nsections = {K.nsections()}  ({time.time() - t0:.1f}s)")
