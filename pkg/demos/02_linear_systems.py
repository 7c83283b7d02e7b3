"""Constructing linear systems and moving between sections and coefficients."""

import random

from hyperlin import LinearSys, projective_space, rationals

P2 = projective_space(rationals(), 2)

# from a coefficient matrix against a monomial list
mons = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1)]
M = [
    [1, 0, 1, 0, 0],
    [0, 1, 0, 0, -1],
    [0, 1, 0, 1, 0],
    [0, 0, 0, 0, 1],
]
L = LinearSys.from_matrix(P2, M, mons)
print("sections:", [str(s) for s in L.sections()])

# re-feeding with change_basis echelonizes the basis
J = LinearSys.from_sections(P2, L.sections(), change_basis=True)
print("echelonized:", [str(s) for s in J.sections()])
print("same span:", L.same_span(J))

# complete systems stay symbolic until sections are requested
big = LinearSys.complete(P2, 100)
print("degree-100 plane curves:", big.nsections(), "sections, dimension", big.dimension())

# membership and the coefficient map are exact
rng = random.Random(1)
f = L.random_member(rng)
print("random member:", f)
print("member of L:", f in L)
coeffs = L.coefficient_map().apply(f)
print("coefficients:", coeffs)
assert L.polynomial_map(coeffs) == f

# complements split a system along a subsystem
sub = LinearSys.from_sections(P2, L.sections()[:2], degree=2)
comp = L.complement(sub)
print("complement rank:", comp.nsections(), "=", L.nsections(), "-", sub.nsections())
