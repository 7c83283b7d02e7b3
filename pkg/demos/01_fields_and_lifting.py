"""Exact coefficient fields and multi-prime rational reconstruction."""

import random
from fractions import Fraction

from hyperlin import GF, crt_combine, lift_rationals, rational_reconstruct, rationals

QQ = rationals()
print("rationals:", QQ.add(Fraction(1, 3), Fraction(1, 6)))

F7 = GF(7)
print("GF(7): 3 * 5 =", F7.mul(3, 5), " 1/3 =", F7.inv(3))

# GF(25) elements are coefficient tuples in the generator u
F25 = GF(5, 2)
a = (1, 1)
print("GF(25): (1 + u)^2 =", F25.to_str(F25.mul(a, a)))
print("GF(25) has", sum(1 for _ in F25.elements()), "elements")

# CRT: combine residues of 22/7 modulo several primes, then reconstruct
value = Fraction(22, 7)
primes = [101, 103, 107, 109]
residues = [value.numerator * pow(value.denominator, -1, p) % p for p in primes]
combined = crt_combine(residues, primes)
modulus = 101 * 103 * 107 * 109
print("combined residue:", combined, "mod", modulus)
print("reconstructed:", rational_reconstruct(combined, modulus))

# the same through the bulk interface used by the pencil lift
rng = random.Random(0)
targets = [Fraction(rng.randint(-50, 50), rng.randint(1, 50)) for _ in range(3)]
rows = [
    [t.numerator * pow(t.denominator, -1, p) % p for t in targets]
    for p in primes
]
lifted = lift_rationals(rows, primes)
print("bulk lift ok:", lifted.all_ok, "values:", lifted.values)
assert lifted.values == targets
