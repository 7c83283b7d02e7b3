"""A pencil of sextics found modulo p, lifted back to the rationals.

Nine double points in GF(p^2), eight with fixed tangents and one with a
varying tangent [1 : a].  For each prime the scan finds the two values of
`a` where the system jumps to a pencil; their symmetric functions live in
the prime field, so CRT plus rational reconstruction recovers the exact
quadratic satisfied by the parameter over QQ.
"""

import random
import time

from hyperlin import GF, pencil_parameter_lift, sextic_pencil_scan

t0 = time.time()
hits = sextic_pencil_scan(59, cross_check=2, rng=random.Random(0))
K = GF(59, 2)
print(f"p = 59: pencil at a = {K.to_str(hits[0])} and a = {K.to_str(hits[1])}"
      f"  ({time.time() - t0:.1f}s)")
e1 = K.add(hits[0], hits[1])
e2 = K.mul(hits[0], hits[1])
print("  trace", K.to_str(e1), "and norm", K.to_str(e2), "lie in GF(59)")

t0 = time.time()
e1, e2, modulus, primes = pencil_parameter_lift()
print(f"lift over {len(primes)} primes ({primes[0]}..{primes[-1]}),"
      f" modulus ~ 10^{len(str(modulus)) - 1}  ({time.time() - t0:.1f}s)")
print(f"P(x) = x^2 - ({e1})*x + {e2}")
