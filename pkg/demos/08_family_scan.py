"""Random search for many-nodal quintics inside a symmetry-invariant family."""

import random
import time

from hyperlin import GF, invariant_family_scan

# the order-5 invariant family over GF(101): draw the two movable double
# points at random and keep surfaces whose singular locus is 30 plain nodes
t0 = time.time()
res = invariant_family_scan(
    "z5", 101, 2000, "nodes30", rng=random.Random(0), stop_after=1
)
print(f"{res.trials} trials, {res.skipped} degenerate draws skipped"
      f"  ({time.time() - t0:.1f}s)")
field = GF(101)
for m in res.matches:
    params = ", ".join(field.to_str(v) for v in m.parameters)
    hist = ", ".join(f"{v} x {k}" for k, v in sorted(m.histogram.items()))
    print(f"trial {m.trial}: parameters ({params}) give {len(m.points)}"
          f" singular points ({hist})")
    print("  " + str(m.polynomial))
