"""Named singular curves and surfaces with verified invariants.

Each constructor returns (ambient, polynomial).  The quintic surfaces realize
record node and cusp counts on finite-field models; the expected counts and
classification histograms ship alongside so callers can re-verify them.
"""

from fractions import Fraction

from .ambient import projective_space
from .fields import GF

# the unique symmetric sextic through the two axis tacnode chains
QUADRIFOLIUM_STRING = "x^6+26171/9604*x^4*y^2+26171/9604*x^2*y^4-35775/4802*x^2*y^2+y^6"

# trace and norm of the pencil parameter a: it satisfies x^2 - trace*x + norm
SEXTIC_PENCIL_TRACE = Fraction(3645985316400, 227892834937)
SEXTIC_PENCIL_NORM = Fraction(14582741040000, 227892834937)


def nodal_quintic_30():
    """Z/5-invariant quintic over GF(101) with exactly 30 nodes."""
    P3 = projective_space(GF(101), 3)
    x1, x2, x3, x4 = P3.ring.gens()
    F = (
        x1 ** 5 + x2 ** 5 + x1 ** 2 * x2 ** 2 * x3 * 76 + x1 * x2 * x3 ** 3 * 54
        + x3 ** 5 * 65 + x1 ** 2 * x2 ** 2 * x4 * 90 + x1 * x2 * x3 ** 2 * x4 * 93
        + x3 ** 4 * x4 * 29 + x1 * x2 * x3 * x4 ** 2 * 37 + x3 ** 3 * x4 ** 2 * 53
        + x1 * x2 * x4 ** 3 * 85 + x3 ** 2 * x4 ** 3 * 20 + x3 * x4 ** 4 * 10
        + x4 ** 5 * 93
    )
    return P3, F


def nodal_quintic_31():
    """Z/5-invariant quintic over GF(101) with 31 nodes, the maximum."""
    P3 = projective_space(GF(101), 3)
    x1, x2, x3, x4 = P3.ring.gens()
    G = (
        x1 ** 5 + x2 ** 5 + x1 ** 2 * x2 ** 2 * x3 * 48 + x1 * x2 * x3 ** 3 * 62
        + x3 ** 5 * 97 + x1 ** 2 * x2 ** 2 * x4 * 5 + x1 * x2 * x3 ** 2 * x4 * 90
        + x3 ** 4 * x4 * 12 + x1 * x2 * x3 * x4 ** 2 * 80 + x3 ** 3 * x4 ** 2 * 99
        + x1 * x2 * x4 ** 3 * 61 + x3 ** 2 * x4 ** 3 * 36 + x3 * x4 ** 4 * 18
        + x4 ** 5 * 97
    )
    return P3, G


def cuspidal_quintic_15():
    """Z/6-invariant quintic over GF(103) whose 15 singular points are cusps."""
    P3 = projective_space(GF(103), 3)
    x1, x2, x3, x4 = P3.ring.gens()
    F = (
        x1 ** 4 * x2 + x1 * x2 ** 4 * 30 + x1 ** 3 * x3 ** 2 * 22
        + x2 ** 3 * x3 ** 2 * 29 + x1 ** 2 * x2 ** 2 * x4 * 85
        + x1 * x2 * x3 ** 2 * x4 * 25 + x3 ** 4 * x4 * 56 + x1 ** 3 * x4 ** 2 * 15
        + x2 ** 3 * x4 ** 2 * 89 + x1 * x2 * x4 ** 3 * 60 + x3 ** 2 * x4 ** 3 * 22
        + x4 ** 5 * 29
    )
    return P3, F


def cuspidal_quintic_18():
    """Z/6-invariant quintic over GF(103) with 15 cusps and 3 nodes."""
    P3 = projective_space(GF(103), 3)
    x1, x2, x3, x4 = P3.ring.gens()
    G = (
        x1 ** 4 * x2 + x1 * x2 ** 4 * 42 + x1 ** 3 * x3 ** 2 * 73
        + x1 ** 2 * x2 ** 2 * x4 * 60 + x1 * x2 * x3 ** 2 * x4 * 9
        + x3 ** 4 * x4 * 93 + x1 ** 3 * x4 ** 2 * 15 + x2 ** 3 * x4 ** 2 * 77
        + x1 * x2 * x4 ** 3 * 98 + x3 ** 2 * x4 ** 3 * 39 + x4 ** 5 * 16
    )
    return P3, G


# expected singular-locus summaries: (point count, classification histogram)
EXPECTED_COUNTS = {
    "nodal_quintic_30": (30, {"A1": 30}),
    "nodal_quintic_31": (31, {"A1": 31}),
    "cuspidal_quintic_15": (15, {"A2": 15}),
    "cuspidal_quintic_18": (18, {"A2": 15, "A1": 3}),
}
