"""Infinitely near base points: chains of blowups on the affine plane.

A chain assigns multiplicities along a sequence of points, each after the
first lying on the exceptional line of the previous blowup and selected by a
tangent direction.  Coordinates are chosen per step so that the exceptional
line is always {y = 0}: for a direction [c : 1] the blowup substitutes
x -> x*y and recenters x at c; for [1 : 0] it substitutes y -> x*y and swaps
the variables afterwards.  Imposing a chain stays entirely inside linear
algebra: each step cuts the coefficient space by the low-order Taylor
coefficients of the transformed sections.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import GF, lift_rationals, primes_from
from .linalg import matmul, nullspace
from .linsys import LinearSys
from .poly import MultiPoly, monomials_below_degree


class TangentDirection:
    """Direction [a : b] on the exceptional line, normalized to [1 : 0] or
    [c : 1]."""

    __slots__ = ("field", "infinite", "c")

    def __init__(self, field, pair):
        a, b = pair
        a = field.coerce(a)
        b = field.coerce(b)
        if field.is_zero(a) and field.is_zero(b):
            raise ValueError("tangent direction cannot be [0 : 0]")
        if field.is_zero(b):
            self.infinite = True
            self.c = field.zero
        else:
            self.infinite = False
            self.c = field.mul(a, field.inv(b))
        self.field = field

    def pair(self):
        if self.infinite:
            return (self.field.one, self.field.zero)
        return (self.c, self.field.one)

    def __repr__(self):
        if self.infinite:
            return "[1 : 0]"
        return f"[{self.field.to_str(self.c)} : 1]"


class BlowupChainSpec:
    """Point, multiplicities along the chain, and the tangent directions
    walking down it (one fewer than the multiplicities)."""

    __slots__ = ("point", "mults", "tangents")

    def __init__(self, point, mults, tangents=()):
        self.point = tuple(point)
        self.mults = [int(m) for m in mults]
        if not self.mults:
            raise ValueError("a chain needs at least one multiplicity")
        if any(m < 0 for m in self.mults):
            raise ValueError("multiplicities must be nonnegative")
        self.tangents = list(tangents)
        if len(self.tangents) != len(self.mults) - 1:
            raise ValueError(
                f"{len(self.mults)} multiplicities need "
                f"{len(self.mults) - 1} tangent direction(s)"
            )

    def to_json(self):
        return {
            "point": [_coord_json(v) for v in self.point],
            "mults": list(self.mults),
            "tangents": [
                [_coord_json(a) for a in (t.pair() if isinstance(t, TangentDirection) else t)]
                for t in self.tangents
            ],
        }

    @staticmethod
    def from_json(data, field):
        point = [_coord_parse(v, field) for v in data["point"]]
        tangents = [
            [_coord_parse(a, field) for a in t] for t in data.get("tangents", [])
        ]
        return BlowupChainSpec(point, data["mults"], tangents)


def _coord_json(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, int):
        return v
    return str(v)


def _coord_parse(v, field):
    if isinstance(v, str):
        return field.parse(v)
    if isinstance(v, int):
        return field.from_int(v)
    raise ValueError(f"cannot read coordinate {v!r}")


# ---------------------------------------------------------------------------
# the blowup substitution


def _blow_transform(f, tangent, divide_power):
    """Strict-transform step: substitute the chart of the tangent direction,
    divide the exceptional factor exactly, and recenter the named point at
    the origin (exceptional line = {y = 0} afterwards)."""
    ring = f.ring
    field = ring.field
    m = divide_power
    terms = {}
    if tangent.infinite:
        # y -> x*y, divide x^m, then swap (x, y) -> (y, x)
        for (a, b), cval in f.terms.items():
            e = (b, a + b - m)
            if e[1] < 0:
                raise ValueError("section is not divisible by the exceptional factor")
            terms[e] = cval
        return MultiPoly(ring, terms)
    for (a, b), cval in f.terms.items():
        e = (a, a + b - m)
        if e[1] < 0:
            raise ValueError("section is not divisible by the exceptional factor")
        terms[e] = cval
    g = MultiPoly(ring, terms)
    if field.is_zero(tangent.c):
        return g
    return g.translate((tangent.c, field.zero))


def multiplicity_sequence(f, point, tangents):
    """Multiplicities of the strict transforms of f along the chain of
    infinitely near points selected by the tangent directions."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no multiplicity sequence")
    ring = f.ring
    if ring.nvars != 2:
        raise ValueError("blowup chains live on the affine plane")
    field = ring.field
    g = f.translate(tuple(field.coerce(v) for v in point))
    seq = [g.multiplicity_at_origin()]
    for t in tangents:
        if not isinstance(t, TangentDirection):
            t = TangentDirection(field, t)
        g = _blow_transform(g, t, seq[-1])
        seq.append(g.multiplicity_at_origin())
    return seq


# ---------------------------------------------------------------------------
# imposing chains on linear systems


def impose_chain(L, specs):
    """Subsystem of L whose members realize every chain: multiplicity
    mults[0] at the point, then mults[k] at the k-th infinitely near point
    down the tangent directions."""
    ambient = L.ambient
    if ambient.kind != "affine" or ambient.dims[0] != 2:
        raise ValueError("chains of infinitely near points need the affine plane")
    field = ambient.field
    n = L.nsections()
    V = [
        [field.one if j == i else field.zero for j in range(n)] for i in range(n)
    ]
    sections = L.sections()
    for spec in specs:
        if not isinstance(spec, BlowupChainSpec):
            spec = BlowupChainSpec(*spec)
        if not V:
            break
        point = tuple(field.coerce(v) for v in ambient.point(spec.point).coords)
        cur = []
        for row in V:
            acc = ambient.ring.zero()
            for cval, s in zip(row, sections):
                if not field.is_zero(cval):
                    acc = acc + s * cval
            cur.append(acc.translate(point))
        tangents = [
            t if isinstance(t, TangentDirection) else TangentDirection(field, t)
            for t in spec.tangents
        ]
        for k, m in enumerate(spec.mults):
            if k > 0:
                cur = [_blow_transform(g, tangents[k - 1], spec.mults[k - 1]) for g in cur]
            if m == 0:
                continue
            targets = monomials_below_degree(2, m)
            rows = [
                [g.terms.get(t, field.zero) for g in cur] for t in targets
            ]
            N = nullspace(rows, field, ncols=len(cur))
            if not N:
                V = []
                cur = []
                break
            V = matmul(N, V, field)
            newcur = []
            for row in N:
                acc = ambient.ring.zero()
                for cval, g in zip(row, cur):
                    if not field.is_zero(cval):
                        acc = acc + g * cval
                newcur.append(acc)
            cur = newcur
    if not V:
        return LinearSys.empty(ambient, L.degree)
    return LinearSys.from_nullspace(L, V)


# ---------------------------------------------------------------------------
# named constructions


def quadrifolium():
    """The degree-6 curve with two tacnode-like chains at the origin along
    the coordinate axes, symmetric under both sign flips, through three
    simple points (one with a fixed tangent).  Returns the unique section
    normalized to leading coefficient 1 at x^6."""
    from .ambient import affine_space
    from .fields import rationals

    field = rationals()
    A2 = affine_space(field, 2)
    ring = A2.ring
    even = [
        ring.monomial(e)
        for e in monomials_below_degree(2, 7)
        if e[0] % 2 == 0 and e[1] % 2 == 0
    ]
    J = LinearSys.from_sections(A2, even, degree=6, check_basis=False)
    fifth = Fraction(1, 5)
    specs = [
        BlowupChainSpec((0, 0), [4, 2], [(1, 0)]),
        BlowupChainSpec((0, 0), [4, 2], [(0, 1)]),
        BlowupChainSpec((1, 1), [1, 1], [(1, -1)]),
        BlowupChainSpec((fifth, Fraction(7, 10)), [1], []),
        BlowupChainSpec((Fraction(7, 10), fifth), [1], []),
    ]
    L = impose_chain(J, specs)
    if L.nsections() != 1:
        raise RuntimeError(f"expected a unique curve, found {L.nsections()} sections")
    f = L.sections()[0]
    lead = f.terms[(6, 0)]
    return f * field.inv(lead)


def _pencil_prefix(p):
    """State of the depth-9 chain of double points at the origin after the
    seven fixed tangent directions [1,1] .. [1,7]: the admissible coefficient
    vectors and the transformed sections still awaiting the 8th direction."""
    K = GF(p, 2)
    from .ambient import affine_space

    A2 = affine_space(K, 2)
    L = LinearSys.complete(A2, 6)
    sections = L.sections()
    n = len(sections)
    V = [[K.one if j == i else K.zero for j in range(n)] for i in range(n)]
    cur = list(sections)
    tangents = [TangentDirection(K, (1, k)) for k in range(1, 8)]
    for k in range(8):
        if k > 0:
            cur = [_blow_transform(g, tangents[k - 1], 2) for g in cur]
        targets = monomials_below_degree(2, 2)
        rows = [[g.terms.get(t, K.zero) for g in cur] for t in targets]
        N = nullspace(rows, K, ncols=len(cur))
        V = matmul(N, V, K)
        cur = [
            _combine_polys(row, cur, A2.ring) for row in N
        ]
    return K, A2, L, V, cur


def _combine_polys(coeffs, polys, ring):
    field = ring.field
    acc = ring.zero()
    for cval, g in zip(coeffs, polys):
        if not field.is_zero(cval):
            acc = acc + g * cval
    return acc


def sextic_pencil_scan(p, cross_check=0, rng=None):
    """Values a in GF(p^2)* for which the sextics with nine infinitely near
    double points at the origin along [1,1],..,[1,7],[1,a] form a pencil
    (a 2-section system).

    The seven fixed directions are imposed once; for each candidate only the
    final blowup matters, and its three Taylor conditions are univariate
    polynomial evaluations at c = 1/a.  With cross_check > 0, that many
    random candidates are re-verified through the full chain machinery.
    """
    K, A2, L, V, cur = _pencil_prefix(p)
    nsec = len(cur)
    # after the last substitution x -> x*y, y^2 division and recentering at c,
    # the three order-<2 coefficients of each g are univariate in c:
    #   1: sum_{a+b=2} g_ab c^a,  x: sum_{a+b=2} a g_ab c^(a-1),
    #   y: sum_{a+b=3} g_ab c^a
    upolys = []
    for g in cur:
        u0 = [K.zero] * 3
        ux = [K.zero] * 2
        uy = [K.zero] * 4
        for (a, b), cval in g.terms.items():
            if a + b == 2:
                u0[a] = cval
                if a >= 1:
                    ux[a - 1] = K.add(ux[a - 1], K.mul(K.from_int(a), cval))
            elif a + b == 3:
                uy[a] = cval
        upolys.append((u0, ux, uy))

    def horner(coeffs, c):
        acc = K.zero
        for v in reversed(coeffs):
            acc = K.add(K.mul(acc, c), v)
        return acc

    hits = []
    for a in K.elements():
        if K.is_zero(a):
            continue
        c = K.inv(a)
        vals = [(horner(u0, c), horner(ux, c), horner(uy, c)) for u0, ux, uy in upolys]
        rows = [list(col) for col in zip(*vals)]
        r = _tiny_rank(rows, K)
        if nsec - r == 2:
            hits.append(a)
    hits.sort()

    if cross_check:
        import random as _random

        rng = rng or _random.Random(0)
        candidates = list(hits)
        pool = [a for a in K.elements() if not K.is_zero(a) and a not in hits]
        candidates += [pool[rng.randrange(len(pool))] for _ in range(cross_check)]
        for a in candidates:
            spec = BlowupChainSpec(
                (0, 0),
                [2] * 9,
                [(1, k) for k in range(1, 8)] + [(K.one, a)],
            )
            full = impose_chain(L, [spec])
            if (full.nsections() == 2) != (a in hits):
                raise RuntimeError(f"pencil scan disagrees with the chain at a={a}")
    return hits


def _tiny_rank(rows, field):
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for j in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][j]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][j])
        rows[r] = [field.mul(v, inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][j]):
                f = rows[i][j]
                rows[i] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])
                ]
        r += 1
        if r == len(rows):
            break
    return r


def pencil_parameter_lift(start_prime=59, target_modulus=10**25, max_primes=40, primes=None):
    """Lift the symmetric functions of the two pencil parameters to the
    rationals by scanning one prime after another and CRT-reconstructing.

    Returns (e1, e2, modulus, primes_used): the lifted trace and norm of a,
    so the parameter satisfies x^2 - e1*x + e2.  Primes where the scan does
    not find exactly two values are skipped.  With an explicit `primes` list
    exactly those primes are scanned; otherwise consecutive primes from
    start_prime are consumed until the modulus clears target_modulus."""
    explicit = primes is not None
    pool = list(primes) if explicit else primes_from(start_prime, max_primes)
    moduli = []
    residues = []
    for p in pool:
        hits = sextic_pencil_scan(p)
        if len(hits) != 2:
            continue
        K = GF(p, 2)
        a1, a2 = hits
        e1 = K.add(a1, a2)
        e2 = K.mul(a1, a2)
        if not (K.in_prime_subfield(e1) and K.in_prime_subfield(e2)):
            continue
        moduli.append(p)
        residues.append([e1[0], e2[0]])
        if not explicit and _prod(moduli) > target_modulus:
            break
    if not moduli:
        raise RuntimeError("no usable primes: every scan missed the two-value pattern")
    if not explicit and _prod(moduli) <= target_modulus:
        raise RuntimeError("not enough usable primes to reach the target modulus")
    lifted = lift_rationals(residues, moduli)
    if not lifted.all_ok:
        raise RuntimeError("rational reconstruction failed; extend the prime range")
    e1, e2 = lifted.values
    return e1, e2, _prod(moduli), list(moduli)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out
