"""Imposing geometric conditions on linear systems.

Point conditions (vanishing to a prescribed multiplicity, including on
projective and product ambients via the canonical affine chart at each
point), containment of a subscheme, and images of schemes under polynomial
maps.  Each construction produces the condition matrix with respect to the
system's sections and returns the subsystem cut out by its nullspace.

Derivatives are divided-power (Hasse) derivatives throughout, so
multiplicity conditions are correct in positive characteristic as well.
"""

from __future__ import annotations

from math import comb

from .groebner import groebner_basis, normal_form
from .linalg import (
    clear_denominators,
    matmul,
    nullspace,
    nullspace_mod_p,
    nullspace_rational,
    rank_mod_p,
    _mod_rows,
)
from .linsys import LinearSys
from .poly import MultiPoly, grevlex_key, monomials_below_degree

_BIG = 50_000  # matrix-entry count beyond which the numpy kernels take over


class SchemeSpec:
    """A subscheme presented by ideal generators.

    The `saturated` flag is a caller promise that the homogeneous ideal is
    saturated; projective containment refuses to run without it, since
    degree-bounded multiples of an unsaturated ideal can miss sections that
    do vanish on the scheme.
    """

    __slots__ = ("generators", "saturated")

    def __init__(self, generators, saturated=False):
        self.generators = [g for g in generators if not g.is_zero()]
        rings = {g.ring for g in self.generators}
        if len(rings) > 1:
            raise ValueError("generators from different rings")
        self.saturated = bool(saturated)

    def is_zero_ideal(self):
        return not self.generators

    def is_unit_ideal(self):
        return any(
            not g.is_zero() and g.total_degree() == 0 for g in self.generators
        )

    def to_json(self):
        return {
            "generators": [str(g) for g in self.generators],
            "saturated": self.saturated,
        }

    @staticmethod
    def from_json(data, ring):
        gens = [ring.parse(s) for s in data.get("generators", [])]
        return SchemeSpec(gens, saturated=data.get("saturated", False))

    def __repr__(self):
        flag = ", saturated" if self.saturated else ""
        return f"SchemeSpec({len(self.generators)} generator(s){flag})"


# ---------------------------------------------------------------------------
# point conditions


def taylor_row(monomials, coords, t, field):
    """Row of divided-power derivative values: entry per monomial e is
    prod_i C(e_i, t_i) * a_i^(e_i - t_i), the t-th Hasse derivative of x^e
    evaluated at a."""
    row = []
    pow_cache = {}

    def power(i, d):
        key = (i, d)
        v = pow_cache.get(key)
        if v is None:
            v = field.pow(coords[i], d)
            pow_cache[key] = v
        return v

    for e in monomials:
        val = field.one
        for i, (ei, ti) in enumerate(zip(e, t)):
            if ti == 0 and ei == 0:
                continue
            c = comb(ei, ti)
            if c == 0:
                val = field.zero
                break
            val = field.mul(val, power(i, ei - ti))
            if c != 1:
                val = field.mul(val, field.from_int(c))
        row.append(val)
    return row


def _local_directions(ambient, charts):
    """Indices of the local coordinates at a point: every variable except the
    chart variable of each projective block."""
    chart_set = {c for c in charts if c is not None}
    return [i for i in range(ambient.total_vars()) if i not in chart_set]


def point_condition_rows(L, point, multiplicity):
    """Condition rows (over L's monomials) for vanishing to order
    `multiplicity` at the point."""
    ambient = L.ambient
    field = ambient.field
    point = ambient.point(point.coords if hasattr(point, "coords") else point)
    charts, _ = point.affine_chart()
    local = _local_directions(ambient, charts)
    mons = L.monomials()
    coords = list(point.coords)
    rows = []
    for tloc in monomials_below_degree(len(local), multiplicity):
        t = [0] * ambient.total_vars()
        for pos, ti in zip(local, tloc):
            t[pos] = ti
        rows.append(taylor_row(mons, coords, tuple(t), field))
    return rows


def _mass_evaluation_rows(L, points):
    """Evaluation of every basis monomial at every (simple) point, vectorized
    over GF(p).  Exact: products are reduced mod p while still below 2^53."""
    import numpy as np

    ambient = L.ambient
    p = ambient.field.p
    mons = L.monomials()
    E = np.array(mons, dtype=np.int64)
    nv = E.shape[1]
    maxdeg = [int(E[:, i].max()) for i in range(nv)]
    coords = np.array([[pt.coords[i] for i in range(nv)] for pt in points], dtype=np.int64)
    out = np.empty((len(points), len(mons)), dtype=np.float64)
    chunk = max(1, min(len(points), 512))
    for start in range(0, len(points), chunk):
        stop = min(start + chunk, len(points))
        block = None
        for i in range(nv):
            # power table: coords[r,i]^d for d = 0..maxdeg[i]
            tbl = np.empty((stop - start, maxdeg[i] + 1), dtype=np.float64)
            tbl[:, 0] = 1.0
            for d in range(1, maxdeg[i] + 1):
                tbl[:, d] = np.mod(tbl[:, d - 1] * coords[start:stop, i], p)
            gathered = tbl[:, E[:, i]]
            if block is None:
                block = gathered
            else:
                block = np.mod(block * gathered, p)
        out[start:stop] = block
    return out.astype(np.int64)


def impose_points(L, points, multiplicities):
    """Subsystem of L vanishing to order m_i at each point p_i."""
    ambient = L.ambient
    field = ambient.field
    if len(points) != len(multiplicities):
        raise ValueError("one multiplicity per point required")
    pts = []
    for pt, m in zip(points, multiplicities):
        m = int(m)
        if m < 0:
            raise ValueError("multiplicities must be nonnegative")
        if m == 0:
            continue
        pts.append((ambient.point(pt.coords if hasattr(pt, "coords") else pt), m))
    if not pts:
        return L

    nsec = L.nsections()
    nmons = ambient.monomial_count(L.degree) if L.is_complete else len(L.monomials())
    total_rows = sum(len(monomials_below_degree(ambient.total_vars(), m)) for _, m in pts)
    simple_gf = (
        field.kind == "prime"
        and field.k == 1
        and field.p < (1 << 31)
        and L.is_complete
        and all(m == 1 for _, m in pts)
        and len(pts) * nmons > _BIG
    )
    if simple_gf:
        C = _mass_evaluation_rows(L, [pt for pt, _ in pts])
        return _system_from_conditions_gf(L, C)

    rows = []
    for pt, m in pts:
        rows.extend(point_condition_rows(L, pt, m))
    return _impose_rows(L, rows)


def _impose_rows(L, rows):
    """Cut L down by condition rows given over its monomial support."""
    if not rows:
        return L
    field = L.ambient.field
    if not L.is_complete:
        # conditions act on sections: C_sections = C_monomials . M^T
        M = L.matrix()
        Mt = [list(col) for col in zip(*M)] if M else []
        rows = matmul(rows, Mt, field)
    n = L.nsections()
    big = len(rows) * n > _BIG
    if big and field.kind == "prime" and field.k == 1 and field.p < (1 << 31):
        import numpy as np

        C = np.array([[v % field.p for v in row] for row in rows], dtype=np.int64)
        return _system_from_conditions_gf(L, C)
    if big and field.kind == "rational":
        return _impose_rows_rational_big(L, rows)
    basis = nullspace(rows, field, ncols=n)
    return LinearSys.from_nullspace(L, basis)


def _system_from_conditions_gf(L, C):
    """Nullspace of an integer condition matrix over GF(p), numpy path."""
    N = nullspace_mod_p(C, L.ambient.field.p)
    vectors = [[int(v) for v in row] for row in N]
    return LinearSys.from_nullspace(L, vectors)


def _impose_rows_rational_big(L, rows):
    """Large rational condition matrices: certify the rank with one word-size
    prime when it is full (row or column) rank, deferring the exact basis;
    otherwise fall back to the verified multi-prime nullspace."""
    from .fields import primes_from

    n = L.nsections()
    int_rows = [clear_denominators(r) for r in rows]
    int_rows = [r for r in int_rows if any(r)]
    if not int_rows:
        return L
    p = primes_from((1 << 30) + 1, 1)[0]
    r = rank_mod_p(_mod_rows(int_rows, p), p)
    if r == n:
        return LinearSys.empty(L.ambient, L.degree)
    if r == len(int_rows):
        # full row rank mod p pins the rank exactly; basis only on demand
        def factory():
            result = nullspace_rational(int_rows)
            if result.rank != r:
                raise RuntimeError("rank certificate contradicted by reconstruction")
            return result.basis

        return LinearSys.from_nullspace(L, None, nsections=n - r, pending=factory)
    result = nullspace_rational(int_rows)
    return LinearSys.from_nullspace(L, result.basis, nsections=n - result.rank)


# ---------------------------------------------------------------------------
# containment and trace support


def impose_containment(L, scheme):
    """Subsystem of the sections that lie in the ideal of the scheme.

    Projective and product ambients intersect the system with the span of the
    degree-matched multiples of the generators, which is the honest answer
    exactly when the ideal is saturated; affine ambients reduce the sections
    to normal form against a Groebner basis and solve for the combinations
    reducing to zero.
    """
    ambient = L.ambient
    field = ambient.field
    if not isinstance(scheme, SchemeSpec):
        scheme = SchemeSpec(scheme)
    if scheme.is_unit_ideal():
        return L
    if scheme.is_zero_ideal():
        return LinearSys.empty(L.ambient, L.degree)
    for g in scheme.generators:
        if g.ring != ambient.ring:
            raise ValueError("scheme generators live on a different ambient")

    if ambient.kind == "affine":
        G = groebner_basis(scheme.generators)
        secs = L.sections()
        forms = [normal_form(s, G) for s in secs]
        support = sorted(
            {e for f in forms for e in f.terms}, key=grevlex_key, reverse=True
        )
        if not support:
            return L  # every section already reduces to zero
        # one row per support monomial of the normal forms, one column per section
        rows = [
            [f.terms.get(e, field.zero) for f in forms] for e in support
        ]
        basis = nullspace(rows, field, ncols=len(secs))
        return LinearSys.from_nullspace(L, basis)

    if not scheme.saturated:
        raise ValueError(
            "projective containment needs a saturated ideal: saturate the "
            "generators and construct SchemeSpec(..., saturated=True)"
        )
    degree = L.degree
    candidates = []
    for g in scheme.generators:
        gdeg = ambient.block_degrees(next(iter(g.terms)))
        if not g.is_homogeneous() or any(
            ambient.block_degrees(e) != gdeg for e in g.terms
        ):
            raise ValueError("projective scheme generators must be homogeneous")
        rest = [d - gd for d, gd in zip(degree, gdeg)]
        if any(d < 0 for d in rest):
            continue
        for e in ambient.monomial_basis(rest):
            candidates.append(g * ambient.ring.monomial(e))
    if not candidates:
        return LinearSys.empty(ambient, degree)
    return _intersect_with_span(L, candidates)


def _intersect_with_span(L, polys):
    """Subsystem spanned by the intersection of L with span(polys)."""
    from .linalg import rref_with_transform

    ambient = L.ambient
    field = ambient.field
    mons = sorted(
        set(L.monomials()) | {e for q in polys for e in q.terms},
        key=grevlex_key,
        reverse=True,
    )
    idx = {e: i for i, e in enumerate(mons)}
    width = len(mons)
    if L.is_complete:
        # the intersection is just the span of the candidates inside L
        Lmons = set(L.monomials())
        colmap = {e: i for i, e in enumerate(L.monomials())}
        vectors = []
        for q in polys:
            if any(e not in Lmons for e in q.terms):
                raise ValueError("candidate leaves the degree of the system")
            vec = [field.zero] * len(colmap)
            for e, c in q.terms.items():
                vec[colmap[e]] = c
            vectors.append(vec)
        from .linalg import rref

        R, _ = rref(vectors, field)
        return LinearSys.from_nullspace(L, R)

    m = L.matrix()
    cols = [idx[e] for e in L.monomials()]
    stacked = []
    for row in m:
        r = [field.zero] * width
        for c, v in zip(cols, row):
            r[c] = v
        stacked.append(r)
    nL = len(stacked)
    for q in polys:
        r = [field.zero] * width
        for e, c in q.terms.items():
            r[idx[e]] = c
        stacked.append(r)
    _, _, _, N = rref_with_transform(stacked, field)
    # each left-null row (u | w) gives u . L_rows inside the intersection
    uparts = [row[:nL] for row in N]
    if not uparts:
        return LinearSys.empty(ambient, L.degree)
    from .linalg import rref

    R, _ = rref(uparts, field)
    if not R:
        return LinearSys.empty(ambient, L.degree)
    return LinearSys.from_nullspace(L, R)


# ---------------------------------------------------------------------------
# images of schemes under polynomial maps


def image_system(components, target, degree, scheme=None):
    """Degree-d forms on the target ambient whose pullback along the map with
    the given coordinate components lies in the ideal of the source scheme.

    With a zero-ideal scheme this is the system of forms vanishing on the
    image of the whole source."""
    if not components:
        raise ValueError("a map needs at least one component")
    ring_src = components[0].ring
    for f in components:
        if f.ring != ring_src:
            raise ValueError("map components from different rings")
    if len(components) != target.total_vars():
        raise ValueError(
            f"map into {target.total_vars()} coordinates needs that many components"
        )
    field = target.field
    if ring_src.field != field:
        raise ValueError("source and target coefficient fields differ")
    if scheme is None:
        scheme = SchemeSpec([])
    G = groebner_basis(scheme.generators) if scheme.generators else []
    mons = target.monomial_basis(degree)
    forms = []
    for e in mons:
        pb = ring_src.one()
        for f, ei in zip(components, e):
            if ei:
                pb = pb * f**ei
        forms.append(normal_form(pb, G) if G else pb)
    support = sorted(
        {m for f in forms for m in f.terms}, key=grevlex_key, reverse=True
    )
    L = LinearSys.complete(target, degree)
    if not support:
        return L  # every pullback lies in the ideal already
    rows = [[f.terms.get(m, field.zero) for f in forms] for m in support]
    basis = nullspace(rows, field, ncols=len(mons))
    return LinearSys.from_nullspace(L, basis)


# ---------------------------------------------------------------------------
# points on schemes


class SamplePoints(list):
    """List of points found on a scheme; `complete` records whether the
    search was exhaustive (every point of the scheme is present)."""

    def __init__(self, points, complete):
        super().__init__(points)
        self.complete = complete


def sample_points(ambient, generators, count=None, rng=None, limit=6_000_000):
    """Points of the vanishing locus of the generators.

    Exhaustive enumeration when `count` is None (finite fields, ambient point
    count below `limit`); otherwise random draws until `count` distinct points
    are found or the trial budget runs out, in which case the result carries
    complete=False."""
    field = ambient.field
    if not field.is_finite:
        raise ValueError("sampling needs a finite coefficient field")
    gens = [g for g in generators if not g.is_zero()]
    for g in gens:
        if g.ring != ambient.ring:
            raise ValueError("generators live on a different ambient")

    def on_scheme(pt):
        vals = pt.coords
        return all(field.is_zero(g._eval_raw(vals)) for g in gens)

    if count is None:
        q = field.order
        total = 1
        for b in ambient.block_sizes():
            total *= q**b if ambient.kind == "affine" else (q**b - 1) // (q - 1)
        if total > limit:
            raise ValueError(
                f"{total} ambient points exceed the enumeration limit {limit}"
            )
        found = [pt for pt in ambient.enumerate_points() if on_scheme(pt)]
        return SamplePoints(found, True)
    if rng is None:
        raise ValueError("random sampling needs an rng")
    seen = set()
    found = []
    budget = 400 * count
    for _ in range(budget):
        pt = ambient.random_point(rng)
        if pt in seen:
            continue
        seen.add(pt)
        if on_scheme(pt):
            found.append(pt)
            if len(found) == count:
                return SamplePoints(found, True)
    return SamplePoints(found, False)


def random_points(ambient, n, rng, lo=None, hi=None):
    """n distinct random points (canonical representatives)."""
    out = []
    seen = set()
    for _ in range(400 * n):
        pt = ambient.random_point(rng, lo=lo, hi=hi)
        if pt in seen:
            continue
        seen.add(pt)
        out.append(pt)
        if len(out) == n:
            return out
    raise ValueError("could not draw enough distinct points")
