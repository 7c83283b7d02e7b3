"""Linear systems of hypersurfaces.

A LinearSys is a subspace of the forms of fixed (multi)degree on an ambient,
held in whichever representation is cheapest: a complete-system flag, an
explicit section list, or a coefficient matrix over a monomial list.  Heavy
data (bases, matrices, solvers) is materialized only on demand; systems
produced by imposing conditions can carry a certified section count together
with a deferred factory for the actual basis.

Matrix columns follow the grevlex-descending monomial order; echelonization
selects pivots scanning columns right to left (smallest monomial first), and
the echelon rows are kept in pivot-discovery order.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import FieldElement
from .linalg import rref, rref_with_transform
from .poly import MultiPoly, grevlex_key


class LinearSys:
    __slots__ = (
        "ambient",
        "degree",
        "is_complete",
        "echelonized",
        "independent_sections",
        "_sections",
        "_monomials",
        "_matrix",
        "_nsections",
        "_echelon",
        "_solver",
        "_pending",
    )

    def __init__(self, ambient, degree):
        self.ambient = ambient
        self.degree = ambient.degree_tuple(degree)
        self.is_complete = False
        self.echelonized = False
        self.independent_sections = False
        self._sections = None
        self._monomials = None
        self._matrix = None
        self._nsections = None
        self._echelon = None
        self._solver = None
        self._pending = None

    # -- constructors -----------------------------------------------------------

    @classmethod
    def complete(cls, ambient, degree):
        """The full system of forms of the given degree.  O(1): nothing
        proportional to the monomial count is allocated until queried."""
        L = cls(ambient, degree)
        L.is_complete = True
        L.echelonized = True
        L.independent_sections = True
        return L

    @classmethod
    def from_sections(cls, ambient, sections, degree=None, check_basis=True, change_basis=False):
        sections = list(sections)
        if not sections:
            if degree is None:
                raise ValueError("cannot infer the degree of an empty section list")
            return cls.empty(ambient, degree)
        for s in sections:
            if not isinstance(s, MultiPoly) or s.ring != ambient.ring:
                raise ValueError("sections must be polynomials on the ambient ring")
            if s.is_zero():
                raise ValueError("zero polynomial cannot be a section")
        if degree is None:
            degree = _infer_degree(ambient, sections)
        L = cls(ambient, degree)
        for s in sections:
            if not ambient.section_fits_degree(s, L.degree):
                raise ValueError(f"section {s} does not have degree {degree}")
        L._sections = sections
        if change_basis:
            L._echelonize_in_place()
        elif check_basis:
            M = L.matrix()
            R, piv = rref(M, ambient.field, reverse_cols=True)
            if len(R) < len(M):
                # dependent input: switch to the echelonized matrix form
                L._matrix = R
                L._echelon = (R, piv)
                L._sections = None
                L.echelonized = True
            else:
                L._echelon = (R, piv)
            L._nsections = len(R)
            L.independent_sections = True
        return L

    @classmethod
    def from_matrix(cls, ambient, matrix, monomials, degree=None):
        """System spanned by matrix rows over the given monomial list; sections
        materialize on demand as row * monomials."""
        monomials = [tuple(int(x) for x in e) for e in monomials]
        field = ambient.field
        rows = [[field.coerce(v) for v in row] for row in matrix]
        for row in rows:
            if len(row) != len(monomials):
                raise ValueError("matrix width does not match the monomial list")
            if all(field.is_zero(v) for v in row):
                raise ValueError("zero row would give a zero section")
        degs = {ambient.block_degrees(e) for e in monomials}
        if len(degs) > 1:
            if ambient.kind == "affine":
                pass  # mixed total degrees are fine on affine ambients
            else:
                raise ValueError("monomials of mixed degree")
        if degree is None:
            if ambient.kind == "affine":
                degree = max(sum(e) for e in monomials)
            else:
                degree = next(iter(degs))
        L = cls(ambient, degree)
        L._matrix = rows
        L._monomials = monomials
        return L

    @classmethod
    def empty(cls, ambient, degree):
        L = cls(ambient, degree)
        L._sections = []
        L._matrix = []
        L._nsections = 0
        L.echelonized = True
        L.independent_sections = True
        return L

    @classmethod
    def from_nullspace(cls, parent, vectors, nsections=None, pending=None):
        """Subsystem of `parent` spanned by coefficient-space vectors (each of
        length parent.nsections()).  With `pending`, the vectors are produced
        lazily by the callable and only the certified count is stored."""
        L = cls(parent.ambient, parent.degree)
        if pending is not None:
            L._nsections = nsections
            L._pending = (pending, parent)
            L.independent_sections = True
            return L
        rows = _combine_rows(parent, vectors)
        L._matrix = rows
        L._monomials = list(parent.monomials())
        L._nsections = len(rows) if nsections is None else nsections
        L.independent_sections = True
        return L

    # -- materialization ----------------------------------------------------------

    def _run_pending(self):
        factory, parent = self._pending
        vectors = factory()
        self._matrix = _combine_rows(parent, vectors)
        self._monomials = list(parent.monomials())
        self._pending = None
        if self._nsections is not None and len(self._matrix) != self._nsections:
            raise RuntimeError("deferred basis does not match the certified count")

    def monomials(self):
        """Monomial support (exponent tuples, grevlex-descending)."""
        if self._monomials is None:
            if self.is_complete:
                self._monomials = self.ambient.monomial_basis(self.degree)
            elif self._pending is not None:
                self._run_pending()
            elif self._sections is not None:
                support = set()
                for s in self._sections:
                    support.update(s.terms)
                self._monomials = sorted(support, key=grevlex_key, reverse=True)
            else:
                raise RuntimeError("linear system has no representation")
        return self._monomials

    def matrix(self):
        """Coefficient matrix (rows = sections) over monomials(), raw values."""
        if self._matrix is None:
            if self.is_complete:
                field = self.ambient.field
                n = self.nsections()
                one, zero = field.one, field.zero
                self._matrix = [
                    [one if j == i else zero for j in range(n)] for i in range(n)
                ]
            elif self._pending is not None:
                self._run_pending()
            else:
                mons = self.monomials()
                field = self.ambient.field
                zero = field.zero
                self._matrix = [
                    [s.terms.get(e, zero) for e in mons] for s in self._sections
                ]
        return self._matrix

    def sections(self):
        if self._sections is None:
            ring = self.ambient.ring
            mons = self.monomials()
            if self.is_complete:
                self._sections = [ring.monomial(e) for e in mons]
            else:
                field = ring.field
                self._sections = [
                    MultiPoly(
                        ring,
                        {e: v for e, v in zip(mons, row) if not field.is_zero(v)},
                    )
                    for row in self.matrix()
                ]
        return self._sections

    def nsections(self):
        """Rank of the system; avoids materializing sections when the count
        follows from the representation (complete systems, certified results)."""
        if self._nsections is None:
            if self.is_complete:
                self._nsections = self.ambient.monomial_count(self.degree)
            elif self.echelonized or self.independent_sections:
                self._nsections = (
                    len(self._matrix) if self._matrix is not None else len(self._sections)
                )
            else:
                self._nsections = len(self._echelon_form()[0])
        return self._nsections

    def dimension(self):
        return self.nsections() - 1

    def is_empty(self):
        return self.nsections() == 0

    def _echelon_form(self):
        if self._echelon is None:
            self._echelon = rref(self.matrix(), self.ambient.field, reverse_cols=True)
        return self._echelon

    def _echelonize_in_place(self):
        R, piv = rref(self.matrix(), self.ambient.field, reverse_cols=True)
        self._matrix = R
        self._monomials = self.monomials()
        self._echelon = (R, piv)
        self._sections = None
        self._nsections = len(R)
        self.echelonized = True
        self.independent_sections = True
        self._solver = None

    def echelonized_copy(self):
        L = LinearSys(self.ambient, self.degree)
        L._sections = self.sections()
        L._monomials = self.monomials()
        L._matrix = self.matrix()
        L._echelonize_in_place()
        return L

    # -- coefficient and polynomial maps ----------------------------------------------

    def coefficient_map(self):
        """Solver sending a member polynomial to coefficients in the stored
        basis; built once and cached."""
        if self._solver is None:
            self._solver = CoefficientSolver(self)
        return self._solver

    def polynomial_map(self, coefficients):
        secs = self.sections()
        if len(coefficients) != len(secs):
            raise ValueError("coefficient vector length does not match the basis")
        total = self.ambient.ring.zero()
        for c, s in zip(coefficients, secs):
            total = total + s * c
        return total

    def __contains__(self, f):
        if not isinstance(f, MultiPoly):
            return False
        try:
            self.coefficient_map().apply(f)
            return True
        except ValueError:
            return False

    def random_member(self, rng, lo=-10, hi=10):
        """Random combination with integer coefficients in [lo, hi]; resamples
        an all-zero draw up to 16 times."""
        if self.nsections() == 0:
            raise ValueError("random member of an empty system")
        field = self.ambient.field
        mons = self.monomials()
        ring = self.ambient.ring
        M = None if self.is_complete else self.matrix()
        for _ in range(16):
            terms = {}
            if M is None:
                # complete system: a coefficient per basis monomial, no matrix
                for e in mons:
                    c = field.from_int(rng.randint(lo, hi))
                    if not field.is_zero(c):
                        terms[e] = c
            else:
                for row in M:
                    c = field.from_int(rng.randint(lo, hi))
                    if field.is_zero(c):
                        continue
                    for e, v in zip(mons, row):
                        if not field.is_zero(v):
                            cur = field.add(terms.get(e, field.zero), field.mul(c, v))
                            if field.is_zero(cur):
                                terms.pop(e, None)
                            else:
                                terms[e] = cur
            if terms:
                return MultiPoly(ring, terms)
        raise ValueError("all random draws were zero (coefficient range too small?)")

    # -- subspace operations ---------------------------------------------------------

    def _check_compatible(self, other):
        if self.ambient != other.ambient or self.degree != other.degree:
            raise ValueError("linear systems on different ambients or degrees")

    def same_span(self, other):
        self._check_compatible(other)
        field = self.ambient.field
        mons, A, B = _aligned_pair(self, other)
        return rref(A, field, reverse_cols=True) == rref(B, field, reverse_cols=True)

    def is_subsystem_of(self, other):
        """True if span(self) is contained in span(other)."""
        self._check_compatible(other)
        field = self.ambient.field
        mons, A, B = _aligned_pair(self, other)
        Rb, pivb = rref(B, field, reverse_cols=True)
        for row in A:
            if not _reduce_against(row, Rb, pivb, field):
                return False
        return True

    def complement(self, sub):
        """A subsystem C with span(C) + span(sub) = span(self) (direct sum),
        found by extending an echelon basis of `sub` to one of self."""
        self._check_compatible(sub)
        field = self.ambient.field
        mons, A, B = _aligned_pair(self, sub)
        RA, pivA = rref(A, field, reverse_cols=True)
        RJ, pivJ = rref(B, field, reverse_cols=True)
        for row in RJ:
            if not _reduce_against(list(row), RA, pivA, field):
                raise ValueError("complement argument is not a subsystem")
        work = [list(r) for r in RJ]
        workpiv = list(pivJ)
        comp = []
        for row in RA:
            row = list(row)
            for i, c in enumerate(workpiv):
                if not field.is_zero(row[c]):
                    f = row[c]
                    row = [field.sub(a, field.mul(f, b)) for a, b in zip(row, work[i])]
            nz = _last_nonzero(row, field)
            if nz is None:
                continue
            inv = field.inv(row[nz])
            row = [field.mul(v, inv) for v in row]
            work.append(row)
            workpiv.append(nz)
            comp.append(row)
        if len(comp) != self.nsections() - sub.nsections():
            raise RuntimeError("complement rank mismatch")
        if not comp:
            return LinearSys.empty(self.ambient, self.degree)
        return LinearSys.from_matrix(self.ambient, comp, mons, degree=self.degree)

    def trace(self, scheme):
        """System induced on a subscheme: the complement of the subsystem of
        members vanishing on it.  Tracing on the whole ambient (zero ideal)
        returns self; tracing on the empty scheme (unit ideal) is empty."""
        from .conditions import impose_containment

        J = impose_containment(self, scheme)
        return self.complement(J)

    # -- base ideal and reduction ------------------------------------------------------

    def base_ideal_generators(self):
        """An independent basis of sections; these generate the ideal whose
        zero locus is the base scheme."""
        if self.is_empty():
            return []
        if self.independent_sections or self.echelonized or self.is_complete:
            return list(self.sections())
        R, piv = self._echelon_form()
        ring = self.ambient.ring
        field = ring.field
        mons = self.monomials()
        return [
            MultiPoly(ring, {e: v for e, v in zip(mons, row) if not field.is_zero(v)})
            for row in R
        ]

    def reduction(self):
        """(reduced system, common factor): divides out the monic gcd of all
        sections, leaving the moving part."""
        secs = self.base_ideal_generators()
        if not secs:
            raise ValueError("reduction of an empty system")
        g = secs[0]
        for s in secs[1:]:
            g = poly_gcd(g, s)
            if g.total_degree() == 0:
                break
        g = g.monic()
        if g.total_degree() == 0:
            return self, self.ambient.ring.one()
        reduced = [s.divide_exact(g) for s in secs]
        L = LinearSys.from_sections(self.ambient, reduced, check_basis=False)
        L.independent_sections = True
        return L, g

    # -- serialization --------------------------------------------------------------------

    def to_json(self):
        degree = list(self.degree) if self.ambient.kind == "product" else self.degree[0]
        out = {"ambient": self.ambient.to_json(), "degree": degree}
        if self.is_complete:
            out["complete"] = True
        elif self._sections is not None:
            out["sections"] = [str(s) for s in self._sections]
        else:
            field = self.ambient.field
            ring = self.ambient.ring
            out["matrix"] = [[field.to_str(v) for v in row] for row in self.matrix()]
            out["monomials"] = [str(ring.monomial(e)) for e in self.monomials()]
        return out

    @staticmethod
    def from_json(data, field=None):
        from .fields import CoefficientField

        amb_data = data["ambient"]
        if field is None:
            field = CoefficientField.from_json(amb_data["field"])
        from .ambient import Ambient

        ambient = Ambient.from_json(amb_data, field)
        degree = data["degree"]
        if data.get("complete"):
            return LinearSys.complete(ambient, degree)
        ring = ambient.ring
        if "sections" in data:
            secs = [ring.parse(s) for s in data["sections"]]
            return LinearSys.from_sections(ambient, secs, degree=degree, check_basis=False)
        mons = [next(iter(ring.parse(m).terms)) for m in data["monomials"]]
        rows = [[field.parse(v) for v in row] for row in data["matrix"]]
        return LinearSys.from_matrix(ambient, rows, mons, degree=degree)

    def __repr__(self):
        shape = "complete " if self.is_complete else ""
        n = self._nsections if self._nsections is not None else "?"
        return f"<{shape}linear system of degree {self.degree} with {n} section(s)>"


# ---------------------------------------------------------------------------
# helpers


def _infer_degree(ambient, sections):
    if not sections:
        raise ValueError("cannot infer the degree of an empty section list")
    if ambient.kind == "affine":
        return max(s.total_degree() for s in sections)
    degs = {ambient.block_degrees(e) for s in sections for e in s.terms}
    if len(degs) != 1:
        raise ValueError("sections of mixed degree")
    d = next(iter(degs))
    return list(d)


def _combine_rows(parent, vectors):
    """Rows (over parent.monomials()) of the combinations vec . sections."""
    field = parent.ambient.field
    mons = parent.monomials()
    if parent.is_complete:
        rows = []
        for v in vectors:
            rows.append([field.coerce(x) for x in v])
        return rows
    M = parent.matrix()
    rows = []
    for v in vectors:
        acc = [field.zero] * len(mons)
        for c, row in zip(v, M):
            c = field.coerce(c)
            if field.is_zero(c):
                continue
            for j, x in enumerate(row):
                if not field.is_zero(x):
                    acc[j] = field.add(acc[j], field.mul(c, x))
        rows.append(acc)
    return rows


def _aligned_pair(A, B):
    """Union monomial support and both coefficient matrices padded onto it."""
    mons = sorted(
        set(A.monomials()) | set(B.monomials()), key=grevlex_key, reverse=True
    )
    idx = {e: i for i, e in enumerate(mons)}
    return mons, _padded_rows(A, idx, len(mons)), _padded_rows(B, idx, len(mons))


def _padded_rows(L, idx, width):
    field = L.ambient.field
    cols = [idx[e] for e in L.monomials()]
    out = []
    for row in L.matrix():
        r = [field.zero] * width
        for c, v in zip(cols, row):
            r[c] = v
        out.append(r)
    return out


def _reduce_against(row, R, pivots, field):
    """Reduce row by the echelon rows in place; True if it lands on zero."""
    for i, c in enumerate(pivots):
        if not field.is_zero(row[c]):
            f = row[c]
            for j, b in enumerate(R[i]):
                if not field.is_zero(b):
                    row[j] = field.sub(row[j], field.mul(f, b))
    return all(field.is_zero(v) for v in row)


def _last_nonzero(row, field):
    for i in range(len(row) - 1, -1, -1):
        if not field.is_zero(row[i]):
            return i
    return None


class CoefficientSolver:
    """Cached solver for expressing members in the stored section basis.

    Solves f = sum a_j s_j by reading the coefficients of f at the pivot
    columns of the echelonized section matrix and mapping them back through
    the recorded row operations; when the sections are dependent, any one
    valid solution is returned.  Large rational systems locate the pivot
    columns modulo a prime first and run the exact elimination only on that
    column subset; every answer is verified exactly against f.
    """

    def __init__(self, system, restricted=None):
        self.system = system
        field = system.ambient.field
        self.field = field
        self.monomials = list(system.monomials())
        self.mono_index = {e: i for i, e in enumerate(self.monomials)}
        self._complete = system.is_complete
        self._restricted = False
        self._full = None
        if self._complete:
            # basis is the monomials themselves: the map is a coefficient read
            self.nrows = len(self.monomials)
            self.pivcols = list(range(self.nrows))
            self.E = None
            return
        M = system.matrix()
        self.nrows = len(M)
        if restricted is None:
            restricted = (
                field.kind == "rational"
                and self.nrows * len(self.monomials) > 200_000
            )
        if restricted:
            self._restricted = True
            self._build_restricted(M)
        else:
            _, piv, E, _ = rref_with_transform(M, field) if M else ([], [], [], [])
            self.pivcols = piv
            self.E = E

    def _build_restricted(self, M):
        # locate pivot columns modulo a word-size prime, then run the exact
        # elimination only on that column subset; the per-apply residual check
        # catches the (vanishingly rare) bad-prime case
        import numpy as np

        from .linalg import rref_mod_p

        field = self.field
        p = (1 << 30) + 3
        Ap = np.array([[_frac_mod(v, p) for v in row] for row in M], dtype=np.int64)
        _, piv = rref_mod_p(Ap, p)
        sub = [[row[c] for c in piv] for row in M]
        _, pivsub, E, _ = rref_with_transform(sub, field)
        self.pivcols = [piv[c] for c in pivsub]
        self.E = E

    def apply(self, f):
        """Coefficient vector of f in the stored basis; ValueError when f is
        not a member."""
        try:
            return self._solve(f)
        except _ResidualMismatch:
            if not self._restricted:
                raise ValueError("polynomial is not in the span")
            # pivot columns found modulo the prime were unlucky; redo exactly
            if self._full is None:
                self._full = CoefficientSolver(self.system, restricted=False)
            return self._full.apply(f)

    def _solve(self, f):
        system = self.system
        field = self.field
        if not isinstance(f, MultiPoly) or f.ring != system.ambient.ring:
            raise ValueError("polynomial from a different ring")
        if not system.ambient.section_fits_degree(f, system.degree):
            raise ValueError("degree does not match the system")
        v = [field.zero] * len(self.monomials)
        for e, c in f.terms.items():
            j = self.mono_index.get(e)
            if j is None:
                raise ValueError("polynomial is not in the span (unsupported monomial)")
            v[j] = c
        if self._complete:
            return [FieldElement(field, x) for x in v]
        c = [v[pc] for pc in self.pivcols]
        a = [field.zero] * self.nrows
        for ck, erow in zip(c, self.E):
            if field.is_zero(ck):
                continue
            for j, ev in enumerate(erow):
                a[j] = field.add(a[j], field.mul(ck, ev))
        # exact residual verification
        M = self.system.matrix()
        residual = list(v)
        for aj, row in zip(a, M):
            if field.is_zero(aj):
                continue
            for j, x in enumerate(row):
                if not field.is_zero(x):
                    residual[j] = field.sub(residual[j], field.mul(aj, x))
        if any(not field.is_zero(r) for r in residual):
            raise _ResidualMismatch("polynomial is not in the span")
        return [FieldElement(field, x) for x in a]

    __call__ = apply


class _ResidualMismatch(ValueError):
    """Solve candidate failed exact verification: non-member or bad prime."""


def _frac_mod(v, p):
    f = Fraction(v)
    return f.numerator * pow(f.denominator, -1, p) % p


# ---------------------------------------------------------------------------
# multivariate gcd (primitive polynomial-remainder sequence), used by reduction


def poly_gcd(f, g):
    """Monic gcd of two polynomials over a field (desk scale)."""
    if f.is_zero():
        return g.monic() if not g.is_zero() else g
    if g.is_zero():
        return f.monic()
    h = _gcd_rec(f, g)
    return h.monic()


def _present_vars(f):
    out = set()
    for e in f.terms:
        for i, x in enumerate(e):
            if x:
                out.add(i)
    return out


def _gcd_rec(f, g):
    ring = f.ring
    pv = _present_vars(f) | _present_vars(g)
    if not pv:
        return ring.one()
    # eliminate the variable of largest degree
    v = max(pv, key=lambda i: max(f.degree_in(i) or 0, g.degree_in(i) or 0))
    cf, pf = _content_pp(f, v)
    cg, pg = _content_pp(g, v)
    c = _gcd_rec(cf, cg)
    while True:
        dg = pg.degree_in(v)
        if pg.is_zero():
            return c * pf
        if dg == 0:
            return c
        if pf.degree_in(v) < dg:
            pf, pg = pg, pf
            continue
        r = _prem(pf, pg, v)
        if r.is_zero():
            return c * pg
        _, r = _content_pp(r, v)
        pf, pg = pg, r


def _coeffs_in(f, v):
    """Map degree-in-v -> coefficient polynomial (v stripped)."""
    ring = f.ring
    out = {}
    for e, cval in f.terms.items():
        d = e[v]
        ne = e[:v] + (0,) + e[v + 1 :]
        cur = out.get(d)
        if cur is None:
            out[d] = MultiPoly(ring, {ne: cval})
        else:
            out[d] = cur + MultiPoly(ring, {ne: cval})
    return out


def _content_pp(f, v):
    """(content, primitive part) with respect to the variable v."""
    coeffs = _coeffs_in(f, v)
    content = None
    for cpoly in coeffs.values():
        content = cpoly if content is None else _gcd_rec(content, cpoly)
        if content.total_degree() == 0:
            content = f.ring.one()
            return content, f
    content = content.monic()
    if content.total_degree() == 0:
        return f.ring.one(), f
    return content, f.divide_exact(content)


def _prem(f, g, v):
    """Pseudo-remainder of f by g in the variable v."""
    ring = f.ring
    dg = g.degree_in(v)
    lcg = _coeffs_in(g, v)[dg]
    while True:
        if f.is_zero():
            return f
        df = f.degree_in(v)
        if df < dg:
            return f
        lcf = _coeffs_in(f, v)[df]
        shift = [0] * ring.nvars
        shift[v] = df - dg
        f = f * lcg - g * lcf * ring.monomial(shift)
