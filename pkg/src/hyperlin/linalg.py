"""Exact linear algebra kernels.

Three tiers, all exact:

- generic dense routines over any CoefficientField (lists of raw values),
  used for small systems and for extension fields;
- numpy kernels over GF(p): an int64 row-loop RREF for moderate sizes and a
  blocked float64 forward elimination whose trailing updates run as one
  matrix product per panel (exact while block*p^2 < 2^53), used for the
  large point-condition matrices;
- a certified multi-prime nullspace over the rationals: rank lower bounds
  from reductions mod ~2^30 primes, CRT + rational reconstruction of the
  candidate basis, and exact integer verification.  Since rank can only
  drop under reduction mod p, a verified basis of size n - max(rank_p) is
  provably a full nullspace basis.

Echelonization convention: matrices over monomial bases keep columns in
grevlex-descending order, and `reverse_cols=True` selects pivots scanning
columns right to left (smallest monomial first).  Rows of the result are
in pivot-discovery order.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .fields import crt_combine, primes_from, rational_reconstruct

# ---------------------------------------------------------------------------
# generic exact routines (any field, raw values)


def rref(rows, field, reverse_cols=False):
    """Reduced row echelon form.  Returns (R, pivots): R the nonzero rows in
    pivot-discovery order, pivots the matching column indices."""
    R = [list(r) for r in rows]
    m = len(R)
    n = len(R[0]) if m else 0
    order = range(n - 1, -1, -1) if reverse_cols else range(n)
    pivots = []
    r = 0
    for c in order:
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if not field.is_zero(R[i][c]):
                pr = i
                break
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = field.inv(R[r][c])
        R[r] = [field.mul(v, inv) for v in R[r]]
        prow = R[r]
        for i in range(m):
            if i != r and not field.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(R[i], prow)]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rref_with_transform(rows, field, reverse_cols=False):
    """RREF together with the row-operation record.

    Returns (R, pivots, E, N) with E @ input = R for the nonzero rows, and N
    the transform rows whose image is zero (a basis of the left nullspace).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    one, zero = field.one, field.zero
    R = [list(r) + [one if j == i else zero for j in range(m)] for i, r in enumerate(rows)]
    order = range(n - 1, -1, -1) if reverse_cols else range(n)
    pivots = []
    r = 0
    for c in order:
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if not field.is_zero(R[i][c]):
                pr = i
                break
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = field.inv(R[r][c])
        R[r] = [field.mul(v, inv) for v in R[r]]
        prow = R[r]
        for i in range(m):
            if i != r and not field.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(R[i], prow)]
        pivots.append(c)
        r += 1
    main = [row[:n] for row in R[:r]]
    E = [row[n:] for row in R[:r]]
    N = [row[n:] for row in R[r:]]
    return main, pivots, E, N


def rank(rows, field):
    return len(rref(rows, field)[1])


def nullspace(rows, field, ncols=None):
    """Canonical right-nullspace basis: one vector per free column f (ascending),
    with v[f] = 1 and v[pivot_i] = -R[i][f]."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [
            [field.one if j == i else field.zero for j in range(ncols)]
            for i in range(ncols)
        ]
    n = len(rows[0])
    R, piv = rref(rows, field)
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [field.zero] * n
        v[f] = field.one
        for i, c in enumerate(piv):
            v[c] = field.neg(R[i][f])
        basis.append(v)
    return basis


def matmul(A, B, field):
    """Exact product of raw-value matrices (lists of rows)."""
    if not A:
        return []
    inner = len(A[0])
    if inner != len(B):
        raise ValueError("shape mismatch")
    nb = len(B[0]) if B else 0
    out = []
    for arow in A:
        acc = [field.zero] * nb
        for k, a in enumerate(arow):
            if field.is_zero(a):
                continue
            brow = B[k]
            for j in range(nb):
                b = brow[j]
                if not field.is_zero(b):
                    acc[j] = field.add(acc[j], field.mul(a, b))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# GF(p) numpy kernels

_F53 = float(2**53)


def rref_mod_p(A, p, col_order=None):
    """RREF over GF(p), p < 2^31, vectorized int64 row operations.
    Returns (R, pivots): R an int64 array of the rank nonzero rows."""
    A = np.mod(np.asarray(A, dtype=np.int64), p).copy()
    if A.ndim != 2:
        raise ValueError("matrix required")
    m, n = A.shape
    if col_order is None:
        col_order = range(n)
    r = 0
    pivots = []
    for c in col_order:
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        a = int(A[r, c])
        if a != 1:
            A[r] = (A[r] * pow(a, -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = (A[hit] - col[hit, None] * A[r][None, :]) % p
        pivots.append(int(c))
        r += 1
    return A[:r], pivots


def _reduce_sym(X, p, invp):
    """In-place reduction of exact float64 integers to the symmetric residue
    range |x| <= (p-1)/2.  Exact for |x| < 2^53 and odd p: the quotient
    x/p is approximated to ~1e-9 while the nearest integer is at distance
    >= 1/(2p) from any half-integer, so rint recovers it exactly."""
    q = X * invp
    np.rint(q, out=q)
    q *= p
    X -= q


def ref_mod_p(A, p, block=192):
    """Forward (non-reduced) row echelon form over GF(p) in float64, with the
    trailing submatrix updated by one matrix product per panel of pivots.
    Intermediate entries are kept in the symmetric range |x| <= p/2, so the
    panel products stay exact while block*(p/2)^2 < 2^53.  Requires odd p.
    Returns (U, pivots): U float64 with canonical entries in [0, p)."""
    if p % 2 == 0:
        raise ValueError("float64 kernel requires an odd modulus")
    A = np.mod(np.asarray(A, dtype=np.int64), p).astype(np.float64)
    m, n = A.shape
    half = (p - 1) // 2
    A[A > half] -= p
    # cap keeps every value below 2^51, which makes the rint quotient exact
    maxblock = int(_F53 // (p * p))
    if maxblock < 8:
        raise ValueError("modulus too large for the float64 kernel")
    block = max(1, min(block, maxblock))
    invp = 1.0 / p
    r = 0
    c = 0
    pivots = []
    while r < m and c < n:
        bc = min(block, n - c)
        P = A[r:, c : c + bc]
        L = np.zeros((m - r, bc))
        k = 0
        for j in range(bc):
            nz = np.nonzero(P[k:, j])[0]
            if nz.size == 0:
                continue
            i = k + int(nz[0])
            if i != k:
                A[[r + k, r + i]] = A[[r + i, r + k]]
                L[[k, i]] = L[[i, k]]
            inv = pow(int(P[k, j]) % p, -1, p)
            f = np.mod(P[k + 1 :, j], p)
            f *= inv
            np.mod(f, p, out=f)
            f[f > half] -= p
            sub = P[k + 1 :, j:]
            sub -= f[:, None] * P[k, j:]
            _reduce_sym(sub, p, invp)
            L[k + 1 :, k] = f
            pivots.append(c + j)
            k += 1
            if r + k == m:
                break
        if c + bc < n and k > 0:
            T = A[r:, c + bc :]
            for t in range(1, k):
                T[t] -= L[t, :t] @ T[:t]
                _reduce_sym(T[t], p, invp)
            if m - r > k:
                T[k:] -= L[k:, :k] @ T[:k]
                _reduce_sym(T[k:], p, invp)
        r += k
        c += bc
    U = A[:r]
    np.mod(U, p, out=U)
    return U, pivots


def nullspace_mod_p(A, p):
    """Canonical right-nullspace basis over GF(p) as an int64 array (nullity x n).
    Chooses the float64 panel kernel for large matrices with small p, otherwise
    the int64 RREF."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    if p % 2 == 1 and n * p * p < _F53 and m * n > 50000:
        U, piv = ref_mod_p(A, p)
        return _backsolve_ref(U, piv, p, n)
    R, piv = rref_mod_p(A, p)
    pivset = set(piv)
    free = [f for f in range(n) if f not in pivset]
    X = np.zeros((len(free), n), dtype=np.int64)
    for idx, f in enumerate(free):
        X[idx, f] = 1
        for i, c in enumerate(piv):
            X[idx, c] = (-int(R[i, f])) % p
    return X


def _backsolve_ref(U, piv, p, n):
    # Exactness: dot accumulation bounded by n*p^2 < 2^53.
    r = len(piv)
    pivset = set(piv)
    free = [f for f in range(n) if f not in pivset]
    X = np.zeros((len(free), n))
    for idx, f in enumerate(free):
        X[idx, f] = 1.0
    for k in range(r - 1, -1, -1):
        pc = piv[k]
        s = np.mod(X[:, pc + 1 :] @ U[k, pc + 1 :], p)
        inv = pow(int(U[k, pc]), -1, p)
        X[:, pc] = np.mod((p - s) * inv, p)
    return X.astype(np.int64)


def rank_mod_p(A, p):
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    if p % 2 == 1 and n * p * p < _F53 and m * n > 50000:
        return len(ref_mod_p(A, p)[1])
    return len(rref_mod_p(A, p)[1])


# ---------------------------------------------------------------------------
# certified rational nullspace


def clear_denominators(row):
    """Scale a row of Fractions/ints to integers (common denominator)."""
    fr = [Fraction(v) for v in row]
    d = lcm(*(f.denominator for f in fr)) if fr else 1
    return [int(f * d) for f in fr]


def _mod_rows(int_rows, p):
    return np.array([[v % p for v in row] for row in int_rows], dtype=np.int64)


class RationalNullspace:
    """Result of the certified multi-prime nullspace: exact basis (list of
    Fraction vectors, identity pattern on the free columns) plus the certified
    rank of the input matrix."""

    __slots__ = ("basis", "rank", "free_columns", "primes_used")

    def __init__(self, basis, rank, free_columns, primes_used):
        self.basis = basis
        self.rank = rank
        self.free_columns = free_columns
        self.primes_used = primes_used


def nullspace_rational(rows, max_primes=1024):
    """Certified exact right-nullspace over ℚ.

    rows: list of rows of ints/Fractions.  Returns a RationalNullspace whose
    basis is exact and verified: every vector is checked against the integer
    matrix, and the count matches the best mod-p rank lower bound, which pins
    the rank of the matrix exactly.
    """
    int_rows = [clear_denominators(r) for r in rows]
    int_rows = [r for r in int_rows if any(r)]
    if not rows and not int_rows:
        raise ValueError("ncols unknown for an empty matrix; use nullspace()")
    n = len(rows[0])
    if not int_rows:
        basis = [
            [Fraction(1) if j == i else Fraction(0) for j in range(n)]
            for i in range(n)
        ]
        return RationalNullspace(basis, 0, list(range(n)), [])
    prime_iter = iter(primes_from((1 << 30) + 1, max_primes))
    best = None  # (rank, pivots tuple) with the largest rank seen
    groups = {}  # pivots tuple -> list of (p, nullspace residues array)
    used = []
    while True:
        try:
            p = next(prime_iter)
        except StopIteration:
            raise RuntimeError("rational nullspace did not stabilize") from None
        used.append(p)
        Ap = _mod_rows(int_rows, p)
        R, piv = rref_mod_p(Ap, p)
        key = tuple(piv)
        r = len(piv)
        if best is None or r > best[0]:
            best = (r, key)
            groups = {k: v for k, v in groups.items() if len(k) == r}
        if r < best[0]:
            continue  # unlucky prime, rank dropped
        if r == n:
            # full column rank certified: rank mod p is a lower bound
            return RationalNullspace([], n, [], used)
        pivset = set(piv)
        free = [f for f in range(n) if f not in pivset]
        N = np.zeros((len(free), n), dtype=np.int64)
        for idx, f in enumerate(free):
            N[idx, f] = 1
            for i, c in enumerate(piv):
                N[idx, c] = (-int(R[i, f])) % p
        groups.setdefault(key, []).append((p, N))
        # attempt reconstruction with the (largest-rank) reference group
        cand = _reconstruct_and_verify(groups[best[1]], int_rows, n)
        if cand is not None:
            free = [f for f in range(n) if f not in set(best[1])]
            return RationalNullspace(cand, best[0], free, used)


def _reconstruct_and_verify(group, int_rows, n):
    moduli = [p for p, _ in group]
    mats = [N for _, N in group]
    k = mats[0].shape[0]
    basis = []
    for i in range(k):
        vec = []
        for j in range(n):
            if len(moduli) == 1:
                combined, m = int(mats[0][i, j]), moduli[0]
            else:
                combined = crt_combine([int(N[i, j]) for N in mats], moduli)
                m = 1
                for p in moduli:
                    m *= p
            q = rational_reconstruct(combined % m, m)
            if q is None:
                return None
            vec.append(q)
        basis.append(vec)
    # exact verification against the integer matrix
    for vec in basis:
        for row in int_rows:
            s = Fraction(0)
            for a, v in zip(row, vec):
                if a and v:
                    s += a * v
            if s:
                return None
    return basis


def rank_rational(rows):
    """Certified rank over ℚ."""
    if not rows:
        return 0
    return nullspace_rational(rows).rank
