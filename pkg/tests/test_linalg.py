"""Exact linear algebra: generic RREF, GF(p) numpy kernels, certified
rational nullspace.  The numpy kernels are cross-checked against the
pure-Python generic path on random instances."""

import random
from fractions import Fraction

import numpy as np
import pytest

from hyperlin.fields import GF, rationals
from hyperlin.linalg import (
    clear_denominators,
    matmul,
    nullspace,
    nullspace_mod_p,
    nullspace_rational,
    rank,
    rank_mod_p,
    rank_rational,
    ref_mod_p,
    rref,
    rref_mod_p,
    rref_with_transform,
)

QQ = rationals()


def frac_rows(rows):
    return [[Fraction(v) for v in row] for row in rows]


def test_rref_small_known():
    # [[1,2],[2,4],[0,1]] has rank 2 with pivots 0,1
    R, piv = rref(frac_rows([[1, 2], [2, 4], [0, 1]]), QQ)
    assert piv == [0, 1]
    assert R == frac_rows([[1, 0], [0, 1]])


def test_rref_reverse_cols_matches_section_echelon_example():
    # columns: x^2, x*y, y^2, x*z, y*z, z^2 (grevlex-descending);
    # rows are x^2+z^2, y^2-x*z, x*y+y^2, x*z.  Pivoting right-to-left must
    # give back rows representing x^2+z^2, x*z, y^2, x*y in that order.
    rows = frac_rows(
        [
            [1, 0, 0, 0, 0, 1],
            [0, 0, 1, -1, 0, 0],
            [0, 1, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
        ]
    )
    R, piv = rref(rows, QQ, reverse_cols=True)
    assert piv == [5, 3, 2, 1]
    assert R == frac_rows(
        [
            [1, 0, 0, 0, 0, 1],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
        ]
    )


def test_rref_idempotent():
    rng = random.Random(5)
    for _ in range(10):
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(6)] for _ in range(4)]
        R1, p1 = rref(rows, QQ)
        R2, p2 = rref(R1, QQ)
        assert R1 == R2 and p1 == p2


def test_rref_with_transform_reconstructs():
    rng = random.Random(9)
    F = GF(13)
    rows = [[F.from_int(rng.randint(0, 12)) for _ in range(5)] for _ in range(4)]
    R, piv, E, N = rref_with_transform(rows, F)
    # E @ rows == R
    assert matmul(E, rows, F) == R
    # N rows are the left nullspace: N @ rows == 0
    for nv in matmul(N, rows, F):
        assert all(F.is_zero(v) for v in nv)
    assert len(R) + len(N) == len(rows)


def test_nullspace_generic():
    # x + y + z = 0, y - z = 0 over QQ -> span{(-2, 1, 1)} canonical v[free]=1
    rows = frac_rows([[1, 1, 1], [0, 1, -1]])
    basis = nullspace(rows, QQ)
    assert len(basis) == 1
    v = basis[0]
    assert v[2] == 1
    for row in rows:
        assert sum(a * b for a, b in zip(row, v)) == 0
    # empty matrix: nullspace is everything
    idb = nullspace([], QQ, ncols=3)
    assert len(idb) == 3


def test_nullspace_extension_field():
    F = GF(7, 2)
    u = F.generator()
    rows = [[F.one, u, F.zero], [F.zero, F.zero, F.one]]
    basis = nullspace(rows, F)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        acc = F.zero
        for a, b in zip(row, v):
            acc = F.add(acc, F.mul(a, b))
        assert F.is_zero(acc)


# -- numpy GF(p) kernels -------------------------------------------------------


def np_oracle_pairs(rng, p, m, n):
    A = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(m)], dtype=np.int64)
    F = GF(p)
    rows = [[int(v) for v in row] for row in A]
    return A, rows, F


def test_rref_mod_p_matches_generic():
    rng = random.Random(3)
    for p in (2, 7, 101):
        for _ in range(8):
            m, n = rng.randint(1, 6), rng.randint(1, 7)
            A, rows, F = np_oracle_pairs(rng, p, m, n)
            Rnp, pivnp = rref_mod_p(A, p)
            Rgen, pivgen = rref(rows, F)
            assert pivnp == pivgen
            assert [[int(v) for v in r] for r in Rnp] == Rgen


def test_ref_mod_p_rank_and_shape():
    rng = random.Random(4)
    p = 397
    for _ in range(6):
        m, n = rng.randint(2, 40), rng.randint(2, 40)
        A, rows, F = np_oracle_pairs(rng, p, m, n)
        U, piv = ref_mod_p(A, p, block=7)  # tiny block to exercise panels
        assert len(piv) == rank(rows, F)
        assert piv == sorted(piv)
        U = U.astype(np.int64)
        # echelon shape: row k starts at its pivot
        for k, pc in enumerate(piv):
            assert U[k, pc] % p != 0
            assert not U[k, :pc].any()


def test_nullspace_mod_p_matches_generic_and_annihilates():
    rng = random.Random(11)
    for p in (5, 397):
        for _ in range(8):
            m, n = rng.randint(1, 8), rng.randint(2, 9)
            A, rows, F = np_oracle_pairs(rng, p, m, n)
            Nnp = nullspace_mod_p(A, p)
            Ngen = nullspace(rows, F)
            assert [[int(v) for v in r] for r in Nnp] == Ngen
            assert not ((A @ Nnp.T) % p).any()


def test_blocked_kernel_agrees_with_rowloop_on_larger_instance():
    rng = np.random.default_rng(2)
    p = 397
    A = rng.integers(0, p, size=(300, 260)).astype(np.int64)
    # force rank deficiency: last rows are combinations of earlier ones
    A[250:] = (A[:50] * 3 + A[50:100] * 7) % p
    U, piv = ref_mod_p(A, p, block=64)
    R, piv2 = rref_mod_p(A, p)
    assert piv == piv2
    N = nullspace_mod_p(A, p)
    assert N.shape[0] == 260 - len(piv)
    assert not ((A @ N.T) % p).any()


def test_rank_mod_p():
    A = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    assert rank_mod_p(A, 7) == 2
    assert rank_mod_p(np.zeros((2, 3), dtype=np.int64), 7) == 0


# -- certified rational nullspace ------------------------------------------------


def test_clear_denominators():
    assert clear_denominators([Fraction(1, 2), Fraction(2, 3), 1]) == [3, 4, 6]
    assert clear_denominators([0, Fraction(0)]) == [0, 0]


def test_nullspace_rational_small_exact():
    rows = [[1, 1, 1], [0, 1, -1]]
    res = nullspace_rational(rows)
    assert res.rank == 2
    assert len(res.basis) == 1
    v = res.basis[0]
    assert v[2] == 1 and v == [Fraction(-2), Fraction(1), Fraction(1)]


def test_nullspace_rational_matches_generic_on_random():
    rng = random.Random(17)
    for _ in range(10):
        m, n = rng.randint(1, 6), rng.randint(2, 7)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        res = nullspace_rational(rows)
        gen = nullspace(frac_rows(rows), QQ)
        assert res.basis == gen
        assert res.rank == rank(frac_rows(rows), QQ)


def test_nullspace_rational_full_rank_certificate():
    rows = [[1, 0], [0, 1], [3, 5]]
    res = nullspace_rational(rows)
    assert res.rank == 2 and res.basis == []
    assert rank_rational(rows) == 2


def test_nullspace_rational_big_entries():
    # entries far beyond int64: exactness must survive the mod-p reductions
    big = 10**40
    rows = [[big, -big, 0], [0, big, -big]]
    res = nullspace_rational(rows)
    assert res.rank == 2
    assert res.basis == [[Fraction(1), Fraction(1), Fraction(1)]]


def test_nullspace_rational_fraction_rows():
    # second row is 3x the first: rank 1, nullspace spanned by (-2/3, 1)
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1)]]
    res = nullspace_rational(rows)
    assert res.rank == 1 and res.basis == [[Fraction(-2, 3), Fraction(1)]]
    rows2 = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 2), Fraction(1)]]
    res2 = nullspace_rational(rows2)
    assert res2.rank == 2 and res2.basis == []


def test_nullspace_rational_zero_matrix():
    res = nullspace_rational([[0, 0, 0]])
    assert res.rank == 0 and len(res.basis) == 3
    with pytest.raises(ValueError):
        nullspace_rational([])
