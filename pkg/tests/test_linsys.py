import json
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlin.ambient import affine_space, projective_space
from hyperlin.fields import GF, rationals
from hyperlin.linsys import LinearSys, poly_gcd

import random

QQ = rationals()


def quadric_plane():
    return projective_space(QQ, 2)


def test_complete_is_lazy():
    P3 = projective_space(QQ, 3)
    t0 = time.perf_counter()
    L = LinearSys.complete(P3, 50)
    n = L.nsections()
    elapsed = time.perf_counter() - t0
    # nothing proportional to the 23426 basis monomials may be touched
    assert n == 23426
    assert L._monomials is None and L._matrix is None and L._sections is None
    assert elapsed < 0.01
    assert L.dimension() == 23425


def test_from_matrix_sections_verbatim():
    P2 = quadric_plane()
    ring = P2.ring
    mons = [
        (2, 0, 0),  # x^2
        (0, 2, 0),  # y^2
        (0, 0, 2),  # z^2
        (1, 1, 0),  # x*y
        (1, 0, 1),  # x*z
    ]
    M = [
        [1, 0, 1, 0, 0],
        [0, 1, 0, 0, -1],
        [0, 1, 0, 1, 0],
        [0, 0, 0, 0, 1],
    ]
    L = LinearSys.from_matrix(P2, M, mons)
    expected = ["x^2+z^2", "y^2-x*z", "x*y+y^2", "x*z"]
    assert [str(s) for s in L.sections()] == expected
    assert L.nsections() == 4
    assert L.degree == (2,)


def test_change_basis_echelon_order():
    # pivots are scanned from the smallest grevlex monomial upward, so the
    # echelon basis comes out [x^2+z^2, x*z, y^2, x*y]
    P2 = quadric_plane()
    ring = P2.ring
    secs = [ring.parse(s) for s in ["x^2+z^2", "y^2-x*z", "x*y+y^2", "x*z"]]
    L = LinearSys.from_sections(P2, secs, change_basis=True)
    assert [str(s) for s in L.sections()] == ["x^2+z^2", "x*z", "y^2", "x*y"]
    assert L.echelonized and L.independent_sections


def test_dependent_sections_reduced():
    A2 = affine_space(QQ, 2)
    ring = A2.ring
    x, y = ring.gens()
    L = LinearSys.from_sections(A2, [x, 2 * x, y], degree=1)
    assert L.nsections() == 2
    assert L.dimension() == 1
    assert len(L.sections()) == 2


def test_section_validation_errors():
    P2 = quadric_plane()
    ring = P2.ring
    x, y, z = ring.gens()
    with pytest.raises(ValueError):
        LinearSys.from_sections(P2, [x * x, ring.zero()])
    with pytest.raises(ValueError):
        LinearSys.from_sections(P2, [x, x * x])  # mixed degrees
    with pytest.raises(ValueError):
        LinearSys.from_sections(P2, [x * x + x])  # inhomogeneous
    with pytest.raises(ValueError):
        LinearSys.from_matrix(P2, [[1, 0], [0, 0]], [(2, 0, 0), (0, 2, 0)])
    with pytest.raises(ValueError):
        LinearSys.from_matrix(P2, [[1, 0, 0]], [(2, 0, 0), (0, 2, 0)])


def test_from_sections_lazy_without_check():
    P3 = projective_space(QQ, 3)
    ring = P3.ring
    x, y, z, w = ring.gens()
    L = LinearSys.from_sections(P3, [x * y, y * z, z * w], check_basis=False)
    assert L._matrix is None
    assert L.nsections() == 3


def test_coefficient_map_roundtrip():
    P2 = quadric_plane()
    ring = P2.ring
    secs = [ring.parse(s) for s in ["x^2+z^2", "y^2-x*z", "x*y+y^2", "x*z"]]
    L = LinearSys.from_sections(P2, secs, check_basis=False)
    f = 3 * secs[0] - secs[1] + 7 * secs[3]
    a = L.coefficient_map()(f)
    assert [c.raw for c in a] == [
        Fraction(3),
        Fraction(-1),
        Fraction(0),
        Fraction(7),
    ]
    assert L.polynomial_map([c.raw for c in a]) == f


def test_coefficient_map_dependent_sections():
    # any valid solution is acceptable when the sections are dependent
    A2 = affine_space(QQ, 2)
    ring = A2.ring
    x, y = ring.gens()
    L = LinearSys.from_sections(A2, [x, 2 * x, y], degree=1, check_basis=False)
    f = 5 * x + y
    a = [c.raw for c in L.coefficient_map()(f)]
    assert L.polynomial_map(a) == f


def test_membership():
    P2 = quadric_plane()
    ring = P2.ring
    x, y, z = ring.gens()
    L = LinearSys.from_sections(P2, [x * x + z * z, x * z], check_basis=False)
    assert x * x + z * z in L
    assert 2 * (x * x) + 7 * (x * z) + 2 * (z * z) in L
    assert y * y not in L
    assert x * x - z * z not in L  # right support, wrong span
    assert x not in L  # wrong degree
    assert 42 not in L  # not a polynomial


def test_complete_membership_no_matrix():
    P2 = quadric_plane()
    ring = P2.ring
    L = LinearSys.complete(P2, 2)
    assert ring.parse("x^2-3*x*y+y*z") in L
    assert ring.parse("x^3") not in L
    assert L._matrix is None  # the shortcut never built the identity matrix


def test_complement_rank_additivity():
    P2 = quadric_plane()
    ring = P2.ring
    x, y, z = ring.gens()
    L = LinearSys.complete(P2, 2)
    J = LinearSys.from_sections(P2, [x * x, x * y + y * z], check_basis=False)
    C = L.complement(J)
    assert C.nsections() == L.nsections() - J.nsections() == 4
    # J together with C spans L
    both = LinearSys.from_sections(
        P2, J.sections() + C.sections(), check_basis=False
    )
    assert both.same_span(L)


def test_complement_requires_subsystem():
    P2 = quadric_plane()
    ring = P2.ring
    x, y, z = ring.gens()
    L = LinearSys.from_sections(P2, [x * x, y * y], check_basis=False)
    J = LinearSys.from_sections(P2, [x * z], check_basis=False)
    with pytest.raises(ValueError):
        L.complement(J)


def test_complement_trivial_cases():
    P2 = quadric_plane()
    L = LinearSys.complete(P2, 2)
    E = LinearSys.empty(P2, 2)
    assert L.complement(E).same_span(L)
    full = L.complement(E)
    assert L.complement(full).is_empty()
    assert E.nsections() == 0 and E.dimension() == -1


def test_same_span_across_supports():
    # identical spans presented on different monomial lists
    P2 = quadric_plane()
    ring = P2.ring
    x, y, z = ring.gens()
    A = LinearSys.from_sections(P2, [x * x], check_basis=False)
    B = LinearSys.from_matrix(P2, [[1, 0]], [(2, 0, 0), (0, 2, 0)], degree=2)
    assert A.same_span(B)
    assert A.is_subsystem_of(B) and B.is_subsystem_of(A)
    C = LinearSys.from_matrix(P2, [[0, 1]], [(2, 0, 0), (0, 2, 0)], degree=2)
    assert not A.same_span(C)


def test_base_ideal_generators():
    A2 = affine_space(QQ, 2)
    ring = A2.ring
    x, y = ring.gens()
    L = LinearSys.from_sections(A2, [x, 2 * x, x + y], degree=1, check_basis=False)
    gens = L.base_ideal_generators()
    assert len(gens) == 2
    span = LinearSys.from_sections(A2, gens, degree=1, check_basis=False)
    assert span.same_span(LinearSys.from_sections(A2, [x, y], degree=1, check_basis=False))


def test_reduction_common_factor():
    A3 = affine_space(QQ, 3)
    ring = A3.ring
    x, y, z = ring.gens()
    L = LinearSys.from_sections(A3, [x * y, x * z], check_basis=False)
    reduced, g = L.reduction()
    assert g == x
    assert {str(s) for s in reduced.sections()} == {"y", "z"}
    again, g2 = reduced.reduction()
    assert g2 == ring.one()
    assert again is reduced


def test_reduction_projective():
    P2 = quadric_plane()
    ring = P2.ring
    x, y, z = ring.gens()
    L = LinearSys.from_sections(P2, [x * x * y, x * x * z], check_basis=False)
    reduced, g = L.reduction()
    assert g == x * x
    assert reduced.degree == (1,)


def test_poly_gcd():
    A2 = affine_space(QQ, 2)
    ring = A2.ring
    x, y = ring.gens()
    assert poly_gcd(x * x - y * y, x * x + 2 * x * y + y * y) == x + y
    assert poly_gcd(x * x * y + x * y * y, x * y) == x * y
    assert poly_gcd(x + y, x - y) == ring.one()
    assert poly_gcd(ring.zero(), 3 * x) == x
    # univariate chain
    assert poly_gcd(x**3 - x, x**2 - 1) == x * x - 1
    F7 = affine_space(GF(7), 2)
    a, b = F7.ring.gens()
    assert poly_gcd((a + b) ** 3 * a, (a + b) * b) == a + b


def test_random_member():
    P2 = quadric_plane()
    ring = P2.ring
    x, y, z = ring.gens()
    L = LinearSys.from_sections(P2, [x * x + z * z, x * z], check_basis=False)
    rng = random.Random(7)
    f = L.random_member(rng)
    assert f in L
    with pytest.raises(ValueError):
        LinearSys.empty(P2, 2).random_member(rng)
    # complete systems draw coefficients without building a matrix
    big = LinearSys.complete(projective_space(GF(397), 3), 25)
    g = big.random_member(rng)
    assert big._matrix is None
    assert big.ambient.section_fits_degree(g, 25)


def test_json_roundtrip_sections():
    P2 = quadric_plane()
    ring = P2.ring
    secs = [ring.parse(s) for s in ["x^2+z^2", "y^2-x*z"]]
    L = LinearSys.from_sections(P2, secs, check_basis=False)
    data = L.to_json()
    L2 = LinearSys.from_json(data)
    assert L2.same_span(L)
    assert json.dumps(data, sort_keys=True) == json.dumps(
        L2.to_json(), sort_keys=True
    )


def test_json_roundtrip_matrix():
    P2 = projective_space(GF(13), 2)
    L = LinearSys.from_matrix(
        P2, [[1, 12], [0, 5]], [(2, 0, 0), (1, 1, 0)], degree=2
    )
    data = L.to_json()
    assert "matrix" in data and "monomials" in data
    L2 = LinearSys.from_json(data)
    assert L2.same_span(L)


def test_json_roundtrip_complete():
    P3 = projective_space(QQ, 3)
    L = LinearSys.complete(P3, 50)
    data = L.to_json()
    assert data["complete"] is True
    L2 = LinearSys.from_json(data)
    assert L2.is_complete and L2.nsections() == L.nsections()
    assert L2._monomials is None  # still lazy after the roundtrip


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=0, max_value=6), min_size=6, max_size=6),
        min_size=1,
        max_size=5,
    ),
    st.lists(st.integers(min_value=0, max_value=6), min_size=5, max_size=5),
)
def test_polynomial_map_section_of_coefficient_map(rows, vec):
    # over GF(7): any combination of sections must round-trip through the
    # coefficient map back to the same polynomial
    P2 = projective_space(GF(7), 2)
    mons = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1)]
    rows = [r for r in rows if any(v % 7 for v in r[:5])]
    if not rows:
        return
    L = LinearSys.from_matrix(P2, [r[:5] for r in rows], mons, degree=2)
    f = L.polynomial_map(vec[: len(rows)])
    if f.is_zero():
        assert all(v % 7 == 0 for v in vec[: len(rows)]) or L.nsections() < len(rows)
    a = [c.raw for c in L.coefficient_map()(f)]
    assert L.polynomial_map(a) == f


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_complement_additivity_property(data):
    P1 = projective_space(GF(5), 1)
    d = data.draw(st.integers(min_value=2, max_value=5))
    L = LinearSys.complete(P1, d)
    n = L.nsections()
    nsub = data.draw(st.integers(min_value=0, max_value=n))
    rng = random.Random(data.draw(st.integers(min_value=0, max_value=10**6)))
    vecs = [[rng.randrange(5) for _ in range(n)] for _ in range(nsub)]
    vecs = [v for v in vecs if any(v)]
    J = (
        LinearSys.from_nullspace(L, vecs)
        if vecs
        else LinearSys.empty(P1, d)
    )
    J = LinearSys.from_sections(P1, J.sections(), degree=d) if vecs else J
    C = L.complement(J)
    assert C.nsections() == n - J.nsections()
