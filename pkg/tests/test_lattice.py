from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from netpres.errors import NonPositiveDeterminant, SingularMatrix, ZeroVector
from netpres.lattice import (
    IntVec2,
    Mat2,
    elementary_divisors,
    in_lattice,
    lattice_coords,
    primitive_part,
    residues,
    smith_decomposition,
    solve,
    sphere_reduce,
)

entries = st.integers(-9, 9)
matrices = st.builds(Mat2, entries, entries, entries, entries)
nonsingular = matrices.filter(lambda M: M.det() != 0)
positive = matrices.filter(lambda M: M.det() > 0)
vectors = st.builds(IntVec2, st.integers(-30, 30), st.integers(-30, 30))


def _order(v, M):
    k = 1
    while not in_lattice(v.scale(k), M):
        k += 1
    return k


def test_mat2_basics():
    M = Mat2.from_columns((0, -1), (2, 1))
    assert M == Mat2(0, 2, -1, 1)
    assert M.col1 == (0, -1) and M.col2 == (2, 1)
    assert M.det() == 2 and M.trace() == 1
    assert M @ IntVec2(1, 1) == (2, 0)
    assert M @ M.adjugate() == Mat2.diag(2, 2)
    assert Mat2(2, 1, 1, 1).unimodular_inverse() == Mat2(1, -1, -1, 2)


def test_solve_and_coords():
    M = Mat2.from_columns((4, 1), (2, 2))
    assert solve(M, (1, 0)) == (Fraction(1, 3), Fraction(-1, 6))
    assert lattice_coords((6, 3), M) == (1, 1)
    assert lattice_coords((1, 0), M) is None
    with pytest.raises(SingularMatrix):
        solve(Mat2(1, 2, 2, 4), (1, 0))


def test_elementary_divisor_examples():
    assert elementary_divisors(Mat2(0, 2, -1, 1)) == (2, 1)
    assert elementary_divisors(Mat2(3, 1, 0, 1)) == (3, 1)
    assert elementary_divisors(Mat2(2, 0, 0, 2)) == (2, 2)
    assert elementary_divisors(Mat2(4, 2, 1, 2)) == (6, 1)


@settings(max_examples=300)
@given(positive)
def test_smith_decomposition(M):
    m, n = elementary_divisors(M)
    assert m % n == 0 and m * n == M.det()
    P, Q = smith_decomposition(M)
    assert P.det() == 1 and Q.det() == 1
    assert P @ Mat2.diag(m, n) @ Q == M


def test_smith_prefers_identity_when_already_divisible():
    M = Mat2.from_columns((4, 2), (1, 1))
    assert smith_decomposition(M) == (Mat2.from_columns((2, 1), (1, 1)), Mat2.identity())


@settings(max_examples=200)
@given(nonsingular)
def test_exponent_is_max_element_order(M):
    # oracle: the larger elementary divisor is the exponent of Z^2 / M Z^2
    m, _ = elementary_divisors(M)
    assert max(_order(v, M) for v in residues(M)) == m


@settings(max_examples=200)
@given(nonsingular)
def test_residues_complete_and_distinct(M):
    reps = residues(M)
    assert len(reps) == abs(M.det())
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            assert not in_lattice(reps[a] - reps[b], M)


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_primitive_part(x, y):
    assume(x or y)
    v, k = primitive_part((x, y))
    assert k > 0
    assert (k * x, k * y) in ((v.x, v.y), (-v.x, -v.y))
    assert v.x > 0 or (v.x == 0 and v.y > 0)
    assert gcd(v.x, v.y) == 1


def test_primitive_part_zero():
    with pytest.raises(ZeroVector):
        primitive_part((0, 0))


@settings(max_examples=300)
@given(positive, vectors, st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([1, -1]))
def test_sphere_reduce_is_orbit_invariant(M, mu, a, b, sign):
    shift = M @ IntVec2(a, b)
    nu = IntVec2(sign * mu.x + 2 * shift.x, sign * mu.y + 2 * shift.y)
    assert sphere_reduce(nu, M) == sphere_reduce(mu, M)


@settings(max_examples=100)
@given(positive)
def test_sphere_reduce_separates_orbits(M):
    # oracle: two vectors in a small box lie in one orbit iff nu -+ mu is in
    # twice the lattice
    twice = M.scale(2)
    box = [IntVec2(x, y) for x, y in product(range(-3, 4), repeat=2)]
    red = {v: sphere_reduce(v, M) for v in box}
    for u in box[::3]:
        for v in box:
            same = in_lattice(v - u, twice) or in_lattice(v + u, twice)
            assert (red[u] == red[v]) == same


def test_sphere_reduce_rejects_bad_basis():
    with pytest.raises(NonPositiveDeterminant):
        sphere_reduce((1, 0), Mat2(0, 1, 1, 0))
