"""Exact integer/rational linear algebra."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_unimodular
from lattice6.exactlinalg import (
    DegenerateSource,
    det3,
    det4,
    gcd_all,
    is_primitive,
    solve_affine,
)

points = st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))

UNIT = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_det4_unit_simplex():
    assert det4(*UNIT) == 1


def test_det4_scales_with_height():
    assert det4((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 7)) == 7


def test_det4_coplanar_is_zero():
    assert det4((0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 3, 0)) == 0
    assert det4((1, 1, 1), (2, 2, 2), (3, 3, 3), (5, 0, 0)) == 0


def test_det3_matches_det4_from_origin():
    u, v, w = (1, 2, 0), (0, 1, 4), (3, 0, 1)
    assert det3(u, v, w) == det4((0, 0, 0), u, v, w)


@given(p1=points, p2=points, p3=points, p4=points)
def test_det4_alternating(p1, p2, p3, p4):
    assert det4(p2, p1, p3, p4) == -det4(p1, p2, p3, p4)
    assert det4(p1, p3, p2, p4) == -det4(p1, p2, p3, p4)


@given(p1=points, p2=points, p3=points, p4=points, t=points)
def test_det4_translation_invariant(p1, p2, p3, p4, t):
    shifted = [tuple(a + b for a, b in zip(p, t)) for p in (p1, p2, p3, p4)]
    assert det4(*shifted) == det4(p1, p2, p3, p4)


@given(p1=points, p2=points, p3=points, p4=points, seed=st.integers(0, 10**6))
@settings(max_examples=60)
def test_det4_multiplies_by_map_determinant(p1, p2, p3, p4, seed):
    m = random_unimodular(random.Random(seed))
    assert m.det in (1, -1)
    imgs = [m.apply(p) for p in (p1, p2, p3, p4)]
    assert det4(*imgs) == m.det * det4(p1, p2, p3, p4)


def test_gcd_all():
    assert gcd_all([6, -9, 15]) == 3
    assert gcd_all([1, 0, 0]) == 1
    assert gcd_all([0, 0, 0]) == 0
    assert gcd_all([]) == 0


def test_is_primitive():
    assert is_primitive((1, 2, 3))
    assert not is_primitive((2, 4, 6))
    assert not is_primitive((0, 0, 2))
    assert not is_primitive((0, 0, 0))


def test_solve_affine_identity():
    phi = solve_affine(UNIT, UNIT)
    assert phi.det == 1
    assert phi.is_integer()
    for p in [(3, -2, 5), (0, 0, 0), (1, 1, 1)]:
        assert phi.apply(p) == p


def test_solve_affine_reproduces_targets_exactly():
    rng = random.Random(7)
    for _ in range(25):
        src = UNIT
        dst = [tuple(rng.randrange(-9, 10) for _ in range(3)) for _ in range(4)]
        phi = solve_affine(src, dst)
        for s, d in zip(src, dst):
            assert phi.apply(s) == d


def test_solve_affine_swap_has_det_minus_one():
    dst = [(0, 0, 0), (0, 1, 0), (1, 0, 0), (0, 0, 1)]
    phi = solve_affine(UNIT, dst)
    assert phi.det == -1
    assert phi.is_integer()


def test_solve_affine_rejects_coplanar_source():
    flat = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]
    with pytest.raises(DegenerateSource):
        solve_affine(flat, UNIT)


def test_solve_affine_detects_index_three_sublattice(bundle):
    """B.2 and B.14 span lattices of index 3 in each other.

    Any independent quadruple of corresponding columns gives an integer
    map with determinant 3 one way, and a non-integer determinant-1/3
    map the other way; neither configuration is unimodularly equivalent
    to the other.
    """
    a = bundle.class_by_id("B.2").config().points
    b = bundle.class_by_id("B.14").config().points
    idx = (0, 1, 2, 4)
    assert det4(*[a[i] for i in idx]) != 0
    fwd = solve_affine([a[i] for i in idx], [b[i] for i in idx])
    assert fwd.det == 3
    assert fwd.is_integer()
    assert all(fwd.apply(p) == q for p, q in zip(a, b))
    back = solve_affine([b[i] for i in idx], [a[i] for i in idx])
    assert back.det == Fraction(1, 3)
    assert not back.is_integer()
