"""Exact integer/rational linear algebra for lattice point configurations.

Everything here is exact: points are integer triples, determinants are
Python ints, and affine maps solved from point correspondences carry
Fraction entries.  No floats anywhere.

The basic quantity is the normalized 4x4 determinant of four lattice
points (top row of ones, points as columns), which equals the signed
volume of their tetrahedron normalized so that a unimodular simplex has
volume 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple

IntVec3 = Tuple[int, int, int]

#: Coordinates are validated against this bound; the classification never
#: needs anything close to it, and keeping inputs bounded rules out
#: accidental use of floats or huge garbage values.
COORD_BOUND = 10**4


class DegenerateSource(ValueError):
    """Raised when solving an affine map from a coplanar source quadruple."""


def check_point(p: Sequence[int]) -> IntVec3:
    """Validate one lattice point: three ints with |coordinate| <= 10^4."""
    if len(p) != 3:
        raise ValueError(f"expected 3 coordinates, got {len(p)}")
    x, y, z = p
    for c in (x, y, z):
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"non-integer coordinate {c!r}")
        if abs(c) > COORD_BOUND:
            raise ValueError(f"coordinate {c} exceeds bound {COORD_BOUND}")
    return (x, y, z)


def sub(p: Sequence[int], q: Sequence[int]) -> IntVec3:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def add(p: Sequence[int], q: Sequence[int]) -> IntVec3:
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def dot(p: Sequence[int], q: Sequence[int]) -> int:
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def cross(u: Sequence[int], v: Sequence[int]) -> IntVec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(u: Sequence[int], v: Sequence[int], w: Sequence[int]) -> int:
    """Determinant of the 3x3 matrix with columns u, v, w."""
    return dot(u, cross(v, w))


def det4(p1, p2, p3, p4) -> int:
    """Normalized volume determinant of four lattice points.

    det of [[1,1,1,1],[p1 p2 p3 p4 as columns]]; equals det3 of the
    difference vectors, so a unimodular tetrahedron gives +-1 and four
    coplanar points give 0.
    """
    p1 = check_point(p1)
    return det3(sub(p2, p1), sub(p3, p1), sub(p4, p1))


def gcd_all(values: Iterable[int]) -> int:
    """gcd of arbitrarily many integers; 0 for an empty or all-zero input."""
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def is_primitive(v: Iterable[int]) -> bool:
    """True for an integer vector whose entries have gcd 1 (never for 0)."""
    return gcd_all(v) == 1


def _mat_vec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(3)) for i in range(3))


def _mat_det(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _adjugate(m):
    """Adjugate of a 3x3 matrix, so that m @ adj(m) == det(m) * I."""
    return (
        (
            m[1][1] * m[2][2] - m[1][2] * m[2][1],
            m[0][2] * m[2][1] - m[0][1] * m[2][2],
            m[0][1] * m[1][2] - m[0][2] * m[1][1],
        ),
        (
            m[1][2] * m[2][0] - m[1][0] * m[2][2],
            m[0][0] * m[2][2] - m[0][2] * m[2][0],
            m[0][2] * m[1][0] - m[0][0] * m[1][2],
        ),
        (
            m[1][0] * m[2][1] - m[1][1] * m[2][0],
            m[0][1] * m[2][0] - m[0][0] * m[2][1],
            m[0][0] * m[1][1] - m[0][1] * m[1][0],
        ),
    )


@dataclass(frozen=True)
class AffineMap:
    """Integer affine map x -> matrix @ x + translation."""

    matrix: Tuple[IntVec3, IntVec3, IntVec3]
    translation: IntVec3

    @property
    def det(self) -> int:
        return _mat_det(self.matrix)

    def is_unimodular(self) -> bool:
        return self.det in (1, -1)

    def apply(self, p: Sequence[int]) -> IntVec3:
        return add(_mat_vec(self.matrix, p), self.translation)

    def __call__(self, p: Sequence[int]) -> IntVec3:
        return self.apply(p)


@dataclass(frozen=True)
class RationalAffineMap:
    """Rational affine map x -> matrix @ x + translation, Fraction entries.

    Fractions are kept in lowest terms with positive denominators (the
    fractions module guarantees both).
    """

    matrix: Tuple[Tuple[Fraction, Fraction, Fraction], ...]
    translation: Tuple[Fraction, Fraction, Fraction]

    @property
    def det(self) -> Fraction:
        return _mat_det(self.matrix)

    def apply(self, p: Sequence[int]) -> Tuple[Fraction, Fraction, Fraction]:
        return tuple(
            sum(self.matrix[i][j] * p[j] for j in range(3)) + self.translation[i]
            for i in range(3)
        )

    def __call__(self, p):
        return self.apply(p)

    def is_integer(self) -> bool:
        entries = [e for row in self.matrix for e in row] + list(self.translation)
        return all(e.denominator == 1 for e in entries)

    def to_integer_map(self) -> AffineMap:
        if not self.is_integer():
            raise ValueError("map has non-integer entries")
        mat = tuple(tuple(int(e) for e in row) for row in self.matrix)
        tr = tuple(int(e) for e in self.translation)
        return AffineMap(mat, tr)


def solve_affine(src: Sequence[Sequence[int]], dst: Sequence[Sequence[int]]) -> RationalAffineMap:
    """Unique rational affine map sending src[i] -> dst[i] for 4 point pairs.

    The source quadruple must be affinely independent; otherwise
    DegenerateSource is raised.  The destination may be anything (the
    solved map can be singular).
    """
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("solve_affine needs exactly 4 source and 4 destination points")
    s = [check_point(p) for p in src]
    d = [check_point(p) for p in dst]
    S = tuple(zip(*(sub(s[i], s[0]) for i in (1, 2, 3))))  # columns s_i - s_0
    det_s = _mat_det(S)
    if det_s == 0:
        raise DegenerateSource("source points are coplanar")
    D = tuple(zip(*(sub(d[i], d[0]) for i in (1, 2, 3))))
    adj = _adjugate(S)
    # M = D @ S^{-1} = D @ adj(S) / det(S)
    mat = tuple(
        tuple(
            Fraction(sum(D[i][k] * adj[k][j] for k in range(3)), det_s)
            for j in range(3)
        )
        for i in range(3)
    )
    tr = tuple(
        d[0][i] - sum(mat[i][j] * s[0][j] for j in range(3)) for i in range(3)
    )
    return RationalAffineMap(mat, tr)
