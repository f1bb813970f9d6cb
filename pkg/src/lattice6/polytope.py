"""Small lattice point configurations in Z^3 and their convex hulls.

A PointConfig is an ordered tuple of 4..8 distinct lattice points.  Hulls
are computed by brute force over point triples (fine at these sizes), all
predicates are exact, and lattice points of the hull are enumerated by a
bounding-box scan against the facet inequalities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from .exactlinalg import (
    IntVec3,
    check_point,
    cross,
    det4,
    dot,
    gcd_all,
    sub,
)


class NotFullDimensional(ValueError):
    """Raised when an operation needs a full-dimensional configuration."""


class IndexOutOfRange(IndexError):
    """Raised by delete_point for a bad point index."""


@dataclass(frozen=True)
class Facet:
    """Supporting hyperplane of the hull: normal . x >= offset for all points.

    The normal is the primitive inward normal; at least 3 configuration
    points satisfy equality.
    """

    normal: IntVec3
    offset: int

    def value(self, p: Sequence[int]) -> int:
        return dot(self.normal, p) - self.offset


class PointConfig:
    """Ordered configuration of 4..8 distinct lattice points."""

    __slots__ = ("points",)

    def __init__(self, points: Sequence[Sequence[int]]):
        pts = tuple(check_point(p) for p in points)
        if not 4 <= len(pts) <= 8:
            raise ValueError(f"need 4..8 points, got {len(pts)}")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, PointConfig) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PointConfig({list(self.points)!r})"

    def is_full_dimensional(self) -> bool:
        return any(
            det4(*quad) != 0 for quad in itertools.combinations(self.points, 4)
        )


def independent_quadruple(config: PointConfig) -> Tuple[int, int, int, int]:
    """First (lexicographic) affinely independent index quadruple."""
    for quad in itertools.combinations(range(len(config)), 4):
        if det4(*(config[i] for i in quad)) != 0:
            return quad
    raise NotFullDimensional("all quadruples are coplanar")


def hull_facets(config: PointConfig) -> Tuple[Facet, ...]:
    """Facets of conv(config) as primitive inward normals with offsets.

    Brute force: every point triple spans a candidate plane; keep it when
    all points lie (weakly) on one side.  Raises NotFullDimensional for
    configurations of affine rank < 4.
    """
    pts = config.points
    if not config.is_full_dimensional():
        raise NotFullDimensional("configuration spans no 3-dimensional volume")
    facets = {}
    for a, b, c in itertools.combinations(pts, 3):
        n = cross(sub(b, a), sub(c, a))
        if n == (0, 0, 0):
            continue
        g = gcd_all(n)
        n = (n[0] // g, n[1] // g, n[2] // g)
        base = dot(n, a)
        values = [dot(n, p) - base for p in pts]
        if all(v >= 0 for v in values):
            facets[(n, base)] = Facet(n, base)
        elif all(v <= 0 for v in values):
            m = (-n[0], -n[1], -n[2])
            facets[(m, -base)] = Facet(m, -base)
    return tuple(sorted(facets.values(), key=lambda f: (f.normal, f.offset)))


def iter_hull_lattice_points(config: PointConfig) -> Iterator[IntVec3]:
    """Yield lattice points of conv(config), lexicographically sorted."""
    facets = hull_facets(config)
    xs = [p[0] for p in config]
    ys = [p[1] for p in config]
    zs = [p[2] for p in config]
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            for z in range(min(zs), max(zs) + 1):
                p = (x, y, z)
                if all(f.value(p) >= 0 for f in facets):
                    yield p


def lattice_points(config: PointConfig) -> Tuple[IntVec3, ...]:
    """All lattice points of conv(config), lexicographically sorted."""
    return tuple(iter_hull_lattice_points(config))


def size(config: PointConfig) -> int:
    """Number of lattice points of conv(config)."""
    return sum(1 for _ in iter_hull_lattice_points(config))


def size_exceeds(config: PointConfig, limit: int) -> bool:
    """True as soon as conv(config) contains more than `limit` lattice points.

    Early-exit variant of size() for rejection scans.
    """
    count = 0
    for _ in iter_hull_lattice_points(config):
        count += 1
        if count > limit:
            return True
    return False


def _solve_barycentric(q, simplex):
    """Affine coefficients of q over an affinely independent simplex, or None."""
    k = len(simplex)
    # rows: one affine-combination equation per coordinate plus sum-to-one
    rows = [[Fraction(p[i]) for p in simplex] + [Fraction(q[i])] for i in range(3)]
    rows.append([Fraction(1)] * k + [Fraction(1)])
    # Gaussian elimination on a 4 x (k+1) system
    pivot_cols = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, 4) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(4):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    # inconsistent system -> q not in the affine span
    for i in range(r, 4):
        if rows[i][k] != 0:
            return None
    if r < k:
        return None  # simplex was not affinely independent
    coeffs = [Fraction(0)] * k
    for i, c in enumerate(pivot_cols):
        coeffs[c] = rows[i][k]
    return coeffs


def point_in_hull(q: Sequence[int], points: Sequence[Sequence[int]]) -> bool:
    """Exact membership test q in conv(points) for small point sets.

    Caratheodory over all affinely independent subsets of <= 4 points:
    q is in the hull iff some sub-simplex contains it with nonnegative
    barycentric coordinates.
    """
    q = check_point(q)
    pts = [check_point(p) for p in points]
    if q in pts:
        return True
    for k in (2, 3, 4):
        for simplex in itertools.combinations(pts, k):
            coeffs = _solve_barycentric(q, simplex)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                return True
    return False


def vertices(config: PointConfig) -> Tuple[IntVec3, ...]:
    """Configuration points that are vertices of conv(config), in input order."""
    out = []
    for i, p in enumerate(config.points):
        others = config.points[:i] + config.points[i + 1 :]
        if not point_in_hull(p, others):
            out.append(p)
    return tuple(out)


def interior_points(config: PointConfig) -> Tuple[IntVec3, ...]:
    """Lattice points strictly inside conv(config), lexicographically sorted."""
    facets = hull_facets(config)
    return tuple(
        p for p in iter_hull_lattice_points(config)
        if all(f.value(p) > 0 for f in facets)
    )


def delete_point(config: PointConfig, index: int) -> PointConfig:
    """Configuration with the index-th point removed."""
    if not 0 <= index < len(config):
        raise IndexOutOfRange(f"point index {index} out of range")
    return PointConfig(config.points[:index] + config.points[index + 1 :])


def parse_points(text: str) -> PointConfig:
    """Parse a points file: one 'x y z' triple per line.

    Blank lines and lines starting with '#' are ignored; coordinates are
    signed decimal integers.
    """
    pts: List[IntVec3] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 coordinates, got {len(parts)}")
        try:
            pts.append(tuple(int(s) for s in parts))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return PointConfig(pts)


def format_points(points: Sequence[Sequence[int]]) -> str:
    return "\n".join(" ".join(str(c) for c in p) for p in points) + "\n"
