"""Z-equivalence invariants of lattice point configurations.

Volume vectors (ordered tuples of normalized 4x4 determinants), circuit
sign patterns, coplanarity classes, lattice width with an explicit witness
functional, and the distinct-pair-sums property.  All exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .exactlinalg import IntVec3, _adjugate, det3, det4, dot, gcd_all, sub
from .polytope import NotFullDimensional, PointConfig, lattice_points


class WrongSize(ValueError):
    """Raised when an invariant needs a configuration of a specific size."""


#: Index quadruples of the 15-entry volume vector of a 6-point
#: configuration, in lexicographic order.
QUADS6: Tuple[Tuple[int, int, int, int], ...] = tuple(
    itertools.combinations(range(6), 4)
)


def volume_vector6(config: PointConfig) -> Tuple[int, ...]:
    """15-entry volume vector (w_1234, w_1235, ..., w_3456), lex order."""
    if len(config) != 6:
        raise WrongSize(f"need 6 points, got {len(config)}")
    p = config.points
    return tuple(det4(p[i], p[j], p[k], p[l]) for i, j, k, l in QUADS6)


def volume_vector5(config: PointConfig) -> Tuple[int, ...]:
    """Signed 5-entry volume vector (w_2345, -w_1345, w_1245, -w_1235, w_1234).

    With these signs the entries are the coefficients of the unique (up to
    scale) affine dependence: sum_k v_k p_k = 0 and sum_k v_k = 0.
    """
    if len(config) != 5:
        raise WrongSize(f"need 5 points, got {len(config)}")
    p = config.points
    out = []
    for k in range(5):
        rest = [p[i] for i in range(5) if i != k]
        out.append((-1) ** k * det4(*rest))
    return tuple(out)


def signature5(config: PointConfig) -> Tuple[int, int]:
    """Sign counts (i, j), i >= j, of the 5-point volume vector."""
    v = volume_vector5(config)
    pos = sum(1 for x in v if x > 0)
    neg = sum(1 for x in v if x < 0)
    return (max(pos, neg), min(pos, neg))


# ---------------------------------------------------------------------------
# circuits


@dataclass(frozen=True)
class SignedCircuit:
    """Minimal affine dependence: positive/negative index sets (0-based).

    Normalized so the smallest index in the support carries a positive
    coefficient.
    """

    positive: Tuple[int, ...]
    negative: Tuple[int, ...]

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.positive + self.negative))

    @property
    def signature(self) -> Tuple[int, int]:
        a, b = len(self.positive), len(self.negative)
        return (max(a, b), min(a, b))

    def relabeled(self, perm: Sequence[int]) -> "SignedCircuit":
        """Apply an element permutation (perm[i] = new label of element i)."""
        pos = tuple(sorted(perm[i] for i in self.positive))
        neg = tuple(sorted(perm[i] for i in self.negative))
        if min(pos + neg) in neg:
            pos, neg = neg, pos
        return SignedCircuit(pos, neg)

    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (self.positive, self.negative)


def _affine_kernel(points: Sequence[IntVec3]) -> List[List[Fraction]]:
    """Basis of affine dependences among the given points (RREF kernel)."""
    m = len(points)
    rows = [[Fraction(1)] * m]
    for c in range(3):
        rows.append([Fraction(p[c]) for p in points])
    pivots = []
    r = 0
    for c in range(m):
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
        pivots.append(c)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * m
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def _primitive_signed(vec: Sequence[Fraction]) -> List[int]:
    mult = lcm(*(f.denominator for f in vec))
    ints = [int(f * mult) for f in vec]
    g = gcd_all(ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return ints


def circuits(config: PointConfig) -> Tuple[SignedCircuit, ...]:
    """All circuits (minimal affine dependences) of the configuration.

    Returned sorted by (support, sign pattern); element labels are 0-based
    point indices.
    """
    pts = config.points
    found = {}
    for m in (3, 4, 5):
        for idxs in itertools.combinations(range(len(pts)), m):
            basis = _affine_kernel([pts[i] for i in idxs])
            if len(basis) != 1:
                continue
            vec = basis[0]
            if any(v == 0 for v in vec):
                continue  # dependence not supported on the whole subset
            ints = _primitive_signed(vec)
            pos = tuple(idxs[i] for i, v in enumerate(ints) if v > 0)
            neg = tuple(idxs[i] for i, v in enumerate(ints) if v < 0)
            c = SignedCircuit(pos, neg)
            found[c.support] = c
    return tuple(sorted(found.values(), key=lambda c: (c.support, c.key())))


# ---------------------------------------------------------------------------
# coplanarity classes

FIVE_COPLANAR = "five-coplanar"
C31 = "(3,1)"
C22 = "(2,2)"
C21 = "(2,1)"
NO_COPLANARITY = "none"


def _coplanar(points: Sequence[IntVec3]) -> bool:
    return all(det4(*q) == 0 for q in itertools.combinations(points, 4))


def coplanarity_class(config: PointConfig) -> str:
    """Coarsest coplanarity present, with precedence
    five-coplanar > (3,1) > (2,2) > (2,1) > none."""
    if len(config) != 6:
        raise WrongSize(f"need 6 points, got {len(config)}")
    pts = config.points
    if any(_coplanar(sub5) for sub5 in itertools.combinations(pts, 5)):
        return FIVE_COPLANAR
    return coplanarity_from_circuits(circuits(config))


def coplanarity_from_circuits(circs: Sequence[SignedCircuit], n: int = 6) -> str:
    """Coplanarity class of a 6-element configuration from its circuits.

    An element missing from every circuit means the other five span only a
    plane (its dual vector vanishes), i.e. five coplanar points.
    """
    covered = set()
    for c in circs:
        covered.update(c.support)
    if len(covered) < n:
        return FIVE_COPLANAR
    sigs = {c.signature for c in circs}
    if (3, 1) in sigs:
        return C31
    if (2, 2) in sigs:
        return C22
    if (2, 1) in sigs:
        return C21
    return NO_COPLANARITY


# ---------------------------------------------------------------------------
# width


def _functional_range(f: IntVec3, pts: Sequence[IntVec3]) -> int:
    values = [dot(f, p) for p in pts]
    return max(values) - min(values)


def _normalize_sign(f: IntVec3) -> IntVec3:
    lead = next((v for v in f if v != 0), 0)
    return f if lead >= 0 else (-f[0], -f[1], -f[2])


def width(config: PointConfig) -> Tuple[int, IntVec3]:
    """Lattice width and a primitive witness functional.

    Search: seed an upper bound U with the best coordinate functional,
    pick an affinely independent quadruple of minimal |volume| with
    difference vectors d1,d2,d3, then for W = 1..U enumerate target values
    (t1,t2,t3) in [-W,W]^3, solve f . d_k = t_k for integral f, and return
    the first level admitting a witness.  Ties among witnesses are broken
    by normalizing the leading coefficient positive and taking the
    lexicographically smallest.
    """
    pts = config.points
    best = None
    for quad in itertools.combinations(range(len(pts)), 4):
        d = abs(det4(*(pts[i] for i in quad)))
        if d != 0 and (best is None or d < best[0]):
            best = (d, quad)
    if best is None:
        raise NotFullDimensional("width needs a full-dimensional configuration")
    U = min(
        _functional_range(f, pts) for f in ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    )
    q = [pts[i] for i in best[1]]
    d1, d2, d3 = sub(q[1], q[0]), sub(q[2], q[0]), sub(q[3], q[0])
    M = tuple(zip(d1, d2, d3))  # columns d1,d2,d3
    D = det3(d1, d2, d3)
    adjT = tuple(zip(*_adjugate(M)))
    cache = {}

    def solve(t):
        # f with f . d_k = t_k, or None if not integral
        num = tuple(sum(adjT[i][j] * t[j] for j in range(3)) for i in range(3))
        if any(v % D for v in num):
            return None
        return tuple(v // D for v in num)

    for W in range(1, U + 1):
        witnesses = []
        for t in itertools.product(range(-W, W + 1), repeat=3):
            if t == (0, 0, 0):
                continue
            if t not in cache:
                f = solve(t)
                cache[t] = (f, _functional_range(f, pts) if f else None)
            f, wf = cache[t]
            if f is not None and wf == W:
                witnesses.append(_normalize_sign(f))
        if witnesses:
            witness = min(witnesses)
            assert gcd_all(witness) == 1
            return W, witness
    raise AssertionError("width search failed below its own upper bound")


# ---------------------------------------------------------------------------
# distinct pair sums


def is_dps(config: PointConfig) -> bool:
    """True if all pairwise sums of hull lattice points are distinct.

    Equivalent to containing neither three collinear lattice points nor
    the vertices of a nondegenerate parallelogram.
    """
    pts = lattice_points(config)
    sums = set()
    for i in range(len(pts)):
        for j in range(i, len(pts)):
            s = (
                pts[i][0] + pts[j][0],
                pts[i][1] + pts[j][1],
                pts[i][2] + pts[j][2],
            )
            if s in sums:
                return False
            sums.add(s)
    return True
