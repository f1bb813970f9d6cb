"""Unimodular (Z-) equivalence of lattice point configurations.

Two configurations are equivalent when an integer affine map with
determinant +-1 sends one point set onto the other.  The search works up
to relabeling: volume vectors prefilter candidate bijections, and a
candidate is confirmed by solving the affine map on an independent
quadruple and checking it on all points.

For 6-point configurations with unimodular volume vector (gcd 1) the
volume vector determines the class outright, which gives a fast canonical
key; keys with gcd > 1 are flagged so callers confirm with
are_equivalent.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Optional, Sequence, Tuple

from .exactlinalg import AffineMap, DegenerateSource, det4, gcd_all, solve_affine
from .invariants import QUADS6, WrongSize, volume_vector6
from .polytope import PointConfig, independent_quadruple

_QUAD_INDEX = {q: i for i, q in enumerate(QUADS6)}


def vv6_relabeled(vv: Sequence[int], perm: Sequence[int]) -> Tuple[int, ...]:
    """Volume vector of the relabeled configuration i -> perm[i].

    Each entry is looked up from the original vector with the sign of the
    permutation that sorts the image quadruple.
    """
    out = []
    for quad in QUADS6:
        img = [perm[i] for i in quad]
        sign = 1
        for i in range(1, 4):  # insertion sort, tracking parity
            j = i
            while j > 0 and img[j - 1] > img[j]:
                img[j - 1], img[j] = img[j], img[j - 1]
                sign = -sign
                j -= 1
        out.append(sign * vv[_QUAD_INDEX[tuple(img)]])
    return tuple(out)


def _abs_multiset(config: PointConfig) -> Tuple[int, ...]:
    return tuple(
        sorted(abs(det4(*q)) for q in itertools.combinations(config.points, 4))
    )


def equivalence_witness(
    a: PointConfig, b: PointConfig
) -> Optional[Tuple[Tuple[int, ...], AffineMap]]:
    """Permutation and integer unimodular map with map(a[i]) = b[perm[i]].

    Returns None when the configurations are not equivalent.  Candidate
    permutations are tried in lexicographic order; determinant -1 maps
    count as equivalences.
    """
    n = len(a)
    if len(b) != n:
        return None
    if _abs_multiset(a) != _abs_multiset(b):
        return None
    vv_a = volume_vector6(a) if n == 6 else None
    vv_b = volume_vector6(b) if n == 6 else None
    quad = independent_quadruple(a)
    src = [a[i] for i in quad]
    for perm in itertools.permutations(range(n)):
        if vv_a is not None:
            vv_p = vv6_relabeled(vv_b, perm)
            if vv_p != vv_a and vv_p != tuple(-w for w in vv_a):
                continue
        dst = [b[perm[i]] for i in quad]
        try:
            phi = solve_affine(src, dst)
        except DegenerateSource:  # pragma: no cover - quad is independent
            continue
        if phi.det not in (1, -1) or not phi.is_integer():
            continue
        m = phi.to_integer_map()
        if all(m.apply(a[i]) == b[perm[i]] for i in range(n)):
            return perm, m
    return None


def are_equivalent(a: PointConfig, b: PointConfig) -> bool:
    """True when an integer affine map of determinant +-1 sends a onto b."""
    return equivalence_witness(a, b) is not None


class CanonicalKey(NamedTuple):
    vector: Tuple[int, ...]
    needs_confirmation: bool

    def as_string(self) -> str:
        tag = "?" if self.needs_confirmation else ""
        return ",".join(str(w) for w in self.vector) + tag


def canonical_key(config: PointConfig) -> CanonicalKey:
    """Lexicographically minimal volume vector over relabelings and sign.

    Equal keys with needs_confirmation False certify equivalence; keys
    with gcd > 1 only certify the vector and callers must confirm with
    are_equivalent.
    """
    if len(config) != 6:
        raise WrongSize(f"need 6 points, got {len(config)}")
    vv = volume_vector6(config)
    best = None
    for perm in itertools.permutations(range(6)):
        cand = vv6_relabeled(vv, perm)
        neg = tuple(-w for w in cand)
        if neg < cand:
            cand = neg
        if best is None or cand < best:
            best = cand
    return CanonicalKey(best, gcd_all(best) != 1)
