"""Exact-arithmetic toolkit for lattice 3-polytopes with few lattice points.

Implements the machinery needed to classify lattice 3-polytopes of size 6
and width greater than one from first principles: exact volume vectors,
lattice width, unimodular equivalence, empty tetrahedra, the size-5
classification, the rank-4 oriented matroid catalog on six elements, and
the case-by-case size-6 classification with its 76 equivalence classes.
"""

__version__ = "0.1.0"

from .exactlinalg import (
    AffineMap,
    DegenerateSource,
    RationalAffineMap,
    det4,
    gcd_all,
    is_primitive,
    solve_affine,
)

__all__ = [
    "AffineMap",
    "DegenerateSource",
    "RationalAffineMap",
    "det4",
    "gcd_all",
    "is_primitive",
    "solve_affine",
    "__version__",
]
