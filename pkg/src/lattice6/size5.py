"""Classification of lattice 3-polytopes with exactly five lattice points.

Every size-5 configuration falls into one of finitely many families,
indexed by the signature of its unique affine dependence:

  (2,2)  single class, width 1
  (2,1)  one class per (p, q), 0 <= p <= q/2, gcd(p,q) = 1, width 1
  (3,2)  one class per (a, b), 0 < a <= b, gcd(a,b) = 1, width 1
  (3,1)  two classes: the unimodular one (width 1) and the volume-9
         class with dependence (-9,3,3,3,0) (width 2)
  (4,1)  eight sporadic classes, all width 2

The eight (4,1) representatives all have their first point as the unique
interior lattice point.  The two admissibility predicates decide when an
apex over a standard circuit base closes up without extra lattice points;
they are the arithmetic engine of the height-forcing arguments used by
the size-6 classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Tuple

from .equivalence import are_equivalent
from .invariants import signature5, volume_vector5
from .polytope import PointConfig, size


class NotSize5(ValueError):
    """Raised when the hull does not have exactly five lattice points."""


@dataclass(frozen=True)
class Size5Class:
    kind: str                      # "22" | "21" | "32" | "31u" | "31w2" | "41"
    params: Tuple[int, ...]        # family parameters, () for sporadic rows
    representative: PointConfig
    dependence: Tuple[int, ...]    # affine dependence coefficients, table sign
    width: int

    @property
    def label(self) -> str:
        if self.params:
            return f"{self.kind}{self.params}"
        return self.kind


def rep22() -> PointConfig:
    return PointConfig([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])


def rep21(p: int, q: int) -> PointConfig:
    if not (q >= 1 and 0 <= p <= q // 2 and (q == 1 or gcd(p, q) == 1)):
        raise ValueError(f"bad (2,1) parameters p={p}, q={q}")
    return PointConfig([(0, 0, 0), (1, 0, 0), (0, 0, 1), (-1, 0, 0), (p, q, 1)])


def rep32(a: int, b: int) -> PointConfig:
    if not (0 < a <= b and gcd(a, b) == 1):
        raise ValueError(f"bad (3,2) parameters a={a}, b={b}")
    return PointConfig([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (a, b, 1)])


def rep31_unimodular() -> PointConfig:
    return PointConfig([(0, 0, 0), (1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1)])


def rep31_volume9() -> PointConfig:
    return PointConfig([(0, 0, 0), (1, 0, 0), (0, 1, 0), (-1, -1, 0), (1, 2, 3)])


#: The eight (4,1) classes: (dependence coefficients, last two points).
#: Every representative starts (0,0,0), (1,0,0), (0,0,1); the first point
#: is the interior point.
_ROWS41 = (
    ((-4, 1, 1, 1, 1), (1, 1, 1), (-2, -1, -2)),
    ((-5, 1, 1, 1, 2), (1, 2, 1), (-1, -1, -1)),
    ((-7, 1, 1, 2, 3), (1, 3, 1), (-1, -2, -1)),
    ((-11, 1, 3, 2, 5), (2, 5, 1), (-1, -2, -1)),
    ((-13, 3, 4, 1, 5), (2, 5, 1), (-1, -1, -1)),
    ((-17, 3, 5, 2, 7), (2, 7, 1), (-1, -2, -1)),
    ((-19, 5, 4, 3, 7), (3, 7, 1), (-2, -3, -1)),
    ((-20, 5, 5, 5, 5), (2, 5, 1), (-3, -5, -2)),
)


def rep41(k: int) -> PointConfig:
    """Representative of the k-th (4,1) class, k = 1..8."""
    dep, p4, p5 = _ROWS41[k - 1]
    return PointConfig([(0, 0, 0), (1, 0, 0), (0, 0, 1), p4, p5])


def catalog41() -> Tuple[Size5Class, ...]:
    """The eight sporadic (4,1) classes."""
    return tuple(
        Size5Class("41", (k,), rep41(k), _ROWS41[k - 1][0], 2)
        for k in range(1, 9)
    )


def classify5(config: PointConfig) -> Size5Class:
    """Identify the class of a size-5 configuration.

    Raises NotSize5 unless the configuration has five distinct points
    whose hull is full-dimensional with exactly five lattice points.
    """
    if len(config) != 5:
        raise NotSize5(f"need 5 points, got {len(config)}")
    if not config.is_full_dimensional():
        raise NotSize5("configuration is not full-dimensional")
    if size(config) != 5:
        raise NotSize5("hull contains extra lattice points")
    sig = signature5(config)
    dep = volume_vector5(config)
    nonzero = sorted(abs(v) for v in dep if v)

    if sig == (2, 2):
        cls = Size5Class("22", (), rep22(), (-1, 1, 1, -1, 0), 1)
        if not are_equivalent(config, cls.representative):
            raise AssertionError("(2,2) configuration missed its unique class")
        return cls

    if sig == (2, 1):
        q = nonzero[0]
        for p in range(0, q // 2 + 1):
            if q > 1 and gcd(p, q) != 1:
                continue
            rep = rep21(p, q)
            if are_equivalent(config, rep):
                return Size5Class("21", (p, q), rep, (-2 * q, q, 0, q, 0), 1)
        raise AssertionError(f"(2,1) configuration missed all classes for q={q}")

    if sig == (3, 2):
        vol = nonzero[-1]
        for a in range(1, vol // 2 + 1):
            b = vol - a
            if gcd(a, b) != 1:
                continue
            rep = rep32(a, b)
            if are_equivalent(config, rep):
                return Size5Class("32", (a, b), rep, (-a - b, a, b, 1, -1), 1)
        raise AssertionError(f"(3,2) configuration missed all classes of volume {vol}")

    if sig == (3, 1):
        if nonzero[-1] == 3:
            cls = Size5Class("31u", (), rep31_unimodular(), (-3, 1, 1, 1, 0), 1)
        elif nonzero[-1] == 9:
            cls = Size5Class("31w2", (), rep31_volume9(), (-9, 3, 3, 3, 0), 2)
        else:
            raise AssertionError(f"unexpected (3,1) dependence {dep}")
        if not are_equivalent(config, cls.representative):
            raise AssertionError("(3,1) configuration missed its class")
        return cls

    if sig == (4, 1):
        mine = sorted(abs(v) for v in dep)
        for cls in catalog41():
            if sorted(abs(v) for v in cls.dependence) != mine:
                continue
            if are_equivalent(config, cls.representative):
                return cls
        raise AssertionError(f"(4,1) configuration missed all 8 classes: {dep}")

    raise AssertionError(f"impossible signature {sig}")


# ---------------------------------------------------------------------------
# apex admissibility predicates


def admissible_apex_31(a: int, b: int) -> bool:
    """Apex (a,b,3) over conv{o, e1, e2, -e1-e2} traps no extra lattice
    points iff a = -b = +-1 (mod 3)."""
    return (a % 3, b % 3) in ((1, 2), (2, 1))


def admissible_apex_21(a: int, b: int, q: int) -> bool:
    """Apex (a,b,q) over the collinear base {o, e2, -e2} with fourth point
    e1 traps no extra lattice points iff a = 1 (mod q) and gcd(b,q) = 1."""
    if q < 1:
        raise ValueError("q must be positive")
    return a % q == 1 % q and gcd(b, q) == 1


def apex_config_31(a: int, b: int) -> PointConfig:
    """The five-point configuration tested by admissible_apex_31."""
    return PointConfig([(0, 0, 0), (1, 0, 0), (0, 1, 0), (-1, -1, 0), (a, b, 3)])


def apex_config_21(a: int, b: int, q: int) -> PointConfig:
    """The five-point configuration tested by admissible_apex_21."""
    return PointConfig([(0, 0, 0), (0, 1, 0), (0, -1, 0), (1, 0, 0), (a, b, q)])
