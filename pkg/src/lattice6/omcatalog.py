"""Catalog of oriented matroids of six affine points spanning 3-space.

An acyclic rank-4 oriented matroid on six elements without parallel
elements dualizes to a totally cyclic rank-2 one, i.e. a planar vector
configuration: six vectors distributed over at least two lines through
the origin (some possibly at the origin itself — the duals of elements
whose five companions are coplanar), positively spanning the plane, and
with no line carrying four or more vectors (vectors at the origin count
on every line, which is what keeps the six primal points distinct).

Enumerating those configurations is elementary: a configuration is a
cyclic sequence of lines, each carrying (a_k, b_k) vectors on its two
rays, plus at most one origin vector.  The circuits of the primal are the
cocircuits of the dual — one per line, supported on the off-line
elements, signed by side.  Everything else (vertex counts, interior
points, coplanarities) is derived from the circuits alone: covectors are
the sign vectors orthogonal to every circuit, cocircuits their
support-minimal nonzero ones, facets the nonnegative cocircuits.

There are exactly 55 such oriented matroids.  Records are keyed
"cN.MM" where N is the number of circuits and MM numbers the canonical
circuit forms within each N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .invariants import (
    SignedCircuit,
    circuits as config_circuits,
    coplanarity_from_circuits,
)
from .polytope import PointConfig


class NoMatch(Exception):
    """A configuration's circuits match no catalog record (catalog bug)."""


# strictly increasing angles in [0, 135°]; only the order matters
_DIRS = ((1, 0), (3, 1), (1, 1), (1, 3), (0, 1), (-1, 1))


def _det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


# ---------------------------------------------------------------------------
# canonical forms


def canonical_circuit_form(
    circs: Sequence[SignedCircuit],
) -> Tuple[Tuple, Tuple[int, ...]]:
    """Lex-minimal relabeled circuit list and the permutation achieving it.

    The returned permutation maps current element labels to canonical
    ones (perm[i] = canonical label of element i).
    """
    best = None
    best_perm = None
    for perm in itertools.permutations(range(6)):
        key = tuple(sorted(c.relabeled(perm).key() for c in circs))
        if best is None or key < best:
            best = key
            best_perm = perm
    return best, best_perm


def _swap(ab):
    return (ab[1], ab[0])


def _rot1(seq):
    return seq[1:] + (_swap(seq[0]),)


def _canonical_dual(lines, loops):
    """Canonical form of a cyclic line sequence under rotations/reflections."""
    seq = tuple(lines)
    n = len(seq)
    refl = (seq[0],) + tuple(_swap(s) for s in reversed(seq[1:]))
    cands = []
    for start in (seq, refl):
        cur = start
        for _ in range(2 * n):
            cands.append(cur)
            cur = _rot1(cur)
    return (min(cands), loops)


# ---------------------------------------------------------------------------
# dual enumeration


def _dual_circuits(lines, loops) -> Optional[Tuple[SignedCircuit, ...]]:
    """Primal circuits of the configuration described by a dual, or None
    if the dual is not totally cyclic."""
    vectors = []  # (line index, ray sign) per element; None for loops
    for k, (a, b) in enumerate(lines):
        vectors.extend([(k, 1)] * a)
        vectors.extend([(k, -1)] * b)
    vectors.extend([None] * loops)
    out = []
    for k in range(len(lines)):
        d_k = _DIRS[k]
        pos, neg = [], []
        for e, v in enumerate(vectors):
            if v is None or v[0] == k:
                continue
            side = v[1] * _det2(d_k, _DIRS[v[0]])
            (pos if side > 0 else neg).append(e)
        if not pos or not neg:
            return None  # a closed halfplane contains every vector
        if min(pos + neg) in neg:
            pos, neg = neg, pos
        out.append(SignedCircuit(tuple(pos), tuple(neg)))
    return tuple(sorted(out, key=lambda c: (c.support, c.key())))


def _iter_duals():
    for loops in (0, 1, 2):
        cap = 3 - loops
        total = 6 - loops
        per_line = [
            (a, s - a) for s in range(1, cap + 1) for a in range(s + 1)
        ]
        for n_lines in range(2, 7):
            for combo in itertools.product(per_line, repeat=n_lines):
                if sum(a + b for a, b in combo) == total:
                    yield combo, loops


# ---------------------------------------------------------------------------
# statistics from circuits


def _orthogonal(x, c: SignedCircuit) -> bool:
    prods = [x[e] for e in c.positive] + [-x[e] for e in c.negative]
    has_pos = any(p > 0 for p in prods)
    has_neg = any(p < 0 for p in prods)
    return has_pos == has_neg


def cocircuits_from_circuits(circs: Sequence[SignedCircuit]) -> Tuple[Tuple[int, ...], ...]:
    """All cocircuits as sign vectors in {-1,0,1}^6.

    Covectors are exactly the sign vectors orthogonal to every circuit;
    cocircuits are the nonzero covectors of minimal support.  Both signs
    of each cocircuit are returned.
    """
    covectors = [
        x
        for x in itertools.product((-1, 0, 1), repeat=6)
        if any(x) and all(_orthogonal(x, c) for c in circs)
    ]
    supports = {
        x: frozenset(e for e in range(6) if x[e]) for x in covectors
    }
    out = []
    for x, sup in supports.items():
        if not any(s < sup for s in supports.values()):
            out.append(x)
    return tuple(sorted(out))


def om_statistics(circs: Sequence[SignedCircuit]) -> Dict[str, object]:
    """Vertex count, interior count, coplanarity class, dps — from circuits.

    An element fails to be a vertex iff some circuit puts it alone on one
    side (it is a convex combination of the rest); it is interior iff it
    is nonzero in every nonnegative cocircuit (it lies on no facet
    hyperplane).
    """
    nonvertex = set()
    for c in circs:
        if len(c.positive) == 1:
            nonvertex.add(c.positive[0])
        if len(c.negative) == 1:
            nonvertex.add(c.negative[0])
    nonneg = [
        x
        for x in cocircuits_from_circuits(circs)
        if all(v >= 0 for v in x)
    ]
    interior = [
        e for e in range(6) if all(x[e] for x in nonneg)
    ]
    sigs = {c.signature for c in circs}
    return {
        "nvertices": 6 - len(nonvertex),
        "ninterior": len(interior),
        "coplanarity": coplanarity_from_circuits(circs),
        "dps": not ({(2, 1), (2, 2)} & sigs),
    }


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class OMRecord:
    key: str
    circuits: Tuple[SignedCircuit, ...]  # canonical form, elements 0..5
    nvertices: int
    ninterior: int
    coplanarity: str
    dps: bool

    @property
    def n_circuits(self) -> int:
        return len(self.circuits)

    @property
    def uniform(self) -> bool:
        return all(len(c.support) == 5 for c in self.circuits)

    def statistics(self):
        return {
            "nvertices": self.nvertices,
            "ninterior": self.ninterior,
            "coplanarity": self.coplanarity,
            "dps": self.dps,
        }


@lru_cache(maxsize=1)
def enumerate_oms() -> Tuple[OMRecord, ...]:
    """All 55 oriented matroids, sorted by (circuit count, canonical form)."""
    by_dual = {}
    for lines, loops in _iter_duals():
        key = _canonical_dual(lines, loops)
        if key not in by_dual:
            circs = _dual_circuits(lines, loops)
            if circs is not None:
                by_dual[key] = circs
    canon = {}
    for circs in by_dual.values():
        form, _ = canonical_circuit_form(circs)
        if form not in canon:
            canon[form] = tuple(
                SignedCircuit(pos, neg) for pos, neg in form
            )
    records = []
    grouped: Dict[int, List] = {}
    for form in sorted(canon):
        circs = canon[form]
        grouped.setdefault(len(circs), []).append(circs)
    for n in sorted(grouped):
        for m, circs in enumerate(grouped[n], 1):
            stats = om_statistics(circs)
            records.append(
                OMRecord(
                    key=f"c{n}.{m:02d}",
                    circuits=circs,
                    nvertices=stats["nvertices"],
                    ninterior=stats["ninterior"],
                    coplanarity=stats["coplanarity"],
                    dps=stats["dps"],
                )
            )
    return tuple(records)


@lru_cache(maxsize=1)
def _catalog_index() -> Dict[Tuple, OMRecord]:
    return {
        tuple(c.key() for c in rec.circuits): rec for rec in enumerate_oms()
    }


def record_by_key(key: str) -> OMRecord:
    for rec in enumerate_oms():
        if rec.key == key:
            return rec
    raise KeyError(key)


def match_om(config: PointConfig) -> Tuple[OMRecord, Tuple[int, ...]]:
    """Catalog record of a 6-point configuration plus the relabeling.

    The permutation maps configuration indices to the record's canonical
    element labels.  Raises NoMatch if the circuits match no record,
    which would mean the catalog itself is incomplete.
    """
    circs = config_circuits(config)
    form, perm = canonical_circuit_form(circs)
    rec = _catalog_index().get(form)
    if rec is None:
        raise NoMatch(f"circuits {form} not in catalog")
    return rec, perm


def match_circuits(circs: Sequence[SignedCircuit]) -> Tuple[OMRecord, Tuple[int, ...]]:
    """match_om for an already-computed circuit list."""
    form, perm = canonical_circuit_form(circs)
    rec = _catalog_index().get(form)
    if rec is None:
        raise NoMatch(f"circuits {form} not in catalog")
    return rec, perm


def export_records() -> List[dict]:
    """JSON-ready catalog: circuits use 1-based element labels."""
    out = []
    for rec in enumerate_oms():
        out.append(
            {
                "key": rec.key,
                "n_circuits": rec.n_circuits,
                "circuits": [
                    {
                        "positive": [e + 1 for e in c.positive],
                        "negative": [e + 1 for e in c.negative],
                    }
                    for c in rec.circuits
                ],
                "nvertices": rec.nvertices,
                "ninterior": rec.ninterior,
                "coplanarity": rec.coplanarity,
                "dps": rec.dps,
                "uniform": rec.uniform,
            }
        )
    return out
