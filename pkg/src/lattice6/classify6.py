"""Regeneration of the size-6, width>1 classification from first principles.

The classification splits on the coplanarity pattern of the six points:

    A: five coplanar points         B/C: a (3,1)-circuit (opposite/same side)
    D/E: a (2,2)-circuit            F:   a (2,1)-circuit only
    G/H: no coplanarity             (one/two interior points)

Each ``run_case_*`` function enumerates the candidates of one branch by
bounded scans or embedding searches, rejects candidates with recorded
reasons, cross-checks the triangulation-emptiness size arguments against
direct lattice-point counts, and identifies the survivors against the
bundled tables.  ``classify_all`` runs every branch and re-verifies
global pairwise inequivalence.  All arithmetic is exact.
"""

import csv
import io
import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlinalg import IntVec3, det3, solve_affine, DegenerateSource
from .polytope import PointConfig, interior_points, size, size_exceeds
from .invariants import (
    C21,
    C22,
    C31,
    FIVE_COPLANAR,
    NO_COPLANARITY,
    circuits,
    coplanarity_class,
    is_dps,
    volume_vector6,
    width,
)
from .equivalence import are_equivalent, canonical_key
from .emptytetra import is_empty_tetrahedron
from .size5 import admissible_apex_31, catalog41
from .omcatalog import enumerate_oms, match_om
from .tablesdata import interior_count, load_tables

__all__ = [
    "BadParameters",
    "ClassificationError",
    "PolytopeClass",
    "CaseReport",
    "run_case_a",
    "run_case_b",
    "run_case_c",
    "run_case_d",
    "run_case_e",
    "run_case_f",
    "run_case_gh",
    "run_reports",
    "classify_all",
    "case_of",
    "width1_family",
    "no_octahedron_check",
    "export_json",
    "export_csv",
    "import_json",
]

#: Bound for the integer scans that replace figure-derived candidate lists.
SCAN_BOUND = 20


class BadParameters(ValueError):
    """Family parameters violate the family's constraints."""


class ClassificationError(RuntimeError):
    """An internal cross-check of the case analysis failed."""


@dataclass(frozen=True)
class PolytopeClass:
    """One equivalence class, annotated with the bundled table data.

    ``representative`` holds the table's points (volume_vector is computed
    from exactly that order); ``generated`` is the witness found by the
    case runner, equivalent to the representative but usually in different
    coordinates.
    """

    id: str
    om_label: str
    volume_vector: Tuple[int, ...]
    width: int
    functional: IntVec3
    representative: PointConfig
    dps: bool
    generated: Optional[PointConfig] = None

    @property
    def case(self) -> str:
        return self.id.split(".")[0]


@dataclass(frozen=True)
class CaseReport:
    case: str
    candidates_examined: int
    classes_found: Tuple[PolytopeClass, ...]
    rejected: Dict[str, int]
    notes: Tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# identification against the bundled tables


@lru_cache(maxsize=1)
def _row_key_index():
    index = {}
    for row in load_tables().class_rows:
        k = canonical_key(row.config())
        index.setdefault(k.vector, []).append(row)
    return index


def _match_row(config: PointConfig, key=None):
    """Table row equivalent to config; raises if there is none."""
    k = key if key is not None else canonical_key(config)
    rows = _row_key_index().get(k.vector, [])
    if len(rows) == 1 and not k.needs_confirmation:
        return rows[0]
    for row in rows:
        if are_equivalent(config, row.config()):
            return row
    raise ClassificationError("generated configuration matches no table row")


def _dedupe(configs: Sequence[PointConfig]) -> List[PointConfig]:
    """First-seen representatives up to equivalence.

    Canonical keys decide except for non-primitive volume vectors, where
    an explicit equivalence confirmation is required.
    """
    seen_sets = set()
    buckets: Dict[Tuple[int, ...], List[PointConfig]] = {}
    order: List[PointConfig] = []
    for cfg in configs:
        fs = frozenset(cfg.points)
        if fs in seen_sets:
            continue
        seen_sets.add(fs)
        k = canonical_key(cfg)
        bucket = buckets.setdefault(k.vector, [])
        if bucket:
            if not k.needs_confirmation:
                continue
            if any(are_equivalent(cfg, other) for other in bucket):
                continue
        bucket.append(cfg)
        order.append(cfg)
    return order


def _make_class(row, generated: PointConfig) -> PolytopeClass:
    rep = row.config()
    w, _ = width(generated)
    if w != row.width:
        raise ClassificationError(f"{row.id}: generated width {w} != table {row.width}")
    rec, _ = match_om(generated)
    if row.om_label not in load_tables().label_candidates(rec.key):
        raise ClassificationError(f"{row.id}: oriented matroid mismatch ({rec.key})")
    if is_dps(generated) != row.dps:
        raise ClassificationError(f"{row.id}: dps flag mismatch")
    return PolytopeClass(
        id=row.id,
        om_label=row.om_label,
        volume_vector=volume_vector6(rep),
        width=row.width,
        functional=row.functional,
        representative=rep,
        dps=row.dps,
        generated=generated,
    )


def _finish(case, examined, rejected, accepted, notes=()) -> CaseReport:
    classes = []
    for cfg in _dedupe(accepted):
        row = _match_row(cfg)
        if row.case != case:
            raise ClassificationError(f"case {case} produced table row {row.id}")
        classes.append(_make_class(row, cfg))
    classes.sort(key=lambda c: int(c.id.split(".")[1]))
    found = [c.id for c in classes]
    expected = [r.id for r in load_tables().class_rows if r.case == case]
    if found != expected:
        raise ClassificationError(f"case {case}: found {found}, expected {expected}")
    return CaseReport(case, examined, tuple(classes), dict(rejected), tuple(notes))


def _tetra(points: Sequence[IntVec3], quad: Sequence[int]) -> List[IntVec3]:
    return [points[i - 1] for i in quad]  # 1-based labels, as in the tables


def _empty(points, quad) -> bool:
    return is_empty_tetrahedron(_tetra(points, quad))


def _scan_box(bound: int = SCAN_BOUND):
    rng = range(-bound, bound + 1)
    return itertools.product(rng, rng)


# ---------------------------------------------------------------------------
# case A: five coplanar points


def run_case_a() -> CaseReport:
    """Five coplanar points plus one apex.

    Only three of the six 5-point polygons can support width > 1; for
    those the apex is forced (mod the plane) to (1,b,2) with b in {0,1}.
    A candidate dies exactly when some edge to the apex has an integer
    midpoint, i.e. a seventh lattice point.
    """
    shapes = {1: (0, 0), 2: (1, 1), 5: (0, -1)}  # polygon id -> (c, d)
    rejected: Counter = Counter()
    accepted = []
    examined = 0
    for _, (c, d) in sorted(shapes.items()):
        base = [(0, 0, 0), (1, c, 0), (0, 1, 0), (-1, d, 0), (0, 2, 0)]
        for p6 in ((1, 0, 2), (1, 1, 2)):
            examined += 1
            bad = next(
                (
                    i
                    for i, p in enumerate(base)
                    if all((p[t] + p6[t]) % 2 == 0 for t in range(3))
                ),
                None,
            )
            cfg = PointConfig(base + [p6])
            if bad is not None:
                if not size_exceeds(cfg, 6):
                    raise ClassificationError("integer midpoint but no extra point")
                rejected[f"midpoint of p{bad + 1}p6 is integer"] += 1
                continue
            if size(cfg) != 6:
                raise ClassificationError(f"case A candidate {p6} has extra points")
            accepted.append(cfg)
    return _finish("A", examined, rejected, accepted)


# ---------------------------------------------------------------------------
# case B: (3,1)-circuit, remaining points on opposite sides

_B_BASE = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (-1, -1, 0)]

#: printed id assignments, used as extra cross-checks
_B_IDS = {
    ("i", 1, 4): "B.1", ("i", 0, 3): "B.2", ("i", 1, 2): "B.3",
    ("i", 1, 3): "B.4", ("i", 1, 5): "B.5", ("i", 1, 6): "B.6",
    ("i", 0, 2): "B.7", ("i", 0, 1): "B.8", ("i", 1, 1): "B.9",
    ("i", 0, 0): "B.10",
    ("ii", 1, 8): "B.11", ("ii", 1, 2): "B.12", ("ii", 1, 5): "B.13",
    ("iii", -1, 1): "B.14", ("iii", -1, -2): "B.15",
}

#: triangulation tetrahedra (beyond the two 5-point subpolytopes) per survivor
_B_TETRAS = {
    ("ii", 1, 2): (), ("ii", 1, 5): ((2, 3, 5, 6),), ("ii", 2, 7): ((2, 3, 5, 6),),
    ("ii", 1, 8): ((2, 3, 5, 6), (3, 4, 5, 6)),
    ("ii", 2, 13): ((2, 3, 5, 6), (3, 4, 5, 6)),
    ("iii", -1, -2): (), ("iii", -1, 1): ((2, 3, 5, 6), (3, 4, 5, 6)),
}


def _in_b_region(x2, y2) -> bool:
    # the cone 0 <= x <= y clipped by x < 1 and y < 3x + 2, in half-units
    return 0 <= x2 <= y2 and x2 < 2 and y2 < 3 * x2 + 4


def run_case_b() -> CaseReport:
    """(3,1)-circuit with p5, p6 on opposite sides of its plane.

    Both off-plane points sit at lattice distance 1 or 3, giving three
    subcases (1,1), (1,3) and (3,3).  Each scans the apex over a box and
    keeps candidates whose edge p5p6 crosses the circuit plane inside the
    printed region; distance-3 apexes must also satisfy the residue
    condition a = -b = +-1 (mod 3) and a primitivity constraint.
    """
    rejected: Counter = Counter()
    accepted = []
    notes = []
    examined = 0
    ids = {}

    # subcase (1,1): p5 = (0,0,1), p6 = (a,b,-1); midpoint (a/2, b/2)
    raw = 0
    for a, b in _scan_box():
        examined += 1
        if not _in_b_region(a, b):
            rejected["intersection point outside the normalized region"] += 1
            continue
        raw += 1
        cfg = PointConfig(_B_BASE + [(0, 0, 1), (a, b, -1)])
        if size(cfg) != 6:
            raise ClassificationError(f"B.i candidate {(a, b)} has extra points")
        accepted.append(cfg)
        ids[cfg] = _B_IDS.get(("i", a, b))
    notes.append(f"subcase (1,1): {raw} raw candidates (printed list has 10)")

    # subcase (1,3): p5 = (0,0,1), p6 = (a,b,-3); intersection (a/4, b/4)
    raw = 0
    for a, b in _scan_box():
        examined += 1
        if not (0 <= a <= b and a < 4 and b < 3 * a + 8):
            rejected["intersection point outside the normalized region"] += 1
            continue
        raw += 1
        if not admissible_apex_31(a, b):
            rejected["apex residues are not +-1 mod 3"] += 1
            continue
        if gcd(gcd(a, b), 4) != 1:
            rejected["edge p5p6 is not primitive"] += 1
            continue
        cfg = PointConfig(_B_BASE + [(0, 0, 1), (a, b, -3)])
        tetras = _B_TETRAS.get(("ii", a, b))
        ok = size(cfg) == 6
        if tetras is not None and ok != all(_empty(cfg.points, t) for t in tetras):
            raise ClassificationError(f"B.ii triangulation check failed at {(a, b)}")
        if not ok:
            rejected["a triangulation tetrahedron is not empty"] += 1
            continue
        accepted.append(cfg)
        ids[cfg] = _B_IDS.get(("ii", a, b))
    notes.append(f"subcase (1,3): {raw} raw candidates (printed list has 44)")

    # subcase (3,3): p5 = (1,2,3), p6 = (a,b,-3); crossing ((a+1)/2, (b+2)/2)
    raw = 0
    for a, b in _scan_box():
        examined += 1
        ap, bp = a + 1, b + 2
        in1 = 0 <= ap < 2 and 0 <= bp < 3 * ap + 4
        in2 = 0 <= bp < 2 and 0 <= ap < 3 * bp + 4
        if not (in1 or in2):
            rejected["intersection point outside the normalized region"] += 1
            continue
        raw += 1
        if not admissible_apex_31(a, b):
            rejected["apex residues are not +-1 mod 3"] += 1
            continue
        if gcd(gcd(a - 1, b - 2), 6) % 3 == 0:
            rejected["edge p5p6 has lattice points at heights +-1"] += 1
            continue
        cfg = PointConfig(_B_BASE + [(1, 2, 3), (a, b, -3)])
        tetras = _B_TETRAS.get(("iii", a, b))
        ok = size(cfg) == 6
        if tetras is not None and ok != all(_empty(cfg.points, t) for t in tetras):
            raise ClassificationError(f"B.iii triangulation check failed at {(a, b)}")
        if not ok:
            rejected["a triangulation tetrahedron is not empty"] += 1
            continue
        accepted.append(cfg)
        ids[cfg] = _B_IDS.get(("iii", a, b))
    notes.append(f"subcase (3,3): {raw} raw candidates (printed list has 18)")

    report = _finish("B", examined, rejected, accepted, notes)
    for cls in report.classes_found:  # printed id table must agree
        if ids.get(cls.generated) != cls.id:
            raise ClassificationError(f"printed id table disagrees for {cls.id}")
    return report


# ---------------------------------------------------------------------------
# case C: (3,1)-circuit, remaining points on the same side


def run_case_c() -> CaseReport:
    """(3,1)-circuit with p5, p6 on the same side (p5 no higher than p6).

    Three subcases: p5 on an edge p_ip6 (four explicit candidates), p5
    interior to the tetrahedron T1236 (a (4,1)-extension search), and
    both p5, p6 vertices (a bounded plane scan at height 1).
    """
    rejected: Counter = Counter()
    accepted = []
    examined = 0
    bundle = load_tables()

    # p5 along an edge: p6 = 2 p5 - p2 or 2 p5 - p1, p5 at height 1 or 3
    edge_candidates = (
        ((0, 0, 1), (-1, 0, 2), ((3, 4, 5, 6),)),
        ((1, 2, 3), (1, 4, 6), ((3, 4, 5, 6),)),
        ((0, 0, 1), (0, 0, 2), ((2, 3, 5, 6), (2, 4, 5, 6), (3, 4, 5, 6))),
        ((1, 2, 3), (2, 4, 6), ((2, 3, 5, 6), (2, 4, 5, 6), (3, 4, 5, 6))),
    )
    for p5, p6, tetras in edge_candidates:
        examined += 1
        cfg = PointConfig(_B_BASE + [p5, p6])
        failing = [t for t in tetras if not _empty(cfg.points, t)]
        if (size(cfg) == 6) != (not failing):
            raise ClassificationError(f"C edge triangulation check failed at {p6}")
        if failing:
            label = "".join(str(i) for i in failing[0])
            rejected[f"T{label} is not empty"] += 1
            continue
        accepted.append(cfg)

    # p5 interior: remove p4 and embed the rest as a size-5 signature-(4,1)
    # polytope, with p5 in the interior-point role and p4 = 3 p1 - p2 - p3
    key54 = bundle.key_candidates("5.4")
    if len(key54) != 1:
        raise ClassificationError("cell 5.4 is not pinned uniquely")
    for cls5 in catalog41():
        pts = cls5.representative.points
        p5 = pts[0]
        for p1, p2, p3, p6 in itertools.permutations(pts[1:]):
            examined += 1
            p4 = tuple(3 * p1[t] - p2[t] - p3[t] for t in range(3))
            points = [p1, p2, p3, p4, p5, p6]
            if len(set(points)) != 6:
                rejected["degenerate embedding"] += 1
                continue
            cfg = PointConfig(points)
            rec, _ = match_om(cfg)
            if rec.key != key54[0]:
                rejected["oriented matroid is not 5.4"] += 1
                continue
            vol = abs(det3(*(tuple(q[t] - p1[t] for t in range(3)) for q in (p2, p3, p5))))
            if vol not in (1, 3):
                rejected["subtetrahedron p1p2p3p5 volume is not 1 or 3"] += 1
                continue
            ok = _empty(points, (1, 2, 4, 6)) and _empty(points, (1, 3, 4, 6))
            if ok != (size(cfg) == 6):
                raise ClassificationError("C interior triangulation check failed")
            if not ok:
                rejected["a triangulation tetrahedron is not empty"] += 1
                continue
            accepted.append(cfg)

    # both vertices: p6 = (1,2,3) at distance 3, p5 = (a,b,1) at distance 1
    survivors = []
    for a, b in itertools.product(range(1, SCAN_BOUND + 1), repeat=2):
        examined += 1
        cfg = PointConfig(_B_BASE + [(a, b, 1), (1, 2, 3)])
        if size_exceeds(cfg, 6):
            rejected["extra lattice points in the convex hull"] += 1
            continue
        survivors.append((a, b))
        if not _empty(cfg.points, (2, 3, 5, 6)):
            raise ClassificationError("C vertices triangulation check failed")
        accepted.append(cfg)
    if survivors != [(1, 1)]:
        raise ClassificationError(f"C vertices subcase found {survivors}")

    return _finish("C", examined, rejected, accepted)


# ---------------------------------------------------------------------------
# case D: (2,2)-circuit, remaining points on opposite sides

_D_BASE = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]


def run_case_d() -> CaseReport:
    """(2,2)-circuit with p5 = (0,0,1) and p6 = (a,b,-1) on opposite sides.

    The midpoint (a/2, b/2) is normalized into the cone 1/2 <= x <= y with
    the strip condition x < 1 or y < x + 1; apexes with a in {1, 2} give
    width one, and the survivor (3,3) re-routes to case B via its
    (3,1)-circuit.
    """
    rejected: Counter = Counter()
    accepted = []
    examined = 0
    survivors = []
    for a, b in _scan_box():
        examined += 1
        if not (1 <= a <= b and (a < 2 or b < a + 2)):
            rejected["intersection point outside the normalized region"] += 1
            continue
        cfg = PointConfig(_D_BASE + [(0, 0, 1), (a, b, -1)])
        if a in (1, 2):
            if width(cfg)[0] != 1:
                raise ClassificationError(f"D candidate {(a, b)} should be width one")
            rejected["width one (functional x+z)"] += 1
            continue
        if size_exceeds(cfg, 6):
            rejected["extra lattice points in the convex hull"] += 1
            continue
        survivors.append((a, b))
        if coplanarity_class(cfg) == C31:
            if (a, b) != (3, 3):
                raise ClassificationError(f"unexpected (3,1)-circuit at {(a, b)}")
            rejected["contains a (3,1) circuit"] += 1
            continue
        accepted.append(cfg)
    if survivors != [(3, 3), (3, 4), (4, 5)]:
        raise ClassificationError(f"D survivors {survivors}")
    return _finish("D", examined, rejected, accepted)


# ---------------------------------------------------------------------------
# case E: (2,2)-circuit, remaining points on the same side


def run_case_e() -> CaseReport:
    """(2,2)-circuit with both extra points above its plane.

    Here p5 must be the interior point of the size-5 signature-(4,1)
    polytope on {p1, p2, p3, p5, p6}, and p4 = p2 + p3 - p1 completes the
    unit parallelogram.  All 8 x 4! embeddings are tried; survivors carry
    the oriented matroid 5.5, whose relabeling symmetry (12)(34) is
    absorbed by the label-free deduplication.
    """
    rejected: Counter = Counter()
    accepted = []
    examined = 0
    key55 = load_tables().key_candidates("5.5")
    if len(key55) != 1:
        raise ClassificationError("cell 5.5 is not pinned uniquely")
    for cls5 in catalog41():
        pts = cls5.representative.points
        p5 = pts[0]
        for p1, p2, p3, p6 in itertools.permutations(pts[1:]):
            examined += 1
            p4 = tuple(p2[t] + p3[t] - p1[t] for t in range(3))
            points = [p1, p2, p3, p4, p5, p6]
            if len(set(points)) != 6:
                rejected["degenerate embedding"] += 1
                continue
            cfg = PointConfig(points)
            rec, _ = match_om(cfg)
            if rec.key != key55[0]:
                rejected["oriented matroid is not 5.5"] += 1
                continue
            ok = _empty(points, (2, 3, 4, 6))
            if ok != (size(cfg) == 6):
                raise ClassificationError("E triangulation check failed")
            if not ok:
                rejected["tetrahedron p2p3p4p6 is not empty"] += 1
                continue
            accepted.append(cfg)
    return _finish("E", examined, rejected, accepted)


# ---------------------------------------------------------------------------
# case F: (2,1)-circuit, no other coplanarity


def run_case_f() -> CaseReport:
    """Extend a segment of a signature-(4,1) polytope: r3 = 2 r2 - r1.

    Ordered point pairs (r1, r2) of each of the eight base polytopes fall
    into three oriented-matroid groups: r1 interior (4.21), r2 interior
    (4.22), both vertices (4.11).  Survivors keep size 6 and have the
    (2,1)-circuit as their only coplanarity.
    """
    rejected: Counter = Counter()
    groups: Dict[str, List[PointConfig]] = {"4.21": [], "4.22": [], "4.11": []}
    examined = 0
    for cls5 in catalog41():
        pts = cls5.representative.points
        for i, j in itertools.permutations(range(5), 2):
            examined += 1
            r1, r2 = pts[i], pts[j]
            r3 = tuple(2 * r2[t] - r1[t] for t in range(3))
            if r3 in pts:
                rejected["degenerate extension"] += 1
                continue
            cfg = PointConfig(list(pts) + [r3])
            if size_exceeds(cfg, 6):
                rejected["extra lattice points in the convex hull"] += 1
                continue
            if coplanarity_class(cfg) != C21:
                rejected["additional coplanarity"] += 1
                continue
            group = "4.21" if i == 0 else ("4.22" if j == 0 else "4.11")
            _check_f_triangulation(pts, i, j, cfg, group)
            groups[group].append(cfg)
    counts = tuple(len(_dedupe(groups[g])) for g in ("4.21", "4.22", "4.11"))
    if counts != (6, 6, 5):
        raise ClassificationError(f"F group counts {counts}")
    accepted = groups["4.21"] + groups["4.22"] + groups["4.11"]
    report = _finish("F", examined, rejected, accepted)
    for cls in report.classes_found:
        circs = [c for c in circuits(cls.generated) if c.signature == (2, 1)]
        if len(circs) != 1:
            raise ClassificationError(f"{cls.id}: expected exactly one (2,1)-circuit")
    return report


def _check_f_triangulation(pts, i, j, cfg, group):
    """Size 6 must coincide with emptiness of the group's triangulation."""
    others = [pts[k] for k in range(1, 5) if k not in (i, j)]
    r2, r3 = pts[j], cfg.points[5]
    if group == "4.21":
        tetras = [[v, w, r2, r3] for v, w in itertools.combinations(others, 2)]
    elif group == "4.22":
        tetras = [others + [r3]]
    else:
        tetras = [[others[0], others[1], r2, r3]]
    ok = all(is_empty_tetrahedron(t) for t in tetras)
    if ok != (size(cfg) == 6):
        raise ClassificationError(f"F triangulation check failed in group {group}")


# ---------------------------------------------------------------------------
# cases G and H: no coplanarity, glued from two signature-(4,1) polytopes


def _two_side(circ):
    if len(circ.positive) == 2:
        return circ.positive
    if len(circ.negative) == 2:
        return circ.negative
    return None


def run_case_gh() -> Tuple[CaseReport, CaseReport]:
    """Glue two signature-(4,1) polytopes along empty subtetrahedra.

    Every ordered pair of the eight base polytopes, every choice of
    subtetrahedron (the interior point plus three of the four vertices)
    in each, and every vertex matching of the two subtetrahedra is tried;
    a matching survives when the solved affine map is integral and
    unimodular.  The union is six points; coinciding interior points give
    one interior point (case G), otherwise two (case H).  Acceptance is
    by triangulation emptiness, cross-checked against direct size.
    """
    rejected: Counter = Counter()
    g_accepted: List[PointConfig] = []
    h_accepted: List[PointConfig] = []
    g_rejected: Counter = Counter()
    h_rejected: Counter = Counter()
    examined = 0
    reps = [cls5.representative.points for cls5 in catalog41()]
    subsets = [(ex, [0] + [v for v in range(1, 5) if v != ex]) for ex in range(1, 5)]
    for rpts in reps:
        for spts in reps:
            for ex_r, keep_r in subsets:
                sub_r = [rpts[v] for v in keep_r]
                for ex_s, keep_s in subsets:
                    sub_s = [spts[v] for v in keep_s]
                    for sigma in itertools.permutations(range(4)):
                        examined += 1
                        dst = [sub_s[sigma[t]] for t in range(4)]
                        try:
                            phi = solve_affine(sub_r, dst)
                        except DegenerateSource:  # pragma: no cover
                            continue
                        if phi.det not in (1, -1) or not phi.is_integer():
                            rejected["identification is not integral unimodular"] += 1
                            continue
                        m = phi.to_integer_map()
                        new_pt = m.apply(rpts[ex_r])
                        if new_pt in spts:
                            rejected["gluing yields fewer than six points"] += 1
                            continue
                        cfg = PointConfig(list(spts) + [new_pt])
                        if coplanarity_class(cfg) != NO_COPLANARITY:
                            rejected["coplanarity present"] += 1
                            continue
                        inner = set(interior_points(cfg))
                        glued_interior = m.apply(rpts[0])
                        if inner == {spts[0]}:
                            _glue_g(cfg, ex_s, g_accepted, g_rejected)
                        elif inner == {spts[0], glued_interior}:
                            _glue_h(cfg, cfg.points.index(glued_interior), ex_s,
                                    h_accepted, h_rejected)
                        else:
                            rejected["a base vertex stopped being a vertex"] += 1
    shared = dict(rejected)
    note = "candidate enumeration shared with the other gluing case"
    for counter in (g_rejected, h_rejected):
        for reason, n in shared.items():
            counter[reason] += n
    report_g = _finish("G", examined, g_rejected, g_accepted, (note,))
    report_h = _finish("H", examined, h_rejected, h_accepted, (note,))
    return report_g, report_h


def _glue_g(cfg: PointConfig, ex_s: int, accepted, rejected):
    """One shared interior point: the hull is the base polytope plus one
    tetrahedron on the quadrilateral facet swept by the new point."""
    extras = {ex_s, 5}  # deleting either leaves a signature-(4,1) subpolytope
    pair = None
    for c in circuits(cfg):
        if c.signature != (3, 2):
            continue
        two = set(_two_side(c))
        if 0 in two:  # the interior point is cfg.points[0] here
            continue
        if pair is None:
            pair = two
        elif pair != two:
            raise ClassificationError("ambiguous circuit structure in case G")
    if pair is None or len(pair - extras) != 1:
        raise ClassificationError("no usable circuit in case G")
    skip = {0} | (pair - extras)
    cut = [cfg.points[k] for k in range(6) if k not in skip]
    ok = is_empty_tetrahedron(cut)
    if ok != (size(cfg) == 6):
        raise ClassificationError("G triangulation check failed")
    if not ok:
        rejected["cut tetrahedron is not empty"] += 1
        return
    accepted.append(cfg)


def _glue_h(cfg: PointConfig, int_idx: int, ex_s: int, accepted, rejected):
    """Two interior points: the hull decomposes into one glued copy plus
    five tetrahedra over the new point's edge to the base interior point.

    Point roles are read off the two three-to-two circuits: the edge
    {base interior, new point} is one circuit's two-point side, and its
    three-point side contains the other interior point, the spare base
    vertex, and one further vertex; the remaining vertex is the last role.
    """
    circs = [c for c in circuits(cfg) if c.signature == (3, 2)]
    edge = [c for c in circs if set(_two_side(c)) == {0, 5}]
    if len(edge) != 1:
        raise ClassificationError("ambiguous circuit structure in case H")
    three = set(edge[0].support) - {0, 5}
    rest = three - {int_idx, ex_s}
    if len(rest) != 1 or not three >= {int_idx, ex_s}:
        raise ClassificationError("unexpected circuit support in case H")
    across = rest.pop()
    last = (set(range(6)) - {0, 5, int_idx, ex_s, across}).pop()
    if not any(set(_two_side(c)) == {int_idx, ex_s} for c in circs):
        raise ClassificationError("missing counterpart circuit in case H")
    quads = (
        (int_idx, across, 5, ex_s),
        (int_idx, last, 5, ex_s),
        (int_idx, 0, 5, ex_s),
        (across, 0, 5, ex_s),
        (last, 0, 5, ex_s),
    )
    ok = all(
        is_empty_tetrahedron([cfg.points[k] for k in quad]) for quad in quads
    )
    if ok != (size(cfg) == 6):
        raise ClassificationError("H triangulation check failed")
    if not ok:
        rejected["a triangulation tetrahedron is not empty"] += 1
        return
    accepted.append(cfg)


# ---------------------------------------------------------------------------
# assembly and global verification

_RUNNERS = (
    run_case_a,
    run_case_b,
    run_case_c,
    run_case_d,
    run_case_e,
    run_case_f,
    run_case_gh,
)


def run_reports(jobs: Optional[int] = None) -> List[CaseReport]:
    """All eight case reports, in case order; runners are independent."""
    if jobs is None or jobs <= 1:
        results = [runner() for runner in _RUNNERS]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(_RUNNERS))) as pool:
            futures = [pool.submit(runner) for runner in _RUNNERS]
            results = [f.result() for f in futures]
    reports: List[CaseReport] = []
    for res in results:
        reports.extend(res if isinstance(res, tuple) else (res,))
    return reports


def classify_all(jobs: Optional[int] = None) -> Tuple[CaseReport, ...]:
    """Run every case and re-verify the assembled classification.

    Checks that the 76 classes come out in table order, that every
    generated witness is equivalent to its table representative, and that
    classes sharing a canonical key (possible only for non-primitive
    volume vectors) are pairwise inequivalent.
    """
    reports = tuple(run_reports(jobs))
    classes = [c for r in reports for c in r.classes_found]
    rows = load_tables().class_rows
    if [c.id for c in classes] != [row.id for row in rows]:
        raise ClassificationError("assembled classification does not match tables")
    for cls in classes:
        if cls.generated is None or not are_equivalent(
            cls.generated, cls.representative
        ):
            raise ClassificationError(f"{cls.id}: witness is not equivalent")
    for bucket in _row_key_index().values():
        for r1, r2 in itertools.combinations(bucket, 2):
            if are_equivalent(r1.config(), r2.config()):
                raise ClassificationError(f"{r1.id} and {r2.id} coincide")
    return reports


def case_of(config: PointConfig) -> str:
    """Case letter A-H from the coplanarity pattern of six points."""
    cls = coplanarity_class(config)
    if cls == FIVE_COPLANAR:
        return "A"
    if cls in (C31, C22):
        sig = (3, 1) if cls == C31 else (2, 2)
        opposite = False
        for circ in circuits(config):
            if circ.signature != sig:
                continue
            others = [i for i in range(6) if i not in circ.support]
            base, u, v = (config.points[i] for i in circ.support[:3])
            du = tuple(u[t] - base[t] for t in range(3))
            dv = tuple(v[t] - base[t] for t in range(3))
            h = [
                det3(du, dv, tuple(config.points[i][t] - base[t] for t in range(3)))
                for i in others
            ]
            if h[0] * h[1] < 0:
                opposite = True
        if cls == C31:
            return "B" if opposite else "C"
        return "D" if opposite else "E"
    if cls == C21:
        return "F"
    return "G" if interior_count(config) == 1 else "H"


def identify(config: PointConfig) -> Optional[str]:
    """Table id of a configuration, or None when out of classification."""
    if size(config) != 6 or width(config)[0] < 2:
        return None
    try:
        return _match_row(config).id
    except ClassificationError:
        return None


# ---------------------------------------------------------------------------
# width-one companions

def _w42_top(name, a, b):
    """Second height-one apex of a two-point prism top; first is (0,0)."""
    lo = 0 if name == "(4,2)/4.1" else 1
    if not (lo <= b < a):
        raise BadParameters(f"{name}: need {lo} <= b < a")
    if gcd(a, b) != 1:
        raise BadParameters(f"{name}: parameters must be coprime")
    if name == "(4,2)/5.6" and 2 * b == a:
        raise BadParameters(f"{name}: 2b = a is excluded")
    return (b, a) if name == "(4,2)/4.9" else (a, b)


def _w33_top(name, params):
    """Height-one triangle of a three-plus-three configuration."""
    if name == "(3,3)/2.1":
        (a, b) = params
        if not (0 <= b < a) or gcd(a, b) != 1:
            raise BadParameters(f"{name}: need 0 <= b < a coprime")
        return ((0, 0), (b, a), (-b, -a))
    if name == "(3,3)/4.15":
        (a, b) = params
        if not (0 < b <= a) or gcd(a, b) != 1:
            raise BadParameters(f"{name}: need 0 < b <= a coprime")
        return ((0, 0), (a, b), (-a, -b))
    if name == "(3,3)/5.8":
        (a,) = params
        if a <= 1:
            raise BadParameters(f"{name}: need a > 1")
        return ((0, 0), (0, 1), (1, a))
    if name == "(3,3)/5.15":
        (a,) = params
        if a <= 3:
            raise BadParameters(f"{name}: need a > 3")
        return ((0, 0), (0, 1), (-1, a))
    a, b, c, d = params
    if a * d - b * c not in (1, -1):
        raise BadParameters(f"{name}: ad - bc must be +-1")
    if min(a, b, c, d) <= 0 or c + d <= a + b:
        raise BadParameters(f"{name}: need a,b,c,d > 0 and c + d > a + b")
    return ((0, 0), (a, b), (c, d))


@lru_cache(maxsize=1)
def _family_rows():
    fams = load_tables().width1_families
    singles = {f"{r['table']}/{r['om_label']}": r for r in fams["singles"]}
    families = {r["family_id"]: r for r in fams["families"]}
    return singles, families


def width1_family(name: str, params: Sequence[int] = ()) -> PointConfig:
    """Construct a width-one representative from its family name.

    Families are keyed "(shape)/om"; parameterless entries reject params.
    Raises BadParameters for unknown names, wrong arity, or parameter
    values outside the family's constraints.
    """
    singles, families = _family_rows()
    params = tuple(int(x) for x in params)
    if name in singles:
        if params:
            raise BadParameters(f"{name} takes no parameters")
        points = [tuple(p) for p in singles[name]["points"]]
    elif name in families:
        row = families[name]
        if len(params) != row["n_params"]:
            raise BadParameters(f"{name} takes {row['n_params']} parameters")
        base = [tuple(p) for p in row["p0"]]
        if row["table"] == "(4,2)":
            tops = [(0, 0), _w42_top(name, *params)]
        else:
            tops = list(_w33_top(name, params))
        points = [(x, y, 0) for x, y in base] + [(x, y, 1) for x, y in tops]
    else:
        raise BadParameters(f"unknown width-one family {name!r}")
    cfg = PointConfig(points)
    if size(cfg) != 6 or width(cfg)[0] != 1:
        raise ClassificationError(f"{name}{params}: construction check failed")
    return cfg


# ---------------------------------------------------------------------------
# octahedral exclusion


@lru_cache(maxsize=1)
def _v6i0_keys():
    """(octahedral key, hexagonal-family key): the two uniform vertex-only
    oriented matroids, told apart by which one the width-one prisms hit."""
    hex_key = match_om(width1_family("(3,3)/6.4", (1, 1, 2, 3)))[0].key
    rest = [
        r.key
        for r in enumerate_oms()
        if r.uniform and r.nvertices == 6 and r.ninterior == 0 and r.key != hex_key
    ]
    if len(rest) != 1:
        raise ClassificationError("vertex-only uniform cell is not a pair")
    return rest[0], hex_key


def _parallel(u, v):
    return u[0] * v[1] == u[1] * v[0]


def no_octahedron_check(bound: int) -> bool:
    """True when no width-one six-point configuration is octahedral.

    A width-one octahedral configuration would split three-and-three
    across two consecutive levels, with both triangles empty; modulo
    normalization the bottom triangle is unit and the top one is spanned
    by a unimodular pair scanned over [-bound, bound]^2.  Any hit on the
    octahedral oriented matroid disproves the claim.
    """
    if bound < 2:
        raise BadParameters("bound must be at least 2")
    octa_key, _ = _v6i0_keys()
    base = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    tri_dirs = ((1, 0), (0, 1), (1, -1))
    for q1 in _scan_box(bound):
        for q2 in _scan_box(bound):
            det = q1[0] * q2[1] - q1[1] * q2[0]
            if det not in (1, -1):
                continue
            d12 = (q1[0] - q2[0], q1[1] - q2[1])
            if any(
                _parallel(d, t) for d in (q1, q2, d12) for t in tri_dirs
            ):
                continue  # a prism edge pair forces coplanarity
            cfg = PointConfig(base + [(q1[0], q1[1], 1), (q2[0], q2[1], 1)])
            if size_exceeds(cfg, 6):
                continue
            if coplanarity_class(cfg) != NO_COPLANARITY:
                continue
            if match_om(cfg)[0].key == octa_key:
                return False
    return True


# ---------------------------------------------------------------------------
# serialization

_CSV_COLUMNS = (
    "id",
    "om_label",
    "volume_vector",
    "width",
    "functional",
    "representative",
    "dps",
)


def export_json(classes: Sequence[PolytopeClass]) -> str:
    payload = [
        {
            "id": c.id,
            "om_label": c.om_label,
            "volume_vector": list(c.volume_vector),
            "width": c.width,
            "functional": list(c.functional),
            "representative": [list(p) for p in c.representative.points],
            "dps": c.dps,
        }
        for c in classes
    ]
    return json.dumps(payload, indent=2) + "\n"


def import_json(text: str) -> List[PolytopeClass]:
    classes = []
    for row in json.loads(text):
        classes.append(
            PolytopeClass(
                id=row["id"],
                om_label=row["om_label"],
                volume_vector=tuple(row["volume_vector"]),
                width=row["width"],
                functional=tuple(row["functional"]),
                representative=PointConfig([tuple(p) for p in row["representative"]]),
                dps=row["dps"],
            )
        )
    return classes


def export_csv(classes: Sequence[PolytopeClass]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(_CSV_COLUMNS)
    for c in classes:
        writer.writerow(
            [
                c.id,
                c.om_label,
                " ".join(map(str, c.volume_vector)),
                c.width,
                " ".join(map(str, c.functional)),
                "; ".join(",".join(map(str, p)) for p in c.representative.points),
                int(c.dps),
            ]
        )
    return buf.getvalue()
