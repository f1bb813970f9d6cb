"""The case-by-case classification drivers and their reports."""

import json

import pytest

from lattice6.classify6 import (
    BadParameters,
    case_of,
    export_csv,
    export_json,
    identify,
    import_json,
    no_octahedron_check,
    width1_family,
)
from lattice6.invariants import is_dps, volume_vector6, width
from lattice6.polytope import PointConfig, interior_points, size, vertices
from lattice6.size5 import rep22

EXPECTED_COUNTS = {"A": 2, "B": 15, "C": 6, "D": 2, "E": 2, "F": 17, "G": 20, "H": 12}
EXPECTED_EXAMINED = {"A": 6, "B": 5043, "C": 596, "D": 1681, "E": 192,
                     "F": 160, "G": 24576, "H": 24576}


def by_case(case_reports):
    reports, _ = case_reports
    return {r.case: r for r in reports}


def test_case_order_and_counts(case_reports):
    reports, _ = case_reports
    assert [r.case for r in reports] == list("ABCDEFGH")
    for r in reports:
        assert len(r.classes_found) == EXPECTED_COUNTS[r.case], r.case
        assert r.candidates_examined == EXPECTED_EXAMINED[r.case], r.case


def test_found_ids_match_table(case_reports, bundle):
    table_ids = {row.case: [] for row in bundle.class_rows}
    for row in bundle.class_rows:
        table_ids[row.case].append(row.id)
    for case, r in by_case(case_reports).items():
        assert [c.id for c in r.classes_found] == table_ids[case]


def test_classes_carry_table_data(case_reports, bundle):
    for r in by_case(case_reports).values():
        for cls in r.classes_found:
            row = bundle.class_by_id(cls.id)
            assert cls.om_label == row.om_label
            # the class carries the vector as computed from its representative,
            # which matches the printed one up to overall orientation sign
            assert cls.volume_vector in (
                row.volume_vector, tuple(-x for x in row.volume_vector))
            assert cls.volume_vector == volume_vector6(cls.representative)
            assert cls.width == row.width
            assert cls.functional == row.functional
            assert cls.dps == row.dps
            assert cls.generated is not None
            assert size(cls.generated) == 6


def test_named_rejection_reasons(case_reports):
    r = by_case(case_reports)
    assert r["A"].rejected["midpoint of p2p6 is integer"] == 3
    assert r["A"].rejected["midpoint of p4p6 is integer"] == 1
    assert r["C"].rejected["T3456 is not empty"] >= 1
    assert r["D"].rejected["contains a (3,1) circuit"] == 1
    assert r["D"].rejected["width one (functional x+z)"] == 22
    assert r["B"].rejected["edge p5p6 is not primitive"] == 2
    assert r["G"].rejected["cut tetrahedron is not empty"] == 126
    assert r["H"].rejected["identification is not integral unimodular"] == 20844


def test_case_b_notes_record_raw_candidate_counts(case_reports):
    notes = by_case(case_reports)["B"].notes
    assert any("subcase (1,1): 10 raw candidates" in n for n in notes)
    assert any("subcase (1,3): 44 raw candidates" in n for n in notes)
    assert any("subcase (3,3): 18 raw candidates" in n for n in notes)


def test_gluing_cases_share_enumeration(case_reports):
    r = by_case(case_reports)
    assert r["G"].candidates_examined == r["H"].candidates_examined
    shared = "candidate enumeration shared with the other gluing case"
    assert shared in r["G"].notes and shared in r["H"].notes
    for reason in ("gluing yields fewer than six points", "coplanarity present",
                   "identification is not integral unimodular"):
        assert r["G"].rejected[reason] == r["H"].rejected[reason]


def test_case_f_splits_by_catalog_label(case_reports):
    found = by_case(case_reports)["F"].classes_found
    groups = {}
    for cls in found:
        groups.setdefault(cls.om_label, 0)
        groups[cls.om_label] += 1
    assert sorted(groups.values(), reverse=True) == [6, 6, 5]


def test_case_of_matches_table(bundle):
    for row in bundle.class_rows:
        assert case_of(row.config()) == row.case, row.id


def test_identify(bundle):
    assert identify(bundle.class_by_id("A.1").config()) == "A.1"
    assert identify(bundle.class_by_id("H.12").config()) == "H.12"
    # width one: outside the classification
    assert identify(width1_family("(3,3)/6.4", (1, 1, 2, 3))) is None
    assert identify(rep22()) is None


def test_identify_generated_configs(case_reports, bundle):
    for r in by_case(case_reports).values():
        for cls in r.classes_found:
            assert identify(cls.generated) == cls.id


def test_width1_family_members():
    c = width1_family("(3,3)/6.4", (1, 1, 2, 3))
    assert size(c) == 6
    assert width(c)[0] == 1
    c = width1_family("(4,2)/5.6", (3, 1))
    assert size(c) == 6 and width(c)[0] == 1 and is_dps(c)
    c = width1_family("(5,1)/3.2")
    assert size(c) == 6 and width(c)[0] == 1


def test_width1_family_all_members(bundle):
    singles = [f"{s['table']}/{s['om_label']}" for s in bundle.width1_families["singles"]]
    assert len(singles) == 17
    for name in singles:
        c = width1_family(name)
        assert size(c) == 6 and width(c)[0] == 1, name
    samples = {
        "(4,2)/4.1": [(1, 0), (2, 1)],
        "(4,2)/5.6": [(3, 1), (3, 2)],
        "(4,2)/5.8": [(2, 1), (3, 1)],
        "(4,2)/4.15": [(2, 1), (3, 2)],
        "(4,2)/4.9": [(2, 1), (3, 2)],
        "(3,3)/2.1": [(1, 0), (3, 1)],
        "(3,3)/4.15": [(1, 1), (2, 1)],
        "(3,3)/5.8": [(2,), (5,)],
        "(3,3)/5.15": [(4,), (6,)],
        "(3,3)/6.4": [(1, 1, 2, 3), (1, 2, 1, 3)],
    }
    family_ids = [f["family_id"] for f in bundle.width1_families["families"]]
    assert sorted(samples) == sorted(family_ids)
    for name, plist in samples.items():
        for params in plist:
            c = width1_family(name, params)
            assert size(c) == 6 and width(c)[0] == 1, (name, params)


def test_width1_family_rejects_bad_input():
    with pytest.raises(BadParameters):
        width1_family("no/such.family")
    with pytest.raises(BadParameters):
        width1_family("(4,2)/5.6", (9, 3))  # parameters not coprime
    with pytest.raises(BadParameters):
        width1_family("(4,2)/5.6", (2, 1))  # the excluded 2b = a line
    with pytest.raises(BadParameters):
        width1_family("(3,3)/5.15", (2,))  # below the allowed range


def test_no_octahedron_smoke():
    assert no_octahedron_check(2)
    with pytest.raises(BadParameters):
        no_octahedron_check(1)


def test_export_import_json_round_trip(case_reports):
    classes = by_case(case_reports)["A"].classes_found
    text = export_json(classes)
    parsed = json.loads(text)
    assert [p["id"] for p in parsed] == ["A.1", "A.2"]
    back = import_json(text)
    for orig, copy in zip(classes, back):
        assert copy.id == orig.id
        assert copy.volume_vector == orig.volume_vector
        assert copy.representative.points == orig.representative.points
        assert copy.generated is None


def test_export_csv_shape(case_reports):
    classes = by_case(case_reports)["D"].classes_found
    lines = export_csv(classes).strip().splitlines()
    assert lines[0] == "id,om_label,volume_vector,width,functional,representative,dps"
    assert len(lines) == 1 + len(classes)
    assert lines[1].startswith("D.1,")
