"""Bundled classification tables: integrity checks and cross-statistics."""

import pytest

from lattice6.exactlinalg import gcd_all
from lattice6.omcatalog import record_by_key
from lattice6.polytope import interior_points, size, vertices
from lattice6.tablesdata import (
    GCD_EXCEPTIONS,
    interior_count,
    load_tables,
    result2_histogram,
    shape_of,
    validate_tables,
)

EXPECTED_RESULT2 = {
    "tetrahedron, 2 interior": 23,
    "tetrahedron, 1 interior": 11,
    "tetrahedron, 0 interior": 2,
    "square pyramid, 1 interior": 3,
    "bipyramid, 1 interior": 35,
    "square pyramid, 0 interior": 1,
    "bipyramid, 0 interior": 1,
}


def test_validation_is_clean(bundle):
    report = validate_tables(bundle)
    assert report.mismatches == ()
    assert report.rows_checked >= 76
    assert report.om_groups == 22


def test_volume_vector_gcds(bundle):
    report = validate_tables(bundle)
    assert GCD_EXCEPTIONS == {"A.1": 2, "A.2": 2, "B.14": 3, "B.15": 3, "C.3": 3}
    for row in bundle.class_rows:
        expected = GCD_EXCEPTIONS.get(row.id, 1)
        assert gcd_all(row.volume_vector) == expected, row.id
        assert report.gcds[row.id] == expected


def test_row_counts(bundle):
    assert len(bundle.class_rows) == 76
    assert len(bundle.size5_rows) == 13
    assert len(bundle.om_cells) == 55


def test_result_counts(bundle):
    rc = bundle.result_counts
    assert rc["per_case"] == {"A": 2, "B": 15, "C": 6, "D": 2, "E": 2,
                              "F": 17, "G": 20, "H": 12}
    assert sum(rc["per_case"].values()) == 76
    assert rc["width_histogram"] == {"2": 74, "3": 2}
    assert rc["dps_count"] == 45
    assert rc["result2"] == EXPECTED_RESULT2


def test_result2_histogram_recomputes(bundle):
    configs = [row.config() for row in bundle.class_rows]
    assert result2_histogram(configs) == EXPECTED_RESULT2


def test_shape_helpers(bundle):
    h12 = bundle.class_by_id("H.12").config()
    assert shape_of(h12) == "tetrahedron"
    assert interior_count(h12) == 2
    g1 = bundle.class_by_id("G.1").config()
    assert shape_of(g1) == "bipyramid"
    assert interior_count(g1) == 1


def test_lookup_helpers(bundle):
    row = bundle.class_by_id("F.3")
    assert row.id == "F.3" and row.case == "F"
    with pytest.raises(KeyError):
        bundle.class_by_id("F.99")
    cell = bundle.cell_by_label(row.om_label)
    assert cell.label == row.om_label
    assert cell.realized


def test_ambiguous_labels(bundle):
    assert len(bundle.ambiguous_labels) == 3
    for pair in bundle.ambiguous_labels:
        assert len(pair["keys"]) == 2 and len(pair["labels"]) == 2
        for key in pair["keys"]:
            assert set(bundle.label_candidates(key)) == set(pair["labels"])
        for label in pair["labels"]:
            assert set(bundle.key_candidates(label)) == set(pair["keys"])


def test_unambiguous_label_resolves_to_one_key(bundle):
    keys = bundle.key_candidates("3.2")
    assert len(keys) == 1
    assert bundle.label_candidates(keys[0]) == ("3.2",)


def test_never_realized_labels(bundle):
    assert len(bundle.never_realized) == 6
    realized = {row.om_label for row in bundle.class_rows}
    assert not bundle.never_realized & realized
    for cell in bundle.om_cells:
        if cell.label in bundle.never_realized:
            assert not cell.realized


def test_width_one_labels(bundle):
    """width_one flags mark the labels covered by the bundled width-1 constructors;
    the six never-realized labels are the remaining hollow width-one shapes."""
    width_one = {cell.label for cell in bundle.om_cells if cell.width_one}
    fams = bundle.width1_families
    covered = {s["om_label"] for s in fams["singles"]}
    covered |= {f["family_id"].split("/")[1] for f in fams["families"]}
    assert width_one == covered
    assert len(width_one) == 20
    assert len(bundle.howe_width_one) == 12
    assert bundle.howe_width_one - width_one == bundle.never_realized
    realized = {row.om_label for row in bundle.class_rows}
    for cell in bundle.om_cells:
        assert cell.realized == (cell.label in realized)


def test_cells_match_catalog_records(bundle):
    for cell in bundle.om_cells:
        keys = bundle.key_candidates(cell.label)
        assert keys
        candidates = [record_by_key(key) for key in keys]
        assert any(
            r.coplanarity == cell.coplanarity
            and r.nvertices == cell.vertices
            and r.ninterior == cell.interior
            and len(r.circuits) == cell.n_circuits
            and r.dps == cell.dps
            for r in candidates
        ), cell.label


def test_representatives_have_advertised_shape(bundle):
    for row in bundle.class_rows[:10]:
        c = row.config()
        assert size(c) == 6
        cell = bundle.cell_by_label(row.om_label)
        assert len(vertices(c)) == cell.vertices
        assert len(interior_points(c)) == cell.interior
