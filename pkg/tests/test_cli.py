"""Command-line interface: output formats and exit codes."""

import json

import pytest

from conftest import apply_map, random_unimodular, shuffled
import random

from lattice6.cli import build_parser, main
from lattice6.polytope import format_points


def write_config(tmp_path, name, points):
    path = tmp_path / name
    path.write_text(format_points(points))
    return str(path)


def rep_file(tmp_path, bundle, cid):
    return write_config(tmp_path, cid.replace(".", "_") + ".txt",
                        bundle.class_by_id(cid).config().points)


def test_analyze_classified_polytope(tmp_path, bundle, capsys):
    rc = main(["analyze", rep_file(tmp_path, bundle, "A.1")])
    out = capsys.readouterr().out
    assert rc == 0
    assert "size: 6" in out
    assert "width: 2" in out
    assert "class A.1, width 2, functional z, non-dps" in out


def test_analyze_width_three_class(tmp_path, bundle, capsys):
    rc = main(["analyze", rep_file(tmp_path, bundle, "H.12")])
    out = capsys.readouterr().out
    assert rc == 0
    assert "class H.12, width 3, functional x-z, dps" in out


def test_analyze_tetrahedron(tmp_path, capsys):
    path = write_config(tmp_path, "t.txt", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    rc = main(["analyze", path])
    out = capsys.readouterr().out
    assert rc == 0
    assert "size 4, width 1, White type (0,1)" in out


def test_analyze_five_points(tmp_path, capsys):
    path = write_config(tmp_path, "p5.txt",
                        [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 3, 1)])
    rc = main(["analyze", path])
    out = capsys.readouterr().out
    assert rc == 0
    assert "size-5 class:" in out
    assert "volume vector" in out


def test_analyze_width_one_hexagon(tmp_path, capsys):
    from lattice6.classify6 import width1_family
    c = width1_family("(3,3)/6.4", (1, 1, 2, 3))
    path = write_config(tmp_path, "hex.txt", c.points)
    rc = main(["analyze", path])
    out = capsys.readouterr().out
    assert rc == 0
    assert "not in classification" in out


def test_analyze_rejects_malformed_input(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("1 2\n")
    rc = main(["analyze", str(path)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "line 1" in err


def test_analyze_missing_file(capsys):
    rc = main(["analyze", "/nonexistent/points.txt"])
    assert rc == 2
    assert capsys.readouterr().err


def test_classify_single_case(capsys):
    rc = main(["classify", "--case", "F"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "case F: 17 classes (160 candidates examined)" in out
    assert "17 classes" in out.strip().splitlines()[-1]


def test_classify_verbose_shows_rejections(capsys):
    rc = main(["classify", "--case", "A", "--verbose"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "case A: 2 classes (6 candidates examined)" in out
    assert "midpoint of p2p6 is integer" in out


def test_classify_writes_json(tmp_path, capsys):
    target = tmp_path / "b.json"
    rc = main(["classify", "--case", "B", "--out", str(target)])
    out = capsys.readouterr().out
    assert rc == 0
    assert f"wrote {target}" in out
    data = json.loads(target.read_text())
    assert [d["id"] for d in data] == [f"B.{i}" for i in range(1, 16)]


def test_classify_writes_csv(tmp_path, capsys):
    target = tmp_path / "d.csv"
    rc = main(["classify", "--case", "D", "--out", str(target), "--format", "csv"])
    assert rc == 0
    lines = target.read_text().strip().splitlines()
    assert lines[0].startswith("id,om_label,")
    assert len(lines) == 3
    capsys.readouterr()


def test_equiv_reports_witness(tmp_path, bundle, capsys):
    rng = random.Random(2)
    c = bundle.class_by_id("E.1").config()
    img = shuffled(rng, apply_map(random_unimodular(rng), c))
    fa = write_config(tmp_path, "a.txt", c.points)
    fb = write_config(tmp_path, "b.txt", img.points)
    rc = main(["equiv", fa, fb])
    out = capsys.readouterr().out
    assert rc == 0
    assert "equivalent" in out.splitlines()[0]
    assert "permutation:" in out
    assert "matrix:" in out
    assert "determinant:" in out


def test_equiv_white_tetrahedra(tmp_path, capsys):
    from lattice6.emptytetra import standard_tetrahedron
    fa = write_config(tmp_path, "t27.txt", standard_tetrahedron(2, 7))
    fb = write_config(tmp_path, "t47.txt", standard_tetrahedron(4, 7))
    rc = main(["equiv", fa, fb])
    assert rc == 0
    assert "equivalent" in capsys.readouterr().out


def test_equiv_inequivalent_exits_one(tmp_path, bundle, capsys):
    fa = rep_file(tmp_path, bundle, "B.3")
    fb = rep_file(tmp_path, bundle, "B.4")
    rc = main(["equiv", fa, fb])
    out = capsys.readouterr().out
    assert rc == 1
    assert "inequivalent" in out


def test_equiv_size_mismatch_is_usage_error(tmp_path, bundle, capsys):
    fa = rep_file(tmp_path, bundle, "A.1")
    fb = write_config(tmp_path, "t.txt", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    rc = main(["equiv", fa, fb])
    assert rc == 2
    assert capsys.readouterr().err


def test_catalog_oms(capsys):
    rc = main(["catalog", "--what", "oms"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.strip().splitlines()[-1] == (
        "55 oriented matroids (22 realized with width > 1, 20 with width one, 13 dps)"
    )


def test_catalog_classes(capsys):
    rc = main(["catalog", "--what", "classes"])
    out = capsys.readouterr().out.strip().splitlines()
    assert rc == 0
    assert len(out) == 77  # one row per class plus the footer
    assert out[0].startswith("A.1")
    assert out[-1] == "76 classes"


def test_catalog_size5(capsys):
    rc = main(["catalog", "--what", "size5"])
    out = capsys.readouterr().out.strip().splitlines()
    assert rc == 0
    assert out[-1] == "13 size-5 rows"


def test_bad_subcommand_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["catalog", "oms"])
    assert exc.value.code == 2


def test_jobs_default_from_environment(monkeypatch):
    monkeypatch.setenv("LATTICE6_JOBS", "3")
    args = build_parser().parse_args(["classify", "--case", "A"])
    assert args.jobs == 3
