"""Command-line front end: analyze, classify, equiv, catalog.

Exit codes: 0 success (or "equivalent"), 1 verification failure or
"inequivalent", 2 usage and input errors.
"""

import argparse
import os
import sys

from .polytope import (
    NotFullDimensional,
    PointConfig,
    format_points,
    interior_points,
    parse_points,
    size,
    vertices,
)
from .invariants import (
    coplanarity_class,
    is_dps,
    volume_vector5,
    volume_vector6,
    width,
)
from .equivalence import equivalence_witness
from .emptytetra import white_type
from .omcatalog import NoMatch, match_om
from .size5 import classify5, NotSize5
from .tablesdata import load_tables
from . import classify6

_FMT_CHOICES = ("json", "csv")
_CASE_CHOICES = ("A", "B", "C", "D", "E", "F", "G", "H", "all")


def _functional_str(f) -> str:
    parts = []
    for coeff, name in zip(f, "xyz"):
        if coeff == 0:
            continue
        if coeff == 1:
            term = name
        elif coeff == -1:
            term = "-" + name
        else:
            term = f"{coeff}{name}"
        if parts and not term.startswith("-"):
            term = "+" + term
        parts.append(term)
    return "".join(parts) or "0"


def _read_config(path: str) -> PointConfig:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_points(text)


def _om_label(config: PointConfig) -> str:
    record, _ = match_om(config)
    labels = load_tables().label_candidates(record.key)
    return " or ".join(labels) if labels else "unlabeled"


def cmd_analyze(args) -> int:
    config = _read_config(args.points_file)
    n = len(config.points)
    if not 4 <= n <= 8:
        raise ValueError(f"expected 4 to 8 points, got {n}")
    nsize = size(config)
    verts = vertices(config)
    inner = interior_points(config)
    w, functional = width(config)
    class_id = classify6.identify(config) if n == 6 else None
    if class_id is not None:
        # show the published witness when it is one for these coordinates
        table_f = load_tables().class_by_id(class_id).functional
        values = [sum(c * x for c, x in zip(table_f, p)) for p in config.points]
        if max(values) - min(values) == w:
            functional = table_f
    fstr = _functional_str(functional)
    print(f"points: {n}")
    print(f"size: {nsize}")
    print(f"vertices: {len(verts)}")
    print(f"interior points: {len(inner)}" + (f"  {list(inner)}" if inner else ""))
    print(f"width: {w}")
    print(f"functional: {fstr}")
    if n == 5:
        print("volume vector:", " ".join(map(str, volume_vector5(config))))
    elif n == 6:
        print(f"coplanarity: {coplanarity_class(config)}")
        print("volume vector:", " ".join(map(str, volume_vector6(config))))
    dps = is_dps(config)
    print(f"dps: {'dps' if dps else 'non-dps'}")
    if n == 6:
        try:
            print(f"oriented matroid: {_om_label(config)}")
        except NoMatch:
            print("oriented matroid: unmatched")
    summary = None
    if n == 4 and nsize == 4:
        p, q = white_type(config.points)
        summary = f"size 4, width {w}, White type ({p},{q})"
    elif n == 5 and nsize == 5:
        try:
            print(f"size-5 class: {classify5(config).label}")
        except NotSize5:
            pass
    elif n == 6:
        if class_id is None:
            print("class: not in classification (width 1 or size != 6)")
        else:
            print(f"class: {class_id}")
            summary = (
                f"class {class_id}, width {w}, functional {fstr}, "
                f"{'dps' if dps else 'non-dps'}"
            )
    if summary is None:
        summary = f"size {nsize}, width {w}"
    print(summary)
    return 0


def _single_case_reports(case: str):
    if case in ("G", "H"):
        # the gluing enumeration produces both cases in one pass
        rg, rh = classify6.run_case_gh()
        return [rg if case == "G" else rh]
    runner = {
        "A": classify6.run_case_a,
        "B": classify6.run_case_b,
        "C": classify6.run_case_c,
        "D": classify6.run_case_d,
        "E": classify6.run_case_e,
        "F": classify6.run_case_f,
    }[case]
    return [runner()]


def cmd_classify(args) -> int:
    jobs = args.jobs
    try:
        if args.case == "all":
            reports = list(classify6.classify_all(jobs))
        else:
            reports = _single_case_reports(args.case)
    except classify6.ClassificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    classes = [c for r in reports for c in r.classes_found]
    for r in reports:
        print(
            f"case {r.case}: {len(r.classes_found)} classes "
            f"({r.candidates_examined} candidates examined)"
        )
        if args.verbose:
            for reason, count in sorted(r.rejected.items()):
                print(f"  rejected {count}: {reason}")
            for note in r.notes:
                print(f"  note: {note}")
    if args.case == "all":
        hist = {}
        for c in classes:
            hist[c.width] = hist.get(c.width, 0) + 1
        parts = ", ".join(f"{hist[w]} width-{w}" for w in sorted(hist))
        print(f"{len(classes)} classes ({parts})")
    else:
        print(f"{len(classes)} classes")
    if args.out:
        text = (
            classify6.export_json(classes)
            if args.format == "json"
            else classify6.export_csv(classes)
        )
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    return 0


def cmd_equiv(args) -> int:
    ca = _read_config(args.file_a)
    cb = _read_config(args.file_b)
    if len(ca.points) != len(cb.points):
        raise ValueError(
            f"size mismatch: {len(ca.points)} vs {len(cb.points)} points"
        )
    witness = equivalence_witness(ca, cb)
    if witness is None:
        print("inequivalent")
        return 1
    perm, amap = witness
    print("equivalent")
    print("permutation:", " ".join(str(i + 1) for i in perm))
    for row in amap.matrix:
        print("matrix:", " ".join(map(str, row)))
    print("translation:", " ".join(map(str, amap.translation)))
    print("determinant:", amap.det)
    return 0


def cmd_catalog(args) -> int:
    bundle = load_tables()
    if args.what == "oms":
        for cell in bundle.om_cells:
            flags = []
            if cell.dps:
                flags.append("dps")
            if cell.realized:
                flags.append("realized")
            if cell.width_one:
                flags.append("width-one")
            print(
                f"{cell.label:6} coplanarity {cell.coplanarity:14} "
                f"vertices {cell.vertices} interior {cell.interior} "
                f"circuits {cell.n_circuits}"
                + (f"  [{', '.join(flags)}]" if flags else "")
            )
        realized = sum(c.realized for c in bundle.om_cells)
        wone = sum(c.width_one for c in bundle.om_cells)
        dps = sum(c.dps for c in bundle.om_cells)
        print(
            f"{len(bundle.om_cells)} oriented matroids "
            f"({realized} realized with width > 1, {wone} with width one, "
            f"{dps} dps)"
        )
    elif args.what == "classes":
        for row in bundle.class_rows:
            print(
                f"{row.id:5} om {row.om_label:5} width {row.width} "
                f"functional {_functional_str(row.functional):6} "
                f"{'dps    ' if row.dps else 'non-dps'} "
                f"vv {' '.join(map(str, row.volume_vector))}"
            )
        print(f"{len(bundle.class_rows)} classes")
    else:
        for row in bundle.size5_rows:
            sig = tuple(row["signature"])
            if "representative" in row:
                vv = " ".join(map(str, row["volume_vector"]))
                pts = format_points(row["representative"]).replace("\n", "; ")
                print(f"signature {sig} width {row['width']} vv {vv}  points {pts}")
            else:
                print(
                    f"signature {sig} width {row['width']} "
                    f"family {row['representative_formula']} "
                    f"vv {row['volume_vector_formula']} "
                    f"for {row['constraints']}"
                )
        print(f"{len(bundle.size5_rows)} size-5 rows")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice6",
        description="Exact classification tools for lattice polytopes "
        "with few lattice points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="invariants of a points file")
    p.add_argument("points_file", help="path to a points file, or - for stdin")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="regenerate the classification")
    p.add_argument("--case", choices=_CASE_CHOICES, default="all")
    p.add_argument("--out", help="write the classes to this path")
    p.add_argument("--format", choices=_FMT_CHOICES, default="json")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("equiv", help="test two points files for equivalence")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("catalog", help="dump a bundled catalog")
    p.add_argument("--what", choices=("oms", "classes", "size5"), default="classes")
    p.set_defaults(func=cmd_catalog)

    for sp in sub.choices.values():
        sp.add_argument("--jobs", type=int, default=_default_jobs())
        sp.add_argument("--verbose", action="store_true")
    return parser


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("LATTICE6_JOBS", "1")))
    except ValueError:
        return 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, NotFullDimensional, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
