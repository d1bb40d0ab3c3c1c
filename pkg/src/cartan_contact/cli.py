"""Command-line front end.

Subcommands
-----------
analyze SPEC          run the reduction over a sample set, emit a report
compare SPEC_A SPEC_B run both and report whether the invariant distinguishes them
corpus                run every builtin against its stored closed-form invariant

SPEC is either a builtin name (see ``corpus --corpus-list``) or a path to a
JSON input file with top-level schema tag ``cartan-contact/1``::

    {
      "schema": "cartan-contact/1",
      "name": "my-distribution",
      "fields": {"X1": ["1", "0", "-y"], "X2": ["0", "1", "x"]},
      "sampling": {"grid": {"x": [-1, 1, 5], "y": [-1, 1, 5], "z": [0.3, 0.3, 1]}},
      "tol": {"identity": 1e-8, "regression": 1e-6}
    }

``sampling`` may instead hold explicit ``points`` ([[x, y, z], ...]); when
omitted the default grid x, y in {-1, -0.5, 0, 0.5, 1}, z = 0.3 is used.
Grids expand row-major in (x, y, z), n evenly spaced values per axis
inclusive of endpoints.

Exit codes: 0 success, 1 input or regression errors, 2 holonomic (or
mixed-type) classification.  Machine output is deterministic: fixed field
order, floats at 12 significant digits.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import corpus as corpus_mod
from .forms import DegenerateInput, VectorField
from .reduction import (
    ConsistencyError,
    Distribution,
    HolonomicError,
    InvariantReport,
    MixedTypeError,
    compare as compare_pipeline,
    default_grid_points,
    grid_axis,
    reduce as reduce_pipeline,
    REGRESSION_TOL,
    IDENTITY_TOL,
)
from .scalarfield import ExpressionSyntaxError, Point, parse as parse_expression

SCHEMA = "cartan-contact/1"

_RECORD_COLUMNS = ("point_x", "point_y", "point_z", "status", "det3", "T312",
                   "a1", "a2", "M", "dd_eta3", "q1_minus_p2")


class CliError(Exception):
    """Input problem: reported as a one-line diagnostic, exit code 1."""


@dataclass(frozen=True)
class InputSpec:
    name: str
    x1: tuple[str, str, str]
    x2: tuple[str, str, str]
    points: list[Point]
    tol_identity: float
    tol_regression: float


# -- formatting ---------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float) and v == 0.0:
        v = 0.0  # normalise -0.0
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _num(v):
    if v is None:
        return None
    if v == 0.0:
        v = 0.0
    return float(f"{v:.12g}")


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2)


# -- input loading ------------------------------------------------------------


def _points_from_grid(grid) -> list[Point]:
    if not isinstance(grid, dict) or set(grid) != {"x", "y", "z"}:
        raise CliError("sampling.grid must be an object with axes x, y, z")
    axes = {}
    for axis in ("x", "y", "z"):
        spec = grid[axis]
        if not isinstance(spec, (list, tuple)) or len(spec) != 3:
            raise CliError(f"sampling.grid.{axis} must be [lo, hi, n]")
        lo, hi, n = spec
        if not isinstance(n, int) or n < 1:
            raise CliError(f"sampling.grid.{axis}: count must be an integer >= 1")
        if not (isinstance(lo, (int, float)) and isinstance(hi, (int, float)) and lo <= hi):
            raise CliError(f"sampling.grid.{axis}: needs lo <= hi")
        axes[axis] = grid_axis(float(lo), float(hi), n)
    return [Point(x, y, z) for x in axes["x"] for y in axes["y"] for z in axes["z"]]


def _points_from_list(items) -> list[Point]:
    if not isinstance(items, (list, tuple)) or not items:
        raise CliError("sampling.points must be a nonempty list of [x, y, z] triples")
    pts = []
    for i, item in enumerate(items):
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise CliError(f"sampling.points[{i}] must be an [x, y, z] triple")
        try:
            pts.append(Point(*(float(c) for c in item)))
        except (TypeError, ValueError) as exc:
            raise CliError(f"sampling.points[{i}]: {exc}") from exc
    return pts


def _points_from_sampling(sampling) -> list[Point]:
    if sampling is None:
        return default_grid_points()
    if not isinstance(sampling, dict) or len(sampling) != 1 \
            or next(iter(sampling)) not in ("points", "grid"):
        raise CliError("sampling must hold exactly one of 'points' or 'grid'")
    if "points" in sampling:
        return _points_from_list(sampling["points"])
    return _points_from_grid(sampling["grid"])


def load_spec(path_or_name: str, args) -> InputSpec:
    """Resolve a builtin name or read and validate an input file."""
    if path_or_name in corpus_mod.BUILTINS:
        b = corpus_mod.get(path_or_name)
        raw = {"name": b.name, "fields": {"X1": list(b.x1), "X2": list(b.x2)}}
    else:
        path = Path(path_or_name)
        if not path.exists():
            raise CliError(f"input file not found: {path_or_name}")
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise CliError(f"{path_or_name}: malformed JSON ({exc})") from exc
        if not isinstance(raw, dict):
            raise CliError(f"{path_or_name}: top level must be an object")
        if raw.get("schema") != SCHEMA:
            raise CliError(f"{path_or_name}: schema must be {SCHEMA!r}, got {raw.get('schema')!r}")
    fields = raw.get("fields")
    if not isinstance(fields, dict) or set(fields) != {"X1", "X2"}:
        raise CliError("fields must hold exactly X1 and X2")
    for key in ("X1", "X2"):
        exprs = fields[key]
        if not isinstance(exprs, list) or len(exprs) != 3 \
                or not all(isinstance(e, str) for e in exprs):
            raise CliError(f"fields.{key}: expected a list of exactly 3 expression strings")

    tol = raw.get("tol") or {}
    if not isinstance(tol, dict):
        raise CliError("tol must be an object")
    tol_identity = float(tol.get("identity", IDENTITY_TOL))
    tol_regression = float(tol.get("regression", REGRESSION_TOL))
    if getattr(args, "tol_identity", None) is not None:
        tol_identity = args.tol_identity
    if getattr(args, "tol_regression", None) is not None:
        tol_regression = args.tol_regression

    sampling = raw.get("sampling")
    if getattr(args, "points", None) is not None:
        sampling = {"points": _load_json_flag(args.points, "--points")}
    elif getattr(args, "grid", None) is not None:
        sampling = {"grid": _load_json_flag(args.grid, "--grid")}
    points = _points_from_sampling(sampling)

    return InputSpec(
        name=str(raw.get("name", path_or_name)),
        x1=tuple(fields["X1"]),
        x2=tuple(fields["X2"]),
        points=points,
        tol_identity=tol_identity,
        tol_regression=tol_regression,
    )


def _load_json_flag(text: str, flag: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{flag}: malformed JSON ({exc})") from exc


def build_distribution(spec: InputSpec) -> Distribution:
    comps = {}
    for key, exprs in (("X1", spec.x1), ("X2", spec.x2)):
        parsed = []
        for i, text in enumerate(exprs):
            try:
                parsed.append(parse_expression(text))
            except ExpressionSyntaxError as exc:
                raise CliError(f"fields.{key}[{i}]: {exc}") from exc
        comps[key] = VectorField(*parsed)
    return Distribution(comps["X1"], comps["X2"], name=spec.name)


# -- report assembly ----------------------------------------------------------


def _record_dict(point, status, det3=None, t312=None, a1=None, a2=None, m=None,
                 dd=None, q1p2=None):
    return {
        "point": [_num(point.x), _num(point.y), _num(point.z)],
        "status": status,
        "det3": _num(det3),
        "T312": _num(t312),
        "a1": _num(a1),
        "a2": _num(a2),
        "M": _num(m),
        "residuals": {"dd_eta3": _num(dd), "q1_minus_p2": _num(q1p2)},
    }


def report_from_invariants(name: str, report: InvariantReport) -> dict:
    records = [
        _record_dict(s.point, s.status, s.det3, s.T312, s.a1, s.a2, s.M,
                     s.dd_eta3, s.q1_minus_p2)
        for s in report.samples
    ]
    m_range = report.m_range()
    summary = {
        "classification": "contact",
        "M_min": _num(m_range[0]) if m_range else None,
        "M_max": _num(m_range[1]) if m_range else None,
        "n_ok": report.n_ok,
        "n_singular": report.n_singular,
    }
    return {"schema": SCHEMA, "name": name, "summary": summary, "records": records}


def report_from_classification(name: str, classification) -> dict:
    status_map = {"holonomic": "holonomic-at-point", "contact": "singular",
                  "undefined": "singular"}
    records = [
        _record_dict(r.point, status_map[r.status], det3=r.det3)
        for r in classification.records
    ]
    summary = {
        "classification": classification.kind,
        "M_min": None,
        "M_max": None,
        "n_ok": 0,
        "n_singular": len(records),
    }
    return {"schema": SCHEMA, "name": name, "summary": summary, "records": records}


def render_analyze_table(report: dict) -> str:
    lines = [
        f"schema\t{report['schema']}",
        f"name\t{report['name']}",
        f"classification\t{report['summary']['classification']}",
        "header\t" + "\t".join(_RECORD_COLUMNS),
    ]
    for r in report["records"]:
        res = r["residuals"]
        cells = [_fmt(r["point"][0]), _fmt(r["point"][1]), _fmt(r["point"][2]),
                 r["status"], _fmt(r["det3"]), _fmt(r["T312"]), _fmt(r["a1"]),
                 _fmt(r["a2"]), _fmt(r["M"]), _fmt(res["dd_eta3"]),
                 _fmt(res["q1_minus_p2"])]
        lines.append("record\t" + "\t".join(cells))
    s = report["summary"]
    lines.append(
        "summary\tn_ok\t{}\tn_singular\t{}\tM_min\t{}\tM_max\t{}".format(
            s["n_ok"], s["n_singular"], _fmt(s["M_min"]), _fmt(s["M_max"])
        )
    )
    return "\n".join(lines) + "\n"


def _emit(report: dict, fmt: str, render_table) -> None:
    if fmt == "json":
        sys.stdout.write(_emit_json(report) + "\n")
    else:
        sys.stdout.write(render_table(report))


# -- subcommands ----------------------------------------------------------------


def cmd_analyze(args) -> int:
    spec = load_spec(args.spec, args)
    dist = build_distribution(spec)
    try:
        report = reduce_pipeline(dist, spec.points, identity_tol=spec.tol_identity)
    except (HolonomicError, MixedTypeError) as exc:
        classification = exc.classification
        if classification is None:
            raise CliError(str(exc)) from exc
        doc = report_from_classification(spec.name, classification)
        _emit(doc, args.format, render_analyze_table)
        kind = classification.kind
        print(f"classification: {kind} (no contact reduction performed)", file=sys.stderr)
        return 2
    except DegenerateInput as exc:
        raise CliError(str(exc)) from exc
    doc = report_from_invariants(spec.name, report)
    _emit(doc, args.format, render_analyze_table)
    return 0


def _side_summary(name: str, report: InvariantReport) -> dict:
    doc = report_from_invariants(name, report)
    return {"name": name, "summary": doc["summary"]}


def cmd_compare(args) -> int:
    spec_a = load_spec(args.spec_a, args)
    spec_b = load_spec(args.spec_b, args)
    dist_a = build_distribution(spec_a)
    dist_b = build_distribution(spec_b)
    tol = spec_a.tol_regression
    try:
        result = compare_pipeline(dist_a, dist_b, spec_a.points, regression_tol=tol)
    except (HolonomicError, MixedTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegenerateInput as exc:
        raise CliError(str(exc)) from exc
    doc = {
        "schema": SCHEMA,
        "a": _side_summary(spec_a.name, result.report_a),
        "b": _side_summary(spec_b.name, result.report_b),
        "verdict": result.verdict,
    }

    def table(doc):
        lines = [
            f"schema\t{doc['schema']}",
            "header\tside\tname\tclassification\tn_ok\tn_singular\tM_min\tM_max",
        ]
        for side in ("a", "b"):
            s = doc[side]["summary"]
            lines.append("side\t{}\t{}\t{}\t{}\t{}\t{}\t{}".format(
                side, doc[side]["name"], s["classification"], s["n_ok"],
                s["n_singular"], _fmt(s["M_min"]), _fmt(s["M_max"])))
        lines.append(f"verdict\t{doc['verdict']}")
        return "\n".join(lines) + "\n"

    _emit(doc, args.format, table)
    return 0


def cmd_corpus(args) -> int:
    if args.corpus_list:
        for name in corpus_mod.names():
            print(name)
        return 0
    tol_regression = args.tol_regression if args.tol_regression is not None else REGRESSION_TOL
    tol_identity = args.tol_identity if args.tol_identity is not None else IDENTITY_TOL
    rows = []
    failure = None
    for name in corpus_mod.names():
        builtin = corpus_mod.get(name)
        dist = corpus_mod.distribution(name)
        points = default_grid_points()
        row = {"name": name, "classification": None, "T312_abs": None,
               "M_min": None, "M_max": None, "regression": "pass"}
        try:
            report = reduce_pipeline(dist, points, identity_tol=tol_identity)
        except (HolonomicError, MixedTypeError) as exc:
            kind = exc.classification.kind if exc.classification else "holonomic"
            row["classification"] = kind
            if builtin.expected_kind != kind:
                row["regression"] = "fail"
                failure = failure or {"name": name, "point": None,
                                      "expected": builtin.expected_kind, "got": kind}
            rows.append(row)
            continue
        row["classification"] = "contact"
        ok = report.ok_samples()
        if ok:
            row["T312_abs"] = _num(abs(ok[0].T312))
            m_range = report.m_range()
            row["M_min"], row["M_max"] = _num(m_range[0]), _num(m_range[1])
        if builtin.expected_kind != "contact":
            row["regression"] = "fail"
            failure = failure or {"name": name, "point": None,
                                  "expected": builtin.expected_kind, "got": "contact"}
        elif builtin.m_closed is not None:
            for s in ok:
                want = builtin.m_closed(s.point.x, s.point.y, s.point.z)
                if abs(s.M - want) > max(tol_regression * abs(want), 1e-9):
                    row["regression"] = "fail"
                    if failure is None:
                        failure = {"name": name,
                                   "point": [_num(s.point.x), _num(s.point.y), _num(s.point.z)],
                                   "expected": _num(want), "got": _num(s.M)}
                    break
        rows.append(row)
    passed = all(r["regression"] == "pass" for r in rows)
    doc = {"schema": SCHEMA, "rows": rows, "result": "pass" if passed else "fail"}
    if failure is not None:
        doc["failure"] = failure

    def table(doc):
        lines = [
            f"schema\t{doc['schema']}",
            "header\tname\tclassification\tT312_abs\tM_min\tM_max\tregression",
        ]
        for r in doc["rows"]:
            lines.append("row\t{}\t{}\t{}\t{}\t{}\t{}".format(
                r["name"], r["classification"], _fmt(r["T312_abs"]),
                _fmt(r["M_min"]), _fmt(r["M_max"]), r["regression"]))
        if "failure" in doc:
            f = doc["failure"]
            point = "-" if f["point"] is None else ",".join(_fmt(c) for c in f["point"])
            lines.append("failure\t{}\t{}\texpected\t{}\tgot\t{}".format(
                f["name"], point, _fmt(f["expected"]) if isinstance(f["expected"], float)
                else f["expected"],
                _fmt(f["got"]) if isinstance(f["got"], float) else f["got"]))
        lines.append(f"result\t{doc['result']}")
        return "\n".join(lines) + "\n"

    _emit(doc, args.format, table)
    return 0 if passed else 1


# -- entry point ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, points_grid: bool, regression: bool) -> None:
    p.add_argument("--format", choices=("table", "json"), default="table",
                   help="output format (default: table)")
    p.add_argument("--tol-identity", type=float, default=None, metavar="TOL",
                   help="residual tolerance for exact identities (default 1e-8)")
    if regression:
        p.add_argument("--tol-regression", type=float, default=None, metavar="TOL",
                       help="relative tolerance against reference values (default 1e-6)")
    if points_grid:
        group = p.add_mutually_exclusive_group()
        group.add_argument("--points", metavar="JSON",
                           help='sample points, e.g. "[[1,0,0.3],[0,0,1]]"')
        group.add_argument("--grid", metavar="JSON",
                           help='sample grid, e.g. \'{"x":[-1,1,5],"y":[-1,1,5],"z":[0.3,0.3,1]}\'')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartan-contact",
        description="Classify contact plane fields on R^3 and compute their "
                    "differential invariant M.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="reduce one distribution and report M")
    p_analyze.add_argument("spec", help="builtin name or input JSON path")
    _add_common(p_analyze, points_grid=True, regression=False)
    p_analyze.set_defaults(func=cmd_analyze)

    p_compare = sub.add_parser("compare", help="compare two distributions by sampled M")
    p_compare.add_argument("spec_a", help="builtin name or input JSON path")
    p_compare.add_argument("spec_b", help="builtin name or input JSON path")
    _add_common(p_compare, points_grid=True, regression=True)
    p_compare.set_defaults(func=cmd_compare)

    p_corpus = sub.add_parser("corpus", help="run all builtins against stored references")
    _add_common(p_corpus, points_grid=False, regression=True)
    p_corpus.add_argument("--corpus-list", action="store_true",
                          help="list builtin names and exit")
    p_corpus.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:  # exact identity failed: internal bug
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
