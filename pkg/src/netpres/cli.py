"""Command line interface.

Exit status: 0 success (or valid / equivalent), 1 invalid diagram or
distinct, 2 parse or usage error, 3 unknown (search exhausted) or
normalization obstructed.
"""

import argparse
import json
import os
import re
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from enum import IntEnum

from .diagram import TRANSLATE_TOKENS, parse, serialize, validate
from .errors import NetpresError, NormalizationObstructed, ParseError, SemanticError
from .euclid import ExtendedSlope, matrix_from_pullback_data, preimage_slope
from .lattice import Mat2, elementary_divisors
from .netmap import portrait, portrait_json
from .render import RenderOptions, render_svg
from .twist import (
    Distinct,
    Equivalent,
    euclidean_equivalence,
    matrix_twist,
    normalize_divisors,
    projective_canonical,
    translation_twist,
)



class ExitStatus(IntEnum):
    OK = 0
    INVALID = 1
    USAGE = 2
    UNKNOWN = 3


EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_UNKNOWN = ExitStatus


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Treats negative fractions such as ``-1/2`` as positionals."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except (ParseError, SemanticError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".netpres-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, out):
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _ints(text, count, what):
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != count:
        raise UsageError(f"{what} must be {count} comma-separated integers, got {text!r}")
    return vals


def _slope(text):
    try:
        return ExtendedSlope.parse(text)
    except ValueError:
        raise UsageError(f"bad slope {text!r}; use P/Q, an integer or inf") from None


def _require_valid(D, path):
    report = validate(D)
    if not report.ok:
        print(f"{path}: invalid diagram", file=sys.stderr)
        print(report, file=sys.stderr)
        return False
    return True


def _load_all(paths):
    def load(p):
        try:
            return p, _read(p), None
        except UsageError as exc:
            return p, None, exc

    with ThreadPoolExecutor(max_workers=min(8, len(paths))) as pool:
        return list(pool.map(load, paths))


def cmd_validate(args):
    status = EXIT_OK
    for path, D, err in _load_all(args.files):
        if err is not None:
            print(f"error: {err}", file=sys.stderr)
            status = EXIT_USAGE
            continue
        report = validate(D)
        if report.ok:
            print(f"{path}: valid")
        else:
            print(f"{path}: invalid")
            for v in report.violations:
                print(f"  {v.code}: {v.message}")
            status = max(status, EXIT_INVALID) if status != EXIT_USAGE else status
    return status


def _info_text(D):
    pt = portrait(D)
    m, n = elementary_divisors(D.matrix)
    lines = [
        f"degree: {D.matrix.det()}",
        f"elementary divisors: m = {m}, n = {n}",
        f"translation: {TRANSLATE_TOKENS[D.selector]}",
        "critical value classes: " + " ".join(f"({a},{b})" for a, b in pt.cv_classes),
        "portrait:",
    ]
    for x in pt.points:
        mark = []
        if x in pt.critical_values:
            mark.append("critical value")
        if x in pt.postcritical:
            mark.append("postcritical")
        tag = f"  [{', '.join(mark)}]" if mark else ""
        lines.append(f"  {tuple(x.mu)} -> {tuple(pt.edges[x].mu)}{tag}")
    lines.append(f"postcritical points: {len(pt.postcritical)}")
    lines.append(f"NET map: {'yes' if pt.is_net else 'no'}")
    return "\n".join(lines) + "\n"


def cmd_info(args):
    loaded = _load_all(args.files)
    status = EXIT_OK
    many = len(loaded) > 1
    for path, D, err in loaded:
        if err is not None:
            print(f"error: {err}", file=sys.stderr)
            status = EXIT_USAGE
            continue
        if not _require_valid(D, path):
            status = max(status, EXIT_INVALID) if status != EXIT_USAGE else status
            continue
        if args.json:
            data = portrait_json(D)
            if many:
                data = {"file": path, **data}
            print(json.dumps(data, sort_keys=False))
        else:
            if many:
                print(f"== {path}")
            sys.stdout.write(_info_text(D))
    return status


def cmd_slope(args):
    D = _read(args.file)
    s = _slope(args.slope)
    s2, d = preimage_slope(D.matrix, s)
    print(f"slope {s2}, degree {d}")
    return EXIT_OK


def cmd_matrix_from_slopes(args):
    s0, sinf = _slope(args.slope0), _slope(args.slope_inf)
    if args.d0 <= 0 or args.d_inf <= 0:
        raise UsageError("degrees must be positive")
    try:
        A = matrix_from_pullback_data(s0, args.d0, sinf, args.d_inf)
    except NetpresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"[[{A.a}, {A.b}], [{A.c}, {A.d}]]")
    print(f"lambda1 = ({A.a}, {A.c})")
    print(f"lambda2 = ({A.b}, {A.d})")
    return EXIT_OK


def cmd_twist(args):
    D = _read(args.file)
    M = Mat2(*_ints(args.matrix, 4, "--matrix"))
    if M.det() <= 0:
        raise UsageError(f"twist matrix must have positive determinant, got {M.det()}")
    _emit(serialize(matrix_twist(D, M)), args.output)
    return EXIT_OK


def cmd_translate(args):
    D = _read(args.file)
    v = _ints(args.vector, 2, "--vector")
    _emit(serialize(translation_twist(D, v)), args.output)
    return EXIT_OK


def cmd_normalize(args):
    D = _read(args.file)
    if not _require_valid(D, args.file):
        return EXIT_INVALID
    try:
        D2 = normalize_divisors(D)
    except NormalizationObstructed as exc:
        print(f"obstructed: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    _emit(serialize(D2), args.output)
    return EXIT_OK


def cmd_equiv(args):
    D1, D2 = _read(args.file1), _read(args.file2)
    if args.bound <= 0:
        raise UsageError("--bound must be positive")
    verdict = euclidean_equivalence(D1, D2, args.bound)
    print(verdict)
    if isinstance(verdict, Equivalent):
        return EXIT_OK
    if isinstance(verdict, Distinct):
        return EXIT_INVALID
    return EXIT_UNKNOWN


def cmd_render(args):
    D = _read(args.file)
    if args.cell <= 0:
        raise UsageError("--cell must be positive")
    opts = RenderOptions(cell=args.cell, margin=args.margin, grid=not args.no_grid)
    _write_atomic(args.output, render_svg(D, opts))
    return EXIT_OK


def cmd_canon(args):
    sys.stdout.write(serialize(projective_canonical(_read(args.file))))
    return EXIT_OK


def build_parser():
    parser = _Parser(
        prog="netpres",
        description="Validate, analyse and transform NET map presentation diagrams.",
        epilog="Matrices are given row-major: a,b,c,d means [[a,b],[c,d]].  Values "
        "starting with '-' need the '=' form, e.g. --matrix=-1,0,0,-1.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", help="check diagrams for validity")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="degree, divisors, critical values and portrait")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--json", action="store_true", help="one JSON object per file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("slope", help="preimage slope and degree of a slope")
    p.add_argument("file", metavar="FILE")
    p.add_argument("slope", metavar="P/Q", help="slope in the (l1, l2) basis; 'inf' allowed")
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser(
        "matrix-from-slopes", help="rebuild the matrix from pullback slopes and degrees"
    )
    p.add_argument("slope0", metavar="P1/Q1", help="preimage slope of slope 0")
    p.add_argument("d0", metavar="D1", type=int, help="degree on those components")
    p.add_argument("slope_inf", metavar="P2/Q2", help="preimage slope of slope inf")
    p.add_argument("d_inf", metavar="D2", type=int, help="degree on those components")
    p.set_defaults(func=cmd_matrix_from_slopes)

    p = sub.add_parser("twist", help="transform the diagram by a matrix")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--matrix", required=True, metavar="a,b,c,d", help="row-major, det > 0")
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("translate", help="post-compose with a translation")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--vector", required=True, metavar="x,y")
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("normalize", help="make l1 divisible by m and l2 by n")
    p.add_argument("file", metavar="FILE")
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("equiv", help="bounded search for equivalence of the affine parts")
    p.add_argument("file1", metavar="FILE1")
    p.add_argument("file2", metavar="FILE2")
    p.add_argument("--bound", type=int, required=True, metavar="N")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("render", help="draw the diagram as SVG")
    p.add_argument("file", metavar="FILE")
    p.add_argument("-o", "--output", required=True, metavar="OUT.svg")
    p.add_argument("--cell", type=int, default=40, metavar="N", help="pixels per unit")
    p.add_argument("--margin", type=int, default=1, metavar="N", help="margin in cells")
    p.add_argument("--no-grid", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("canon", help="projective canonical form")
    p.add_argument("file", metavar="FILE")
    p.set_defaults(func=cmd_canon)
    return parser


def run(argv=None):
    """Run one command and return its ExitStatus (argparse errors included)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ExitStatus(exc.code or 0)
    try:
        return ExitStatus(args.func(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(int(run(argv)))


if __name__ == "__main__":
    main()
