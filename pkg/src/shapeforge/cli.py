"""Command-line surface: polynomial tables, shape generation, artifact
verification, and state counting.

Exit codes: 0 success, 2 invalid arguments or unreadable input, 3
completeness failure, 4 histogram mismatch, 5 artifact verification
failure.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from .engine import (
    EngineConfig,
    IncompletenessError,
    enumerate_shapes,
    verify_completeness,
)
from .multipoly import antisymmetrize, slater_basis, source_shape
from .qseries import Statistics, shape_poly, state_count_series
from .serialize import (
    ShapeDocument,
    document_from_result,
    document_to_dot,
    dumps_document,
    loads_document,
    report_to_text,
)
from .shiftops import apply_symword

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3
EXIT_HISTOGRAM = 4
EXIT_VERIFY = 5


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _parallelism(flag_value: int) -> int | None:
    """Env var SHAPE_FORGE_THREADS overrides the command-line value."""
    env = os.environ.get("SHAPE_FORGE_THREADS")
    if env is None:
        return max(1, flag_value)
    try:
        return max(1, int(env))
    except ValueError:
        return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapeforge",
        description="Exact shape enumeration for noninteracting fermions",
    )
    parser.add_argument("--verbose", action="store_true",
                        help="log progress details to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="print a shape polynomial")
    p.add_argument("-N", type=int, required=True, help="particle count")
    p.add_argument("-d", type=int, required=True, help="dimension")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--fermion", action="store_true", default=True)
    group.add_argument("--boson", dest="fermion", action="store_false")

    g = sub.add_parser("gen", help="enumerate shapes and write artifacts")
    g.add_argument("-N", type=int, required=True)
    g.add_argument("-d", type=int, required=True)
    g.add_argument("--out", default=".", help="output directory")
    g.add_argument("--max-letters", type=int, default=4)
    g.add_argument("--max-amount", type=int, default=3)
    g.add_argument("--max-drop", type=int, default=4)
    g.add_argument("--exhaustive", action="store_true",
                   help="keep scanning a grade after it has filled")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--no-verify", action="store_true",
                   help="skip the completeness rank check")

    v = sub.add_parser("verify", help="re-check a shapes.json artifact")
    v.add_argument("path", help="path to shapes.json")

    c = sub.add_parser("count", help="print state counts per grade")
    c.add_argument("-N", type=int, required=True)
    c.add_argument("-d", type=int, required=True)
    c.add_argument("-g", "--max-grade", type=int, required=True)
    c.add_argument("--oracle", action="store_true",
                   help="cross-check each grade by direct enumeration")
    return parser


# --- poly --------------------------------------------------------------------

def cmd_poly(args) -> int:
    if args.N < 0:
        return _fail_usage("N must be nonnegative")
    if args.d < 1:
        return _fail_usage("d must be positive")
    stats = Statistics.FERMION if args.fermion else Statistics.BOSON
    p = shape_poly(args.N, args.d, stats)
    print(p)
    print(json.dumps(list(p.coeffs)))
    return EXIT_OK


# --- gen ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.N < 1:
        return _fail_usage("N must be at least 1")
    if args.d < 1 or args.d % 2 == 0:
        return _fail_usage("generation requires odd d")
    if min(args.max_letters, args.max_amount, args.max_drop) < 1:
        return _fail_usage("vocabulary bounds must be positive")
    threads = _parallelism(args.threads)
    if threads is None:
        return _fail_usage("SHAPE_FORGE_THREADS must be an integer")
    config = EngineConfig(
        max_letters=args.max_letters,
        max_amount=args.max_amount,
        max_drop=args.max_drop,
        exhaustive=args.exhaustive,
        parallelism=threads,
    )
    try:
        result = enumerate_shapes(args.N, args.d, config)
    except IncompletenessError as exc:
        print(f"enumeration incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    doc = document_from_result(result)
    (out / "shapes.json").write_text(dumps_document(doc), encoding="utf-8")
    (out / "tree.dot").write_text(document_to_dot(doc), encoding="utf-8")
    (out / "report.txt").write_text(report_to_text(result), encoding="utf-8")

    expected = {
        g: c for g, c in enumerate(doc.shape_poly) if c
    }
    if result.histogram() != expected:
        print(
            f"histogram mismatch: found {result.histogram()}, "
            f"expected {expected}",
            file=sys.stderr,
        )
        return EXIT_HISTOGRAM
    if not args.no_verify:
        try:
            verify_completeness(args.N, args.d, result.records)
        except IncompletenessError as exc:
            print(f"completeness check failed: {exc}", file=sys.stderr)
            return EXIT_INCOMPLETE
    print(
        f"{len(result.records)} shapes, {result.tree.edge_count()} tree "
        f"edges, {len(result.tree.extra_edges)} extra edges -> {out}"
    )
    return EXIT_OK


# --- verify ------------------------------------------------------------------

def _verify_document(doc: ShapeDocument) -> str | None:
    """Returns a failure description, or None when everything passes."""
    n, d = doc.n, doc.d
    if n < 1 or d < 1 or d % 2 == 0:
        return f"invalid dimensions n={n} d={d}"
    expected_total = math.factorial(n) ** (d - 1)
    if len(doc.records) != expected_total:
        return (f"shape count {len(doc.records)} != {expected_total}; "
                f"empty or truncated artifact")
    coeffs = list(shape_poly(n, d, Statistics.FERMION).coeffs)
    if doc.shape_poly != coeffs:
        return "stored shape polynomial differs from the recursion"
    histogram: dict[int, int] = {}
    for rec in doc.records:
        histogram[rec.grade] = histogram.get(rec.grade, 0) + 1
    if histogram != {g: c for g, c in enumerate(coeffs) if c}:
        return "grade histogram differs from the shape polynomial"

    word_children = set()
    for idx, rec in enumerate(doc.records):
        tag = f"record {rec.id}"
        if rec.id != idx:
            return f"{tag}: ids are not dense and ascending"
        p = rec.poly
        if p.is_zero():
            return f"{tag}: zero polynomial"
        if not p.is_homogeneous() or p.grade() != rec.grade:
            return f"{tag}: polynomial grade differs from the stated grade"
        if not p.is_antisymmetric():
            return f"{tag}: polynomial is not antisymmetric"
        prim, content, sign = p.normalized()
        if content != 1 or sign != 1:
            return f"{tag}: polynomial is not in canonical form"
        pv = rec.provenance
        if pv.kind == "root":
            if rec.id != doc.tree.root:
                return f"{tag}: root provenance on a non-root id"
            if pv.content != 1 or pv.sign != 1 or p != source_shape(n, d):
                return f"{tag}: root does not replay to the source shape"
        elif pv.kind == "word":
            if pv.parent is None or pv.word is None:
                return f"{tag}: word provenance missing parent or word"
            if not 0 <= pv.parent < rec.id:
                return f"{tag}: parent id out of range"
            raw = apply_symword(pv.word, doc.records[pv.parent].poly)
            if raw.is_zero():
                return f"{tag}: replay gives zero"
            if raw.normalized() != (p, pv.content, pv.sign):
                return f"{tag}: replay does not reproduce the polynomial"
            if doc.tree.edges.get(rec.id) != (pv.parent, pv.word):
                return f"{tag}: tree edge disagrees with provenance"
            word_children.add(rec.id)
        elif pv.kind == "oracle":
            if pv.rows is None:
                return f"{tag}: oracle provenance missing rows"
            raw = antisymmetrize(list(pv.rows))
            if raw.is_zero() or raw.normalized() != (p, pv.content, pv.sign):
                return f"{tag}: oracle replay does not reproduce the polynomial"
        else:
            return f"{tag}: unknown provenance kind {pv.kind!r}"

    if set(doc.tree.edges) != word_children:
        return "tree edges do not match word-derived records"
    if doc.tree.root in doc.tree.edges:
        return "root has an incoming tree edge"
    ids = {rec.id for rec in doc.records}
    for src, dst, word, sign in doc.tree.extra_edges:
        if src not in ids or dst not in ids:
            return f"extra edge ({src}, {dst}) references unknown ids"
        raw = apply_symword(word, doc.records[src].poly)
        if raw.is_zero():
            return f"extra edge ({src}, {dst}): replay gives zero"
        prim, _, rel_sign = raw.normalized()
        if prim != doc.records[dst].poly or rel_sign != sign:
            return f"extra edge ({src}, {dst}): replay does not match"

    try:
        verify_completeness(n, d, doc.records)
    except IncompletenessError as exc:
        return f"completeness: {exc}"
    return None


def cmd_verify(args) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
        doc = loads_document(text)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        return _fail_usage(f"cannot load {args.path}: {exc}")
    failure = _verify_document(doc)
    if failure is not None:
        print(f"verify failed: {failure}", file=sys.stderr)
        return EXIT_VERIFY
    print(f"verified {len(doc.records)} shapes for n={doc.n} d={doc.d}")
    return EXIT_OK


# --- count -------------------------------------------------------------------

def cmd_count(args) -> int:
    if args.N < 1:
        return _fail_usage("N must be at least 1")
    if args.d < 1:
        return _fail_usage("d must be positive")
    if args.max_grade < 0:
        return _fail_usage("max grade must be nonnegative")
    series = state_count_series(args.N, args.d, args.max_grade)
    mismatch = False
    for g in range(args.max_grade + 1):
        coeff = series.coeff(g)
        if args.oracle:
            oracle = len(slater_basis(args.N, args.d, g))
            print(f"{g:4d}  {coeff}  {oracle}")
            if oracle != coeff:
                mismatch = True
        else:
            print(f"{g:4d}  {coeff}")
    if mismatch:
        print("count mismatch against direct enumeration", file=sys.stderr)
        return 1
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors and --help
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command == "poly":
        return cmd_poly(args)
    if args.command == "gen":
        return cmd_gen(args)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_count(args)


if __name__ == "__main__":
    sys.exit(main())
