"""Shape-set serialization: JSON documents, DOT trees, text reports.

Polynomial coefficients and contents are written as decimal strings so
consumers with fixed-width integers cannot silently truncate them; ids,
grades, exponents and signs stay JSON integers.  Serialization is
deterministic: serialize(parse(serialize(x))) is byte-identical to
serialize(x).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .engine import (
    BranchingTree,
    EnumerationResult,
    Provenance,
    RunReport,
    ShapeRecord,
)
from .multipoly import MPoly
from .qseries import Statistics, shape_poly
from .shiftops import SymWord, word_from_str, word_to_str

GENERATOR_ORDER = "lex, coordinate-major"


@dataclass
class ShapeDocument:
    n: int
    d: int
    generator_order: str
    shape_poly: list[int]
    records: list[ShapeRecord]
    tree: BranchingTree


def document_from_result(result: EnumerationResult) -> ShapeDocument:
    coeffs = list(shape_poly(result.n, result.d, Statistics.FERMION).coeffs)
    return ShapeDocument(
        n=result.n,
        d=result.d,
        generator_order=GENERATOR_ORDER,
        shape_poly=coeffs,
        records=result.records,
        tree=result.tree,
    )


def _poly_to_json(p: MPoly) -> list[dict]:
    return [
        {"exp": list(mono), "coef": str(p.terms[mono])}
        for mono in sorted(p.terms, reverse=True)
    ]


def _poly_from_json(items: list[dict], n: int, d: int) -> MPoly:
    terms = {tuple(item["exp"]): int(item["coef"]) for item in items}
    return MPoly(n, d, terms)


def _provenance_to_json(pv: Provenance) -> dict:
    return {
        "kind": pv.kind,
        "parent": pv.parent,
        "word": None if pv.word is None else word_to_str(pv.word),
        "rows": None if pv.rows is None else [list(r) for r in pv.rows],
        "content": str(pv.content),
        "sign": pv.sign,
    }


def _provenance_from_json(data: dict) -> Provenance:
    word = data.get("word")
    rows = data.get("rows")
    return Provenance(
        kind=data["kind"],
        parent=data.get("parent"),
        word=None if word is None else SymWord(word_from_str(word)),
        rows=None if rows is None else tuple(tuple(r) for r in rows),
        content=int(data["content"]),
        sign=int(data["sign"]),
    )


def document_to_dict(doc: ShapeDocument) -> dict:
    return {
        "n": doc.n,
        "d": doc.d,
        "generator_order": doc.generator_order,
        "shape_poly": [str(c) for c in doc.shape_poly],
        "shapes": [
            {
                "id": rec.id,
                "grade": rec.grade,
                "entropy": rec.entropy,
                "provenance": _provenance_to_json(rec.provenance),
                "poly": _poly_to_json(rec.poly),
            }
            for rec in doc.records
        ],
        "tree": {
            "root": doc.tree.root,
            "edges": [
                {
                    "child": child,
                    "parent": parent,
                    "word": word_to_str(word),
                }
                for child, (parent, word) in sorted(doc.tree.edges.items())
            ],
            "extra_edges": [
                {
                    "from": src,
                    "to": dst,
                    "word": word_to_str(word),
                    "sign": sign,
                }
                for src, dst, word, sign in doc.tree.extra_edges
            ],
        },
    }


def document_from_dict(data: dict) -> ShapeDocument:
    n = int(data["n"])
    d = int(data["d"])
    records = []
    for item in data["shapes"]:
        records.append(
            ShapeRecord(
                id=int(item["id"]),
                grade=int(item["grade"]),
                poly=_poly_from_json(item["poly"], n, d),
                provenance=_provenance_from_json(item["provenance"]),
                entropy=float(item["entropy"]),
            )
        )
    tree_data = data["tree"]
    edges = {
        int(e["child"]): (int(e["parent"]), SymWord(word_from_str(e["word"])))
        for e in tree_data["edges"]
    }
    extra = [
        (int(e["from"]), int(e["to"]), SymWord(word_from_str(e["word"])),
         int(e["sign"]))
        for e in tree_data["extra_edges"]
    ]
    return ShapeDocument(
        n=n,
        d=d,
        generator_order=data["generator_order"],
        shape_poly=[int(c) for c in data["shape_poly"]],
        records=records,
        tree=BranchingTree(root=int(tree_data["root"]), edges=edges,
                           extra_edges=extra),
    )


def dumps_document(doc: ShapeDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2) + "\n"


def loads_document(text: str) -> ShapeDocument:
    return document_from_dict(json.loads(text))


# --- DOT -----------------------------------------------------------------

def document_to_dot(doc: ShapeDocument) -> str:
    """Graphviz digraph: one node per shape labeled id@grade, solid tree
    edges parent -> child labeled with the word, dashed extra edges."""
    lines = ["digraph shapes {", "  rankdir=RL;", "  node [shape=box];"]
    names = {rec.id: f"{rec.id}@{rec.grade}" for rec in doc.records}
    for rec in doc.records:
        lines.append(f'  "{names[rec.id]}";')
    for child in sorted(doc.tree.edges):
        parent, word = doc.tree.edges[child]
        lines.append(
            f'  "{names[parent]}" -> "{names[child]}" '
            f'[label="{word_to_str(word)}"];'
        )
    for src, dst, word, sign in doc.tree.extra_edges:
        lines.append(
            f'  "{names[src]}" -> "{names[dst]}" '
            f'[label="{word_to_str(word)} ({sign:+d})", style=dashed];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- text report ----------------------------------------------------------

def report_to_text(result: EnumerationResult) -> str:
    rep: RunReport = result.report
    lines = [
        f"shapes: {len(result.records)} for n={result.n} d={result.d}",
        f"vocabulary: {rep.vocabulary_size} words, parallelism {rep.parallelism}",
        f"elapsed: {rep.elapsed:.3f}s",
        f"tree edges: {result.tree.edge_count()}, "
        f"extra edges: {len(result.tree.extra_edges)}",
        "",
        "grade  expected  found  tried  zero  survived  in_span  skipped  fallback",
    ]
    for g in sorted(rep.per_grade, reverse=True):
        s = rep.per_grade[g]
        lines.append(
            f"{g:5d}  {s.expected:8d}  {s.found:5d}  {s.tried:5d}  "
            f"{s.zero:4d}  {s.survived:8d}  {s.in_span:7d}  {s.skipped:7d}  "
            f"{s.fallback:8d}"
        )
    lines.append("")
    if rep.fallback_events:
        for g, filled in rep.fallback_events:
            lines.append(f"fallback at grade {g}: oracle filled {filled}")
    else:
        lines.append("fallback: none")
    if rep.annihilation_warnings:
        lines.append(
            f"annihilation warnings: {len(rep.annihilation_warnings)} "
            f"(shape, coordinate): "
            + ", ".join(f"({i},{c})" for i, c in rep.annihilation_warnings)
        )
    else:
        lines.append("annihilation warnings: none")
    return "\n".join(lines) + "\n"
