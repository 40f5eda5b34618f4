"""Descent enumeration of the antisymmetric module generators.

Every antisymmetric polynomial decomposes uniquely as sum_i Phi_i *
Psi_i where the Phi_i are symmetric (polynomials in the per-coordinate
elementary symmetric generators) and the Psi_i are the shapes: one
generator per grade counted by the shape polynomial.  The enumerator
walks grades downward from the single top-grade generator, applying a
vocabulary of symmetrized lowering words to every shape found so far.
A candidate is a new shape when it is nonzero, antisymmetric, and
extends the exact span of the shapes already accepted at its grade;
everything is integer arithmetic, so acceptance is never a judgement
call.

If the vocabulary fails to fill a grade, the enumerator falls back to
antisymmetrized occupation sets, which span the full antisymmetric
space at that grade.  Fallback activations are first-class report data,
and verify_completeness certifies the final generator set by checking
that the per-grade module rank matches the state-count series.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactla import SparseIntMatrix
from .multipoly import (
    MonomialIndex,
    MPoly,
    OddDimensionRequiredError,
    antisymmetrize,
    coeff_vector,
    elementary_symmetric,
    slater_basis,
    source_shape,
)
from .qseries import (
    Statistics,
    degree_D,
    ground_grade,
    shape_entropy,
    shape_poly,
    state_count_series,
)
from .shiftops import Letter, SymWord, Word, apply_symword

logger = logging.getLogger(__name__)


class IncompletenessError(RuntimeError):
    """The accepted generators fail to span at some grade."""


class NotationRegressionError(RuntimeError):
    """A pinned operator-notation identity stopped holding."""


# --- vocabulary -----------------------------------------------------------

@dataclass(frozen=True)
class EngineConfig:
    max_letters: int = 4
    max_amount: int = 3
    max_drop: int = 4
    exhaustive: bool = False   # keep scanning a grade after it has filled
    parallelism: int = 1       # recorded in the report; evaluation is sequential


@dataclass(frozen=True)
class Vocabulary:
    d: int
    config: EngineConfig
    words: tuple[SymWord, ...]

    def __len__(self) -> int:
        return len(self.words)


def _coordinate_atoms(c: int, config: EngineConfig) -> list[tuple[Letter, ...]]:
    """Net-lowering letter groups acting on a single coordinate: plain
    lowerings and raise-then-lower pairs (the lowering applies first)."""
    atoms = [(Letter(c, -m),) for m in range(1, config.max_amount + 1)]
    for b in range(2, config.max_amount + 1):
        for a in range(1, b):
            atoms.append((Letter(c, a), Letter(c, -b)))
    return atoms


def build_vocabulary(d: int, config: EngineConfig = EngineConfig()) -> Vocabulary:
    """All words formed by picking one atom for each coordinate of a
    nonempty coordinate subset, concatenated in descending coordinate
    order, within the letter-count and net-drop bounds.  Ordered by
    (|net|, length, letters); single amount-1 lowerings are included but
    the descent skips them since they annihilate every shape."""
    if d < 1:
        raise ValueError("d must be positive")
    if config.max_letters < 1 or config.max_amount < 1 or config.max_drop < 1:
        raise ValueError("vocabulary bounds must be positive")
    words = []
    for r in range(1, d + 1):
        for coords in itertools.combinations(range(d), r):
            atom_sets = [_coordinate_atoms(c, config) for c in coords]
            for chosen in itertools.product(*atom_sets):
                letters = tuple(
                    l for atom in sorted(chosen, key=lambda a: -a[0].coordinate)
                    for l in atom
                )
                if len(letters) > config.max_letters:
                    continue
                net = sum(l.step for l in letters)
                if not -config.max_drop <= net <= -1:
                    continue
                words.append(SymWord(Word(letters)))
    words.sort(key=lambda w: (-w.net_grade(), len(w.word.letters), w.word.letters))
    return Vocabulary(d=d, config=config, words=tuple(words))


def _is_single_unit_down(w: SymWord) -> bool:
    ls = w.word.letters
    return len(ls) == 1 and ls[0].step == -1


# --- run artifacts ----------------------------------------------------------

@dataclass(frozen=True)
class Provenance:
    """How a shape was produced: the root, a lowering word applied to a
    parent, or an oracle element.  poly == sign * (raw result / content)."""

    kind: str                       # "root" | "word" | "oracle"
    parent: int | None = None
    word: SymWord | None = None
    rows: tuple | None = None       # occupation set for oracle shapes
    content: int = 1
    sign: int = 1


@dataclass
class ShapeRecord:
    id: int
    grade: int
    poly: MPoly                     # primitive, positive leading coefficient
    provenance: Provenance
    entropy: float


@dataclass
class BranchingTree:
    root: int
    edges: dict[int, tuple[int, SymWord]]              # child -> (parent, word)
    extra_edges: list[tuple[int, int, SymWord, int]]   # (from, to, word, sign)

    def edge_count(self) -> int:
        return len(self.edges)


@dataclass
class GradeStats:
    expected: int
    found: int = 0
    tried: int = 0
    zero: int = 0
    survived: int = 0    # rejected: not annihilated by every unit lowering
    in_span: int = 0
    skipped: int = 0
    fallback: int = 0


@dataclass
class RunReport:
    n: int
    d: int
    vocabulary_size: int
    parallelism: int
    per_grade: dict[int, GradeStats]
    fallback_events: list[tuple[int, int]] = field(default_factory=list)
    decisions: list[tuple] = field(default_factory=list)
    annihilation_warnings: list[tuple[int, int]] = field(default_factory=list)
    elapsed: float = 0.0

    def expected_histogram(self) -> dict[int, int]:
        return {g: s.expected for g, s in self.per_grade.items() if s.expected}

    def found_histogram(self) -> dict[int, int]:
        return {g: s.found for g, s in self.per_grade.items() if s.found}


@dataclass
class EnumerationResult:
    n: int
    d: int
    records: list[ShapeRecord]
    tree: BranchingTree
    report: RunReport

    def histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for rec in self.records:
            out[rec.grade] = out.get(rec.grade, 0) + 1
        return dict(sorted(out.items()))


# --- descent ---------------------------------------------------------------

def _annihilated(p: MPoly, d: int) -> bool:
    return all(
        apply_symword(SymWord(Word((Letter(c, -1),))), p).is_zero()
        for c in range(d)
    )


def _check_annihilation(rec: ShapeRecord, n: int, d: int,
                        warnings: list[tuple[int, int]], hard: bool):
    # every shape must vanish under each symmetrized unit lowering; word
    # acceptance filters for this, so descent shapes satisfy it by
    # construction and only oracle fills can trip it (warn only: the
    # oracle trades the invariant for guaranteed span coverage)
    for c in range(d):
        if not apply_symword(SymWord(Word((Letter(c, -1),))), rec.poly).is_zero():
            if hard and n <= 3:
                raise AssertionError(
                    f"shape {rec.id} survives unit lowering on coordinate {c}"
                )
            logger.warning("shape %d survives unit lowering on coordinate %d",
                           rec.id, c)
            warnings.append((rec.id, c))


def enumerate_shapes(
    n: int, d: int, config: EngineConfig = EngineConfig()
) -> EnumerationResult:
    """Enumerate all n!^(d-1) shapes for n particles in odd dimension d."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if d % 2 == 0:
        raise OddDimensionRequiredError(f"enumeration needs odd d, got {d}")
    t0 = time.perf_counter()
    poly = shape_poly(n, d, Statistics.FERMION)
    top = degree_D(d, n)
    bottom = ground_grade(d, n)
    vocab = build_vocabulary(d, config)
    by_net: dict[int, list[tuple[int, SymWord]]] = {}
    for widx, w in enumerate(vocab.words):
        if _is_single_unit_down(w):
            continue
        by_net.setdefault(w.net_grade(), []).append((widx, w))

    per_grade = {top: GradeStats(expected=1, found=1)}
    report = RunReport(
        n=n, d=d, vocabulary_size=len(vocab), parallelism=config.parallelism,
        per_grade=per_grade,
    )

    src = source_shape(n, d)
    records = [
        ShapeRecord(0, top, src, Provenance(kind="root"),
                    shape_entropy(n, d, top))
    ]
    tree = BranchingTree(root=0, edges={}, extra_edges=[])
    _check_annihilation(records[0], n, d, report.annihilation_warnings,
                        hard=True)

    # fingerprints of accepted shapes at the grade being processed,
    # used to tag rejected candidates that reproduce a known shape
    for g in range(top - 1, bottom - 1, -1):
        expected = poly.coeff(g)
        stats = GradeStats(expected=expected)
        per_grade[g] = stats
        if expected == 0:
            continue
        registry = MonomialIndex()
        matrix = SparseIntMatrix()
        accepted_here: dict[tuple[int, tuple], list[int]] = {}
        candidates = [
            (rec, widx, w)
            for rec in records
            if rec.grade > g
            for widx, w in by_net.get(g - rec.grade, ())
        ]
        consumed = 0
        for rec, widx, w in candidates:
            if stats.found == expected and not config.exhaustive:
                break
            consumed += 1
            stats.tried += 1
            chi = apply_symword(w, rec.poly)
            if chi.is_zero():
                stats.zero += 1
                report.decisions.append((g, rec.id, widx, "zero", None))
                continue
            if not _annihilated(chi, d):
                # shapes vanish under every symmetrized unit lowering, so a
                # candidate that survives one is not a shape representative
                stats.survived += 1
                report.decisions.append((g, rec.id, widx, "survives", None))
                continue
            registry.extend_from(chi)
            matrix.resize(len(registry))
            vec = coeff_vector(chi, registry)
            prim, cont, sign = chi.normalized()
            if matrix.try_extend(vec):
                if not chi.is_antisymmetric():
                    raise AssertionError(
                        f"word {w} broke antisymmetry below shape {rec.id}"
                    )
                rid = len(records)
                new = ShapeRecord(
                    rid, g, prim,
                    Provenance(kind="word", parent=rec.id, word=w,
                               content=cont, sign=sign),
                    shape_entropy(n, d, g),
                )
                records.append(new)
                tree.edges[rid] = (rec.id, w)
                key = (len(prim.terms), prim.leading_monomial())
                accepted_here.setdefault(key, []).append(rid)
                stats.found += 1
                report.decisions.append((g, rec.id, widx, "accepted", rid))
                if stats.found > expected:
                    raise IncompletenessError(
                        f"grade {g}: accepted more than the expected "
                        f"{expected} shapes"
                    )
            else:
                stats.in_span += 1
                key = (len(prim.terms), prim.leading_monomial())
                match = next(
                    (rid for rid in accepted_here.get(key, ())
                     if records[rid].poly == prim),
                    None,
                )
                if match is not None:
                    tree.extra_edges.append((rec.id, match, w, sign))
                    report.decisions.append((g, rec.id, widx, "extra_edge", match))
                else:
                    report.decisions.append((g, rec.id, widx, "in_span", None))
        stats.skipped = len(candidates) - consumed

        if stats.found < expected:
            filled = 0
            for rows in slater_basis(n, d, g):
                chi = antisymmetrize(rows)
                registry.extend_from(chi)
                matrix.resize(len(registry))
                if matrix.try_extend(coeff_vector(chi, registry)):
                    prim, cont, sign = chi.normalized()
                    rid = len(records)
                    new = ShapeRecord(
                        rid, g, prim,
                        Provenance(kind="oracle", rows=rows,
                                   content=cont, sign=sign),
                        shape_entropy(n, d, g),
                    )
                    records.append(new)
                    key = (len(prim.terms), prim.leading_monomial())
                    accepted_here.setdefault(key, []).append(rid)
                    stats.found += 1
                    stats.fallback += 1
                    filled += 1
                    _check_annihilation(new, n, d,
                                        report.annihilation_warnings,
                                        hard=False)
                    if stats.found == expected:
                        break
            report.fallback_events.append((g, filled))
            logger.info("grade %d: oracle filled %d shapes", g, filled)
            if stats.found < expected:
                raise IncompletenessError(
                    f"grade {g}: {stats.found} of {expected} shapes even "
                    f"with the oracle"
                )

    total = sum(s.found for s in per_grade.values())
    if total != math.factorial(n) ** (d - 1):
        raise IncompletenessError(
            f"found {total} shapes, expected {math.factorial(n) ** (d - 1)}"
        )
    report.elapsed = time.perf_counter() - t0
    return EnumerationResult(n=n, d=d, records=records, tree=tree, report=report)


# --- symmetric-generator monomials ------------------------------------------

def generator_monomials(n: int, d: int, degree: int) -> list[tuple]:
    """Exponent tuples over the d*n elementary-symmetric generators with
    weighted total equal to degree (generator e_j carries weight j)."""
    weights = [j for _ in range(d) for j in range(1, n + 1)]
    out: list[tuple] = []
    exp = [0] * len(weights)

    def rec(i: int, rem: int):
        if i == len(weights):
            if rem == 0:
                out.append(tuple(exp))
            return
        w = weights[i]
        for k in range(rem // w, -1, -1):
            exp[i] = k
            rec(i + 1, rem - k * w)
        exp[i] = 0

    rec(0, degree)
    return out


@functools.lru_cache(maxsize=None)
def _generator_expansion(n: int, d: int, gexp: tuple) -> MPoly:
    """Expand a generator monomial into the particle variables."""
    for i, e in enumerate(gexp):
        if e:
            reduced = gexp[:i] + (e - 1,) + gexp[i + 1:]
            c, j = divmod(i, n)
            return _generator_expansion(n, d, reduced) * elementary_symmetric(
                c, j + 1, n, d
            )
    return MPoly.const(n, d, 1)


def module_span_matrix(
    g: int, records: Sequence[ShapeRecord], n: int, d: int
) -> SparseIntMatrix:
    """Exact row space of {generator monomial * shape} at grade g.

    Feeding rows in descending leading-monomial order makes most of them
    land on fresh pivot columns, so the elimination stays cheap.
    """
    recipes = []
    support: set[tuple] = set()
    for rec in records:
        if rec.grade > g:
            continue
        for gexp in generator_monomials(n, d, g - rec.grade):
            prod = _generator_expansion(n, d, gexp) * rec.poly
            support.update(prod.terms)
            recipes.append((prod.leading_monomial(), rec.id, gexp, rec))
    registry = MonomialIndex()
    for mono in sorted(support, reverse=True):
        registry.add(mono)
    matrix = SparseIntMatrix(ncols=len(registry))
    recipes.sort(key=lambda r: (registry.id_of(r[0]), r[1], r[2]))
    for _, _, gexp, rec in recipes:
        prod = _generator_expansion(n, d, gexp) * rec.poly
        matrix.try_extend(coeff_vector(prod, registry))
    return matrix


def verify_completeness(
    n: int, d: int, records: Sequence[ShapeRecord]
) -> list[tuple[int, int, int]]:
    """Check rank(module span) == state-count coefficient at every grade
    up to the top grade.  Returns (grade, expected, rank) triples; any
    deficit is a hard error."""
    top = degree_D(d, n)
    series = state_count_series(n, d, top)
    results = []
    for g in range(top + 1):
        rank = module_span_matrix(g, records, n, d).rank()
        expected = series.coeff(g)
        results.append((g, expected, rank))
        if rank != expected:
            raise IncompletenessError(
                f"grade {g}: module rank {rank} != state count {expected}"
            )
    return results


# --- pinned notation checks --------------------------------------------------

def verify_sign_conflict(n: int = 3, d: int = 3) -> int:
    """Two lowering routes from the source shape must agree up to an overall
    sign.  Returns that relative sign (-1 for the 3-particle case)."""
    if d < 3 or d % 2 == 0:
        raise ValueError("the route words use three coordinates; d must be odd and >= 3")
    if n < 2:
        raise ValueError("n must be at least 2")
    s = source_shape(n, d)
    target = s.grade() - 5
    route_a = apply_symword(
        SymWord(Word((Letter(2, -1), Letter(0, -2)))),
        apply_symword(SymWord(Word((Letter(1, -1), Letter(0, -1)))), s),
    )
    route_b = apply_symword(
        SymWord(Word((Letter(1, -1), Letter(0, -2)))),
        apply_symword(SymWord(Word((Letter(2, -1), Letter(0, -1)))), s),
    )
    if route_a.is_zero() or route_b.is_zero():
        raise NotationRegressionError("a lowering route collapsed to zero")
    if not (route_a.is_homogeneous() and route_a.grade() == target
            and route_b.grade() == target):
        raise NotationRegressionError(f"lowering routes landed off grade {target}")
    if (route_a + route_b).is_zero():
        return -1
    if (route_a - route_b).is_zero():
        return 1
    raise NotationRegressionError("lowering routes are not proportional")


# --- exact decomposition ------------------------------------------------------

def express_in_basis(
    psi: MPoly, records: Sequence[ShapeRecord], n: int, d: int
) -> list[dict[tuple, Fraction]]:
    """Decompose an antisymmetric homogeneous psi as sum_i Phi_i * Psi_i.

    Returns one Phi per record as {generator exponent tuple: coefficient};
    the decomposition is unique and exact.  psi must live at a grade the
    completeness check covers.
    """
    out: list[dict[tuple, Fraction]] = [{} for _ in records]
    if psi.is_zero():
        return out
    if not psi.is_homogeneous():
        raise ValueError("psi must be homogeneous")
    if not psi.is_antisymmetric():
        raise ValueError("psi must be antisymmetric")
    g = psi.grade()
    if g > degree_D(d, n):
        raise ValueError(f"grade {g} beyond the verified range")

    recipes = []
    support: set[tuple] = set(psi.terms)
    for idx, rec in enumerate(records):
        if rec.grade > g:
            continue
        for gexp in generator_monomials(n, d, g - rec.grade):
            prod = _generator_expansion(n, d, gexp) * rec.poly
            support.update(prod.terms)
            recipes.append((prod.leading_monomial(), idx, gexp, prod))
    registry = MonomialIndex()
    for mono in sorted(support, reverse=True):
        registry.add(mono)
    recipes.sort(key=lambda r: (registry.id_of(r[0]), r[1], r[2]))

    # integer fraction-free echelon over the recipe rows; every pivot row
    # remembers the pivots that built it, so exact rational coefficients
    # are recovered afterwards for just the rows the target touches
    pivots: dict[int, dict] = {}

    def reduce_traced(vec: dict[int, int]):
        # invariant: vec == scale * original - sum(used[c] * pivot_row_c)
        scale = 1
        used: dict[int, int] = {}
        while vec:
            col = min(vec)
            entry = pivots.get(col)
            if entry is None:
                break
            prow = entry["row"]
            a = vec[col]
            p = prow[col]
            g = math.gcd(p, a)
            pm, am = p // g, a // g
            if pm != 1:
                for c in vec:
                    vec[c] *= pm
                for c in used:
                    used[c] *= pm
                scale *= pm
            for c, rc in prow.items():
                new = vec.get(c, 0) - am * rc
                if new:
                    vec[c] = new
                else:
                    vec.pop(c, None)
            used[col] = am
        return vec, scale, used

    for ridx, (_, _, _, prod) in enumerate(recipes):
        vec = {registry.id_of(m): c for m, c in prod.terms.items()}
        vec, scale, used = reduce_traced(vec)
        if not vec:
            continue
        g = math.gcd(scale, *vec.values(), *used.values())
        if g > 1:
            vec = {c: x // g for c, x in vec.items()}
            used = {c: x // g for c, x in used.items()}
            scale //= g
        pivots[min(vec)] = {
            "row": vec, "scale": scale, "recipe": ridx, "used": used,
        }

    target = {registry.id_of(m): c for m, c in psi.terms.items()}
    target, tscale, tused = reduce_traced(target)
    if target:
        raise IncompletenessError("psi is outside the module span")

    # pivot_row_c == scale_c * recipe_c - sum(used_c[c2] * pivot_row_c2),
    # acyclic by ascending column, so ascending expansion stays integral
    needed: set[int] = set()
    stack = list(tused)
    while stack:
        c = stack.pop()
        if c not in needed:
            needed.add(c)
            stack.extend(pivots[c]["used"])
    combos: dict[int, dict[int, int]] = {}
    for col in sorted(needed):
        entry = pivots[col]
        acc = {entry["recipe"]: entry["scale"]}
        for c2, k in entry["used"].items():
            for r, x in combos[c2].items():
                v = acc.get(r, 0) - k * x
                if v:
                    acc[r] = v
                else:
                    acc.pop(r, None)
        combos[col] = acc
    flat: dict[int, int] = {}
    for c, k in tused.items():
        for r, x in combos[c].items():
            v = flat.get(r, 0) + k * x
            if v:
                flat[r] = v
            else:
                flat.pop(r, None)
    for r, x in flat.items():
        _, idx, gexp, _ = recipes[r]
        out[idx][gexp] = Fraction(x, tscale)
    return out


def assemble(
    records: Sequence[ShapeRecord],
    phis: Sequence[dict[tuple, Fraction]],
    n: int,
    d: int,
) -> MPoly:
    """Evaluate sum_i Phi_i * Psi_i back in the particle variables."""
    acc: dict[tuple, Fraction] = {}
    for rec, phi in zip(records, phis):
        for gexp, coeff in phi.items():
            if not coeff:
                continue
            prod = _generator_expansion(n, d, gexp) * rec.poly
            for m, c in prod.terms.items():
                new = acc.get(m, 0) + coeff * c
                if new:
                    acc[m] = new
                else:
                    acc.pop(m, None)
    for m, c in acc.items():
        if c.denominator != 1:
            raise ValueError(f"non-integer coefficient {c} at {m}")
    return MPoly(n, d, {m: int(c) for m, c in acc.items()})
