"""Invariants of (G,i) on the tangent space at 0 and the Igusa quartic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .exact import DenseMatrix, matrix_kernel
from .multipoly import (
    Polynomial,
    evaluate,
    homogeneous_monomials,
    negate_variables,
    perfect_square_root,
    permute_variables,
    substitute,
)
from .report import CheckReport, Recorder


@dataclass(frozen=True)
class InvariantRingPresentation:
    generators: tuple      # p_0..p_4 in t_0..t_3
    relation: Polynomial   # Ig_P in P_0..P_4
    y_forms: tuple         # y_1..y_6 as linear forms in P_0..P_4
    ig_y: Polynomial       # Ig_y in y_1..y_6


def invariant_generators() -> tuple:
    t0, t1, t2, t3 = Polynomial.variables(4)
    sq = [t * t for t in (t0, t1, t2, t3)]
    p0 = sq[0] * sq[0] + sq[1] * sq[1] + sq[2] * sq[2] + sq[3] * sq[3]
    p1 = (sq[0] * sq[1] + sq[2] * sq[3]).scale(2)
    p2 = (sq[0] * sq[2] + sq[1] * sq[3]).scale(2)
    p3 = (sq[0] * sq[3] + sq[1] * sq[2]).scale(2)
    p4 = (t0 * t1 * t2 * t3).scale(4)
    return (p0, p1, p2, p3, p4)


def igusa_relation(drop_last_term: bool = False, as_printed: bool = False) -> Polynomial:
    """Ig_P.  The printed form has the P_4^2 bracket with the opposite sign;
    ``as_printed=True`` reproduces it (it does not vanish on p_0..p_4)."""
    P0, P1, P2, P3, P4 = Polynomial.variables(5)
    bracket = P0 * P0 - P1 * P1 - P2 * P2 - P3 * P3 + P4 * P4
    if as_printed:
        bracket = -bracket
    out = P1 * P1 * P2 * P2 + P1 * P1 * P3 * P3 + P2 * P2 * P3 * P3 + bracket * P4 * P4
    if not drop_last_term:
        out = out - (P0 * P1 * P2 * P3).scale(2)
    return out


def relation_kernel(degree: int = 4) -> list[Polynomial]:
    """Basis of the degree-d part of ker(P_i -> p_i), by linear algebra on monomials."""
    gens = list(invariant_generators())
    monos = homogeneous_monomials(5, degree)
    images = [substitute(Polynomial.from_terms(5, {e: 1}), gens) for e in monos]
    support = sorted({m for img in images for m in img.terms})
    rows = [[img.coefficient(m) for img in images] for m in support]
    return [Polynomial.from_terms(5, {e: c for e, c in zip(monos, vec) if c})
            for vec in matrix_kernel(DenseMatrix.from_rows(rows))]


def y_forms() -> tuple:
    P0, P1, P2, P3, P4 = Polynomial.variables(5)
    half = Fraction(1, 2)
    return (
        P0 + P4.scale(3),
        P0 - P4.scale(3),
        (-P0 + P1.scale(3) + P2.scale(3) + P3.scale(3)).scale(half),
        (-P0 + P1.scale(3) - P2.scale(3) - P3.scale(3)).scale(half),
        (-P0 - P1.scale(3) + P2.scale(3) - P3.scale(3)).scale(half),
        (-P0 - P1.scale(3) - P2.scale(3) + P3.scale(3)).scale(half),
    )


def igusa_in_y() -> Polynomial:
    ys = Polynomial.variables(6)
    s2 = sum((y * y for y in ys), Polynomial.zero(6))
    s4 = sum((y ** 4 for y in ys), Polynomial.zero(6))
    return s2 * s2 - s4.scale(4)


@lru_cache(maxsize=None)
def canonical_presentation() -> InvariantRingPresentation:
    return InvariantRingPresentation(invariant_generators(), igusa_relation(), y_forms(), igusa_in_y())


def proportionality(a: Polynomial, b: Polynomial):
    """The scalar c with a == c * b, or None."""
    if b.is_zero():
        return None
    mono, cb = b.leading_term()
    c = a.coefficient(mono) / cb
    return c if a == b.scale(c) else None


def igusa_relation_check(pres: InvariantRingPresentation | None = None,
                         check_id: str = "igusa.relation") -> CheckReport:
    rec = Recorder(check_id)
    pres = pres or canonical_presentation()
    residue = substitute(pres.relation, list(pres.generators))
    rec.expect("residue_terms", len(residue), 0)
    if not residue.is_zero():
        mono, c = residue.leading_term()
        rec.note("leading_residue", [list(mono), c])
    values = [evaluate(p, (1, 0, 0, 0)) for p in pres.generators]
    rec.note("generators_at_(1,0,0,0)", values)
    rec.expect("relation_at_those_values", evaluate(pres.relation, values), 0)
    # the kernel in degree 4 is one-dimensional and spanned by the relation
    kernel = relation_kernel(4)
    rec.expect("degree4_kernel_dim", len(kernel), 1)
    if len(kernel) == 1:
        rec.require("relation spans the degree-4 kernel",
                    proportionality(kernel[0], pres.relation) is not None)
    printed = substitute(igusa_relation(as_printed=True), list(pres.generators))
    rec.note("printed_sign_residue_terms", len(printed))
    return rec.report()


def y_coordinate_check(pres: InvariantRingPresentation | None = None) -> CheckReport:
    rec = Recorder("igusa.y-coordinates")
    pres = pres or canonical_presentation()
    total = sum(pres.y_forms, Polynomial.zero(5))
    rec.expect("sum_of_y_is_zero", total.is_zero(), True)
    pulled = substitute(pres.ig_y, list(pres.y_forms))
    c = proportionality(pulled, pres.relation)
    rec.require("Ig_y(y(P)) is proportional to Ig_P", c is not None and c != 0)
    rec.note("scalar", c)
    return rec.report()


def hyperplane_pullbacks(pres: InvariantRingPresentation | None = None) -> dict:
    """{(a,b,c): y_a + y_b + y_c pulled back to t_0..t_3}, 1-based indices."""
    pres = pres or canonical_presentation()
    out = {}
    for trio in combinations(range(6), 3):
        form = pres.y_forms[trio[0]] + pres.y_forms[trio[1]] + pres.y_forms[trio[2]]
        out[tuple(k + 1 for k in trio)] = substitute(form, list(pres.generators))
    return out


def hyperplane_square_check(pres: InvariantRingPresentation | None = None) -> CheckReport:
    rec = Recorder("igusa.hyperplane-squares")
    pres = pres or canonical_presentation()
    pulls = hyperplane_pullbacks(pres)
    roots = {}
    for trio, q in pulls.items():
        r = perfect_square_root(q)
        rec.require(f"pullback of y{trio} is a square", r is not None)
        if r is not None:
            roots[trio] = r
    rec.expect("square_count", len(roots), 20)
    # complementary triples give proportional (negated) pullbacks
    bad_pairs = []
    for trio, q in pulls.items():
        comp = tuple(k for k in range(1, 7) if k not in trio)
        if proportionality(q, pulls[comp]) is None:
            bad_pairs.append(trio)
    rec.expect("non_proportional_complements", bad_pairs, [])
    distinct = [trio for trio in pulls if 1 in trio]
    quads = [roots[t].root for t in distinct if t in roots]
    proportional = [(a, b) for a, b in combinations(range(len(quads)), 2)
                    if proportionality(quads[a], quads[b]) is not None]
    rec.expect("distinct_quadrics", len(quads), 10)
    rec.expect("proportional_quadric_pairs", proportional, [])
    p0, p1, p2, p3, _ = pres.generators
    t = Polynomial.variables(4)
    sumsq = sum((x * x for x in t), Polynomial.zero(4))
    rec.expect("p0+p1+p2+p3_is_(sum t^2)^2", p0 + p1 + p2 + p3 == sumsq * sumsq, True)
    rec.expect("y1+y2+y3_over_(sum t^2)^2", proportionality(pulls[(1, 2, 3)], sumsq * sumsq), Fraction(3, 2))
    rec.note("square_roots", {"".join(map(str, k)): str(v.root) for k, v in roots.items() if 1 in k})
    return rec.report()


def relations_check() -> CheckReport:
    """The combined tangent-cone identities."""
    rec = Recorder("igusa.relations")
    for sub in (igusa_relation_check(), y_coordinate_check(), hyperplane_square_check()):
        rec.note(sub.id, sub.details)
        rec.require(f"{sub.id} passes", sub.passed, sub.details.get("failures"))
    return rec.report()


def even_sign_subsets(n: int = 4) -> list[tuple]:
    return [s for r in range(0, n + 1, 2) for s in combinations(range(n), r)]


def invariance_check(pres: InvariantRingPresentation | None = None) -> CheckReport:
    """Symmetries of p_0..p_4 under permutations and even sign changes of t.

    p_0 and p_4 are invariant under all of them; p_1, p_2, p_3 are invariant
    under the Klein four-group and even sign changes, and permuted by the rest.
    """
    rec = Recorder("igusa.invariance")
    pres = pres or canonical_presentation()
    gens = list(pres.generators)
    signs = even_sign_subsets()
    rec.expect("sign_changes_breaking_some_p", [s for s in signs for p in gens if negate_variables(p, s) != p], [])
    klein = [(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]
    rec.expect("klein_breaking_some_p", [k for k in klein for p in gens if permute_variables(p, k) != p], [])
    full = list(permutations(range(4)))
    rec.expect("p0_p4_fully_invariant",
               all(permute_variables(gens[k], g) == gens[k] for g in full for k in (0, 4)), True)
    middle = set(gens[1:4])
    rec.expect("p1_p2_p3_permuted", all({permute_variables(p, g) for p in gens[1:4]} == middle for g in full), True)
    moved = [g for g in full if any(permute_variables(p, g) != p for p in gens)]
    rec.note("permutations_moving_some_p", len(moved))
    # the relation is symmetric in P_1, P_2, P_3, so the presentation is preserved
    rel = pres.relation
    rec.expect("relation_symmetric_in_P1_P2_P3",
               all(permute_variables(rel, (0,) + tuple(1 + x for x in g) + (4,)) == rel
                   for g in permutations(range(3))), True)
    return rec.report()
