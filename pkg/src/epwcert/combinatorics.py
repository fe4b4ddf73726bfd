"""Sigma6-invariant hyperplane arrangements, their 60 planes and the sextics they force."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from . import perm
from .epw import (
    BETA_GENERATORS,
    F6_COEFFICIENTS,
    F6_DUAL_COEFFICIENTS,
    INCIDENT_PARTITIONS,
    incident_planes,
    labels_for_partition,
    pair_partitions,
    partition_from_cycles,
    sextic_from_coefficients,
)
from .exact import DenseMatrix, GaussianRational, matrix_inverse, matrix_kernel, matrix_rank
from .exterior import PlaneLabel, ProjectivePlane, normalize_point, plane_intersection_dimension, plane_intersection_point
from .multipoly import Polynomial, gradient, perfect_square_root, polynomial_det, restrict_to_span, symmetric_monomial_basis
from .report import CheckReport, Recorder

HALF = Fraction(1, 2)
EXCLUDED = {1: Fraction(-1, 3), 2: Fraction(-1, 6)}
SHIFT = {1: 2, 2: 1}


class SingularReductionError(ValueError):
    """N_i^t is not invertible at the requested parameter."""


class RankDegenerationError(ValueError):
    pass


# ---------------------------------------------------------------- hyperplanes

@dataclass(frozen=True)
class TwoValueHyperplane:
    kind: str            # "H", "H_i", "H_ij" or "H_ijk"
    indices: tuple = ()
    t: Fraction = Fraction(0)

    def form(self) -> tuple:
        if self.kind == "H":
            return (Fraction(1),) * 6
        if self.kind == "H_ijk":
            return tuple(Fraction(int(k in self.indices)) - HALF for k in range(6))
        return tuple(Fraction(int(k in self.indices)) + self.t for k in range(6))

    def contains(self, plane: ProjectivePlane) -> bool:
        a = self.form()
        return all(sum((GaussianRational.of(x) * y for x, y in zip(a, row)), GaussianRational.of(0)) == 0
                   for row in plane.rows())

    def __str__(self):
        if self.kind == "H":
            return "H"
        sub = "".join(map(str, self.indices))
        return f"H_{sub}" if self.kind == "H_ijk" else f"H^{self.t}_{sub}"


def family_hyperplanes(family: int, t) -> dict:
    t = Fraction(t)
    if family == 1:
        out = {("H",): TwoValueHyperplane("H")}
        for pair in combinations(range(6), 2):
            out[pair] = TwoValueHyperplane("H_ij", pair, t)
    elif family == 2:
        out = {}
        for trio in combinations(range(6), 3):
            if 0 in trio:
                out[trio] = TwoValueHyperplane("H_ijk", trio)
        for k in range(6):
            out[(k,)] = TwoValueHyperplane("H_i", (k,), t)
    else:
        raise ValueError(f"family must be 1 or 2, got {family}")
    return out


def _trio_key(trio) -> tuple:
    trio = tuple(sorted(trio))
    return trio if 0 in trio else tuple(k for k in range(6) if k not in trio)


def _projective_key(form) -> tuple:
    lead = next(x for x in form if x)
    return tuple(Fraction(x) / lead for x in form)


def projective_orbit(form) -> set:
    return {_projective_key(tuple(form[g[k]] for k in range(6))) for g in permutations(range(6))}


def _max_scalar_symmetry(sizes: tuple, zero_class: bool) -> int:
    """Largest order of a scalar lambda permuting the values, given class sizes."""
    r = len(sizes)
    best = 1
    for m in range(2, r + 1):
        nonzero = list(sizes[1:]) if zero_class else list(sizes)
        if len(nonzero) % m:
            continue
        # classes in one lambda-cycle must have equal size
        counts = {}
        for s in nonzero:
            counts[s] = counts.get(s, 0) + 1
        if all(c % m == 0 for c in counts.values()):
            best = max(best, m)
    return best


def small_orbit_shapes(limit: int = 16) -> list[dict]:
    """Coefficient patterns whose projective Sigma6-orbit can have <= limit elements.

    A form with value classes of sizes n_1..n_r has projective stabilizer
    (Young subgroup) x (cyclic group of scalars permuting the values).
    """
    out = []

    def compositions(n, largest):
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in compositions(n - k, k):
                yield (k,) + rest

    for sizes in compositions(6, 6):
        young = 1
        for s in sizes:
            young *= factorial(s)
        for zero_class in ([False, True] if len(sizes) > 1 else [False]):
            # with a zero class, rotate so each class size gets the chance to be zero
            candidates = sorted(set(sizes)) if zero_class else [None]
            for zsize in candidates:
                ordered = sizes
                if zero_class:
                    rest = list(sizes)
                    rest.remove(zsize)
                    ordered = (zsize,) + tuple(rest)
                m = _max_scalar_symmetry(ordered, zero_class)
                orbit = 720 // (young * m)
                if orbit <= limit:
                    out.append({"class_sizes": list(ordered), "zero_class": zero_class, "values": len(sizes),
                                "scalar_symmetry": m, "orbit": orbit})
    uniq = []
    for item in out:
        if item not in uniq:
            uniq.append(item)
    return uniq


def classify_invariant_hyperplane_sets() -> CheckReport:
    rec = Recorder("combinatorics.hyperplane-classes")
    third = Fraction(1, 3)
    reps = {
        "H": TwoValueHyperplane("H").form(),
        "H_i": TwoValueHyperplane("H_i", (0,), third).form(),
        "H_ij": TwoValueHyperplane("H_ij", (0, 1), third).form(),
        "H_ijk": TwoValueHyperplane("H_ijk", (0, 1, 2)).form(),
    }
    lengths = tuple(len(projective_orbit(reps[k])) for k in ("H", "H_i", "H_ij", "H_ijk"))
    rec.expect("two_value_orbit_lengths", lengths, (1, 6, 15, 10))
    generic_trio = tuple(Fraction(int(k < 3)) + third for k in range(6))
    rec.expect("generic_three_three_orbit", len(projective_orbit(generic_trio)), 20)
    shapes = small_orbit_shapes(16)
    two_valued = sorted({s["orbit"] for s in shapes if s["values"] <= 2})
    rec.expect("two_value_small_orbits", two_valued, [1, 6, 10, 15])
    extra = [s for s in shapes if s["values"] > 2]
    rec.note("other_small_orbits", extra)
    difference = tuple(Fraction(1) if k == 0 else Fraction(-1) if k == 1 else Fraction(0) for k in range(6))
    rec.expect("x0_minus_x1_orbit", len(projective_orbit(difference)), 15)
    sizes = sorted({s["orbit"] for s in shapes})
    unions = sorted({tuple(sorted(c)) for r in (1, 2, 3) for c in combinations(sizes + sizes, r) if sum(c) == 16
                     and all(c.count(x) <= 1 for x in c)})
    rec.expect("sixteen_unions", unions, [(1, 15), (6, 10)])
    rec.expect("two_plus_fourteen_possible", 2 in sizes or 14 in sizes, False)
    braid = braid_arrangement_planes()
    rec.note("braid_plus_H_planes", braid)
    # the three-valued orbit does not give 60 planes each in exactly 4 hyperplanes
    rec.require("{H} with x_i = x_j lacks the 60-plane property",
                braid != {"planes": 60, "containment_counts": {4: 60}}, braid)
    return rec.report()


def braid_arrangement_planes() -> dict:
    """{H} plus the 15 hyperplanes x_i = x_j: count planes lying in >= 4 of them."""
    forms = [(Fraction(1),) * 6]
    for i, j in combinations(range(6), 2):
        forms.append(tuple(Fraction(1 if k == i else -1 if k == j else 0) for k in range(6)))
    return _planes_in_four(forms)


def _planes_in_four(forms: list) -> dict:
    planes = {}
    for quad in combinations(range(len(forms)), 4):
        rows = [forms[k] for k in quad]
        if matrix_rank(DenseMatrix.from_rows(rows)) != 3:
            continue
        plane = ProjectivePlane.from_equations(rows)
        planes.setdefault(plane, set()).update(quad)
    counts = {}
    for plane, _ in planes.items():
        n = sum(1 for f in forms if _form_vanishes(f, plane))
        counts[n] = counts.get(n, 0) + 1
    return {"planes": len(planes), "containment_counts": counts}


def _form_vanishes(form, plane: ProjectivePlane) -> bool:
    return all(sum((GaussianRational.of(x) * y for x, y in zip(form, row)), GaussianRational.of(0)) == 0
               for row in plane.rows())


# ---------------------------------------------------------------- sixty planes

@dataclass
class FamilyPlane:
    plane: ProjectivePlane
    kind: str                 # "1a", "1b", "2a", "2b"
    partition: frozenset      # the pair-partition of {0..5} attached to the plane
    hyperplanes: tuple        # keys of the four hyperplanes
    containing: int = 4       # how many of the 16 hyperplanes contain it


@dataclass
class PlaneFamilyInstance:
    family: int
    t: Fraction
    hyperplanes: dict
    planes: list = field(default_factory=list)

    def of_kind(self, kind: str) -> list[FamilyPlane]:
        return [p for p in self.planes if p.kind == kind]


def _partition(*pairs) -> frozenset:
    return frozenset(frozenset(p) for p in pairs)


def _four_cycles(quad):
    a, b, c, d = quad
    return [(a, b, c, d), (a, b, d, c), (a, c, b, d)]


def _pattern_planes(family: int):
    """(kind, hyperplane keys, partition) following the index patterns."""
    out = []
    if family == 1:
        for quad in combinations(range(6), 4):
            rest = tuple(k for k in range(6) if k not in quad)
            for cyc in _four_cycles(quad):
                keys = tuple(tuple(sorted((cyc[k], cyc[(k + 1) % 4]))) for k in range(4))
                out.append(("1a", keys, _partition((cyc[0], cyc[2]), (cyc[1], cyc[3]), rest)))
        for part in pair_partitions():
            out.append(("1b", (("H",),) + tuple(part), _partition(*part)))
    else:
        for i in range(6):
            for m in range(6):
                if m == i:
                    continue
                js = tuple(k for k in range(6) if k not in (i, m))
                for cyc in _four_cycles(js):
                    keys = tuple(_trio_key((i, cyc[k], cyc[(k + 1) % 4])) for k in range(4))
                    out.append(("2a", keys, _partition((i, m), (cyc[0], cyc[2]), (cyc[1], cyc[3]))))
        for k1, k2 in combinations(range(6), 2):
            rest = [k for k in range(6) if k not in (k1, k2)]
            for i, j in combinations(rest, 2):
                other = tuple(k for k in rest if k not in (i, j))
                keys = (_trio_key((i, j, k1)), _trio_key((i, j, k2)), (k1,), (k2,))
                out.append(("2b", keys, _partition((k1, k2), (i, j), other)))
    return out


def build_sixty_planes(family: int, t, strict: bool = True) -> PlaneFamilyInstance:
    """The 60 planes of the family at t.  With ``strict`` every plane must lie
    in exactly 4 of the 16 hyperplanes; degenerate parameters need strict=False."""
    t = Fraction(t)
    hyper = family_hyperplanes(family, t)
    inst = PlaneFamilyInstance(family, t, hyper)
    seen = {}
    for kind, keys, part in _pattern_planes(family):
        rows = [hyper[k].form() for k in keys]
        if matrix_rank(DenseMatrix.from_rows(rows)) != 3:
            raise RankDegenerationError(f"family {family}, t={t}: {kind} {[str(hyper[k]) for k in keys]} "
                                        f"do not cut out a plane")
        plane = ProjectivePlane.from_equations(rows)
        if plane in seen:
            prev = seen[plane]
            if prev.kind != kind or prev.partition != part:
                raise RankDegenerationError(f"plane {plane} arises with two different tags")
            continue
        fp = FamilyPlane(plane, kind, part, keys)
        seen[plane] = fp
        inst.planes.append(fp)
    for fp in inst.planes:
        containing = [k for k, h in hyper.items() if h.contains(fp.plane)]
        fp.containing = len(containing)
        if strict and len(containing) != 4:
            raise RankDegenerationError(f"plane {fp.plane} lies in {len(containing)} hyperplanes")
    return inst


def family_planes_check(t=Fraction(-1, 2)) -> CheckReport:
    rec = Recorder("combinatorics.families")
    labels = {1: "even", 2: "odd"}
    for family, kinds in ((1, ("1a", "1b")), (2, ("2a", "2b"))):
        inst = build_sixty_planes(family, t)
        rec.expect(f"family{family}_type_counts", tuple(len(inst.of_kind(k)) for k in kinds),
                   (45, 15) if family == 1 else (15, 45))
        generic = _planes_in_four([h.form() for h in inst.hyperplanes.values()])
        rec.expect(f"family{family}_all_4_subsets", generic, {"planes": 60, "containment_counts": {4: 60}})
        by_label = {}
        for part in pair_partitions():
            for lab in labels_for_partition(part, labels[family]):
                by_label[ProjectivePlane.from_label(lab)] = lab
        rec.expect(f"family{family}_planes_match_labels", set(by_label) == {fp.plane for fp in inst.planes}, True)
        bad_partition = [str(by_label[fp.plane]) for fp in inst.planes
                         if fp.plane in by_label and by_label[fp.plane].partition() != fp.partition]
        rec.expect(f"family{family}_partition_tags_agree", bad_partition, [])
        minus = {}
        for fp in inst.planes:
            if fp.plane in by_label:
                minus.setdefault(fp.kind, set()).add(by_label[fp.plane].minus_count())
        rec.note(f"family{family}_minus_signs_by_type", {k: sorted(v) for k, v in sorted(minus.items())})
    inst2 = build_sixty_planes(2, t)
    twenty = set(incident_planes())
    rec.expect("incident_twenty_among_family2", len(twenty & {fp.plane for fp in inst2.planes}), 20)
    for t_other in (Fraction(1), Fraction(0), Fraction(-1)):
        for family in (1, 2):
            inst = build_sixty_planes(family, t_other)
            rec.expect(f"family{family}_t={t_other}_planes", len(inst.planes), 60)
    return rec.report()


# ---------------------------------------------------------------- the sextic

def recover_sextic(family: int, t, instance: PlaneFamilyInstance | None = None) -> list[tuple]:
    """Kernel (as coefficient vectors in the monomial-symmetric basis) of the
    conditions that f and its six partials vanish on one plane of each type."""
    inst = instance or build_sixty_planes(family, t, strict=False)
    kinds = ("1a", "1b") if family == 1 else ("2a", "2b")
    chosen = [inst.of_kind(k)[0].plane for k in kinds]
    basis = symmetric_monomial_basis(6, 6)
    conditions: dict = {}
    for col, b in enumerate(basis):
        for pidx, plane in enumerate(chosen):
            rows = plane.rows()
            for didx, q in enumerate([b] + gradient(b)):
                r = restrict_to_span(q, rows)
                for mono, c in r.terms.items():
                    conditions.setdefault((pidx, didx, mono), [0] * len(basis))[col] = c
    matrix = DenseMatrix.from_rows(list(conditions.values()))
    out = []
    for vec in matrix_kernel(matrix):
        lead = next(v for v in vec if v)
        out.append(tuple(v / lead for v in vec))
    return out


def recovered_polynomial(vec):
    return sextic_from_coefficients(vec)


def recover_check() -> CheckReport:
    rec = Recorder("combinatorics.recover")
    half = Fraction(-1, 2)
    for family, expected in ((2, F6_COEFFICIENTS), (1, F6_DUAL_COEFFICIENTS)):
        inst = build_sixty_planes(family, half)
        kernel = recover_sextic(family, half, inst)
        rec.expect(f"family{family}_kernel_dim", len(kernel), 1)
        if len(kernel) == 1:
            rec.expect(f"family{family}_generator", tuple(kernel[0]), tuple(GaussianRational.of(c) for c in expected))
            f = recovered_polynomial(kernel[0])
            polys = [f] + gradient(f)
            bad = [str(fp.plane) for fp in inst.planes
                   if any(not restrict_to_span(q, fp.plane.rows()).is_zero() for q in polys)]
            rec.expect(f"family{family}_singular_along_all_60", bad, [])
    generic = {}
    for family in (1, 2):
        kernel = recover_sextic(family, 1)
        generic[f"family{family}"] = {"dim": len(kernel), "generator": [str(v) for v in kernel[0]] if kernel else None}
    rec.note("t=1", generic)
    rec.expect("t=1_kernel_dims", (generic["family1"]["dim"], generic["family2"]["dim"]), (1, 1))
    degen = degenerate_sextics()
    rec.note("degenerations", degen.details)
    rec.require("degenerate parameters behave as stated", degen.passed, degen.details.get("failures"))
    red = {}
    for family, t in ((1, 0), (2, 0), (1, 1), (2, 1)):
        r = reduction_map_check(family, t)
        red[f"family{family}_t={t}"] = r.details
        rec.require(f"reduction family {family} t={t}", r.passed, r.details.get("failures"))
    rec.note("reduction", red)
    return rec.report()


def _common_point(planes: list[ProjectivePlane]) -> list:
    rows = [eq for p in planes for eq in p.equations()]
    return matrix_kernel(DenseMatrix.from_rows(rows))


def degenerate_sextics() -> CheckReport:
    rec = Recorder("combinatorics.degenerate")
    third, sixth, half = Fraction(-1, 3), Fraction(-1, 6), Fraction(-1, 2)
    inst1 = build_sixty_planes(1, third, strict=False)
    counts = {}
    for fp in inst1.planes:
        counts[fp.containing] = counts.get(fp.containing, 0) + 1
    rec.note("family1_t=-1/3_containment_counts", counts)
    k1 = recover_sextic(1, third, inst1)
    rec.expect("family1_t=-1/3_kernel_dim", len(k1), 1)
    if k1:
        root = perfect_square_root(recovered_polynomial(k1[0]))
        rec.require("family 1 at t=-1/3 is the square of a cubic", root is not None)
        if root is not None:
            rec.note("cubic", str(root.root))
            rec.note("cubic_scalar", root.scalar)
    inst = build_sixty_planes(2, sixth, strict=False)
    common = _common_point([fp.plane for fp in inst.planes])
    rec.expect("family2_t=-1/6_common_point_dim", len(common), 1)
    if common:
        rec.expect("common_point", normalize_point(common[0]), tuple(GaussianRational.of(1) for _ in range(6)))
    for family in (1, 2):
        kc = recover_sextic(family, half)
        rec.expect(f"control_family{family}_not_square",
                   perfect_square_root(recovered_polynomial(kc[0])) is None, True)
        ctrl = build_sixty_planes(family, half)
        rec.expect(f"control_family{family}_common_points", len(_common_point([fp.plane for fp in ctrl.planes])), 0)
    return rec.report()


# ---------------------------------------------------------------- reduction map

def reduction_matrix(family: int, t) -> DenseMatrix:
    t = Fraction(t)
    c = SHIFT[family]
    rows = [[-(t + 1) + (6 * t + c if i == j else 0) for j in range(6)] for i in range(6)]
    return DenseMatrix.from_rows(rows)


def _match_family(family: int, form) -> tuple:
    """(kind, indices, t') for a form that is a member of the family, else None."""
    form = [Fraction(x) for x in form]
    values = sorted(set(form))
    if len(values) == 1:
        return ("H", (), None) if family == 1 else None
    if len(values) != 2:
        return None
    for u in values:
        idx = tuple(k for k in range(6) if form[k] == u)
        v = next(x for x in values if x != u)
        if family == 2 and len(idx) == 3 and u == -v:
            return ("H_ijk", _trio_key(idx), None)
        if (family == 1 and len(idx) == 2) or (family == 2 and len(idx) == 1):
            return ("H_ij" if family == 1 else "H_i", idx, v / (u - v))
    return None


def reduction_determinant(family: int):
    """det N_i^t as a polynomial in t, and the claim det = (c - 6)(6t + c)^5."""
    t = Polynomial.variable(1, 0)
    c = SHIFT[family]
    mat = [[-(t + 1) + (t.scale(6) + c if i == j else 0) for j in range(6)] for i in range(6)]
    det = polynomial_det(mat)
    return det, det == (t.scale(6) + c) ** 5 * (c - 6)


def singular_parameters(family: int) -> list[Fraction]:
    det, factored = reduction_determinant(family)
    if not factored:
        raise ValueError("unexpected determinant")
    return [Fraction(-SHIFT[family], 6)]


def reduction_map_check(family: int, t) -> CheckReport:
    """Apply N_i^t to the 16 hyperplanes and read off the image parameter.

    Forms are pulled back (a -> a N, the hyperplanes whose image under
    x -> N x is the original) and pushed forward (a -> a N^-1); both are reported.
    """
    t = Fraction(t)
    if t in singular_parameters(family):
        raise SingularReductionError(f"N_{family}^t is singular at t={t}")
    rec = Recorder("combinatorics.reduction-map")
    n = reduction_matrix(family, t)
    if matrix_rank(n) != 6:
        raise SingularReductionError(f"N_{family}^t is singular at t={t}")
    n_inv = matrix_inverse(n)
    rec.note("family", family)
    rec.note("t", t)
    for name, mat in (("pullback", n), ("pushforward", n_inv)):
        images, params = [], set()
        for h in family_hyperplanes(family, t).values():
            a = h.form()
            img = [sum((GaussianRational.of(a[i]) * mat[i, j] for i in range(6)), GaussianRational.of(0)).re
                   for j in range(6)]
            match = _match_family(family, img)
            images.append(match)
            if match and match[2] is not None:
                params.add(match[2])
        rec.expect(f"{name}_all_in_family", all(m is not None for m in images), True)
        rec.expect(f"{name}_single_parameter", len(params), 1)
        if len(params) == 1:
            t_new = params.pop()
            rec.note(f"{name}_t_prime", t_new)
            if name == "pullback":
                rec.expect("pullback_lands_at_t=-1", t_new, Fraction(-1))
            kinds = sorted({(m[0], m[1]) for m in images if m})
            rec.expect(f"{name}_image_is_a_full_16_set", len(kinds), 16)
    return rec.report()


# ---------------------------------------------------------------- incidence

def permute_plane(plane: ProjectivePlane, g) -> ProjectivePlane:
    rows = []
    for r in plane.rows():
        new = [0] * 6
        for k, v in enumerate(r):
            new[g[k]] = v
        rows.append(new)
    return ProjectivePlane(rows)


def _meets_in_point_predicate(a: FamilyPlane, b: FamilyPlane) -> bool:
    """The partition rules for distinct planes of family 1."""
    if a.kind == "1b" and b.kind == "1b":
        return not (a.partition & b.partition)
    # (1a)x(1a) and (1a)x(1b): same partition, or partitions with no common pair
    return a.partition == b.partition or not (a.partition & b.partition)


@lru_cache(maxsize=None)
def _intersection_table(family: int, t: Fraction):
    inst = build_sixty_planes(family, t)
    dims = {}
    for i, j in combinations(range(len(inst.planes)), 2):
        dims[(i, j)] = plane_intersection_dimension(inst.planes[i].plane, inst.planes[j].plane)
    return inst, dims


def intersection_rule_check(family: int = 1, t=Fraction(-1, 2)) -> CheckReport:
    rec = Recorder("combinatorics.intersection-rules")
    inst, dims = _intersection_table(family, Fraction(t))
    tags = {"2a": "1b", "2b": "1a", "1a": "1a", "1b": "1b"}
    wrong = []
    census = {}
    for (i, j), d in dims.items():
        a, b = inst.planes[i], inst.planes[j]
        a = FamilyPlane(a.plane, tags[a.kind], a.partition, a.hyperplanes)
        b = FamilyPlane(b.plane, tags[b.kind], b.partition, b.hyperplanes)
        key = "".join(sorted((a.kind, b.kind)))
        census.setdefault(key, {}).setdefault(d, 0)
        census[key][d] += 1
        if (d == 0) != _meets_in_point_predicate(a, b):
            wrong.append([str(inst.planes[i].plane), str(inst.planes[j].plane), d])
    rec.expect("pairs", len(dims), 1770)
    rec.expect("exceptions", wrong, [])
    rec.note("dimension_census", census)
    return rec.report()


def _adjacency(family: int, t: Fraction) -> tuple:
    inst, dims = _intersection_table(family, t)
    n = len(inst.planes)
    adj = [0] * n
    for (i, j), d in dims.items():
        if d == 0:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return inst, adj


def _max_cliques(adj: list[int], allowed: int) -> list[int]:
    """Bron-Kerbosch with pivoting over bitmasks."""
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        u = pivot_pool.bit_length() - 1
        cand = p & ~adj[u]
        while cand:
            v = cand & -cand
            k = v.bit_length() - 1
            bk(r | v, p & adj[k], x & adj[k])
            p &= ~v
            x |= v
            cand &= ~v

    bk(0, allowed, 0)
    return out


def _bits(mask: int) -> list[int]:
    return [k for k in range(mask.bit_length()) if mask >> k & 1]


def complete_incident_sets(family: int = 2, t=Fraction(-1, 2)) -> tuple:
    """(plane sets, report, instance, index sets) for the complete 20-sets."""
    t = Fraction(t)
    rec = Recorder("combinatorics.complete-sets")
    inst, adj = _adjacency(family, t)
    special = "1b" if family == 1 else "2a"
    spec_idx = [k for k, fp in enumerate(inst.planes) if fp.kind == special]
    other_idx = [k for k, fp in enumerate(inst.planes) if fp.kind != special]
    # phase 1: at most 15 planes of the other type can be pairwise incident
    other_mask = sum(1 << k for k in other_idx)
    largest_other = max(bin(c).count("1") for c in _max_cliques(adj, other_mask))
    rec.expect("largest_clique_of_other_type", largest_other, 15)
    # phase 2: five pairwise incident special planes, then the forced completion
    configs = []
    for five in combinations(spec_idx, 5):
        if any(not adj[a] >> b & 1 for a, b in combinations(five, 2)):
            continue
        common = (1 << len(inst.planes)) - 1
        for a in five:
            common &= adj[a]
        forced = [k for k in other_idx if common >> k & 1]
        members = list(five) + forced
        pairwise = all(adj[a] >> b & 1 for a, b in combinations(members, 2))
        rec.require(f"completion of {five} is pairwise incident", pairwise)
        rec.require(f"completion of {five} has 15 forced planes", len(forced) == 15, len(forced))
        configs.append(frozenset(members))
    rec.expect("configurations", len(configs), 6)
    # cross-check: every maximal clique in the full graph
    cliques = _max_cliques(adj, (1 << len(inst.planes)) - 1)
    sizes = sorted(bin(c).count("1") for c in cliques)
    rec.expect("largest_clique_overall", sizes[-1], 20)
    rec.expect("cliques_of_size_20_equal_configurations",
               {frozenset(_bits(c)) for c in cliques if bin(c).count("1") == 20} == set(configs), True)
    plane_sets = [frozenset(inst.planes[k].plane for k in c) for c in configs]
    return plane_sets, rec.report(), inst, configs


def six_configurations_check() -> CheckReport:
    rec = Recorder("combinatorics.six-configs")
    t = Fraction(-1, 2)
    for family in (2, 1):
        plane_sets, sub, inst, configs = complete_incident_sets(family, t)
        rec.note(f"family{family}", sub.details)
        rec.require(f"family {family} search", sub.passed, sub.details.get("failures"))
        if len(plane_sets) != 6:
            continue
        base = plane_sets[0]
        movers = {}
        stab = []
        s6 = perm.symmetric_group(6)
        for g in s6:
            img = frozenset(permute_plane(p, g) for p in base)
            if img == base:
                stab.append(g)
            for k, target in enumerate(plane_sets):
                if img == target and k not in movers:
                    movers[k] = perm.cycle_string(g)
        rec.expect(f"family{family}_transitive", sorted(movers), list(range(6)))
        rec.note(f"family{family}_movers", movers)
        rec.expect(f"family{family}_stabilizer_order", len(stab), 120)
        special = "1b" if family == 1 else "2a"
        parts = sorted({fp.partition for fp in inst.planes if fp.plane in base and fp.kind == special}, key=sorted)
        kernel = [g for g in stab
                  if all(frozenset(frozenset(g[x] for x in pair) for pair in p) == p for p in parts)]
        acts = all(frozenset(frozenset(g[x] for x in pair) for pair in p) in parts for g in stab for p in parts)
        rec.expect(f"family{family}_stabilizer_acts_on_5_partitions", acts, True)
        rec.expect(f"family{family}_action_kernel", len(kernel), 1)
        if family == 2:
            rec.expect("incident_twenty_is_a_configuration", frozenset(incident_planes()) in plane_sets, True)
    rules = intersection_rule_check()
    rec.note("intersection_rules", rules.details)
    rec.require("intersection rules", rules.passed, rules.details.get("failures"))
    pts = twenty_plane_points()
    rec.note("twenty_plane_points", pts.details)
    rec.require("points of the twenty planes", pts.passed, pts.details.get("failures"))
    return rec.report()


def configurations_dump() -> list[list[str]]:
    plane_sets, _, inst, configs = complete_incident_sets(2, Fraction(-1, 2))
    names = {}
    for part in pair_partitions():
        for lab in labels_for_partition(part, "odd"):
            names[ProjectivePlane.from_label(lab)] = str(lab)
    return [sorted(names[p] for p in s) for s in plane_sets]


def twenty_plane_points(planes=None) -> CheckReport:
    rec = Recorder("combinatorics.twenty-points")
    planes = list(planes or incident_planes())
    points = {}
    for a, b in combinations(range(len(planes)), 2):
        pt = plane_intersection_point(planes[a], planes[b])
        if pt is not None:
            points.setdefault(pt, set()).update((a, b))
    on = {pt: [k for k, p in enumerate(planes) if p.contains_point(pt)] for pt in points}
    quint = {pt: ks for pt, ks in on.items() if len(ks) >= 5}
    double = {pt: ks for pt, ks in on.items() if len(ks) == 2}
    rec.expect("distinct_points", len(on), 46)
    rec.expect("quintuple_points", len(quint), 16)
    rec.expect("quintuple_multiplicities", sorted({len(v) for v in quint.values()}), [5])

    def part(k):
        p = planes[k]
        return p.label.partition() if p.label else None

    rec.expect("one_plane_per_partition_at_each_quintuple_point",
               all(len({part(k) for k in ks}) == 5 for ks in quint.values()), True)
    rec.expect("double_points", len(double), 30)
    rec.expect("double_points_same_partition", all(part(a) == part(b) for a, b in double.values()), True)
    per_part = {}
    for k in range(len(planes)):
        per_part.setdefault(part(k), []).append(k)
    rec.expect("planes_per_partition", sorted(len(v) for v in per_part.values()), [4] * 5)
    per_plane = [sum(1 for ks in quint.values() if k in ks) for k in range(len(planes))]
    rec.expect("quintuple_points_per_plane", sorted(set(per_plane)), [4])
    a = ProjectivePlane.from_label(PlaneLabel.parse("V_{0-2,1-4,3-5}"))
    b = ProjectivePlane.from_label(PlaneLabel.parse("V_{0+2,1-4,3+5}"))
    rec.expect("V_{0-2,1-4,3-5} meets V_{0+2,1-4,3+5}",
               plane_intersection_point(a, b), tuple(GaussianRational.of(x) for x in (0, 1, 0, 0, 1, 0)))
    return rec.report()


# ---------------------------------------------------------------- Petersen graph

LETTERS = "abcde"


@dataclass
class PetersenLabeling:
    vertices: list            # 2-subsets of {a..e}, as strings "ab"
    edges: list               # pairs of vertices
    vertex_partitions: dict   # vertex -> partition of {0..5} into pairs
    edge_labels: dict         # edge -> pair of {0..5}
    classes: dict             # missing letter -> three edges


def beta_homomorphism() -> dict:
    """beta on all of Sigma_5 (acting on letters 0..4), built from the generators."""
    gens = []
    for name, cyc in BETA_GENERATORS.items():
        a, b = int(name[0]) - 1, int(name[1]) - 1
        gens.append((perm.from_cycles([[a, b]], 5), perm.from_cycles(cyc, 6)))
    table = {perm.identity(5): perm.identity(6)}
    frontier = [perm.identity(5)]
    while frontier:
        nxt = []
        for g in frontier:
            for s, bs in gens:
                h = perm.compose(s, g)
                bh = perm.compose(bs, table[g])
                if h in table:
                    if table[h] != bh:
                        raise ValueError(f"beta is not well defined at {perm.cycle_string(h)}")
                    continue
                table[h] = bh
                nxt.append(h)
        frontier = nxt
    return table


def _cycles_to_partition(p) -> frozenset:
    return frozenset(frozenset((k, p[k])) for k in range(len(p)) if k != p[k])


def petersen_labeling() -> tuple[PetersenLabeling, CheckReport]:
    rec = Recorder("combinatorics.petersen")
    beta = beta_homomorphism()
    rec.expect("beta_domain", len(beta), 120)
    rec.expect("beta_injective", len(set(beta.values())), 120)
    rec.expect("beta_homomorphism",
               all(beta[perm.compose(g, h)] == perm.compose(beta[g], beta[h]) for g in beta for h in beta), True)
    verts = ["".join(LETTERS[k] for k in pair) for pair in combinations(range(5), 2)]
    vparts = {}
    for v in verts:
        a, b = LETTERS.index(v[0]), LETTERS.index(v[1])
        image = beta[perm.from_cycles([[a, b]], 5)]
        part = _cycles_to_partition(image)
        rec.require(f"beta({v}) is three disjoint transpositions", len(part) == 3 and len(_flat(part)) == 6)
        vparts[v] = part
    edges = [(u, w) for u, w in combinations(verts, 2) if not set(u) & set(w)]
    labels = {}
    for u, w in edges:
        common = vparts[u] & vparts[w]
        rec.require(f"edge {u}-{w} has a unique label", len(common) == 1, sorted(map(sorted, common)))
        if len(common) == 1:
            labels[(u, w)] = next(iter(common))
    degree = {v: sum(1 for e in edges if v in e) for v in verts}
    rec.expect("vertices", len(verts), 10)
    rec.expect("edges", len(edges), 15)
    rec.expect("three_regular", set(degree.values()), {3})
    rec.expect("labels_at_vertex_form_its_partition",
               all(frozenset(labels[e] for e in edges if v in e) == vparts[v] for v in verts), True)
    classes = {}
    for e in edges:
        missing = next(ch for ch in LETTERS if ch not in e[0] + e[1])
        classes.setdefault(missing, []).append(e)
    rec.expect("class_sizes", sorted(len(c) for c in classes.values()), [3] * 5)
    shares_vertex = [m for m, es in classes.items()
                     if any(set(a) & set(b) for a, b in combinations(es, 2))]
    rec.expect("classes_are_matchings", shares_vertex, [])
    class_parts = {}
    for m, es in classes.items():
        part = frozenset(labels[e] for e in es if e in labels)
        rec.require(f"class {m} labels form a partition", len(part) == 3 and len(_flat(part)) == 6)
        class_parts[m] = part
    all_parts = set(vparts.values()) | set(class_parts.values())
    rec.expect("distinct_partitions", len(all_parts), 15)
    incident = {frozenset(frozenset(p) for p in partition_from_cycles(c)) for c in INCIDENT_PARTITIONS}
    rec.expect("class_partitions_are_the_incident_five", set(class_parts.values()) == incident, True)
    seeds = {"ab": "(03)(14)(25)", "bc": "(01)(24)(35)", "cd": "(05)(14)(23)", "de": "(01)(25)(34)"}
    rec.expect("seeds", all(vparts[v] == frozenset(frozenset(p) for p in partition_from_cycles(c))
                            for v, c in seeds.items()), True)
    lab = PetersenLabeling(verts, edges, vparts, labels, classes)
    rec.note("vertex_partitions", {v: _fmt_partition(p) for v, p in vparts.items()})
    rec.note("class_partitions", {m: _fmt_partition(p) for m, p in sorted(class_parts.items())})
    return lab, rec.report()


def petersen_check() -> CheckReport:
    return petersen_labeling()[1]


def _flat(part) -> set:
    return {x for pair in part for x in pair}


def _fmt_partition(part) -> str:
    return "".join("(" + "".join(map(str, sorted(p))) + ")" for p in sorted(map(sorted, part)))


def reduction_check() -> CheckReport:
    """N_i^t at a few parameters, plus the exact singular values."""
    rec = Recorder("combinatorics.reduction-map")
    for family in (1, 2):
        det, factored = reduction_determinant(family)
        rec.expect(f"family{family}_det_factorization", factored, True)
        rec.expect(f"family{family}_singular_t", singular_parameters(family), [EXCLUDED[family]])
        try:
            reduction_map_check(family, EXCLUDED[family])
            rec.require(f"family {family} excluded parameter raises", False)
        except SingularReductionError:
            pass
        for t in (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(2, 7)):
            sub = reduction_map_check(family, t)
            rec.note(f"family{family}_t={t}", {k: v for k, v in sub.details.items() if k.endswith("t_prime")})
            rec.require(f"family {family} t={t}", sub.passed, sub.details.get("failures"))
    return rec.report()
