"""The symmetric sextic Y in P^5 and the computations that pin it down.

Contents, roughly in the order they build on each other:

* the sextic F6 and its dual, written in the monomial-symmetric basis;
* the K3 model: six cubics on P^2, the quadrics through the del Pezzo image
  and the double-cover quadric, and the change of basis to q1..q6;
* the image identity F6(Q_1, ..., Q_6) = 0 on pairs of K3 points;
* the 60 singular planes V_{i+-j,k+-l,m+-n} and their symmetry orbits;
* the Lagrangian A spanned by the 20 incident planes, the degeneracy
  matrices M_i, the minor determinant and pointwise coranks;
* tangent hyperplanes along Segre cubics and projective self-duality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import perm
from .exact import ONE, ZERO, DenseMatrix, GaussianRational, I, matrix_rank
from .exterior import (
    PlaneLabel,
    ProjectivePlane,
    WedgeVector,
    canonical_label,
    in_span,
    permute_wedge,
    plane_intersection_point,
    plucker,
    span_and_isotropy,
    same_span,
    subsets,
    wedge,
)
from .multipoly import (
    PARTITIONS_OF_SIX,
    Polynomial,
    divide_by_monic_in_variable,
    evaluate,
    gradient,
    negate_variables,
    partial_derivative,
    perfect_square_root,
    permute_variables,
    polynomial_det,
    restrict_to_span,
    substitute,
    symmetric_monomial_basis,
)
from .report import CheckReport, Recorder

# coefficient vectors in the basis P6, P51, P42, P411, P33, P321, P3111, P222, P2211, P21111, P111111
F6_COEFFICIENTS = (1, 0, -1, 0, 0, 0, 0, 2, 0, 0, -16)
F6_DUAL_COEFFICIENTS = (1, 0, -1, 0, 0, 0, 0, 2, 0, 0, 16)

BETA_GENERATORS = {
    "12": "(03)(14)(25)",
    "23": "(01)(24)(35)",
    "34": "(05)(14)(23)",
    "45": "(01)(25)(34)",
}

ALPHA_PERMUTATIONS = {"12": "(02)(14)(35)", "23": "(01)(23)(45)", "45": "(05)(14)(23)"}

# alpha_34 as a linear map on (y0..y5): row k is the k-th output coordinate
ALPHA_34 = (
    (1, -1, 0, 0, 1, 0),
    (0, -1, 0, 1, 0, -1),
    (0, 0, 1, 0, -1, 1),
    (0, 0, 0, 0, 0, -1),
    (0, 0, 0, -1, -1, 1),
    (0, 0, 0, -1, 0, 0),
)

INCIDENT_PARTITIONS = ("(01)(23)(45)", "(02)(14)(35)", "(03)(15)(24)", "(04)(13)(25)", "(05)(12)(34)")

PLANES_THROUGH_SPECIAL_POINT = (
    (1, -1, 1, 1, -1, 1),
    ("V_{0+1,2-3,4+5}", "V_{0-3,1+5,2+4}", "V_{0+4,1+3,2-5}", "V_{0-5,1+2,3+4}", "V_{0-2,1-4,3-5}"),
)

CHANGE_OF_BASIS = (
    (1, 1, 0, 0, -2, -1),
    (-1, 1, 0, 0, 2, -1),
    (1, -1, 0, 2, 0, -1),
    (-1, -1, 2, 0, 0, -1),
    (1, 1, -2, 0, 0, -1),
    (1, 1, 0, -2, 0, -1),
)


# ---------------------------------------------------------------- the sextic

def sextic_from_coefficients(coefficients) -> Polynomial:
    basis = symmetric_monomial_basis(6, 6)
    out = Polynomial.zero(6)
    for c, p in zip(coefficients, basis):
        if c:
            out = out + p.scale(c)
    return out


def coefficients_in_symmetric_basis(p: Polynomial) -> tuple | None:
    """Coordinates of a symmetric sextic in the monomial-symmetric basis, or None."""
    coeffs = []
    for lam in PARTITIONS_OF_SIX:
        mono = tuple(lam) + (0,) * (6 - len(lam))
        coeffs.append(p.coefficient(mono))
    return tuple(coeffs) if sextic_from_coefficients(coeffs) == p else None


@dataclass(frozen=True)
class CanonicalSextic:
    f6: Polynomial
    f6_dual: Polynomial


@lru_cache(maxsize=None)
def canonical_sextic() -> CanonicalSextic:
    return CanonicalSextic(sextic_from_coefficients(F6_COEFFICIENTS),
                           sextic_from_coefficients(F6_DUAL_COEFFICIENTS))


def even_sign_subsets(n: int = 6) -> list[tuple[int, ...]]:
    return [s for r in range(0, n + 1, 2) for s in combinations(range(n), r)]


def sextic_symmetry_check(sextic: CanonicalSextic | None = None) -> CheckReport:
    rec = Recorder("epw.sextic-symmetry")
    sextic = sextic or canonical_sextic()
    f, fd = sextic.f6, sextic.f6_dual
    rec.expect("f6_terms", len(f), 57)
    rec.expect("value_at_all_ones", evaluate(f, [1] * 6), ZERO)
    rec.expect("dx0_at_all_ones", evaluate(partial_derivative(f, 0), [1] * 6), ZERO)
    bad_perm = [p for p in perm.symmetric_group(6) if permute_variables(f, p) != f]
    rec.expect("permutations_breaking_symmetry", len(bad_perm), 0)
    bad_sign = [s for s in even_sign_subsets() if negate_variables(f, s) != f]
    rec.expect("even_sign_changes_breaking_symmetry", len(bad_sign), 0)
    rec.require("odd sign change gives the dual sextic", negate_variables(f, [0]) == fd)
    rec.require("dual differs only in the last coefficient",
                f - fd == sextic_from_coefficients((0,) * 10 + (-32,)))
    return rec.report()


# ---------------------------------------------------------------- the K3 model

@dataclass(frozen=True)
class VinbergModel:
    cubics: tuple            # y0..y5 as cubics in x0, x1, x2
    quadrics_primed: tuple   # q1'..q5' and q0' in y0..y6 (arity 7)
    quadric_q6: Polynomial   # q0' - y6^2
    change_of_basis: DenseMatrix

    def quadrics(self) -> list[Polynomial]:
        """q1..q6 in y0..y6; q_i is the coordinate Z_{i-1}."""
        primed = list(self.quadrics_primed[:5]) + [self.quadric_q6]
        out = []
        for i in range(6):
            acc = Polynomial.zero(7)
            for j in range(6):
                c = self.change_of_basis[i, j]
                if c:
                    acc = acc + primed[j].scale(c)
            out.append(acc)
        return out

    @property
    def q0(self) -> Polynomial:
        return self.quadrics_primed[5]


@lru_cache(maxsize=None)
def vinberg_model() -> VinbergModel:
    x0, x1, x2 = Polynomial.variables(3)
    m = x0 * x1 * x2
    cubics = (x0 * x0 * x1 - m, x0 * x0 * x2 - m, x0 * x1 * x1 - m,
              x0 * x2 * x2 - m, x1 * x1 * x2 - m, x1 * x2 * x2 - m)
    y = Polynomial.variables(7)
    q1 = y[0] * y[3] + y[1] * y[2] - y[2] * y[5] - y[3] * y[4]
    q2 = y[0] * y[4] + y[1] * y[2] - y[1] * y[5] - y[3] * y[4]
    q3 = y[0] * y[5] + y[1] * y[2] - y[1] * y[5] - y[2] * y[5] - y[3] * y[4]
    q4 = y[1] * y[4] - y[1] * y[5] - y[3] * y[4]
    q5 = y[2] * y[3] - y[2] * y[5] - y[3] * y[4]
    q0 = y[1] * y[2] - y[3] * y[4]
    return VinbergModel(cubics, (q1, q2, q3, q4, q5, q0), q0 - y[6] * y[6],
                        DenseMatrix.from_rows(CHANGE_OF_BASIS))


def base_points() -> list[tuple[int, int, int]]:
    return [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


def lift_cubics(model: VinbergModel, arity: int, offset: int) -> list[Polynomial]:
    """The six cubics written in variables offset..offset+2 of a larger ring."""
    xs = Polynomial.variables(arity)[offset:offset + 3]
    return [substitute(c, xs) for c in model.cubics]


def model_sanity_check(model: VinbergModel | None = None) -> dict:
    model = model or vinberg_model()
    vanish_at_base = all(evaluate(c, p) == 0 for c in model.cubics for p in base_points())
    y_of_x = lift_cubics(model, 3, 0) + [Polynomial.zero(3)]
    primes_vanish = all(substitute(q, y_of_x).is_zero() for q in model.quadrics_primed[:5])
    return {"cubics_vanish_at_base_points": vanish_at_base, "primed_quadrics_vanish_on_surface": primes_vanish}


def polarize(q: Polynomial) -> Polynomial:
    """Q(y, z) with q(y+z) = q(y) + q(z) + 2 Q(y, z); arity doubles (y first, then z)."""
    n = q.arity
    v = Polynomial.variables(2 * n)
    ys, zs = v[:n], v[n:]
    return (substitute(q, [a + b for a, b in zip(ys, zs)]) - substitute(q, ys) - substitute(q, zs)).scale(
        Fraction(1, 2))


def verify_image_identity(model: VinbergModel | None = None, sextic: Polynomial | None = None,
                          check_id: str = "epw.image-identity") -> CheckReport:
    """F6(Q_1(y,z), ..., Q_6(y,z)) = 0 for y, z on the K3 model.

    Work in x0..x2 (first point), u0..u2 (second point) and w = y6*z6, then
    reduce w^2 to q0'(y(x)) * q0'(z(u)).
    """
    rec = Recorder(check_id)
    model = model or vinberg_model()
    f = sextic if sextic is not None else canonical_sextic().f6
    rec.require("sextic is nonzero", not f.is_zero())
    rec.note("model", model_sanity_check(model))
    for k, v in rec.details["model"].items():
        rec.require(k, v)
    bilinear = [polarize(q) for q in model.quadrics()]
    # y6 and z6 may only appear through the product y6*z6
    for i, b in enumerate(bilinear):
        odd = [m for m in b.terms if (m[6] or m[13]) and not (m[6] == 1 and m[13] == 1)]
        rec.require(f"Q_{i + 1} involves y6, z6 only through y6*z6", not odd, odd[:3])
    arity = 7
    w = Polynomial.variable(arity, 6)
    ys = lift_cubics(model, arity, 0)
    zs = lift_cubics(model, arity, 3)
    images = ys + [w] + zs + [Polynomial.constant(arity, 1)]
    linear = [substitute(b, images) for b in bilinear]
    rec.note("bilinear_form_terms", [len(b) for b in linear])
    composed = substitute(f, linear)
    y_full = ys + [Polynomial.zero(arity)]
    z_full = zs + [Polynomial.zero(arity)]
    w_squared = substitute(model.q0, y_full) * substitute(model.q0, z_full)
    parts = composed.coefficients_in(6)
    even = Polynomial.zero(arity)
    odd = Polynomial.zero(arity)
    power = Polynomial.constant(arity, 1)
    for k in range(0, max(parts, default=0) + 1):
        if k and k % 2 == 0:
            power = power * w_squared
        c = parts.get(k)
        if c is None:
            continue
        stripped = c  # c does not involve w by construction
        if k % 2 == 0:
            even = even + stripped * power
        else:
            odd = odd + stripped * power
    rec.note("w_degree", max(parts, default=0))
    rec.note("composed_terms", len(composed))
    for name, part in (("constant_part", even), ("w_part", odd)):
        if not part.is_zero():
            mono, c = part.leading_term()
            rec.require(f"{name} vanishes", False, {"terms": len(part), "leading": [list(mono), str(c)]})
        else:
            rec.note(name, 0)
    return rec.report()


def image_of_vertex_pairs(model: VinbergModel | None = None) -> tuple:
    """Image of the two K3 points on a line through the cone vertex.

    With y = cubics(x) on the del Pezzo surface, the two points are (y, s)
    and (y, -s) where s^2 = q0'(y); the result is normalized projectively.
    """
    model = model or vinberg_model()
    arity = 4
    s = Polynomial.variable(arity, 3)
    ys = lift_cubics(model, arity, 0)
    images = ys + [s] + ys + [-s]
    s_squared = substitute(model.q0, ys + [Polynomial.zero(arity)])
    values = []
    for q in model.quadrics():
        b = substitute(polarize(q), images)
        parts = b.coefficients_in(3)
        reduced = parts.get(0, Polynomial.zero(arity))
        if 1 in parts:
            raise ArithmeticError("odd power of s survives")
        if 2 in parts:
            reduced = reduced + parts[2] * s_squared
        values.append(reduced)
    ref = next((v for v in values if not v.is_zero()), None)
    if ref is None:
        raise ArithmeticError("degenerate family: all coordinates vanish")
    lead_mono, lead_c = ref.leading_term()
    ratios = []
    for v in values:
        ratio = v.coefficient(lead_mono) / lead_c
        if v != ref.scale(ratio):
            raise ArithmeticError("coordinates are not proportional")
        ratios.append(ratio)
    return tuple(ratios)


def vertex_pairs_check() -> CheckReport:
    rec = Recorder("epw.vertex-pairs")
    point = image_of_vertex_pairs()
    rec.expect("image", point, (ONE,) * 6)
    rec.expect("sextic_at_image", evaluate(canonical_sextic().f6, point), ZERO)
    return rec.report()


def _linear_images(matrix, arity: int = 7) -> list[Polynomial]:
    """Images of y0..y5 under a 6x6 matrix acting on coordinates, y6 kept."""
    y = Polynomial.variables(arity)
    out = []
    for row in matrix:
        acc = Polynomial.zero(arity)
        for k, c in enumerate(row):
            if c:
                acc = acc + y[k].scale(c)
        out.append(acc)
    return out


def _alpha_matrix(name: str):
    if name == "34":
        return ALPHA_34
    if name == "id":
        return tuple(tuple(int(i == j) for j in range(6)) for i in range(6))
    p = perm.from_cycles(ALPHA_PERMUTATIONS[name])
    return tuple(tuple(int(j == p[i]) for j in range(6)) for i in range(6))


def _match_quadric(target: Polynomial, quadrics: list[Polynomial]):
    """(j, s) with target == s * quadrics[j], or None."""
    if target.is_zero():
        return None
    mono, c = target.leading_term()
    for j, q in enumerate(quadrics):
        qc = q.coefficient(mono)
        if qc and target == q.scale(c / qc):
            return j, c / qc
    return None


def _reduce_y6(p: Polynomial, q0: Polynomial) -> Polynomial:
    parts = p.coefficients_in(6)
    out = Polynomial.zero(p.arity)
    power = Polynomial.constant(p.arity, 1)
    for k in range(0, max(parts, default=0) + 1):
        if k and k % 2 == 0:
            power = power * q0
        if k in parts:
            extra = Polynomial.variable(p.arity, 6) if k % 2 else Polynomial.constant(p.arity, 1)
            out = out + parts[k] * power * extra
    return out


# p3 <-> p4 on P^2; the linear map on the cubics is solved for, not assumed
X_ACTION_34 = ((1, 0, -1), (0, 1, -1), (0, 0, -1))


def induced_cubic_map(model: VinbergModel, x_matrix) -> tuple | None:
    """The 6x6 matrix L with cubics(x_matrix . x) = L . cubics(x), or None."""
    from .exact import matrix_kernel
    x = Polynomial.variables(3)
    images = [sum((x[k].scale(c) for k, c in enumerate(row) if c), Polynomial.zero(3)) for row in x_matrix]
    cubics = list(model.cubics)
    moved = [substitute(c, images) for c in cubics]
    monos = sorted({m for c in cubics + moved for m in c.terms})
    out = []
    for target in moved:
        rows = [[c.coefficient(m) for c in cubics] + [target.coefficient(m)] for m in monos]
        kernel = matrix_kernel(DenseMatrix.from_rows(rows))
        if len(kernel) != 1 or not kernel[0][6]:
            return None
        lead = kernel[0][6]
        out.append(tuple(-v / lead for v in kernel[0][:6]))
    return tuple(out)


def _try_lift(model: VinbergModel, matrix, expected) -> dict | None:
    qs = model.quadrics()
    base = _linear_images(matrix)
    for c, label in ((ONE, "1"), (-ONE, "-1"), (I, "i"), (-I, "-i")):
        images = base + [Polynomial.variable(7, 6).scale(c)]
        matches = [_match_quadric(substitute(q, images), qs) for q in qs]
        level = "exact"
        if any(m is None for m in matches):
            reduced_qs = [_reduce_y6(q, model.q0) for q in qs]
            matches = [_match_quadric(_reduce_y6(substitute(q, images), model.q0), reduced_qs) for q in qs]
            level = "modulo y6^2 - q0'"
        if any(m is None for m in matches):
            continue
        permutation = tuple(j for j, _ in matches)
        return {"c": label, "level": level, "scalars": [s for _, s in matches],
                "permutation": perm.cycle_string(permutation),
                "matches_beta": permutation == expected or permutation == perm.inverse(expected)}
    return None


def sigma5_equivariance(model: VinbergModel | None = None, generators=("12", "23", "34", "45")) -> CheckReport:
    """For each generator, find c with y6 -> c*y6 so that q_i o alpha = s_i q_{beta(i)}.

    alpha_34 is tried as transcribed first; when no lift exists the map
    induced on the cubics by (x:y:z) -> (x-z:y-z:-z) is used instead and the
    differing rows are reported.
    """
    rec = Recorder("epw.sigma5-equivariance")
    model = model or vinberg_model()
    found = {}
    for name in generators:
        expected = perm.identity(6) if name == "id" else perm.from_cycles(BETA_GENERATORS[name])
        result = _try_lift(model, _alpha_matrix(name), expected)
        if result is None and name == "34":
            derived = induced_cubic_map(model, X_ACTION_34)
            differing = [k for k in range(6) if tuple(GaussianRational.of(v) for v in ALPHA_34[k]) != derived[k]]
            rec.note("alpha_34_transcribed_lifts", False)
            rec.note("alpha_34_derived", [[str(v) for v in row] for row in derived])
            rec.note("alpha_34_rows_differing", differing)
            result = _try_lift(model, derived, expected)
            if result is not None:
                result["source"] = "derived from the action on P^2"
        elif result is not None:
            result["source"] = "transcribed"
        found[name] = result
        if result is None:
            rec.require(f"alpha_{name} admits a lift", False, "no c in {1,-1,i,-i} works")
        else:
            rec.require(f"alpha_{name} induces beta_{name}", result["matches_beta"], result["permutation"])
            rec.require(f"alpha_{name} scalars are equal", len(set(result["scalars"])) == 1, result["scalars"])
    rec.note("generators", found)
    return rec.report()


# ---------------------------------------------------------------- planes

def pair_partitions(n: int = 6) -> list[tuple[tuple[int, int], ...]]:
    """The 15 partitions of {0..5} into pairs, each a sorted tuple of sorted pairs."""
    def rec(rest):
        if not rest:
            return [()]
        a = rest[0]
        out = []
        for b in rest[1:]:
            remaining = [x for x in rest if x not in (a, b)]
            out.extend(((a, b),) + tail for tail in rec(remaining))
        return out
    return rec(list(range(n)))


def partition_from_cycles(text: str) -> tuple:
    p = perm.from_cycles(text)
    return tuple(sorted(tuple(sorted((k, p[k]))) for k in range(6) if k < p[k]))


def labels_for_partition(partition, parity: str) -> list[PlaneLabel]:
    """The four sign patterns with an odd (or even) number of minus signs."""
    out = []
    for signs in product((1, -1), repeat=3):
        minus = sum(1 for s in signs if s < 0)
        if (minus % 2 == 1) == (parity == "odd"):
            out.append(canonical_label((a, s, b) for (a, b), s in zip(partition, signs)))
    return out


def singular_plane_labels() -> list[PlaneLabel]:
    return [lab for part in pair_partitions() for lab in labels_for_partition(part, "odd")]


def incident_plane_labels() -> list[PlaneLabel]:
    return [lab for text in INCIDENT_PARTITIONS for lab in labels_for_partition(partition_from_cycles(text), "odd")]


@lru_cache(maxsize=None)
def incident_planes() -> tuple[ProjectivePlane, ...]:
    return tuple(ProjectivePlane.from_label(lab) for lab in incident_plane_labels())


def act_on_label(p, label: PlaneLabel) -> PlaneLabel:
    return canonical_label((p[a], s, p[b]) for a, s, b in label.pairs)


def vanishes_on_plane(f: Polynomial, plane: ProjectivePlane) -> bool:
    return restrict_to_span(f, plane.rows()).is_zero()


def singular_planes_check(sextic: CanonicalSextic | None = None) -> CheckReport:
    rec = Recorder("epw.singular-planes")
    f = (sextic or canonical_sextic()).f6
    polys = [f] + gradient(f)
    labels = singular_plane_labels()
    rec.expect("plane_count", len(labels), 60)
    bad = [str(lab) for lab in labels
           if not all(vanishes_on_plane(g, ProjectivePlane.from_label(lab)) for g in polys)]
    rec.expect("planes_with_nonvanishing_restriction", bad, [])
    label_set = set(labels)
    sigma6 = perm.symmetric_group(6)
    sigma6_orbits = perm.orbits(labels, sigma6, act_on_label)
    rec.expect("sigma6_orbit_sizes", sorted(len(o) for o in sigma6_orbits), [15, 45])
    rec.require("sigma6 preserves the singular planes",
                all(act_on_label(g, lab) in label_set for g in sigma6 for lab in labels))
    beta = perm.closure([perm.from_cycles(c) for c in BETA_GENERATORS.values()])
    rec.expect("beta_group_order", len(beta), 120)
    beta_orbits = perm.orbits(labels, beta, act_on_label)
    rec.expect("beta_orbit_sizes", sorted(len(o) for o in beta_orbits), [5, 10, 15, 30])
    reps = {"V_{0-1,2-3,4-5}": 5, "V_{0-1,2-4,3-5}": 10, "V_{0+1,2+3,4-5}": 15, "V_{0+1,2+4,3-5}": 30}
    for text, size in reps.items():
        lab = PlaneLabel.parse(text)
        orbit = next(o for o in beta_orbits if lab in o)
        rec.expect(f"beta_orbit_of_{text}", len(orbit), size)
    control = ProjectivePlane([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    rec.require("F6 does not vanish on span(e0,e1,e2)", not vanishes_on_plane(f, control))
    return rec.report()


# ---------------------------------------------------------------- the Lagrangian A

def beta_orbit_of_standard_vector(sign: int = -1) -> list[WedgeVector]:
    """The beta-orbit of e012 + sign*e345, one representative per +-pair.

    With planes spanned by e_a - s*e_b, the orbit spanning A is the one with
    sign -1; sign +1 spans the Lagrangian of the even-minus planes.
    """
    seed = WedgeVector.basis((0, 1, 2)) + WedgeVector.basis((3, 4, 5)).scale(sign)
    group = perm.closure([perm.from_cycles(c) for c in BETA_GENERATORS.values()])
    seen: list[WedgeVector] = []
    for g in sorted(group):
        w = permute_wedge(seed, g)
        if w not in seen and -w not in seen:
            seen.append(w)
    return seen


def flip_wedge(w: WedgeVector, k: int) -> WedgeVector:
    """Image under e_k -> -e_k."""
    return WedgeVector(w.grade, {key: (-v if k in key else v) for key, v in w.coords.items()})


def even_incident_planes() -> list[ProjectivePlane]:
    return [ProjectivePlane.from_label(lab) for text in INCIDENT_PARTITIONS
            for lab in labels_for_partition(partition_from_cycles(text), "even")]


def lagrangian_check() -> CheckReport:
    rec = Recorder("exterior.lagrangian")
    planes = incident_planes()
    rec.expect("plane_count", len(planes), 20)
    from .exterior import plane_intersection_dimension, symplectic_pairing
    vectors = [plucker(p) for p in planes]
    bad_pairs = []
    for a, b in combinations(range(len(planes)), 2):
        pairing = symplectic_pairing(vectors[a], vectors[b])
        dim = plane_intersection_dimension(planes[a], planes[b])
        if pairing or dim < 0:
            bad_pairs.append((str(planes[a].label), str(planes[b].label), str(pairing), dim))
    rec.expect("pairs_checked", len(list(combinations(range(20), 2))), 190)
    rec.expect("bad_pairs", bad_pairs, [])
    dim, isotropic, basis = span_and_isotropy(vectors)
    rec.expect("span_dimension", dim, 10)
    rec.expect("isotropic", isotropic, True)
    return rec.report()


def beta_orbit_basis_check() -> CheckReport:
    rec = Recorder("exterior.beta-orbit-basis")
    a_vectors = [plucker(p) for p in incident_planes()]
    for sign, name in ((-1, "minus"), (1, "plus")):
        orbit = beta_orbit_of_standard_vector(sign)
        rec.expect(f"{name}_orbit_size_up_to_sign", len(orbit), 10)
        dim, isotropic, _ = span_and_isotropy(orbit)
        rec.expect(f"{name}_span_dimension", dim, 10)
        rec.expect(f"{name}_isotropic", isotropic, True)
    minus = beta_orbit_of_standard_vector(-1)
    plus = beta_orbit_of_standard_vector(1)
    rec.expect("minus_orbit_spans_A", same_span(minus, a_vectors), True)
    rec.expect("plus_orbit_spans_A", same_span(plus, a_vectors), False)
    rec.expect("plus_orbit_spans_flipped_A", same_span(plus, [flip_wedge(v, 0) for v in a_vectors]), True)
    rec.expect("plus_orbit_spans_even_planes", same_span(plus, [plucker(p) for p in even_incident_planes()]), True)
    return rec.report()


@dataclass(frozen=True)
class DegeneracySystem:
    lagrangian_basis: tuple
    m_matrices: tuple         # M_0..M_5, each 15 x 10
    row_selection: tuple      # 4-subsets picking the square minor

    def matrix_at(self, point) -> DenseMatrix:
        point = [GaussianRational.of(v) for v in point]
        acc = DenseMatrix.zeros(15, 10)
        for v, m in zip(point, self.m_matrices):
            if v:
                acc = acc + m.scale(v)
        return acc


def standard_row_selection() -> tuple:
    return tuple((0,) + c for c in combinations(range(1, 6), 3))


def alternative_row_selection() -> tuple:
    return tuple(c + (5,) for c in combinations(range(5), 3))


def degeneracy_system(basis=None, rows=None) -> DegeneracySystem:
    if basis is None:
        basis = lagrangian_basis()
    basis = tuple(basis)
    fours = subsets(4)
    mats = []
    for i in range(6):
        ei = WedgeVector.basis((i,))
        cols = [wedge(ei, w).coordinates() for w in basis]
        mats.append(DenseMatrix.from_rows([[cols[c][r] for c in range(len(basis))] for r in range(len(fours))]))
    return DegeneracySystem(basis, tuple(mats), tuple(rows or standard_row_selection()))


@lru_cache(maxsize=None)
def lagrangian_basis() -> tuple:
    _, _, basis = span_and_isotropy(list(incident_planes()))
    return tuple(basis)


@lru_cache(maxsize=None)
def canonical_degeneracy_system() -> DegeneracySystem:
    return degeneracy_system()


def corank_at(system: DegeneracySystem, point) -> int:
    if not any(GaussianRational.of(v) for v in point):
        raise ValueError("the zero vector is not a point of P^5")
    return len(system.lagrangian_basis) - matrix_rank(system.matrix_at(point))


def symbolic_minor(system: DegeneracySystem, rows=None) -> list[list[Polynomial]]:
    fours = subsets(4)
    rows = rows or system.row_selection
    index = [fours.index(tuple(r)) for r in rows]
    z = Polynomial.variables(6)
    out = []
    for r in index:
        line = []
        for c in range(len(system.lagrangian_basis)):
            acc = Polynomial.zero(6)
            for i, m in enumerate(system.m_matrices):
                if m[r, c]:
                    acc = acc + z[i].scale(m[r, c])
            line.append(acc)
        out.append(line)
    return out


def minor_determinant(system: DegeneracySystem | None = None, rows=None) -> Polynomial:
    system = system or canonical_degeneracy_system()
    return polynomial_det(symbolic_minor(system, rows))


def epw_equation_from_minor(system: DegeneracySystem | None = None, sextic: CanonicalSextic | None = None,
                            rows=None, check_id: str = "epw.minor-division") -> CheckReport:
    rec = Recorder(check_id)
    system = system or canonical_degeneracy_system()
    f = (sextic or canonical_sextic()).f6
    det = minor_determinant(system, rows)
    rec.note("rows", [list(r) for r in (rows or system.row_selection)])
    if not rec.require("determinant is nonzero", not det.is_zero()):
        return rec.report()
    rec.expect("determinant_degree", det.total_degree(), 10)
    rec.expect("determinant_at_all_ones", evaluate(det, [1] * 6), ZERO)
    quotient, remainder = divide_by_monic_in_variable(det, f, 0)
    rec.expect("remainder_is_zero", remainder.is_zero(), True)
    rec.expect("quotient_degree", quotient.total_degree(), 4)
    rec.note("quotient", str(quotient))
    return rec.report()


def minor_robustness_check() -> CheckReport:
    return epw_equation_from_minor(rows=alternative_row_selection(), check_id="epw.minor-robustness")


def special_points() -> list[tuple[int, ...]]:
    """(1, +-1, ..., +-1) with an even number of minus signs: Y_A[4] candidates."""
    out = []
    for signs in product((1, -1), repeat=5):
        if sum(1 for s in signs if s < 0) % 2 == 0:
            out.append((1,) + signs)
    return out


def f_v_intersect_a(system: DegeneracySystem, point, vector: WedgeVector) -> bool:
    """vector lies in A and v ^ vector = 0."""
    v = WedgeVector.from_vector(point)
    return wedge(v, vector).is_zero() and in_span(vector, system.lagrangian_basis)


def ya4_analysis(system: DegeneracySystem | None = None) -> CheckReport:
    rec = Recorder("epw.ya4")
    system = system or canonical_degeneracy_system()
    f = canonical_sextic().f6
    points = special_points()
    rec.expect("point_count", len(points), 16)
    coranks = {p: corank_at(system, p) for p in points}
    rec.expect("points_with_corank_4", sum(1 for c in coranks.values() if c == 4), 16)
    rec.expect("sextic_vanishes_at_all", all(evaluate(f, p) == 0 for p in points), True)
    planes = incident_planes()
    through = {}
    for p in points:
        hits = [pl for pl in planes if pl.contains_point(p)]
        through[p] = hits
        rec.require(f"five planes through {p}", len(hits) == 5, len(hits))
        rec.require(f"Pluecker vectors in F_v and A at {p}",
                    all(f_v_intersect_a(system, p, plucker(pl)) for pl in hits))
    point, listed = PLANES_THROUGH_SPECIAL_POINT
    got = sorted(str(pl.label) for pl in through[point])
    want = sorted(str(canonical_label(PlaneLabel.parse(t).pairs)) for t in listed)
    rec.expect("planes_through_(1,-1,1,1,-1,1)", got, want)
    # pairwise points: planes from the same partition meet in one point
    pair_points = set()
    for a, b in combinations(planes, 2):
        if a.label.partition() == b.label.partition():
            q = plane_intersection_point(a, b)
            if q is not None:
                pair_points.add(q)
    rec.expect("same_partition_points", len(pair_points), 30)
    low = [q for q in pair_points if corank_at(system, q) < 2]
    rec.expect("same_partition_points_with_corank_below_2", len(low), 0)
    rec.note("corank_histogram_pair_points",
             {k: sum(1 for q in pair_points if corank_at(system, q) == k) for k in range(11)
              if any(corank_at(system, q) == k for q in pair_points)})
    return rec.report()


def corank_strata_check(system: DegeneracySystem | None = None) -> CheckReport:
    """Corank 0 off Y, 2 on the forty branch planes, 4 at (1:...:1)."""
    rec = Recorder("epw.corank-strata")
    system = system or canonical_degeneracy_system()
    f = canonical_sextic().f6
    off = (1, 2, 3, 5, 7, 11)
    rec.require("test point lies off Y", evaluate(f, off) != 0)
    rec.expect("corank_off_Y", corank_at(system, off), 0)
    rec.expect("corank_at_all_ones", corank_at(system, (1,) * 6), 4)
    incident = {str(lab) for lab in incident_plane_labels()}
    branch = [lab for lab in singular_plane_labels() if str(lab) not in incident]
    rec.expect("branch_plane_count", len(branch), 40)
    params = ((2, 3, 7), (5, -1, 4))
    bad = []
    for lab in branch:
        plane = ProjectivePlane.from_label(lab)
        rows = plane.rows()
        for s in params:
            point = [sum((s[k] * rows[k][j] for k in range(3)), ZERO) for j in range(6)]
            if corank_at(system, point) != 2:
                bad.append((str(lab), s, corank_at(system, point)))
    rec.expect("branch_points_without_corank_2", bad, [])
    # corank is invariant under permutations combined with even sign changes
    group_moves = [(perm.from_cycles("(012345)"), ()), (perm.from_cycles("(01)"), (2, 3)),
                   (perm.from_cycles("(03)(14)(25)"), (0, 5))]
    samples = special_points()[:6] + [off, (1, 0, 2, -1, 3, 4)]
    mismatches = []
    for p in samples:
        for g, flips in group_moves:
            image = [0] * 6
            for k in range(6):
                image[g[k]] = p[k]
            image = [-x if k in flips else x for k, x in enumerate(image)]
            if corank_at(system, image) != corank_at(system, p):
                mismatches.append((p, perm.cycle_string(g), flips))
    rec.expect("equivariance_mismatches", mismatches, [])
    return rec.report()


# ---------------------------------------------------------------- tangent hyperplanes

def tangent_hyperplanes() -> list[tuple[str, tuple]]:
    """Ten x_i+x_j+x_k - s/2 and six x_i - s/2 where s = x0+...+x5."""
    half = Fraction(1, 2)
    out = []
    for trio in combinations(range(6), 3):
        if 0 not in trio:
            continue
        coeffs = tuple(1 - half if k in trio else -half for k in range(6))
        out.append((f"H_{{{''.join(map(str, trio))}}}", coeffs))
    for i in range(6):
        coeffs = tuple(1 - half if k == i else -half for k in range(6))
        out.append((f"H_{i}", coeffs))
    return out


def restrict_to_hyperplane(p: Polynomial, coeffs) -> tuple[Polynomial, int]:
    """Eliminate the highest-index variable with nonzero coefficient; returns (restriction, pivot)."""
    coeffs = [GaussianRational.of(c) for c in coeffs]
    pivot = max(k for k, c in enumerate(coeffs) if c)
    keep = [k for k in range(p.arity) if k != pivot]
    n = len(keep)
    z = Polynomial.variables(n)
    images = []
    for k in range(p.arity):
        if k == pivot:
            acc = Polynomial.zero(n)
            for pos, j in enumerate(keep):
                if coeffs[j]:
                    acc = acc + z[pos].scale(-coeffs[j] / coeffs[pivot])
            images.append(acc)
        else:
            images.append(z[keep.index(k)])
    return substitute(p, images), pivot


def tangent_hyperplane_analysis(sextic: CanonicalSextic | None = None) -> CheckReport:
    rec = Recorder("epw.tangent-hyperplanes")
    f = (sextic or canonical_sextic()).f6
    hyperplanes = tangent_hyperplanes()
    rec.expect("hyperplane_count", len(hyperplanes), 16)
    points = special_points()
    labels = singular_plane_labels()
    summary = {}
    for name, coeffs in hyperplanes:
        restricted, pivot = restrict_to_hyperplane(f, coeffs)
        root = perfect_square_root(restricted)
        entry = {"square": root is not None}
        if root is None:
            rec.require(f"{name}: restriction is a square", False)
            summary[name] = entry
            continue
        cubic = root.root
        entry["scalar"] = str(root.scalar)
        entry["cubic_degree"] = cubic.total_degree()
        grad = gradient(cubic)
        on_h = [p for p in points if sum(GaussianRational.of(c) * x for c, x in zip(coeffs, p)) == 0]
        singular = []
        for p in on_h:
            q = [x for k, x in enumerate(p) if k != pivot]
            if all(evaluate(g, q) == 0 for g in grad):
                singular.append(p)
        entry["special_points_on_hyperplane"] = len(on_h)
        entry["singular_special_points"] = len(singular)
        inside = []
        for lab in labels:
            plane = ProjectivePlane.from_label(lab)
            if all(sum((c * x for c, x in zip(coeffs, row)), ZERO) == 0 for row in plane.rows()):
                inside.append(lab)
        entry["planes_inside"] = len(inside)
        cubic_on_planes = all(
            vanishes_on_plane(cubic, _project_plane(ProjectivePlane.from_label(lab), pivot)) for lab in inside)
        entry["cubic_contains_those_planes"] = cubic_on_planes
        rec.require(f"{name}: cubic has degree 3", cubic.total_degree() == 3, cubic.total_degree())
        rec.require(f"{name}: 10 singular special points", len(singular) == 10, len(singular))
        rec.require(f"{name}: 15 planes inside", len(inside) == 15, len(inside))
        rec.require(f"{name}: cubic contains its planes", cubic_on_planes)
        summary[name] = entry
    rec.note("hyperplanes", summary)
    return rec.report()


def _project_plane(plane: ProjectivePlane, drop: int):
    class _Rows:
        def rows(self_inner):
            return [[x for k, x in enumerate(r) if k != drop] for r in plane.rows()]
    return _Rows()


# ---------------------------------------------------------------- duality

def projective_duality_check(sextic: CanonicalSextic | None = None) -> CheckReport:
    rec = Recorder("epw.duality")
    sextic = sextic or canonical_sextic()
    for name, f, fd in (("dual_of_gradient", sextic.f6, sextic.f6_dual),
                        ("sign_swapped", sextic.f6_dual, sextic.f6)):
        composed = substitute(fd, gradient(f))
        quotient, remainder = divide_by_monic_in_variable(composed, f, 0)
        rec.note(f"{name}_composed_terms", len(composed))
        rec.expect(f"{name}_composed_degree", composed.total_degree(), 30)
        rec.expect(f"{name}_remainder_is_zero", remainder.is_zero(), True)
        rec.expect(f"{name}_quotient_degree", quotient.total_degree(), 24)
        rec.note(f"{name}_quotient_terms", len(quotient))
    return rec.report()


# ---------------------------------------------------------------- lattice numerology

@dataclass(frozen=True)
class BeauvilleClasses:
    q_muC: int = 10
    q_delta: int = -8
    q_H: int = 2
    chi_H: int = 6


def hk_numerology(classes: BeauvilleClasses | None = None) -> CheckReport:
    from math import comb
    rec = Recorder("epw.beauville")
    classes = classes or BeauvilleClasses()
    q = classes.q_muC + classes.q_delta
    chi = comb(q // 2 + 3, 2)
    rec.expect("q_H", q, classes.q_H)
    rec.expect("chi_H", chi, classes.chi_H)
    rec.note("canonical", (q, chi) == (2, 6))
    return rec.report()
