"""The named check registry, plus the small checks of the algebra layers."""
from __future__ import annotations

import importlib
from dataclasses import dataclass
from typing import Callable

from .exact import (
    DenseMatrix,
    GaussianRational,
    count_vectors_of_norm,
    is_positive_definite_hermitian,
    matrix_det,
    matrix_kernel,
    matrix_rank,
    smith_normal_form,
)
from .report import CheckReport, Recorder


def smith_check() -> CheckReport:
    from .abelian import T0, IDENTITY
    rec = Recorder("exact.smith")
    rec.expect("snf_(2)", smith_normal_form(DenseMatrix.from_rows([[2]])).diag, (2,))
    rec.expect("snf_diag(1,0)", smith_normal_form(DenseMatrix.from_rows([[1, 0], [0, 0]])).diag, (1, 0))
    real = (T0 - IDENTITY).realify()
    m = DenseMatrix.from_rows(real.tolist())
    snf = smith_normal_form(m)
    prod = 1
    for d in snf.diag:
        if d:
            prod *= d
    rec.expect("realified_T0_minus_I_product", prod, 4)
    left, right = snf.left, snf.right
    diag = left @ m @ right
    rec.expect("reconstruction_is_diagonal",
               all(diag[i, j] == 0 for i in range(diag.rows) for j in range(diag.cols) if i != j), True)
    rec.expect("unimodular_transforms", {matrix_det(left), matrix_det(right)} <= {GaussianRational.of(1), GaussianRational.of(-1)}, True)
    return rec.report()


def linear_algebra_check() -> CheckReport:
    from .abelian import H1
    rec = Recorder("exact.linear-algebra")
    eye = DenseMatrix.identity(4)
    rec.expect("rank_identity", matrix_rank(eye), 4)
    rec.expect("rank_zero_3x5", matrix_rank(DenseMatrix.zeros(3, 5)), 0)
    rec.expect("kernel_identity", matrix_kernel(eye), [])
    rec.expect("kernel_(1,-1)", [tuple(v) for v in matrix_kernel(DenseMatrix.from_rows([[1, -1]]))],
               [(GaussianRational.of(1), GaussianRational.of(1))])
    h = H1.to_dense()
    rec.expect("det_H1", matrix_det(h), GaussianRational.of(1))
    rec.expect("det_2I", matrix_det(eye.scale(2)), GaussianRational.of(16))
    rec.expect("H1_positive_definite", is_positive_definite_hermitian(h), True)
    rec.expect("minus_H1_positive_definite", is_positive_definite_hermitian(-h), False)
    rec.expect("diag(1,-1)_positive_definite",
               is_positive_definite_hermitian(DenseMatrix.from_rows([[1, 0], [0, -1]])), False)
    rec.expect("norm_2_in_(2)", count_vectors_of_norm(DenseMatrix.from_rows([[2]]), 2), 2)
    rec.expect("norm_1_in_I2", count_vectors_of_norm(DenseMatrix.identity(2), 1), 4)
    return rec.report()


def sextic_basis_check() -> CheckReport:
    from .epw import canonical_sextic
    from .multipoly import evaluate, gradient, symmetric_monomial_basis
    rec = Recorder("multipoly.sextic-basis")
    basis = symmetric_monomial_basis(6, 6)
    rec.expect("basis_size", len(basis), 11)
    rec.expect("term_counts", [len(b) for b in basis], [6, 30, 30, 60, 15, 120, 60, 20, 90, 30, 1])
    s = canonical_sextic()
    rec.expect("f6_terms", len(s.f6), 57)
    rec.expect("f6_dual_terms", len(s.f6_dual), 57)
    ones = [1] * 6
    rec.expect("f6_at_ones", evaluate(s.f6, ones), GaussianRational.of(0))
    rec.expect("df6_dx0_at_ones", evaluate(gradient(s.f6)[0], ones), GaussianRational.of(0))
    return rec.report()


def pluecker_check() -> CheckReport:
    from .exterior import (
        PlaneLabel,
        ProjectivePlane,
        WedgeVector,
        plane_intersection_dimension,
        plane_intersection_point,
        plucker,
        pluecker_relations_hold,
        symplectic_pairing,
    )
    rec = Recorder("exterior.pluecker")
    std = ProjectivePlane([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    rec.expect("span(e0,e1,e2)", dict(plucker(std).coords), {(0, 1, 2): GaussianRational.of(1)})
    printed = WedgeVector(3, {(0, 2, 3): -1, (1, 2, 3): 1, (0, 3, 4): -1, (1, 3, 4): 1,
                              (0, 2, 5): -1, (1, 2, 5): 1, (0, 4, 5): 1, (1, 4, 5): -1})
    ours = plucker(ProjectivePlane.from_label(PlaneLabel.parse("V_{0+1,2+4,3-5}")))
    rec.expect("V_{0+1,2+4,3-5}_terms", len(ours.coords), 8)
    sign = 1 if ours == printed else -1 if ours == -printed else 0
    rec.require("matches the printed vector up to sign", sign != 0)
    rec.note("relative_sign", sign)
    rec.expect("pluecker_relations", pluecker_relations_hold(ours), True)
    rec.expect("self_pairing", symplectic_pairing(ours, ours), GaussianRational.of(0))
    rec.expect("pairing_e012_e345",
               symplectic_pairing(WedgeVector.basis((0, 1, 2)), WedgeVector.basis((3, 4, 5))), GaussianRational.of(1))
    other = ProjectivePlane([[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    rec.expect("dim_self", plane_intersection_dimension(std, std), 2)
    rec.expect("dim_complementary", plane_intersection_dimension(std, other), -1)
    a = ProjectivePlane.from_label(PlaneLabel.parse("V_{0-2,1-4,3-5}"))
    b = ProjectivePlane.from_label(PlaneLabel.parse("V_{0+2,1-4,3+5}"))
    rec.expect("incident_example_point", plane_intersection_point(a, b),
               tuple(GaussianRational.of(x) for x in (0, 1, 0, 0, 1, 0)))
    return rec.report()


@dataclass(frozen=True)
class CheckEntry:
    id: str
    description: str
    topic: str
    target: str          # "module:function"
    slow: bool = False

    def run(self) -> CheckReport:
        mod, func = self.target.split(":")
        fn: Callable = getattr(importlib.import_module(f"epwcert.{mod}"), func)
        report = fn()
        if report.id != self.id:
            report.id = self.id
        return report


REGISTRY: tuple[CheckEntry, ...] = (
    CheckEntry("exact.smith", "Smith normal forms and the four components of Fix(T0)", "integer lattices",
               "registry:smith_check"),
    CheckEntry("exact.linear-algebra", "Rank, kernel, determinant, definiteness and short vectors", "linear algebra",
               "registry:linear_algebra_check"),
    CheckEntry("multipoly.sextic-basis", "Monomial-symmetric sextic basis and the 57-term F6", "symmetric sextics",
               "registry:sextic_basis_check"),
    CheckEntry("exterior.pluecker", "Pluecker vectors, pairing and plane intersections", "Grassmannian",
               "registry:pluecker_check"),
    CheckEntry("epw.sextic-symmetry", "F6 and F6 dual are symmetric and swap under even sign changes",
               "the sextic", "epw:sextic_symmetry_check"),
    CheckEntry("epw.image-identity", "F6 vanishes on the image of pairs of K3 points", "K3 model",
               "epw:verify_image_identity"),
    CheckEntry("epw.vertex-pairs", "Images of pairs of vertex points", "K3 model", "epw:vertex_pairs_check"),
    CheckEntry("epw.sigma5-equivariance", "Cremona lifts induce the beta permutations", "K3 model",
               "epw:sigma5_equivariance"),
    CheckEntry("epw.singular-planes", "F6 is singular along the 60 planes; orbit sizes", "planes",
               "epw:singular_planes_check"),
    CheckEntry("exterior.lagrangian", "The 20 incident planes span a Lagrangian", "Lagrangian",
               "epw:lagrangian_check"),
    CheckEntry("exterior.beta-orbit-basis", "beta orbits of e012 -+ e345 span A and its flip", "Lagrangian",
               "epw:beta_orbit_basis_check"),
    CheckEntry("epw.minor-division", "The 10x10 minor of M_v is x0^4 times F6", "EPW degeneracy",
               "epw:epw_equation_from_minor", slow=True),
    CheckEntry("epw.minor-robustness", "A second choice of rows also gives F6", "EPW degeneracy",
               "epw:minor_robustness_check", slow=True),
    CheckEntry("epw.ya4", "The 16 corank-4 points and their five planes", "EPW strata", "epw:ya4_analysis"),
    CheckEntry("epw.corank-strata", "Pointwise coranks at sample points", "EPW strata", "epw:corank_strata_check"),
    CheckEntry("epw.tangent-hyperplanes", "16 hyperplanes tangent along Segre cubics", "tangent hyperplanes",
               "epw:tangent_hyperplane_analysis"),
    CheckEntry("epw.duality", "F6 dual of the gradient of F6 vanishes modulo F6", "duality",
               "epw:projective_duality_check", slow=True),
    CheckEntry("epw.beauville", "Beauville-Bogomolov numerology of the double cover", "hyperkaehler",
               "epw:hk_numerology"),
    CheckEntry("abelian.generators", "Relations among the generators T_j, N, E", "matrix groups",
               "abelian:generator_relations_check"),
    CheckEntry("abelian.orders", "Orders 32, 64, 7680, 46080 and the Sigma6 quotient", "matrix groups",
               "abelian:orders_check"),
    CheckEntry("abelian.uh-order", "Order of U(H)", "matrix groups", "abelian:uh_order_check"),
    CheckEntry("abelian.hermitian", "The unique invariant Hermitian form and its E8 lattice", "Hermitian form",
               "abelian:hermitian_check"),
    CheckEntry("abelian.e8", "Realified lattice is even unimodular with 240 roots", "Hermitian form",
               "abelian:e8_realization"),
    CheckEntry("abelian.fixed-and-characters", "16 fixed points and 16 invariant semi-characters",
               "two-torsion", "abelian:fixed_and_characters_check"),
    CheckEntry("abelian.quadratic-forms", "Orbits of invariant quadratic forms", "two-torsion",
               "abelian:quadratic_form_orbits"),
    CheckEntry("abelian.odp-orbits", "Stabilizer of three points and its orbits on the fixed set", "nodes",
               "abelian:odp_orbit_analysis"),
    CheckEntry("abelian.incidence", "The (16,10) divisor-point incidence", "incidence",
               "abelian:divisor_point_incidence"),
    CheckEntry("abelian.reflections-surfaces", "30 reflections and 120 fixed surfaces", "fixed loci",
               "abelian:reflections_surfaces_check"),
    CheckEntry("abelian.isotropy", "Isotropy orders of two-torsion points", "fixed loci",
               "abelian:isotropy_census"),
    CheckEntry("abelian.lefschetz", "Fixed-point count balance", "fixed loci", "abelian:lefschetz_balance"),
    CheckEntry("igusa.relations", "Igusa relation, y-coordinates and tangent squares", "tangent cone",
               "igusa:relations_check"),
    CheckEntry("igusa.invariance", "Symmetries of the invariant generators", "tangent cone",
               "igusa:invariance_check"),
    CheckEntry("combinatorics.hyperplane-classes", "Small Sigma6-orbits of hyperplanes", "hyperplane families",
               "combinatorics:classify_invariant_hyperplane_sets"),
    CheckEntry("combinatorics.families", "The 60 planes of each family", "hyperplane families",
               "combinatorics:family_planes_check"),
    CheckEntry("combinatorics.recover", "Recovering F6 and F6 dual from the planes", "hyperplane families",
               "combinatorics:recover_check"),
    CheckEntry("combinatorics.degenerate", "Degenerate parameters t=-1/3 and t=-1/6", "hyperplane families",
               "combinatorics:degenerate_sextics"),
    CheckEntry("combinatorics.reduction-map", "Image parameters under N_i^t for both families", "hyperplane families",
               "combinatorics:reduction_check"),
    CheckEntry("combinatorics.intersection-rules", "Partition rules for plane intersections", "incidence",
               "combinatorics:intersection_rule_check"),
    CheckEntry("combinatorics.six-configs", "The six complete incident 20-sets", "incidence",
               "combinatorics:six_configurations_check"),
    CheckEntry("combinatorics.twenty-points", "Points of the 20 incident planes", "incidence",
               "combinatorics:twenty_plane_points"),
    CheckEntry("combinatorics.petersen", "Petersen graph labeling by beta", "Petersen graph",
               "combinatorics:petersen_check"),
)


def list_checks() -> list[tuple[str, str, str]]:
    return [(e.id, e.description, e.topic) for e in REGISTRY]


def lookup(check_id: str) -> CheckEntry:
    for e in REGISTRY:
        if e.id == check_id:
            return e
    raise KeyError(check_id)
