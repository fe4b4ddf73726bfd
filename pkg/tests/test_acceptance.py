"""One test per acceptance criterion; each prints a PASS/FAIL line with its wall time."""
from __future__ import annotations

import time

import pytest

from epwcert.registry import lookup


def _announce(capsys, number: int, label: str, ok: bool, seconds: float, limit: float) -> None:
    with capsys.disabled():
        mark = "PASS" if ok else "FAIL"
        print(f"\n[{mark}] criterion {number:2d} {label} ({seconds:.2f} s, limit {limit:g} s)")


def _criterion(capsys, number: int, check_id: str, limit: float, frozen):
    """Run the registered check, compare frozen values and enforce the time limit."""
    start = time.perf_counter()
    report = lookup(check_id).run()
    seconds = time.perf_counter() - start
    problems = list(report.details.get("failures", []))
    try:
        frozen(report.details)
    except AssertionError as exc:
        problems.append(f"frozen value: {exc}")
    if seconds > limit:
        problems.append(f"took {seconds:.1f} s, limit {limit} s")
    ok = report.passed and not problems
    _announce(capsys, number, check_id, ok, seconds, limit)
    assert ok, problems
    return report


def test_criterion_01_image_identity(capsys):
    def frozen(d):
        assert d["constant_part"] == 0 and d["w_part"] == 0
    _criterion(capsys, 1, "epw.image-identity", 30, frozen)


def test_criterion_02_singular_planes(capsys):
    def frozen(d):
        assert d["plane_count"] == 60
        assert d["planes_with_nonvanishing_restriction"] == []
        assert sorted(d["sigma6_orbit_sizes"]) == [15, 45]
        assert sorted(d["beta_orbit_sizes"]) == [5, 10, 15, 30]
    _criterion(capsys, 2, "epw.singular-planes", 10, frozen)


def test_criterion_03_lagrangian(capsys):
    def frozen(d):
        assert d["plane_count"] == 20 and d["pairs_checked"] == 190
        assert d["bad_pairs"] == []
        assert d["span_dimension"] == 10 and d["isotropic"] is True
    _criterion(capsys, 3, "exterior.lagrangian", 1, frozen)


def test_criterion_04_minor_division(capsys):
    def frozen(d):
        assert d["remainder_is_zero"] is True
        assert str(d["quotient_degree"]) == "4"
    _criterion(capsys, 4, "epw.minor-division", 60, frozen)


def test_criterion_05_ya4(capsys):
    def frozen(d):
        assert d["point_count"] == 16 and d["points_with_corank_4"] == 16
        assert len(d["planes_through_(1,-1,1,1,-1,1)"]) == 5
    _criterion(capsys, 5, "epw.ya4", 10, frozen)


def test_criterion_06_tangent_hyperplanes(capsys):
    def frozen(d):
        assert d["hyperplane_count"] == 16
        for name, h in d["hyperplanes"].items():
            assert h["square"] is True, name
            assert str(h["cubic_degree"]) == "3", name
            assert h["singular_special_points"] == 10, name
            assert h["planes_inside"] == 15, name
    _criterion(capsys, 6, "epw.tangent-hyperplanes", 60, frozen)


def test_criterion_07_duality(capsys):
    def frozen(d):
        assert d["dual_of_gradient_remainder_is_zero"] is True
        assert str(d["dual_of_gradient_quotient_degree"]) == "24"
    _criterion(capsys, 7, "epw.duality", 600, frozen)


def test_criterion_08_orders(capsys):
    def frozen(d):
        assert (d["G"], d["Gi"], d["NG"], d["UH"]) == (32, 64, 7680, 46080)
        assert d["image_size"] == 720 and d["kernel_equals_Gi"] is True
        assert d["E5_orbit_size_up_to_unit"] == 6
    _criterion(capsys, 8, "abelian.orders", 60, frozen)


def test_criterion_09_hermitian(capsys):
    def frozen(d):
        assert d["solution_dimension"] == 1 and d["normalized_solution_is_H1"] is True
        assert str(d["det_H"]) == "1"
        assert d["positive_definite"] is True and d["even"] is True
        assert d["gram_det"] == 1 and d["norm_2_vectors"] == 240
    _criterion(capsys, 9, "abelian.hermitian", 30, frozen)


def test_criterion_10_fixed_and_characters(capsys):
    def frozen(d):
        assert d["fixed_point_count"] == 16 and d["i_fixed_equals_G_fixed"] is True
        assert d["invariant_semicharacter_count"] == 16
        assert d["trivial_on_fixed_points"] is True and d["pairwise_equal_pattern"] is True
    _criterion(capsys, 10, "abelian.fixed-and-characters", 5, frozen)


def test_criterion_11_odp_orbits(capsys):
    def frozen(d):
        assert d["U012_order"] == 4608
        assert sorted(d["orbit_sizes"]) == [1, 6, 9]
        assert sorted(map(tuple, d["six_orbit"])) == [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0),
                                                      (0, 1, 0, 1), (1, 0, 0, 0), (1, 0, 1, 0)]
    _criterion(capsys, 11, "abelian.odp-orbits", 60, frozen)


def test_criterion_12_incidence(capsys):
    def frozen(d):
        assert d["row_sums"] == [10] and d["column_sums"] == [10]
        assert d["pairwise_common_points"] == [6] and d["pairwise_points_outside_union"] == [2]
        assert d["lower_triangle_holds"] is True
    _criterion(capsys, 12, "abelian.incidence", 1, frozen)


def test_criterion_13_reflections_surfaces(capsys):
    def frozen(d):
        assert d["reflection_count"] == 30 and d["components_per_reflection"] == [4]
        assert d["surface_count"] == 120 and d["points_per_surface"] == [4]
        assert d["surfaces_per_divisor"] == [30] and d["point_sets_per_divisor"] == [15]
    _criterion(capsys, 13, "abelian.reflections-surfaces", 60, frozen)


def test_criterion_14_igusa(capsys):
    def frozen(d):
        rel = d["igusa.relation"]
        assert rel["residue_terms"] == 0 and rel["degree4_kernel_dim"] == 1
        y = d["igusa.y-coordinates"]
        assert y["sum_of_y_is_zero"] is True and str(y["scalar"]) == "-324"
        sq = d["igusa.hyperplane-squares"]
        assert sq["distinct_quadrics"] == 10 and sq["p0+p1+p2+p3_is_(sum t^2)^2"] is True
    _criterion(capsys, 14, "igusa.relations", 10, frozen)


def test_criterion_15_recover(capsys):
    def frozen(d):
        assert d["family1_kernel_dim"] == 1 and d["family2_kernel_dim"] == 1
        assert [str(c) for c in d["family1_generator"]][-1] == "16"
        assert [str(c) for c in d["family2_generator"]][-1] == "-16"
        deg = d["degenerations"]
        assert deg["family1_t=-1/3_kernel_dim"] == 1
        assert deg["family1_t=-1/3_containment_counts"] == {5: 45, 4: 15}
        assert deg["family2_t=-1/6_common_point_dim"] == 1
        assert [str(c) for c in deg["common_point"]] == ["1"] * 6
        assert deg["control_family1_not_square"] is True and deg["control_family2_common_points"] == 0
    _criterion(capsys, 15, "combinatorics.recover", 60, frozen)


def test_criterion_16_six_configs(capsys):
    def frozen(d):
        for fam in ("family1", "family2"):
            assert d[fam]["configurations"] == 6
            assert d[f"{fam}_stabilizer_order"] == 120
            assert sorted(int(k) for k in d[f"{fam}_transitive"]) == list(range(6))
        rules = d["intersection_rules"]
        assert rules["pairs"] == 1770 and rules["exceptions"] == []
        pts = d["twenty_plane_points"]
        assert pts["quintuple_points"] == 16 and pts["double_points"] == 30
    _criterion(capsys, 16, "combinatorics.six-configs", 60, frozen)


def test_criterion_17_property_suites(capsys):
    import test_properties as props

    suites = [props.test_ring_axioms, props.test_rank_nullity, props.test_snf_reconstruction,
              props.test_pairing_antisymmetry, props.test_division_exactness, props.test_square_root_round_trip]
    start = time.perf_counter()
    failures = []
    for fn in suites:
        try:
            fn()
        except Exception as exc:  # collect, then report all
            failures.append(f"{fn.__name__}: {exc!r}")
    seconds = time.perf_counter() - start
    if seconds > 30:
        failures.append(f"took {seconds:.1f} s, limit 30 s")
    _announce(capsys, 17, "property suites", not failures, seconds, 30)
    assert not failures, failures


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
