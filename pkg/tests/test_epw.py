from __future__ import annotations

import random

import pytest

from epwcert.epw import (
    F6_COEFFICIENTS,
    F6_DUAL_COEFFICIENTS,
    CanonicalSextic,
    canonical_degeneracy_system,
    canonical_sextic,
    coefficients_in_symmetric_basis,
    corank_at,
    degeneracy_system,
    epw_equation_from_minor,
    incident_plane_labels,
    minor_robustness_check,
    sextic_from_coefficients,
    sextic_symmetry_check,
    singular_plane_labels,
    singular_planes_check,
    special_points,
    verify_image_identity,
)
from epwcert.exterior import WedgeVector
from epwcert.multipoly import evaluate, negate_variables


def _perturbed(last: int) -> CanonicalSextic:
    coeffs = list(F6_COEFFICIENTS)
    coeffs[-1] = last
    dual = list(F6_DUAL_COEFFICIENTS)
    dual[-1] = -last
    return CanonicalSextic(sextic_from_coefficients(coeffs), sextic_from_coefficients(dual))


def test_frozen_coefficients():
    s = canonical_sextic()
    assert coefficients_in_symmetric_basis(s.f6) == tuple(F6_COEFFICIENTS)
    assert F6_COEFFICIENTS == (1, 0, -1, 0, 0, 0, 0, 2, 0, 0, -16)
    assert F6_DUAL_COEFFICIENTS == (1, 0, -1, 0, 0, 0, 0, 2, 0, 0, 16)
    assert negate_variables(s.f6, (0,)) == s.f6_dual


def test_sextic_symmetry():
    assert sextic_symmetry_check().passed


def test_plane_label_counts():
    assert len(singular_plane_labels()) == 60
    assert len(incident_plane_labels()) == 20


def test_perturbed_sextic_breaks_image_identity():
    report = verify_image_identity(sextic=_perturbed(-15).f6)
    assert not report.passed


def test_perturbed_sextic_not_singular_on_planes():
    report = singular_planes_check(_perturbed(-15))
    assert not report.passed
    assert report.details["planes_with_nonvanishing_restriction"]


def test_minor_robustness():
    report = minor_robustness_check()
    assert report.passed and report.details["remainder_is_zero"] is True


def test_non_lagrangian_minor_is_not_divisible():
    rng = random.Random(7)
    basis = [WedgeVector.from_coordinates(3, [rng.randint(-2, 2) for _ in range(20)]) for _ in range(10)]
    report = epw_equation_from_minor(system=degeneracy_system(basis))
    assert not report.passed


def test_special_points_have_corank_four():
    system = canonical_degeneracy_system()
    points = special_points()
    assert len(points) == 16
    assert all(evaluate(canonical_sextic().f6, p) == 0 for p in points)
    assert corank_at(system, points[0]) == 4
    with pytest.raises(ValueError):
        corank_at(system, [0] * 6)
