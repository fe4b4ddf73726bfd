from __future__ import annotations

from fractions import Fraction

import pytest

from epwcert.combinatorics import (
    EXCLUDED,
    RankDegenerationError,
    SingularReductionError,
    build_sixty_planes,
    classify_invariant_hyperplane_sets,
    family_planes_check,
    petersen_check,
    petersen_labeling,
    recover_sextic,
    reduction_check,
    reduction_determinant,
    reduction_map_check,
    singular_parameters,
)
from epwcert.epw import F6_COEFFICIENTS, F6_DUAL_COEFFICIENTS, INCIDENT_PARTITIONS, partition_from_cycles


def test_hyperplane_classes():
    assert classify_invariant_hyperplane_sets().passed


def test_families():
    assert family_planes_check().passed


@pytest.mark.parametrize("family,expected", [(1, F6_DUAL_COEFFICIENTS), (2, F6_COEFFICIENTS)])
def test_recovered_coefficients(family, expected):
    (vec,) = recover_sextic(family, Fraction(-1, 2))
    assert tuple(vec) == tuple(expected)


def test_strict_build_rejects_degenerate_parameter():
    with pytest.raises(RankDegenerationError):
        build_sixty_planes(1, EXCLUDED[1])
    inst = build_sixty_planes(1, EXCLUDED[1], strict=False)
    assert sorted(p.containing for p in inst.planes).count(5) == 45


def test_reduction_determinant_factorises():
    for family in (1, 2):
        _, factored = reduction_determinant(family)
        assert factored
    assert singular_parameters(1) == [Fraction(-1, 3)]
    assert singular_parameters(2) == [Fraction(-1, 6)]


@pytest.mark.parametrize("family", [1, 2])
def test_reduction_raises_at_excluded_parameter(family):
    with pytest.raises(SingularReductionError):
        reduction_map_check(family, EXCLUDED[family])


@pytest.mark.parametrize("family,t,pushed", [(1, 0, "-1/2"), (1, 1, "-3"), (2, 0, "-1/5"), (2, 1, "-9/5")])
def test_reduction_parameters(family, t, pushed):
    report = reduction_map_check(family, t)
    assert report.passed
    assert report.details["pullback_t_prime"] == -1
    assert report.details["pushforward_t_prime"] == Fraction(pushed)


def test_reduction_check():
    assert reduction_check().passed


def test_petersen_classes_match_incident_partitions():
    lab, report = petersen_labeling()
    assert report.passed and petersen_check().passed
    assert len(lab.vertices) == 10 and len(lab.edges) == 15
    assert sorted(len(es) for es in lab.classes.values()) == [3] * 5
    classes = {frozenset(frozenset(lab.edge_labels[e]) for e in es) for es in lab.classes.values()}
    expected = {frozenset(frozenset(pair) for pair in partition_from_cycles(c)) for c in INCIDENT_PARTITIONS}
    assert classes == expected
