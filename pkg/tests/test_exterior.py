from __future__ import annotations

from epwcert.exterior import (
    PlaneLabel,
    ProjectivePlane,
    WedgeVector,
    plane_intersection_dimension,
    plucker,
    pluecker_relations_hold,
    sort_with_sign,
    span_and_isotropy,
    symplectic_pairing,
    wedge,
)
from epwcert.registry import pluecker_check


def test_sort_with_sign():
    assert sort_with_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert sort_with_sign((1, 0, 2)) == (-1, (0, 1, 2))
    assert sort_with_sign((1, 1, 2))[0] == 0


def test_label_round_trip():
    for text in ("V_{0+1,2+4,3-5}", "V_{0-2,1-4,3-5}"):
        label = PlaneLabel.parse(text)
        assert PlaneLabel.parse(str(label)) == label
    assert PlaneLabel.parse("V_{0+1,2+4,3-5}").minus_count() == 1


def test_decomposability():
    e012, e345 = WedgeVector.basis((0, 1, 2)), WedgeVector.basis((3, 4, 5))
    assert pluecker_relations_hold(e012)
    assert not pluecker_relations_hold(e012 + e345)
    assert symplectic_pairing(e012, e345) == -symplectic_pairing(e345, e012)
    assert wedge(e012, e345) == WedgeVector.basis((0, 1, 2, 3, 4, 5))


def test_coordinate_planes_span():
    planes = [ProjectivePlane([[1 if j == i else 0 for j in range(6)] for i in trio])
              for trio in ((0, 1, 2), (0, 1, 3))]
    assert plane_intersection_dimension(*planes) == 1
    dim, isotropic, _ = span_and_isotropy([plucker(p) for p in planes])
    assert dim == 2 and isotropic


def test_pluecker_check():
    report = pluecker_check()
    assert report.passed
    assert report.details["relative_sign"] == -1
