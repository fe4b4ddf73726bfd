"""Every registered check that is not already an acceptance criterion passes."""
from __future__ import annotations

import pytest

from epwcert.registry import REGISTRY, lookup

ACCEPTANCE_IDS = {
    "epw.image-identity", "epw.singular-planes", "exterior.lagrangian", "epw.minor-division", "epw.ya4",
    "epw.tangent-hyperplanes", "epw.duality", "abelian.orders", "abelian.hermitian",
    "abelian.fixed-and-characters", "abelian.odp-orbits", "abelian.incidence", "abelian.reflections-surfaces",
    "igusa.relations", "combinatorics.recover", "combinatorics.six-configs",
}


def test_ids_are_unique_and_resolve():
    ids = [e.id for e in REGISTRY]
    assert len(ids) == len(set(ids))
    assert ACCEPTANCE_IDS <= set(ids)
    with pytest.raises(KeyError):
        lookup("no.such-check")


@pytest.mark.parametrize("check_id", [e.id for e in REGISTRY if e.id not in ACCEPTANCE_IDS])
def test_check_passes(check_id):
    report = lookup(check_id).run()
    assert report.id == check_id
    assert report.passed, report.details.get("failures")
