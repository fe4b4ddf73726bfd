from __future__ import annotations

from fractions import Fraction

from epwcert.igusa import (
    InvariantRingPresentation,
    canonical_presentation,
    hyperplane_pullbacks,
    igusa_relation,
    igusa_relation_check,
    invariance_check,
    proportionality,
    relation_kernel,
    y_coordinate_check,
)
from epwcert.multipoly import perfect_square_root, substitute


def _with_relation(rel) -> InvariantRingPresentation:
    p = canonical_presentation()
    return InvariantRingPresentation(p.generators, rel, p.y_forms, p.ig_y)


def test_relation_vanishes_and_spans_kernel():
    pres = canonical_presentation()
    assert substitute(pres.relation, list(pres.generators)).is_zero()
    (k,) = relation_kernel(4)
    assert proportionality(k, pres.relation) is not None


def test_printed_sign_leaves_eleven_terms():
    pres = canonical_presentation()
    residue = substitute(igusa_relation(as_printed=True), list(pres.generators))
    assert len(residue) == 11
    assert not igusa_relation_check(_with_relation(igusa_relation(as_printed=True))).passed


def test_dropping_last_term_fails():
    assert not igusa_relation_check(_with_relation(igusa_relation(drop_last_term=True))).passed


def test_y_scalar():
    report = y_coordinate_check()
    assert report.passed
    assert report.details["scalar"] == Fraction(-324)


def test_pullbacks_are_squares():
    pulls = hyperplane_pullbacks()
    assert len(pulls) == 20
    assert all(perfect_square_root(q) is not None for q in pulls.values())


def test_invariance():
    assert invariance_check().passed
