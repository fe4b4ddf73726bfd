from __future__ import annotations

from epwcert.abelian import (
    H1,
    IDENTITY,
    StandardGenerators,
    dump_orders,
    g_fixed_points,
    gm,
    invariant_hermitian_space,
    invariant_semicharacters,
    relation_failures,
    sigma6_quotient,
    standard_generators,
    standard_groups,
    symplectic_reflections,
)
from epwcert.cli import dump_text


def test_frozen_orders():
    assert dump_orders() == {"G": 32, "Gi": 64, "NG": 7680, "UH": 46080}
    assert standard_groups().U012.order == 4608


def test_frozen_hermitian_matrix():
    assert dump_text("hermitian-H") == (
        '[["2","0","1","1+1*i"],["0","2","1+1*i","0-1*i"],["1","1-1*i","2","0"],["1-1*i","0+1*i","0","2"]]\n')
    assert H1 == standard_generators().H


def test_transcription_relations():
    s = standard_generators()
    assert relation_failures(s) == []
    broken = StandardGenerators(s.T, s.N5, s.N45, s.N01, s.Nf, s.E5, s.E4, s.q012, s.q013, s.H)
    assert relation_failures(broken)


def test_hermitian_space_detects_non_unitary_generator():
    s = standard_generators()
    assert len(invariant_hermitian_space([s.N5, s.N01, s.N45])) == 1
    doubled = gm([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert invariant_hermitian_space([s.N5, s.N01, s.N45, doubled]) == []


def test_fixed_points_and_characters():
    assert len(g_fixed_points()) == 16
    assert len(invariant_semicharacters()) == 16


def test_reflections():
    refl = symplectic_reflections()
    assert len(refl) == 30
    assert IDENTITY not in refl


def test_sigma6_kernel():
    q = sigma6_quotient()
    assert len(q.kernel) == 64
    assert len(set(q.images)) == 720
