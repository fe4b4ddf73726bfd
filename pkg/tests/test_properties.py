"""Randomized invariants of the exact algebra layers (hypothesis, >= 100 cases each)."""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from epwcert import perm
from epwcert.exact import (
    DenseMatrix,
    GaussianRational,
    matrix_det,
    matrix_kernel,
    matrix_rank,
    smith_normal_form,
)
from epwcert.exterior import WedgeVector, subsets, symplectic_pairing, wedge
from epwcert.multipoly import (
    Polynomial,
    divide_by_monic_in_variable,
    evaluate,
    exact_divide,
    multiply,
    perfect_square_root,
    schoolbook_multiply,
    substitute,
)

PROPS = settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])

small_int = st.integers(-4, 4)
rational = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussian = st.builds(GaussianRational, rational, rational)


def polynomials(arity: int = 3, max_degree: int = 3, max_terms: int = 5, coeffs=gaussian):
    mono = st.tuples(*[st.integers(0, max_degree)] * arity)
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(lambda d: Polynomial.from_terms(arity, d))


def int_matrices(max_rows: int = 4, max_cols: int = 4, lo: int = -6, hi: int = 6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def wedge3():
    return st.lists(small_int, min_size=20, max_size=20).map(lambda v: WedgeVector.from_coordinates(3, v))


# ---------------------------------------------------------------- polynomials

@PROPS
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    zero, one = Polynomial.zero(3), Polynomial.constant(3, 1)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert a - a == zero


@PROPS
@given(polynomials(max_terms=6), polynomials(max_terms=6))
def test_flint_matches_schoolbook(a, b):
    assert multiply(a, b) == schoolbook_multiply(a, b)


@PROPS
@given(polynomials(), polynomials(coeffs=rational).filter(lambda p: not p.is_zero()))
def test_division_exactness(a, b):
    assert exact_divide(a * b, b) == a
    # monic division in x0 reconstructs the dividend with a smaller remainder
    x0, x1, x2 = Polynomial.variables(3)
    divisor = x0 ** 2 + substitute(b, [Polynomial.zero(3), x1, x2])
    q, r = divide_by_monic_in_variable(a, divisor, 0)
    assert q * divisor + r == a
    assert r.is_zero() or r.degree_in(0) < 2


@PROPS
@given(polynomials(max_degree=2, max_terms=4).filter(lambda p: not p.is_zero()),
       gaussian.filter(lambda z: not z.is_zero()))
def test_square_root_round_trip(r, scale):
    p = (r * r).scale(scale)
    found = perfect_square_root(p)
    assert found is not None
    assert found.root * found.root == p.scale(found.scalar)
    assert found.root == r.scale(r.leading_term()[1].inverse())
    # the leading monomial of x0 * p has an odd exponent, so it is not a square
    assert perfect_square_root(p * Polynomial.variable(3, 0)) is None


@PROPS
@given(polynomials(), st.lists(polynomials(max_degree=2, max_terms=3), min_size=3, max_size=3),
       st.lists(small_int, min_size=3, max_size=3))
def test_substitute_then_evaluate(p, images, point):
    inner = [evaluate(q, point) for q in images]
    assert evaluate(substitute(p, images), point) == evaluate(p, inner)


# ---------------------------------------------------------------- linear algebra

@PROPS
@given(int_matrices(5, 5, -3, 3))
def test_rank_nullity(rows):
    m = DenseMatrix.from_rows(rows)
    kernel = matrix_kernel(m)
    assert matrix_rank(m) + len(kernel) == m.cols
    for v in kernel:
        for row in rows:
            assert sum((GaussianRational.of(x) * y for x, y in zip(row, v)), GaussianRational.of(0)) == 0


def _cofactor_det(rows):
    n = len(rows)
    total = 0
    for p in itertools.permutations(range(n)):
        term = perm.sign(p)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


@PROPS
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_bareiss_matches_cofactor_expansion(rows):
    assert matrix_det(DenseMatrix.from_rows(rows)) == _cofactor_det(rows)


@PROPS
@given(int_matrices())
def test_snf_reconstruction(rows):
    m = DenseMatrix.from_rows(rows)
    snf = smith_normal_form(m)
    d = snf.left @ m @ snf.right
    for i in range(d.rows):
        for j in range(d.cols):
            expected = snf.diag[i] if i == j and i < len(snf.diag) else 0
            assert d[i, j] == expected
    assert matrix_det(snf.left) in (1, -1) and matrix_det(snf.right) in (1, -1)
    nonzero = [x for x in snf.diag if x]
    assert all(x > 0 for x in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert len(nonzero) == matrix_rank(m)


@settings(max_examples=100, deadline=None)
@given(int_matrices(3, 3, -4, 4), st.integers(2, 4))
def test_snf_counts_solutions_mod_n(rows, n):
    """#{x in (Z/n)^c : A x = 0 mod n} equals the product of gcd(d_i, n)."""
    cols = len(rows[0])
    snf = smith_normal_form(DenseMatrix.from_rows(rows))
    diag = list(snf.diag) + [0] * (cols - len(snf.diag))
    predicted = math.prod(math.gcd(int(d), n) for d in diag[:cols])
    count = sum(1 for x in itertools.product(range(n), repeat=cols)
                if all(sum(a * b for a, b in zip(row, x)) % n == 0 for row in rows))
    assert count == predicted


# ---------------------------------------------------------------- exterior algebra

@PROPS
@given(wedge3(), wedge3(), wedge3(), small_int)
def test_pairing_antisymmetry(a, b, c, k):
    assert symplectic_pairing(a, b) == -symplectic_pairing(b, a)
    assert symplectic_pairing(a, a) == 0
    combo = WedgeVector(3, {key: a.coords.get(key, 0) * k + b.coords.get(key, 0) for key in subsets(3)})
    assert symplectic_pairing(combo, c) == symplectic_pairing(a, c) * k + symplectic_pairing(b, c)


@PROPS
@given(st.lists(st.lists(small_int, min_size=6, max_size=6), min_size=3, max_size=3))
def test_decomposable_vectors_are_self_orthogonal(vectors):
    w = wedge(wedge(WedgeVector.from_vector(vectors[0]), WedgeVector.from_vector(vectors[1])),
              WedgeVector.from_vector(vectors[2]))
    assert symplectic_pairing(w, w) == 0
    assert wedge(w, WedgeVector.from_vector(vectors[0])).coords == {}


# ---------------------------------------------------------------- groups

@settings(max_examples=100, deadline=None)
@given(st.lists(st.permutations(range(5)), min_size=1, max_size=3))
def test_closure_is_idempotent_subgroup(gens):
    gens = [tuple(g) for g in gens]
    group = perm.closure(gens)
    assert perm.closure(sorted(group)) == group
    assert 120 % len(group) == 0
    assert all(perm.compose(g, h) in group for g in gens for h in group)


def test_sigma6_quotient_is_a_homomorphism():
    from epwcert.abelian import sigma6_quotient, standard_groups
    g = standard_groups().UH
    q = sigma6_quotient(g)
    assert len(set(q.images)) == 720
    rng = random.Random(20261015)
    for _ in range(200):
        x, y = rng.randrange(g.order), rng.randrange(g.order)
        product = g.index_of(g.elements[x] @ g.elements[y])
        assert q.images[product] == perm.compose(q.images[x], q.images[y])
