from __future__ import annotations

from fractions import Fraction

import pytest

from epwcert.multipoly import (
    PARTITIONS_OF_SIX,
    Polynomial,
    divide_by_monic_in_variable,
    dumps,
    exact_divide,
    gradient,
    loads,
    monomial_symmetric,
    perfect_square_root,
    polynomial_det,
    restrict_to_span,
    symmetric_monomial_basis,
)
from epwcert.registry import sextic_basis_check

x, y, z = Polynomial.variables(3)


def test_monomial_symmetric_is_each_monomial_once():
    m21 = monomial_symmetric((2, 1), 3)
    assert len(m21) == 6
    assert set(m21.terms.values()) == {1}
    assert len(PARTITIONS_OF_SIX) == 11
    assert [len(b) for b in symmetric_monomial_basis(6, 6)] == [6, 30, 30, 60, 15, 120, 60, 20, 90, 30, 1]


def test_dumps_loads_round_trip():
    p = (x + y.scale(2)) ** 3 - z.scale(Fraction(1, 3)) + x * z
    assert loads(dumps(p), 3) == p


def test_exact_divide_rejects_remainder():
    assert exact_divide((x + y) * (x - z), x + y) == x - z
    with pytest.raises(ArithmeticError):
        exact_divide(x * x + 1, x + y)
    with pytest.raises(ZeroDivisionError):
        exact_divide(x, Polynomial.zero(3))


def test_monic_division():
    q, r = divide_by_monic_in_variable(x ** 3 + y, x ** 2 + z, 0)
    assert q == x and r == y - x * z
    with pytest.raises(ValueError):
        divide_by_monic_in_variable(x ** 3, x.scale(2) ** 2, 0)


def test_square_root():
    found = perfect_square_root((x * x - y * z.scale(3)) ** 2)
    assert found is not None and found.root == x * x - y * z.scale(3)
    assert perfect_square_root(x * x + y * y) is None


def test_polynomial_det_and_gradient():
    assert polynomial_det([[x, y], [z, x]]) == x * x - y * z
    assert gradient(x * x * y) == [(x * y).scale(2), x * x, Polynomial.zero(3)]


def test_restrict_to_span():
    # x + y - z on the span of (1,0,1), (0,1,1) vanishes identically
    assert restrict_to_span(x + y - z, [[1, 0, 1], [0, 1, 1]]).is_zero()


def test_sextic_basis_check():
    assert sextic_basis_check().passed
