from __future__ import annotations

from fractions import Fraction

import pytest

from epwcert.exact import (
    DenseMatrix,
    GaussianRational,
    count_vectors_of_norm,
    format_scalar,
    is_positive_definite_hermitian,
    matrix_det,
    matrix_inverse,
    matrix_kernel,
    matrix_rank,
    parse_scalar,
    smith_normal_form,
)
from epwcert.registry import linear_algebra_check, smith_check

I = GaussianRational(0, 1)


def test_gaussian_arithmetic():
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * z.conjugate() == z.norm()
    assert z * z.inverse() == 1
    assert I * I == -1
    assert (1 + I) ** 4 == -4
    assert (1 + I) ** -1 == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    with pytest.raises(ZeroDivisionError):
        GaussianRational.of(0).inverse()


@pytest.mark.parametrize("text", ["0", "1", "-3/5", "1+1*i", "0-1*i", "-1/2+3/4*i"])
def test_scalar_text_round_trip(text):
    assert format_scalar(parse_scalar(text)) == text


def test_rank_kernel_det():
    m = DenseMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert matrix_rank(m) == 2
    (v,) = matrix_kernel(m)
    assert all(sum((m[i, j] * v[j] for j in range(3)), GaussianRational.of(0)) == 0 for i in range(3))
    assert matrix_det(m) == 0
    a = DenseMatrix.from_rows([[1, I], [0, 2]])
    assert matrix_det(a) == 2
    assert a @ matrix_inverse(a) == DenseMatrix.identity(2)


def test_smith_examples():
    snf = smith_normal_form(DenseMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert snf.diag == (2, 6, 12)
    snf = smith_normal_form(DenseMatrix.from_rows([[6, 4], [4, 6]]))
    assert snf.diag == (2, 10)


def test_positive_definite_and_short_vectors():
    a2 = DenseMatrix.from_rows([[2, -1], [-1, 2]])
    assert is_positive_definite_hermitian(a2)
    assert count_vectors_of_norm(a2, 2) == 6
    assert not is_positive_definite_hermitian(DenseMatrix.from_rows([[1, 2], [2, 1]]))


def test_registered_checks_pass():
    assert smith_check().passed
    assert linear_algebra_check().passed
