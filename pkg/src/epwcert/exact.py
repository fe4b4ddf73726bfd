"""Exact scalars and dense linear algebra over the Gaussian rationals.

Everything here is error-free: scalars are pairs of reduced fractions and
every matrix routine works by exact elimination.  Integer-only helpers
(Smith normal form, short-vector counting) check their inputs and refuse
anything that is not integral.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

import numpy as np


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not value.is_integer():
            raise TypeError(f"refusing inexact float {value!r}")
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    # numpy integers and other Rational-like values
    return Fraction(int(value))


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """The number re + im*i with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", _to_fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", _to_fraction(self.im))

    @classmethod
    def of(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(_to_fraction(value.real), _to_fraction(value.imag))
        return cls(_to_fraction(value), Fraction(0))

    # predicates
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.im == 0 and o.im == 0:
            return GaussianRational(self.re * o.re, Fraction(0))
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.im == 0:
            if o.re == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def _coerce(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction, complex, np.integer)):
        return GaussianRational.of(value)
    return None


ZERO = GaussianRational(Fraction(0), Fraction(0))
ONE = GaussianRational(Fraction(1), Fraction(0))
I = GaussianRational(Fraction(0), Fraction(1))


def _format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Render as ``a/b`` or ``a/b+c/d*i`` (integers drop the denominator)."""
    if z.im == 0:
        return _format_fraction(z.re)
    sign = "-" if z.im < 0 else "+"
    return f"{_format_fraction(z.re)}{sign}{_format_fraction(abs(z.im))}*i"


_SCALAR_RE = re.compile(r"^([+-]?\d+(?:/\d+)?)(?:([+-])(\d+(?:/\d+)?)\*i)?$")


def parse_scalar(text: str) -> GaussianRational:
    m = _SCALAR_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a Gaussian rational: {text!r}")
    re_part = Fraction(m.group(1))
    im_part = Fraction(0)
    if m.group(2):
        im_part = Fraction(m.group(3)) * (-1 if m.group(2) == "-" else 1)
    return GaussianRational(re_part, im_part)


@dataclass(frozen=True, slots=True)
class DenseMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> DenseMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        entries = tuple(GaussianRational.of(x) for r in rows for x in r)
        return cls(len(rows), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> DenseMatrix:
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> DenseMatrix:
        return cls(rows, cols, (ZERO,) * (rows * cols))

    def __getitem__(self, ij) -> GaussianRational:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> DenseMatrix:
        return DenseMatrix(self.cols, self.rows,
                           tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def conjugate(self) -> DenseMatrix:
        return DenseMatrix(self.rows, self.cols, tuple(x.conjugate() for x in self.entries))

    def conjugate_transpose(self) -> DenseMatrix:
        return self.transpose().conjugate()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integer(self) -> bool:
        return all(x.is_real() and x.re.denominator == 1 for x in self.entries)

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        self._same_shape(other)
        return DenseMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        self._same_shape(other)
        return DenseMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> DenseMatrix:
        return DenseMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> DenseMatrix:
        c = GaussianRational.of(c)
        return DenseMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    if a[i][k] and b[k][j]:
                        acc = acc + a[i][k] * b[k][j]
                out.append(acc)
        return DenseMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence) -> list:
        vector = [GaussianRational.of(v) for v in vector]
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((self[i, k] * vector[k] for k in range(self.cols)), ZERO) for i in range(self.rows)]

    def _same_shape(self, other: DenseMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __str__(self):
        return "\n".join(" ".join(format_scalar(x) for x in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ A @ right`` is diagonal with ``diag`` on the diagonal."""

    diag: tuple
    left: DenseMatrix
    right: DenseMatrix


def reduced_row_echelon(m: DenseMatrix) -> tuple[list[list[GaussianRational]], list[int]]:
    """Return (rows of the reduced echelon form, pivot columns)."""
    rows = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return rows, pivots


def matrix_rank(m: DenseMatrix) -> int:
    return len(reduced_row_echelon(m)[1])


def matrix_kernel(m: DenseMatrix) -> list[list[GaussianRational]]:
    """Basis of the right null space, one vector per free column."""
    rows, pivots = reduced_row_echelon(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def matrix_det(m: DenseMatrix) -> GaussianRational:
    """Bareiss fraction-free elimination."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    a = m.to_rows()
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def matrix_inverse(m: DenseMatrix) -> DenseMatrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = DenseMatrix.from_rows([m.row(i) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)])
    rows, pivots = reduced_row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return DenseMatrix.from_rows([r[n:] for r in rows])


def _int_entries(m: DenseMatrix) -> list[list[int]]:
    if not m.is_integer():
        raise ValueError("matrix has non-integer entries")
    return [[int(x.re) for x in m.row(i)] for i in range(m.rows)]


def smith_normal_form(m: DenseMatrix) -> SmithDecomposition:
    a = _int_entries(m)
    nr, nc = m.rows, m.cols
    left = [[int(i == j) for j in range(nr)] for i in range(nr)]
    right = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in right:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    diag = tuple(a[i][i] for i in range(min(nr, nc)))
    return SmithDecomposition(diag, DenseMatrix.from_rows(left), DenseMatrix.from_rows(right))


def is_hermitian(m: DenseMatrix) -> bool:
    return m.is_square() and m == m.conjugate_transpose()


def is_positive_definite_hermitian(m: DenseMatrix) -> bool:
    """Leading principal minors test; minors of a Hermitian matrix are real."""
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian")
    for k in range(1, m.rows + 1):
        minor = DenseMatrix.from_rows([m.row(i)[:k] for i in range(k)])
        d = matrix_det(minor)
        if not d.is_real() or d.re <= 0:
            return False
    return True


def count_vectors_of_norm(gram: DenseMatrix, target: int, chunk: int = 1 << 16) -> int:
    """Count integer v with v.gram.v == target by scanning the bounding box.

    Each coordinate satisfies v_k^2 <= target * (gram^-1)_kk on the ellipsoid.
    """
    g = _int_entries(gram)
    if any(g[i][j] != g[j][i] for i in range(gram.rows) for j in range(gram.cols)):
        raise ValueError("Gram matrix is not symmetric")
    if not is_positive_definite_hermitian(gram):
        raise ValueError("Gram matrix is not positive definite")
    n = gram.rows
    inv = matrix_inverse(gram)
    bounds = [isqrt(int(target * inv[k, k].re)) for k in range(n)]
    ranges = [range(-b, b + 1) for b in bounds]
    gram_np = np.array(g, dtype=np.int64)
    count = 0
    box = itertools.product(*ranges)
    while True:
        block = np.array(list(itertools.islice(box, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        norms = np.einsum("vi,ij,vj->v", block, gram_np, block)
        count += int(np.count_nonzero(norms == target))
    return count


def gaussian_vector(values: Iterable) -> list[GaussianRational]:
    return [GaussianRational.of(v) for v in values]
