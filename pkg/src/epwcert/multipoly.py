"""Sparse multivariate polynomials with Gaussian-rational coefficients.

A polynomial is stored as a pair of rational polynomials (real and
imaginary part) held by python-flint, which does the heavy products and
exact divisions.  Everything that carries meaning for the checks (monic
division in one variable, square roots, substitution, the text format) is
written here on top of that ring arithmetic.  ``schoolbook_multiply`` is an
independent dictionary-based product kept for cross-checking.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Mapping, Sequence

import flint

from .exact import ONE, ZERO, GaussianRational, format_scalar, parse_scalar

Monomial = tuple  # exponent vector, one nonnegative int per variable


@lru_cache(maxsize=None)
def _context(arity: int):
    return flint.fmpq_mpoly_ctx.get(("x", arity), "lex")


def _fmpq(f: Fraction):
    return flint.fmpq(f.numerator, f.denominator)


def _fraction(q) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def grlex_key(m: Monomial) -> tuple:
    """Sort key: larger key means higher in graded-lex with variable 0 highest."""
    return (sum(m), m)


class Polynomial:
    """Immutable polynomial in ``arity`` variables x0..x{arity-1}."""

    __slots__ = ("arity", "_re", "_im", "_terms")

    def __init__(self, arity: int, re=None, im=None):
        ctx = _context(arity)
        self.arity = arity
        self._re = re if re is not None else ctx.from_dict({})
        self._im = im if im is not None else ctx.from_dict({})
        self._terms = None

    # construction
    @classmethod
    def from_terms(cls, arity: int, terms: Mapping[Monomial, object] | Iterable) -> Polynomial:
        items = terms.items() if isinstance(terms, Mapping) else terms
        re_part: dict = {}
        im_part: dict = {}
        for mono, coeff in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != arity or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for arity {arity}")
            c = GaussianRational.of(coeff)
            if c.re:
                re_part[mono] = re_part.get(mono, 0) + _fmpq(c.re)
            if c.im:
                im_part[mono] = im_part.get(mono, 0) + _fmpq(c.im)
        ctx = _context(arity)
        return cls(arity, ctx.from_dict(re_part), ctx.from_dict(im_part))

    @classmethod
    def zero(cls, arity: int) -> Polynomial:
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, value) -> Polynomial:
        return cls.from_terms(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int) -> Polynomial:
        if not 0 <= index < arity:
            raise IndexError(f"variable {index} out of range for arity {arity}")
        mono = tuple(int(k == index) for k in range(arity))
        return cls.from_terms(arity, {mono: 1})

    @classmethod
    def variables(cls, arity: int) -> list[Polynomial]:
        return [cls.variable(arity, k) for k in range(arity)]

    @classmethod
    def linear_form(cls, coefficients: Sequence) -> Polynomial:
        n = len(coefficients)
        return cls.from_terms(n, {tuple(int(k == j) for k in range(n)): c
                                  for j, c in enumerate(coefficients) if GaussianRational.of(c)})

    # inspection
    @property
    def terms(self) -> dict:
        """Monomial -> coefficient, iterated in descending graded-lex order."""
        if self._terms is None:
            merged: dict = {}
            for mono, c in self._re.to_dict().items():
                merged[mono] = [_fraction(c), Fraction(0)]
            for mono, c in self._im.to_dict().items():
                merged.setdefault(mono, [Fraction(0), Fraction(0)])[1] = _fraction(c)
            self._terms = {m: GaussianRational(*merged[m])
                           for m in sorted(merged, key=grlex_key, reverse=True)}
        return self._terms

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return self._re.is_zero() and self._im.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self._im.is_zero()

    def total_degree(self) -> int:
        """Degree of the highest term; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, var: int) -> int:
        self._check_var(var)
        if self.is_zero():
            return -1
        return max(m[var] for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_term(self) -> tuple[Monomial, GaussianRational]:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self.terms.items()))

    def coefficient(self, mono: Monomial) -> GaussianRational:
        return self.terms.get(tuple(mono), ZERO)

    def coefficients_in(self, var: int) -> dict[int, Polynomial]:
        """Split as sum_k x_var^k * c_k; the c_k do not involve x_var."""
        self._check_var(var)
        buckets: dict[int, dict] = {}
        for mono, c in self.terms.items():
            k = mono[var]
            stripped = mono[:var] + (0,) + mono[var + 1:]
            buckets.setdefault(k, {})[stripped] = c
        return {k: Polynomial.from_terms(self.arity, t) for k, t in sorted(buckets.items())}

    def _check_var(self, var: int) -> None:
        if not 0 <= var < self.arity:
            raise IndexError(f"variable {var} out of range for arity {self.arity}")

    def _check_arity(self, other: Polynomial) -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    # arithmetic
    def _lift(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check_arity(other)
            return other
        try:
            return Polynomial.constant(self.arity, GaussianRational.of(other))
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Polynomial(self.arity, self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Polynomial(self.arity, self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Polynomial(self.arity, -self._re, -self._im)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        try:
            c = GaussianRational.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = GaussianRational.of(c)
        a, b = _fmpq(c.re), _fmpq(c.im)
        if c.im == 0:
            return Polynomial(self.arity, self._re * a, self._im * a)
        return Polynomial(self.arity, self._re * a - self._im * b, self._re * b + self._im * a)

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.arity, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def conjugate(self) -> Polynomial:
        return Polynomial(self.arity, self._re, -self._im)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._re == other._re and self._im == other._im
        o = None
        try:
            o = Polynomial.constant(self.arity, GaussianRational.of(other))
        except (TypeError, ValueError):
            return NotImplemented
        return self == o

    def __hash__(self):
        return hash((self.arity, tuple(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.arity}, {self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for mono, c in self.terms.items():
            factors = [f"x{k}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(mono) if e]
            parts.append("*".join([f"({format_scalar(c)})"] + factors))
        return " + ".join(parts)


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check_arity(b)
    if a._im.is_zero() and b._im.is_zero():
        return Polynomial(a.arity, a._re * b._re, None)
    re = a._re * b._re - a._im * b._im
    im = a._re * b._im + a._im * b._re
    return Polynomial(a.arity, re, im)


def schoolbook_multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    """Term-by-term product on coefficient dictionaries (reference path)."""
    a._check_arity(b)
    out: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, ZERO) + ca * cb
    return Polynomial.from_terms(a.arity, {m: c for m, c in out.items() if c})


def partial_derivative(p: Polynomial, var: int) -> Polynomial:
    p._check_var(var)
    return Polynomial(p.arity, p._re.derivative(var), p._im.derivative(var))


def gradient(p: Polynomial) -> list[Polynomial]:
    return [partial_derivative(p, k) for k in range(p.arity)]


def evaluate(p: Polynomial, point: Sequence) -> GaussianRational:
    if len(point) != p.arity:
        raise ValueError(f"point has {len(point)} coordinates, polynomial arity is {p.arity}")
    point = [GaussianRational.of(v) for v in point]
    powers: list[dict[int, GaussianRational]] = [{0: ONE} for _ in point]

    def power(k: int, e: int) -> GaussianRational:
        cache = powers[k]
        if e not in cache:
            cache[e] = point[k] ** e
        return cache[e]

    total = ZERO
    for mono, c in p.terms.items():
        value = c
        for k, e in enumerate(mono):
            if e:
                value = value * power(k, e)
        total = total + value
    return total


class _PowerCache:
    """Powers of one polynomial built from cached repeated squares."""

    def __init__(self, base: Polynomial):
        self.squares = [base]  # base^(2^j)
        self.memo: dict[int, Polynomial] = {1: base}

    def get(self, e: int) -> Polynomial:
        if e in self.memo:
            return self.memo[e]
        result = None
        j = 0
        rest = e
        while rest:
            while len(self.squares) <= j:
                self.squares.append(self.squares[-1] * self.squares[-1])
            if rest & 1:
                result = self.squares[j] if result is None else result * self.squares[j]
            rest >>= 1
            j += 1
        self.memo[e] = result
        return result


def substitute(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Compose p with ``x_k -> images[k]``."""
    if len(images) != p.arity:
        raise ValueError(f"{len(images)} images for arity {p.arity}")
    if not images:
        raise ValueError("substitution needs at least one image to fix the target arity")
    target = images[0].arity
    if any(g.arity != target for g in images):
        raise ValueError("substitution images must share one arity")
    caches = [_PowerCache(g) for g in images]
    re = _context(target).from_dict({})
    im = _context(target).from_dict({})
    acc = Polynomial(target, re, im)
    # group terms by their exponent prefix so shared partial products are reused
    prefix_memo: dict[Monomial, Polynomial] = {(): Polynomial.constant(target, 1)}

    def prefix_product(mono: Monomial) -> Polynomial:
        if mono in prefix_memo:
            return prefix_memo[mono]
        head = prefix_product(mono[:-1])
        e = mono[-1]
        value = head if e == 0 else head * caches[len(mono) - 1].get(e)
        prefix_memo[mono] = value
        return value

    for mono, c in p.terms.items():
        # the last variable's power is applied outside the memo to keep it small
        head = prefix_product(mono[:-1])
        e = mono[-1]
        term = head if e == 0 else head * caches[-1].get(e)
        acc = acc + term.scale(c)
    return acc


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient a/b, which must be exact."""
    a._check_arity(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if b.is_real():
        q_re, r_re = divmod(a._re, b._re)
        q_im, r_im = divmod(a._im, b._re)
        if not (r_re.is_zero() and r_im.is_zero()):
            raise ArithmeticError("division is not exact")
        return Polynomial(a.arity, q_re, q_im)
    norm = b * b.conjugate()
    return exact_divide(a * b.conjugate(), norm)


def divide_by_monic_in_variable(dividend: Polynomial, divisor: Polynomial, var: int
                                ) -> tuple[Polynomial, Polynomial]:
    """Division treating both sides as polynomials in x_var over the other variables."""
    dividend._check_arity(divisor)
    dividend._check_var(var)
    if divisor.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    d_coeffs = divisor.coefficients_in(var)
    d = max(d_coeffs)
    if d_coeffs[d] != Polynomial.constant(divisor.arity, 1):
        raise ValueError(f"divisor is not monic in x{var}")
    n = dividend.arity
    x = Polynomial.variable(n, var)
    rem = dividend.coefficients_in(var)
    quotient: dict[int, Polynomial] = {}
    top = max(rem) if rem else -1
    for k in range(top, d - 1, -1):
        c = rem.pop(k, None)
        if c is None or c.is_zero():
            continue
        shift = k - d
        quotient[shift] = c
        for j, dj in d_coeffs.items():
            if j == d:
                continue
            slot = shift + j
            rem[slot] = rem.get(slot, Polynomial.zero(n)) - c * dj
    q = Polynomial.zero(n)
    for k, c in quotient.items():
        q = q + c * x ** k
    r = Polynomial.zero(n)
    for k, c in rem.items():
        if not c.is_zero():
            r = r + c * x ** k
    return q, r


class SquareRoot:
    """``root**2 == scalar * p``; the root is normalized to leading coefficient 1."""

    __slots__ = ("root", "scalar")

    def __init__(self, root: Polynomial, scalar: GaussianRational):
        self.root = root
        self.scalar = scalar

    def __repr__(self):
        return f"SquareRoot(root={self.root}, scalar={self.scalar})"


def _monomial_count_up_to(arity: int, degree: int) -> int:
    from math import comb
    return comb(arity + degree, degree)


def perfect_square_root(p: Polynomial) -> SquareRoot | None:
    """Find r with r^2 = c*p by peeling terms off in graded-lex order.

    The leading term of r is the square root of the leading term of p; each
    further term is read off the leading term of p - r^2, which must equal
    twice the leading term of r times the missing term.
    """
    if p.is_zero():
        return SquareRoot(p, ONE)
    lead_mono, lead_coeff = p.leading_term()
    if any(e % 2 for e in lead_mono):
        return None
    scalar = lead_coeff.inverse()
    target = p.scale(scalar)
    half = tuple(e // 2 for e in lead_mono)
    root = Polynomial.from_terms(p.arity, {half: 1})
    for _ in range(_monomial_count_up_to(p.arity, sum(half))):
        rem = target - root * root
        if rem.is_zero():
            return SquareRoot(root, scalar)
        mono, c = rem.leading_term()
        missing = tuple(a - b for a, b in zip(mono, half))
        if any(e < 0 for e in missing) or grlex_key(missing) >= grlex_key(half):
            return None
        root = root + Polynomial.from_terms(p.arity, {missing: c / 2})
    return None


PARTITIONS_OF_SIX = ((6,), (5, 1), (4, 2), (4, 1, 1), (3, 3), (3, 2, 1), (3, 1, 1, 1),
                     (2, 2, 2), (2, 2, 1, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1))


def partitions(n: int, largest: int | None = None) -> list[tuple]:
    """Partitions of n in descending lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(n - first, first))
    return out


def monomial_symmetric(partition: Sequence[int], arity: int) -> Polynomial:
    """Sum of the distinct monomials whose exponents permute the partition."""
    exps = tuple(partition) + (0,) * (arity - len(partition))
    if len(exps) != arity:
        raise ValueError("partition longer than the variable count")
    return Polynomial.from_terms(arity, {m: 1 for m in set(permutations(exps))})


def symmetric_monomial_basis(degree: int = 6, arity: int = 6) -> list[Polynomial]:
    if (degree, arity) != (6, 6):
        raise ValueError("only the degree-6 basis in six variables is provided")
    return [monomial_symmetric(lam, arity) for lam in PARTITIONS_OF_SIX]


def homogeneous_monomials(arity: int, degree: int) -> list[Monomial]:
    """All exponent vectors of the given total degree, descending graded-lex."""
    monos = []
    for combo in combinations_with_replacement(range(arity), degree):
        e = [0] * arity
        for k in combo:
            e[k] += 1
        monos.append(tuple(e))
    return sorted(monos, key=grlex_key, reverse=True)


def polynomial_det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Bareiss elimination over the polynomial ring (divisions are exact)."""
    a = [list(r) for r in matrix]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    arity = a[0][0].arity
    sign = 1
    prev = Polynomial.constant(arity, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(arity)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev) if k else num
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def dumps(p: Polynomial) -> str:
    """One ``COEFF e0 e1 ...`` line per term, descending graded-lex."""
    lines = [" ".join([format_scalar(c)] + [str(e) for e in mono]) for mono, c in p.terms.items()]
    return "\n".join(lines) + ("\n" if lines else "")


def loads(text: str, arity: int) -> Polynomial:
    terms = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        fields = line.split()
        mono = tuple(int(e) for e in fields[1:])
        if len(mono) != arity:
            raise ValueError(f"line has {len(mono)} exponents, expected {arity}: {line!r}")
        if mono in terms:
            raise ValueError(f"repeated monomial {mono}")
        terms[mono] = parse_scalar(fields[0])
    return Polynomial.from_terms(arity, terms)


def permute_variables(p: Polynomial, perm: Sequence[int]) -> Polynomial:
    """Rename x_k as x_perm[k]."""
    if sorted(perm) != list(range(p.arity)):
        raise ValueError("not a permutation of the variables")
    out = {}
    for mono, c in p.terms.items():
        image = [0] * p.arity
        for k, e in enumerate(mono):
            image[perm[k]] = e
        out[tuple(image)] = c
    return Polynomial.from_terms(p.arity, out)


def negate_variables(p: Polynomial, flipped: Iterable[int]) -> Polynomial:
    """Substitute x_k -> -x_k for every k in ``flipped``."""
    flipped = set(flipped)
    return Polynomial.from_terms(p.arity, {
        mono: (-c if sum(mono[k] for k in flipped) % 2 else c) for mono, c in p.terms.items()})


def restrict_to_span(p: Polynomial, rows: Sequence[Sequence]) -> Polynomial:
    """p(s_0 r_0 + ... + s_{m-1} r_{m-1}) as a polynomial in the m parameters s."""
    if not rows:
        raise ValueError("need at least one spanning vector")
    images = [Polynomial.linear_form([row[k] for row in rows]) for k in range(p.arity)]
    return substitute(p, images)
