"""The abelian fourfold E^4 = C^4 / Z[i]^4 and its finite matrix groups.

Matrices act on column vectors, v -> M v.  Elements of groups are stored as
integer (re, im) pairs of 4x4 numpy arrays, so every product is exact.
Two-torsion points v/2 (v in Z[i]^4) are encoded as 8 bits in the basis
(1,0,0,0), (i,0,0,0), ..., (0,0,0,i): bit 2k is Re v_k mod 2, bit 2k+1 is
Im v_k mod 2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .exact import (
    DenseMatrix,
    GaussianRational,
    I,
    count_vectors_of_norm,
    is_positive_definite_hermitian,
    matrix_det,
    matrix_inverse,
    matrix_kernel,
    matrix_rank,
    smith_normal_form,
)
from .report import CheckReport, Recorder

DEFAULT_CLOSURE_CAP = 10 ** 6


@dataclass(frozen=True, eq=False)
class GaussianMatrix:
    """A square matrix with Gaussian-integer entries."""

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "re", np.ascontiguousarray(self.re, dtype=np.int64))
        object.__setattr__(self, "im", np.ascontiguousarray(self.im, dtype=np.int64))
        self.re.setflags(write=False)
        self.im.setflags(write=False)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> GaussianMatrix:
        re, im = [], []
        for row in rows:
            r_re, r_im = [], []
            for x in row:
                z = GaussianRational.of(x)
                if not z.is_gaussian_integer():
                    raise ValueError(f"entry {z} is not a Gaussian integer")
                r_re.append(int(z.re))
                r_im.append(int(z.im))
            re.append(r_re)
            im.append(r_im)
        return cls(np.array(re), np.array(im))

    @classmethod
    def from_dense(cls, m: DenseMatrix) -> GaussianMatrix:
        return cls.from_rows(m.to_rows())

    @classmethod
    def identity(cls, n: int = 4) -> GaussianMatrix:
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64))

    @property
    def n(self) -> int:
        return self.re.shape[0]

    @property
    def key(self) -> bytes:
        """Fixed-width row-major serialization used for hashing."""
        return self.re.tobytes() + self.im.tobytes()

    def __eq__(self, other):
        return isinstance(other, GaussianMatrix) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __matmul__(self, other: GaussianMatrix) -> GaussianMatrix:
        return GaussianMatrix(self.re @ other.re - self.im @ other.im, self.re @ other.im + self.im @ other.re)

    def __neg__(self) -> GaussianMatrix:
        return GaussianMatrix(-self.re, -self.im)

    def __sub__(self, other: GaussianMatrix) -> GaussianMatrix:
        return GaussianMatrix(self.re - other.re, self.im - other.im)

    def times_i(self) -> GaussianMatrix:
        return GaussianMatrix(-self.im, self.re)

    def scale_unit(self, k: int) -> GaussianMatrix:
        """Multiply by i^k."""
        out = self
        for _ in range(k % 4):
            out = out.times_i()
        return out

    def transpose(self) -> GaussianMatrix:
        return GaussianMatrix(self.re.T, self.im.T)

    def conjugate(self) -> GaussianMatrix:
        return GaussianMatrix(self.re, -self.im)

    def conjugate_transpose(self) -> GaussianMatrix:
        return GaussianMatrix(self.re.T, -self.im.T)

    def to_dense(self) -> DenseMatrix:
        return DenseMatrix.from_rows([[GaussianRational(Fraction(int(self.re[i, j])), Fraction(int(self.im[i, j])))
                                       for j in range(self.n)] for i in range(self.n)])

    def inverse(self) -> GaussianMatrix:
        return GaussianMatrix.from_dense(matrix_inverse(self.to_dense()))

    def apply(self, v_re, v_im) -> tuple[np.ndarray, np.ndarray]:
        v_re, v_im = np.asarray(v_re), np.asarray(v_im)
        return self.re @ v_re - self.im @ v_im, self.re @ v_im + self.im @ v_re

    def realify(self) -> np.ndarray:
        """The 2n x 2n integer matrix on coordinates (Re v0, Im v0, Re v1, ...)."""
        n = self.n
        out = np.zeros((2 * n, 2 * n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                a, b = self.re[i, j], self.im[i, j]
                out[2 * i, 2 * j], out[2 * i, 2 * j + 1] = a, -b
                out[2 * i + 1, 2 * j], out[2 * i + 1, 2 * j + 1] = b, a
        return out

    def rank_minus_identity(self) -> int:
        return matrix_rank((self - GaussianMatrix.identity(self.n)).to_dense())

    def __repr__(self):
        rows = []
        for i in range(self.n):
            rows.append(" ".join(_fmt(int(self.re[i, j]), int(self.im[i, j])) for j in range(self.n)))
        return "GaussianMatrix[" + "; ".join(rows) + "]"


def _fmt(a: int, b: int) -> str:
    if not b:
        return str(a)
    if not a:
        return f"{b}i" if b not in (1, -1) else ("i" if b == 1 else "-i")
    return f"{a}{'+' if b > 0 else '-'}{abs(b) if abs(b) != 1 else ''}i"


def gm(rows) -> GaussianMatrix:
    """Build from rows of Python complex numbers with integer parts."""
    return GaussianMatrix(np.array([[int(z.real) for z in r] for r in rows]),
                          np.array([[int(z.imag) for z in r] for r in rows]))


class FiniteMatrixGroup:
    """Closure of a set of generators, stored as one stacked array plus a key index."""

    def __init__(self, generators: Sequence[GaussianMatrix], cap: int = DEFAULT_CLOSURE_CAP):
        if not generators:
            raise ValueError("need at least one generator")
        self.generators = tuple(generators)
        n = generators[0].n
        ident = GaussianMatrix.identity(n)
        elements = [ident]
        index = {ident.key: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in self.generators:
                    b = g @ a
                    k = b.key
                    if k not in index:
                        index[k] = len(elements)
                        elements.append(b)
                        nxt.append(b)
                        if len(elements) > cap:
                            raise RuntimeError(f"closure exceeds cap {cap}")
            frontier = nxt
        self.elements = elements
        self._index = index
        self.re = np.stack([e.re for e in elements])
        self.im = np.stack([e.im for e in elements])

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, m: GaussianMatrix) -> bool:
        return m.key in self._index

    def __iter__(self):
        return iter(self.elements)

    def index_of(self, m: GaussianMatrix) -> int:
        return self._index[m.key]

    def key_set(self) -> frozenset:
        return frozenset(self._index)

    def orbit(self, x, act: Callable) -> set:
        return {act(g, x) for g in self.elements}

    def stabilizer_order(self, x, act: Callable) -> int:
        return sum(1 for g in self.elements if act(g, x) == x)


def group_closure(generators: Sequence[GaussianMatrix], cap: int = DEFAULT_CLOSURE_CAP) -> FiniteMatrixGroup:
    return FiniteMatrixGroup(generators, cap)


# ---------------------------------------------------------------- the matrices

j = 1j
T0 = gm([[1, 0, 0, 0], [0, -1, 0, 0], [0, -1 + j, 1, 0], [1 - j, 0, 0, -1]])
N5 = gm([[1, -1, 0, -j], [-j, 0, j, j], [-j, -1, 1 + j, 0], [1, -1 + j, 0, -1 - j]])
N01 = gm([[1 + j, 0, -1 - j, -j], [0, 1 + j, -j, 0], [0, 1, -1 - j, 0], [1, -1 + j, 0, -1 - j]])
N45 = gm([[0, 1, 0, j], [0, 1 + j, -j, 0], [0, 1, 0, 0], [-1, 0, 1, 1 + j]])
NF = gm([[j, 0, 0, 0], [1 - j, j, 0, -2], [-j, 0, j, -1 + j], [1 + j, 0, 0, -j]])
H1 = gm([[2, 0, 1, 1 + j], [0, 2, 1 + j, -j], [1, 1 - j, 2, 0], [1 - j, j, 0, 2]])
E5 = gm([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
E4 = gm([[0, 1 - j, -j, 1 + j], [-1 + j, 0, 0, j], [j, 0, 0, 1 + j], [-1 - j, -j, -1 - j, 0]])
Q012 = gm([[2, 0, 1, 1 - j], [0, 2 * j, 1 + j, -1], [1, 1 + j, 2, 0], [1 - j, -1, 0, -2 * j]])
Q013 = gm([[0, 0, 1, 0], [0, 2 * j, 1 + j, -1], [1, 1 + j, 2, 0], [0, -1, 0, 0]])
del j

IDENTITY = GaussianMatrix.identity(4)
I_SCALAR = IDENTITY.times_i()


@dataclass(frozen=True)
class StandardGenerators:
    T: tuple
    N5: GaussianMatrix
    N01: GaussianMatrix
    N45: GaussianMatrix
    Nf: GaussianMatrix
    E5: GaussianMatrix
    E4: GaussianMatrix
    q012: GaussianMatrix
    q013: GaussianMatrix
    H: GaussianMatrix


def _power(m: GaussianMatrix, k: int) -> GaussianMatrix:
    out = IDENTITY
    for _ in range(k):
        out = out @ m
    return out


@lru_cache(maxsize=None)
def standard_generators() -> StandardGenerators:
    """The transcribed matrices; relation failures raise, since they mean a transcription bug."""
    n5_inv = N5.inverse()
    ts = tuple(_power(N5, k) @ T0 @ _power(n5_inv, k) for k in range(5))
    gens = StandardGenerators(ts, N5, N01, N45, NF, E5, E4, Q012, Q013, H1)
    failures = relation_failures(gens)
    if failures:
        raise AssertionError("generator relations fail: " + "; ".join(failures))
    return gens


def relation_failures(gens: StandardGenerators) -> list[str]:
    out = []
    ts = gens.T
    n01_inv, n45_inv = gens.N01.inverse(), gens.N45.inverse()
    for a in range(5):
        if ts[a] @ ts[a] != IDENTITY:
            out.append(f"T{a}^2 != I")
        for b in range(5):
            if a != b and ts[a] @ ts[b] != -(ts[b] @ ts[a]):
                out.append(f"T{a}T{b} != -T{b}T{a}")
    if gens.N01 @ ts[0] @ n01_inv != ts[1]:
        out.append("N01 T0 N01^-1 != T1")
    for k in (2, 3):
        if gens.N01 @ ts[k] @ n01_inv != ts[k]:
            out.append(f"N01 does not fix T{k}")
    if gens.N01 @ ts[4] @ n01_inv != -ts[4]:
        out.append("N01 T4 N01^-1 != -T4")
    for k in range(4):
        if gens.N45 @ ts[k] @ n45_inv != (ts[k] @ ts[4]).scale_unit(3):
            out.append(f"N45 T{k} N45^-1 != -i T{k} T4")
    if gens.N45 @ ts[4] @ n45_inv != ts[4]:
        out.append("N45 T4 N45^-1 != T4")
    if gens.N45 @ gens.E5 @ gens.N45.transpose() != gens.E4:
        out.append("N45 E5 N45^t != E4")
    return out


@dataclass
class Groups:
    G: FiniteMatrixGroup
    Gi: FiniteMatrixGroup
    NG: FiniteMatrixGroup
    UH: FiniteMatrixGroup
    U012: FiniteMatrixGroup


@lru_cache(maxsize=None)
def standard_groups() -> Groups:
    s = standard_generators()
    return Groups(
        G=group_closure(list(s.T)),
        Gi=group_closure(list(s.T) + [I_SCALAR]),
        NG=group_closure([s.N5, s.N01]),
        UH=group_closure([s.N5, s.N01, s.N45]),
        U012=group_closure([s.N01, s.N45, s.Nf]),
    )


def group_orders() -> dict:
    g = standard_groups()
    return {"G": g.G.order, "Gi": g.Gi.order, "NG": g.NG.order, "UH": g.UH.order}


def preserves_hermitian(group: FiniteMatrixGroup, h: GaussianMatrix) -> int:
    """Number of elements M with M H conj(M)^t != H (vectorized over the group)."""
    re, im = group.re, group.im
    # M H
    a_re = re @ h.re - im @ h.im
    a_im = re @ h.im + im @ h.re
    # (M H) conj(M)^t
    ct_re = np.transpose(re, (0, 2, 1))
    ct_im = -np.transpose(im, (0, 2, 1))
    b_re = a_re @ ct_re - a_im @ ct_im
    b_im = a_re @ ct_im + a_im @ ct_re
    bad = np.any(b_re != h.re, axis=(1, 2)) | np.any(b_im != h.im, axis=(1, 2))
    return int(bad.sum())


# ---------------------------------------------------------------- Hermitian forms and E8

def _hermitian_basis(n: int = 4) -> list[GaussianMatrix]:
    """Real basis of the n x n Hermitian matrices."""
    out = []
    for a in range(n):
        re = np.zeros((n, n), dtype=np.int64)
        re[a, a] = 1
        out.append(GaussianMatrix(re, np.zeros((n, n), dtype=np.int64)))
    for a, b in itertools.combinations(range(n), 2):
        re = np.zeros((n, n), dtype=np.int64)
        re[a, b] = re[b, a] = 1
        out.append(GaussianMatrix(re, np.zeros((n, n), dtype=np.int64)))
        im = np.zeros((n, n), dtype=np.int64)
        im[a, b], im[b, a] = 1, -1
        out.append(GaussianMatrix(np.zeros((n, n), dtype=np.int64), im))
    return out


def invariant_hermitian_space(generators: Sequence[GaussianMatrix]) -> list[DenseMatrix]:
    """Basis of Hermitian X with T X conj(T)^t = X for every generator T."""
    basis = _hermitian_basis(generators[0].n)
    rows = []
    images = []
    for b in basis:
        parts = []
        for t in generators:
            d = t @ b @ t.conjugate_transpose() - b
            parts.extend(d.re.ravel().tolist())
            parts.extend(d.im.ravel().tolist())
        images.append(parts)
    rows = [[images[c][r] for c in range(len(basis))] for r in range(len(images[0]))]
    kernel = matrix_kernel(DenseMatrix.from_rows(rows))
    out = []
    for vec in kernel:
        acc = None
        for c, b in zip(vec, basis):
            if not c:
                continue
            term = b.to_dense().scale(c)
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def hermitian_check() -> CheckReport:
    rec = Recorder("abelian.hermitian")
    s = standard_generators()
    space = invariant_hermitian_space(list(s.T))
    rec.expect("solution_dimension", len(space), 1)
    if space:
        x = space[0]
        x = x.scale(GaussianRational.of(2) / x[0, 0])
        rec.expect("normalized_solution_is_H1", x == s.H.to_dense(), True)
    h = s.H.to_dense()
    rec.expect("det_H", matrix_det(h), GaussianRational.of(1))
    rec.expect("positive_definite", is_positive_definite_hermitian(h), True)
    rec.expect("negative_not_positive_definite", is_positive_definite_hermitian(-h), False)
    e8 = e8_report_data(s.H)
    for k, v in e8.items():
        rec.note(k, v)
    rec.require("Gram matrix is even", e8["even"])
    rec.expect("gram_det", e8["gram_det"], 1)
    rec.require("Gram matrix positive definite", e8["positive_definite"])
    rec.expect("norm_2_vectors", e8["norm_2_vectors"], 240)
    uh = standard_groups().UH
    rec.expect("UH_elements_not_preserving_H", preserves_hermitian(uh, s.H), 0)
    return rec.report()


def lattice_basis() -> list[GaussianMatrix]:
    """(1,0,0,0), (i,0,0,0), ..., (0,0,0,i) as 4x1 matrices."""
    out = []
    for k in range(4):
        for unit in (0, 1):
            re = np.zeros((4, 1), dtype=np.int64)
            im = np.zeros((4, 1), dtype=np.int64)
            (im if unit else re)[k, 0] = 1
            out.append(GaussianMatrix(re, im))
    return out


def _form(x: GaussianMatrix, h: GaussianMatrix, y: GaussianMatrix) -> tuple[int, int]:
    """x^t H conj(y) for column vectors x, y, as (re, im)."""
    v = x.transpose() @ h @ y.conjugate()
    return int(v.re[0, 0]), int(v.im[0, 0])


def gram_matrix(h: GaussianMatrix) -> DenseMatrix:
    basis = lattice_basis()
    return DenseMatrix.from_rows([[_form(a, h, b)[0] for b in basis] for a in basis])


def alternating_form(h: GaussianMatrix) -> np.ndarray:
    """E_kl = Im H(b_k, b_l) on the lattice basis."""
    basis = lattice_basis()
    return np.array([[_form(a, h, b)[1] for b in basis] for a in basis], dtype=np.int64)


def e8_report_data(h: GaussianMatrix) -> dict:
    gram = gram_matrix(h)
    diag_even = all(int(gram[k, k].re) % 2 == 0 for k in range(8))
    symmetric = gram == gram.transpose()
    return {
        "gram": gram,
        "even": diag_even and symmetric and gram.is_integer(),
        "gram_det": int(matrix_det(gram).re),
        "positive_definite": is_positive_definite_hermitian(gram),
        "norm_2_vectors": count_vectors_of_norm(gram, 2),
    }


def e8_realization() -> CheckReport:
    rec = Recorder("abelian.e8")
    data = e8_report_data(standard_generators().H)
    rec.note("gram", data["gram"])
    rec.expect("even", data["even"], True)
    rec.expect("gram_det", data["gram_det"], 1)
    rec.expect("positive_definite", data["positive_definite"], True)
    rec.expect("norm_2_vectors", data["norm_2_vectors"], 240)
    return rec.report()


# ---------------------------------------------------------------- two-torsion points

@dataclass(frozen=True, order=True)
class HalfTorsionPoint:
    bits: tuple  # 8 entries in {0, 1}

    @classmethod
    def from_vector(cls, v_re, v_im) -> HalfTorsionPoint:
        out = []
        for a, b in zip(v_re, v_im):
            out.extend((int(a) % 2, int(b) % 2))
        return cls(tuple(out))

    @classmethod
    def from_fixed_label(cls, a: Sequence[int]) -> HalfTorsionPoint:
        """[a1, a2, a3, a4] = (1+i)/2 (a1, ..., a4)."""
        return cls(tuple(x for k in a for x in (k % 2, k % 2)))

    def lattice_vector(self) -> tuple[np.ndarray, np.ndarray]:
        """A representative v in Z[i]^4 of 2*point."""
        return np.array(self.bits[0::2]), np.array(self.bits[1::2])

    def __add__(self, other: HalfTorsionPoint) -> HalfTorsionPoint:
        return HalfTorsionPoint(tuple((a + b) % 2 for a, b in zip(self.bits, other.bits)))

    def __sub__(self, other: HalfTorsionPoint) -> HalfTorsionPoint:
        return self + other

    def is_zero(self) -> bool:
        return not any(self.bits)

    def fixed_label(self) -> tuple | None:
        pairs = list(zip(self.bits[0::2], self.bits[1::2]))
        if all(a == b for a, b in pairs):
            return tuple(a for a, _ in pairs)
        return None

    def __str__(self):
        label = self.fixed_label()
        if label is not None:
            return "[" + ",".join(map(str, label)) + "]"
        return "".join(map(str, self.bits))


ZERO_POINT = HalfTorsionPoint((0,) * 8)


def all_two_torsion() -> list[HalfTorsionPoint]:
    return [HalfTorsionPoint(bits) for bits in itertools.product((0, 1), repeat=8)]


def act_on_point(m: GaussianMatrix, p: HalfTorsionPoint) -> HalfTorsionPoint:
    v_re, v_im = p.lattice_vector()
    w_re, w_im = m.apply(v_re, v_im)
    return HalfTorsionPoint.from_vector(w_re, w_im)


def fixed_points_of(matrices: Iterable[GaussianMatrix]) -> list[HalfTorsionPoint]:
    matrices = list(matrices)
    return [p for p in all_two_torsion() if all(act_on_point(m, p) == p for m in matrices)]


@lru_cache(maxsize=None)
def g_fixed_points() -> tuple:
    return tuple(fixed_points_of(standard_generators().T))


def fixed_point_labels() -> list[tuple]:
    return [tuple(a) for a in itertools.product((0, 1), repeat=4)]


# ---------------------------------------------------------------- semi-characters

@dataclass(frozen=True)
class SemiCharacter:
    values: tuple  # +-1 on the 8 lattice basis vectors

    def __call__(self, bits: Sequence[int], e_matrix: np.ndarray) -> int:
        sign = 1
        for k, n in enumerate(bits):
            if n and self.values[k] < 0:
                sign = -sign
        ones = [k for k, n in enumerate(bits) if n]
        e = sum(int(e_matrix[a, b]) for x, a in enumerate(ones) for b in ones[x + 1:])
        return sign * (-1 if e % 2 else 1)


def cocycle_consistent(alpha: SemiCharacter, e_matrix: np.ndarray) -> bool:
    """alpha(x+y) = alpha(x) alpha(y) (-1)^E(x,y) on Lambda/2Lambda, for all pairs."""
    pts = list(itertools.product((0, 1), repeat=8))
    values = {p: alpha(p, e_matrix) for p in pts}
    for x in pts:
        for y in pts[:16]:
            s = tuple((a + b) % 2 for a, b in zip(x, y))
            e = int(np.array(x) @ e_matrix @ np.array(y))
            if values[s] != values[x] * values[y] * (-1 if e % 2 else 1):
                return False
    return True


def invariant_semicharacters(generators: Sequence[GaussianMatrix] | None = None) -> list[SemiCharacter]:
    s = standard_generators()
    generators = list(generators) if generators is not None else list(s.T)
    e_matrix = alternating_form(s.H)
    pts = all_two_torsion()
    moved = [[act_on_point(t, p).bits for p in pts] for t in generators]
    out = []
    for values in itertools.product((1, -1), repeat=8):
        alpha = SemiCharacter(values)
        table = {p.bits: alpha(p.bits, e_matrix) for p in pts}
        if all(table[m[k]] == table[p.bits] for m in moved for k, p in enumerate(pts)):
            out.append(alpha)
    return out


def fixed_and_characters_check() -> CheckReport:
    rec = Recorder("abelian.fixed-and-characters")
    s = standard_generators()
    fixed = g_fixed_points()
    rec.expect("fixed_point_count", len(fixed), 16)
    expected = {HalfTorsionPoint.from_fixed_label(a) for a in fixed_point_labels()}
    rec.expect("fixed_points_are_(1+i)/2_combinations", set(fixed) == expected, True)
    i_fixed = fixed_points_of([I_SCALAR])
    rec.expect("i_fixed_equals_G_fixed", set(i_fixed) == set(fixed), True)
    rec.expect("contains_((1+i)/2,0,0,0)", HalfTorsionPoint.from_fixed_label((1, 0, 0, 0)) in fixed, True)
    half = HalfTorsionPoint((1, 0, 0, 0, 0, 0, 0, 0))
    rec.expect("contains_(1/2,0,0,0)", half in fixed, False)
    e_matrix = alternating_form(s.H)
    rec.expect("alternating_form_antisymmetric", bool((e_matrix == -e_matrix.T).all()), True)
    chars = invariant_semicharacters()
    rec.expect("invariant_semicharacter_count", len(chars), 16)
    pattern = all(c.values[2 * k] == c.values[2 * k + 1] for c in chars for k in range(4))
    rec.expect("pairwise_equal_pattern", pattern, True)
    rec.expect("trivial_character_survives", SemiCharacter((1,) * 8) in chars, True)
    rec.require("cocycle consistent", all(cocycle_consistent(c, e_matrix) for c in chars))
    i_ok = all(c(act_on_point(I_SCALAR, p).bits, e_matrix) == c(p.bits, e_matrix)
               for c in chars for p in all_two_torsion())
    rec.expect("invariant_under_i", i_ok, True)
    trivial_on_fixed = all(c(p.bits, e_matrix) == 1 for c in chars for p in fixed)
    rec.expect("trivial_on_fixed_points", trivial_on_fixed, True)
    # x_k = (1+i) e_k: the Weil pairing values e(x_k, x_l)
    xs = [np.array([1 if n // 2 == k else 0 for n in range(8)]) for k in range(4)]
    pair_vals = [int(x @ e_matrix @ y) for x in xs for y in xs]
    rec.expect("weil_pairing_trivial_on_x", all(v % 2 == 0 for v in pair_vals), True)
    return rec.report()


# ---------------------------------------------------------------- forms up to scalar

def _canonical_keys(re: np.ndarray, im: np.ndarray, units: Sequence[int]) -> list[bytes]:
    """Keys of stacked matrices modulo the unit group i^units.

    The representative is the rotation whose first nonzero entry has
    Re > 0 and Im >= 0 (all four units) or lies in the half plane
    Re > 0 or (Re = 0, Im > 0) (signs only).
    """
    n = re.shape[0]
    fre, fim = re.reshape(n, -1), im.reshape(n, -1)
    nonzero = (fre != 0) | (fim != 0)
    first = nonzero.argmax(axis=1)
    a = fre[np.arange(n), first]
    b = fim[np.arange(n), first]
    if tuple(sorted(units)) == (0, 1, 2, 3):
        # rotations by i: (a, b) -> (-b, a); pick k with the result in Re > 0, Im >= 0
        k = np.where((a > 0) & (b >= 0), 0,
                     np.where((a <= 0) & (b > 0), 3, np.where((a < 0) & (b <= 0), 2, 1)))
    elif tuple(sorted(units)) == (0, 2):
        k = np.where((a > 0) | ((a == 0) & (b > 0)), 0, 2)
    else:
        raise ValueError("units must be (0, 2) or (0, 1, 2, 3)")
    out_re, out_im = fre.copy(), fim.copy()
    for rot in (1, 2, 3):
        sel = k == rot
        r, i = fre[sel], fim[sel]
        for _ in range(rot):
            r, i = -i, r
        out_re[sel], out_im[sel] = r, i
    packed = np.ascontiguousarray(np.concatenate([out_re, out_im], axis=1))
    return [row.tobytes() for row in packed]


def normalize_up_to_units(m: GaussianMatrix, units: Sequence[int] = (0, 1, 2, 3)) -> bytes:
    return _canonical_keys(m.re[None], m.im[None], units)[0]


def congruence(g: GaussianMatrix, form: GaussianMatrix) -> GaussianMatrix:
    return g @ form @ g.transpose()


def _batched_congruence_keys(group: FiniteMatrixGroup, form: GaussianMatrix, units) -> list[bytes]:
    re, im = group.re, group.im
    a_re = re @ form.re - im @ form.im
    a_im = re @ form.im + im @ form.re
    t_re = np.transpose(re, (0, 2, 1))
    t_im = np.transpose(im, (0, 2, 1))
    b_re = a_re @ t_re - a_im @ t_im
    b_im = a_re @ t_im + a_im @ t_re
    return _canonical_keys(b_re, b_im, units)


def quadratic_form_orbits() -> CheckReport:
    rec = Recorder("abelian.quadratic-forms")
    s = standard_generators()
    eps = []
    for t in s.T:
        image = congruence(t, s.q012)
        eps.append(1 if image == s.q012 else (-1 if image == -s.q012 else 0))
    rec.expect("epsilon", eps, [1, 1, 1, -1, -1])
    forms = [congruence(_power(s.N5, k), s.q012) for k in range(5)]
    forms += [congruence(_power(s.N5, k), s.q013) for k in range(5)]
    keys = {normalize_up_to_units(f) for f in forms}
    rec.expect("distinct_forms_up_to_scalar", len(keys), 10)
    lhs = congruence(s.N01 @ s.N5, s.q012)
    rhs = congruence(_power(s.N5, 2), s.q013)
    rec.expect("gluing_relation", lhs == rhs, True)
    uh = standard_groups().UH
    orbit_keys = _batched_congruence_keys(uh, s.q012, (0, 1, 2, 3))
    rec.expect("uh_orbit_size_up_to_scalar", len(set(orbit_keys)), 10)
    rec.expect("uh_orbit_equals_the_ten_forms", set(orbit_keys) == keys, True)
    base = normalize_up_to_units(s.q012)
    rec.expect("stabilizer_order", sum(1 for k in orbit_keys if k == base), 4608)
    return rec.report()


@dataclass
class Sigma6Quotient:
    orbit: list            # the six forms, normalized up to a unit scalar
    images: list           # image permutation of each U(H) element, in group order
    kernel: list           # indices of kernel elements
    orbit_size_up_to_sign: int


def sigma6_quotient(uh: FiniteMatrixGroup | None = None) -> Sigma6Quotient:
    s = standard_generators()
    uh = uh or standard_groups().UH
    # up to sign the orbit has 12 members; i*E and E give the same permutation
    units = (0, 1, 2, 3)
    up_to_sign = len(set(_batched_congruence_keys(uh, s.E5, (0, 2))))
    orbit_keys = _batched_congruence_keys(uh, s.E5, units)
    orbit = sorted(set(orbit_keys))
    if len(orbit) != 6:
        raise ArithmeticError(f"E5 orbit has {len(orbit)} elements up to a unit")
    forms = []
    for key in orbit:
        k = orbit_keys.index(key)
        forms.append(congruence(uh.elements[k], s.E5))
    index = {key: n for n, key in enumerate(orbit)}
    columns = [[index[k] for k in _batched_congruence_keys(uh, f, units)] for f in forms]
    images = [tuple(col[g] for col in columns) for g in range(len(uh))]
    if any(sorted(p) != list(range(6)) for p in images):
        raise ArithmeticError("action on the orbit is not a permutation")
    ident = tuple(range(6))
    kernel = [k for k, p in enumerate(images) if p == ident]
    return Sigma6Quotient(orbit, images, kernel, up_to_sign)


def orders_check() -> CheckReport:
    rec = Recorder("abelian.orders")
    s = standard_generators()
    groups = standard_groups()
    rec.expect("G", groups.G.order, 32)
    rec.expect("Gi", groups.Gi.order, 64)
    rec.expect("NG", groups.NG.order, 7680)
    rec.expect("UH", groups.UH.order, 46080)
    rec.expect("NG_contains_G_and_i", all(t in groups.NG for t in s.T) and I_SCALAR in groups.NG, True)
    q = sigma6_quotient(groups.UH)
    rec.expect("E5_orbit_size_up_to_unit", len(q.orbit), 6)
    rec.note("E5_orbit_size_up_to_sign", q.orbit_size_up_to_sign)
    rec.expect("E4_in_orbit", normalize_up_to_units(s.E4) in q.orbit, True)
    rec.expect("image_size", len(set(q.images)), 720)
    rec.expect("kernel_order", len(q.kernel), 64)
    kernel_keys = {groups.UH.elements[k].key for k in q.kernel}
    rec.expect("kernel_equals_Gi", kernel_keys == groups.Gi.key_set(), True)
    signs = []
    for t in s.T:
        image = congruence(t, s.E4)
        signs.append(1 if image == s.E4 else (-1 if image == -s.E4 else 0))
    rec.expect("T_j_on_E4", signs, [-1, -1, -1, -1, 1])
    rec.expect("G_fixes_E5", all(congruence(g, s.E5) == s.E5 for g in groups.G), True)
    return rec.report()


def uh_order_check() -> CheckReport:
    rec = Recorder("abelian.uh-order")
    groups = standard_groups()
    rec.expect("UH", groups.UH.order, 46080)
    rec.expect("UH_elements_not_preserving_H", preserves_hermitian(groups.UH, standard_generators().H), 0)
    return rec.report()


def generator_relations_check() -> CheckReport:
    rec = Recorder("abelian.generators")
    s = standard_generators()
    rec.expect("relation_failures", relation_failures(s), [])
    t01 = s.T[0] @ s.T[1]
    rec.expect("(T0T1)^2", t01 @ t01 == -IDENTITY, True)
    rec.expect("N_in_UH", [preserves_hermitian(group_closure([m], cap=1000), s.H) == 0
                           for m in (s.N5, s.N01, s.N45, s.Nf)], [True] * 4)
    return rec.report()


# ---------------------------------------------------------------- ODPs and the divisor incidence

SIX_POINTS = ((1, 0, 0, 0), (0, 0, 1, 0), (1, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1), (0, 1, 0, 1))


def odp_orbits() -> list[list[tuple]]:
    u012 = standard_groups().U012
    labels = fixed_point_labels()
    seen = set()
    out = []
    for a in labels:
        if a in seen:
            continue
        p = HalfTorsionPoint.from_fixed_label(a)
        orbit = {act_on_point(g, p).fixed_label() for g in u012}
        seen |= orbit
        out.append(sorted(orbit))
    return out


def odp_orbit_analysis() -> CheckReport:
    rec = Recorder("abelian.odp-orbits")
    groups = standard_groups()
    rec.expect("U012_order", groups.U012.order, 4608)
    s = standard_generators()
    base = normalize_up_to_units(s.q012)
    rec.expect("U012_fixes_q012_up_to_scalar",
               all(normalize_up_to_units(congruence(g, s.q012)) == base for g in (s.N01, s.N45, s.Nf)), True)
    orbits = odp_orbits()
    rec.expect("orbit_sizes", sorted(len(o) for o in orbits), [1, 6, 9])
    six = next((o for o in orbits if len(o) == 6), [])
    rec.expect("six_orbit", sorted(six), sorted(SIX_POINTS))
    rec.expect("orbit_of_zero", next(o for o in orbits if (0, 0, 0, 0) in o), [(0, 0, 0, 0)])
    return rec.report()


@dataclass(frozen=True)
class DivisorIncidence:
    points: tuple       # the 16 labels a in F2^4
    ten_set: frozenset  # labels of the fixed points on D
    table: tuple        # table[p][q] = (q - p in ten_set)

    def divisor(self, p) -> frozenset:
        k = self.points.index(tuple(p))
        return frozenset(q for q, hit in zip(self.points, self.table[k]) if hit)


def _add(a, b) -> tuple:
    return tuple((x + y) % 2 for x, y in zip(a, b))


def divisor_incidence() -> DivisorIncidence:
    points = tuple(fixed_point_labels())
    ten = frozenset(p for p in points if p not in SIX_POINTS)
    table = tuple(tuple(_add(q, p) in ten for q in points) for p in points)
    return DivisorIncidence(points, ten, table)


def _label_sum(*names: str) -> tuple:
    named = {"p1": (1, 0, 0, 0), "p2": (0, 1, 0, 0), "p3": (0, 0, 1, 0), "p4": (0, 0, 0, 1)}
    out = (0, 0, 0, 0)
    for n in names:
        out = _add(out, named[n])
    return out


SPAN_Q = ((), ("p3",), ("p1", "p2", "p4"), ("p1",), ("p2", "p3"), ("p1", "p2", "p3", "p4"))
SPAN_R = (("p4",), ("p2", "p3", "p4"), ("p1", "p2"), ("p1", "p2", "p4"), ("p1", "p2", "p3"), ("p1", "p3", "p4"))


def divisor_point_incidence() -> CheckReport:
    rec = Recorder("abelian.incidence")
    inc = divisor_incidence()
    rec.expect("ten_set_size", len(inc.ten_set), 10)
    rec.expect("row_sums", sorted({sum(r) for r in inc.table}), [10])
    rec.expect("column_sums", sorted({sum(inc.table[p][q] for p in range(16)) for q in range(16)}), [10])
    pair_common, pair_outside = set(), set()
    for a, b in itertools.combinations(inc.points, 2):
        da, db = inc.divisor(a), inc.divisor(b)
        pair_common.add(len(da & db))
        pair_outside.add(16 - len(da | db))
    rec.expect("pairwise_common_points", sorted(pair_common), [6])
    rec.expect("pairwise_points_outside_union", sorted(pair_outside), [2])
    d = inc.divisor((0, 0, 0, 0))
    d_p1 = inc.divisor((1, 0, 0, 0))
    rec.expect("D_and_D+p1_common", len(d & d_p1), 6)
    # translation equivariance
    equivariant = all(inc.table[inc.points.index(_add(p, t))][inc.points.index(_add(q, t))]
                      == inc.table[inc.points.index(p)][inc.points.index(q)]
                      for p in inc.points for q in inc.points for t in inc.points)
    rec.expect("translation_equivariant", equivariant, True)
    qs = [_label_sum(*n) for n in SPAN_Q]
    rs = [_label_sum(*n) for n in SPAN_R]
    pattern = []
    for i, r in enumerate(rs):
        row = []
        for jdx, q in enumerate(qs):
            row.append(r in inc.divisor(q))
        pattern.append(row)
    rec.note("span_pattern", pattern)
    n = len(rs)
    rec.expect("diagonal_excluded", [pattern[i][i] for i in range(n)], [False] * n)
    rec.expect("r1_on_all_later_translates", all(pattern[0][1:]), True)
    # r_i lies on D+q_j for every j < i; with the diagonal this makes the 6x6 pattern triangular
    rec.expect("lower_triangle_holds", all(pattern[i][k] for i in range(n) for k in range(i)), True)
    rec.note("upper_triangle_holds", all(pattern[i][k] for i in range(n) for k in range(i + 1, n)))
    rec.expect("p4_not_on_D", (0, 0, 0, 1) in d, False)
    rec.expect("p4_on_D+p3", (0, 0, 0, 1) in inc.divisor((0, 0, 1, 0)), True)
    return rec.report()


# ---------------------------------------------------------------- reflections and fixed surfaces

def symplectic_reflections(gi: FiniteMatrixGroup | None = None) -> list[GaussianMatrix]:
    gi = gi or standard_groups().Gi
    return [m for m in gi if m.rank_minus_identity() == 2]


def expected_reflections() -> set:
    ts = standard_generators().T
    out = set()
    for t in ts:
        out.add(t.key)
        out.add((-t).key)
    for a, b in itertools.combinations(range(5), 2):
        m = (ts[a] @ ts[b]).times_i()
        out.add(m.key)
        out.add((-m).key)
    return out


@dataclass(frozen=True)
class FixedLocus:
    matrix: GaussianMatrix
    diag: tuple
    left: tuple
    components: int
    points: dict  # component label -> frozenset of fixed-point labels


def component_group(a: np.ndarray):
    """Smith data for the integer matrix a: (nonzero diagonal, left transform rows)."""
    snf = smith_normal_form(DenseMatrix.from_rows(a.tolist()))
    left = [[int(x.re) for x in snf.left.row(i)] for i in range(snf.left.rows)]
    return snf.diag, left


def component_label(diag, left, w: np.ndarray) -> tuple:
    """Class of the integer vector w in (Z^n cap image) / image, via the Smith form."""
    lw = [sum(left[i][k] * int(w[k]) for k in range(len(w))) for i in range(len(left))]
    label = []
    for i, d in enumerate(diag):
        if d:
            label.append(lw[i] % d)
        elif lw[i]:
            raise ArithmeticError("vector is not in the real image")
    return tuple(label)


def fixed_locus(m: GaussianMatrix) -> FixedLocus:
    """Components of {x in R^8/Z^8 : M x = x} and the G-fixed points on each."""
    a = (m - IDENTITY).realify()
    diag, left = component_group(a)
    components = 1
    for d in diag:
        if d:
            components *= d
    points: dict = {}
    for lab in fixed_point_labels():
        v = np.array(HalfTorsionPoint.from_fixed_label(lab).bits)
        w2 = a @ v
        if np.any(w2 % 2):
            continue  # not on the fixed locus
        key = component_label(diag, left, w2 // 2)
        points.setdefault(key, set()).add(lab)
    return FixedLocus(m, tuple(diag), tuple(map(tuple, left)), components,
                      {k: frozenset(v) for k, v in points.items()})


def conjugate_to_negative(m: GaussianMatrix, group: FiniteMatrixGroup) -> bool:
    target = -m
    return any(g @ m == target @ g for g in group)


def reflections_surfaces_check() -> CheckReport:
    rec = Recorder("abelian.reflections-surfaces")
    groups = standard_groups()
    refl = symplectic_reflections(groups.Gi)
    rec.expect("reflection_count", len(refl), 30)
    rec.expect("reflections_are_T_and_iTT", {m.key for m in refl} == expected_reflections(), True)
    rec.expect("reflections_in_G", sum(1 for m in refl if m in groups.G), 10)
    rec.expect("rank_of_minus_two_identity", (-IDENTITY).rank_minus_identity(), 4)
    loci = [fixed_locus(m) for m in refl]
    rec.expect("components_per_reflection", sorted({f.components for f in loci}), [4])
    surfaces = [(f.matrix, lab, pts) for f in loci for lab, pts in f.points.items()]
    rec.expect("surface_count", len(surfaces), 120)
    rec.expect("all_components_carry_points", all(len(f.points) == f.components for f in loci), True)
    rec.expect("points_per_surface", sorted({len(pts) for _, _, pts in surfaces}), [4])
    rec.expect("conjugate_to_negative",
               all(conjugate_to_negative(m, groups.G if m in groups.G else groups.Gi) for m in refl), True)
    by_points: dict = {}
    for m, lab, pts in surfaces:
        by_points.setdefault(pts, []).append(m)
    rec.expect("distinct_point_sets", len(by_points), 60)
    paired = all(len(ms) == 2 and ms[0] == -ms[1] for ms in by_points.values())
    rec.expect("pairs_are_M_and_minus_M", paired, True)
    inc = divisor_incidence()
    per_divisor = set()
    pairs_per_divisor = set()
    for p in inc.points:
        div = inc.divisor(p)
        inside = [pts for _, _, pts in surfaces if pts <= div]
        per_divisor.add(len(inside))
        pairs_per_divisor.add(len(set(inside)))
    rec.expect("surfaces_per_divisor", sorted(per_divisor), [30])
    rec.expect("point_sets_per_divisor", sorted(pairs_per_divisor), [15])
    return rec.report()


def isotropy_census() -> CheckReport:
    rec = Recorder("abelian.isotropy")
    g = standard_groups().G
    counts: dict = {}
    for p in all_two_torsion():
        order = g.stabilizer_order(p, act_on_point)
        counts[order] = counts.get(order, 0) + 1
    rec.expect("stabilizer_orders", dict(sorted(counts.items())), {4: 240, 32: 16})
    return rec.report()


def lefschetz_balance() -> CheckReport:
    rec = Recorder("abelian.lefschetz")
    one_minus_i = GaussianRational.of(1) - I
    det = one_minus_i ** 4
    rec.expect("(1-i)^4", det, GaussianRational.of(-4))
    total = sum((det.inverse() for _ in range(16)), GaussianRational.of(0))
    rec.expect("fixed_point_sum", total, GaussianRational.of(-4))
    h_plus = (16 + int(total.re)) // 2
    h_minus = 16 - h_plus
    rec.expect("h_plus_h_minus", (h_plus, h_minus), (6, 10))
    rec.expect("h0_delta", h_plus, 6)
    return rec.report()


def dump_orders() -> dict:
    return group_orders()
