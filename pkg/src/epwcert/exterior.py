"""Exterior powers of C^6, Pluecker vectors of planes in P^5 and the wedge pairing."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact import ZERO, DenseMatrix, GaussianRational, matrix_kernel, matrix_rank, reduced_row_echelon

DIM = 6


def subsets(k: int) -> list[tuple[int, ...]]:
    """Sorted k-subsets of {0..5} in lexicographic order: the standard basis of the k-th power."""
    return list(combinations(range(DIM), k))


def sort_with_sign(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 if an index repeats) and the sorted tuple."""
    if len(set(indices)) != len(indices):
        return 0, ()
    idx = list(indices)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


@dataclass(frozen=True)
class WedgeVector:
    grade: int
    coords: Mapping[tuple[int, ...], GaussianRational] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, value in self.coords.items():
            sign, key_sorted = sort_with_sign(key)
            if len(key) != self.grade:
                raise ValueError(f"index {key} does not have grade {self.grade}")
            if sign == 0:
                continue
            value = GaussianRational.of(value) * sign
            clean[key_sorted] = clean.get(key_sorted, ZERO) + value
        object.__setattr__(self, "coords", {k: clean[k] for k in sorted(clean) if clean[k]})

    @classmethod
    def basis(cls, indices: Sequence[int]) -> WedgeVector:
        return cls(len(indices), {tuple(indices): 1})

    @classmethod
    def from_vector(cls, vector: Sequence) -> WedgeVector:
        return cls(1, {(k,): v for k, v in enumerate(vector)})

    @classmethod
    def from_coordinates(cls, grade: int, values: Sequence) -> WedgeVector:
        return cls(grade, dict(zip(subsets(grade), values)))

    def coordinates(self) -> list[GaussianRational]:
        return [self.coords.get(s, ZERO) for s in subsets(self.grade)]

    def __getitem__(self, key) -> GaussianRational:
        sign, key_sorted = sort_with_sign(key)
        return self.coords.get(key_sorted, ZERO) * sign if sign else ZERO

    def __add__(self, other: WedgeVector) -> WedgeVector:
        self._same_grade(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, ZERO) + v
        return WedgeVector(self.grade, out)

    def __sub__(self, other: WedgeVector) -> WedgeVector:
        return self + (-other)

    def __neg__(self) -> WedgeVector:
        return WedgeVector(self.grade, {k: -v for k, v in self.coords.items()})

    def scale(self, c) -> WedgeVector:
        c = GaussianRational.of(c)
        return WedgeVector(self.grade, {k: c * v for k, v in self.coords.items()})

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        return isinstance(other, WedgeVector) and self.grade == other.grade and self.coords == other.coords

    def __hash__(self):
        return hash((self.grade, tuple(self.coords.items())))

    def _same_grade(self, other: WedgeVector) -> None:
        if self.grade != other.grade:
            raise ValueError(f"grade mismatch: {self.grade} vs {other.grade}")

    def __str__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"({v})e{''.join(map(str, k))}" for k, v in self.coords.items())


def wedge(a: WedgeVector, b: WedgeVector) -> WedgeVector:
    if a.grade + b.grade > DIM:
        return WedgeVector(a.grade + b.grade, {})
    out: dict = {}
    for ka, va in a.coords.items():
        for kb, vb in b.coords.items():
            sign, key = sort_with_sign(ka + kb)
            if sign:
                out[key] = out.get(key, ZERO) + va * vb * sign
    return WedgeVector(a.grade + b.grade, out)


def wedge_all(vectors: Iterable[WedgeVector]) -> WedgeVector:
    vectors = list(vectors)
    acc = vectors[0]
    for v in vectors[1:]:
        acc = wedge(acc, v)
    return acc


def symplectic_pairing(a: WedgeVector, b: WedgeVector) -> GaussianRational:
    """Coefficient of e0^...^e5 in a^b."""
    if a.grade != 3 or b.grade != 3:
        raise ValueError("pairing is defined on the third exterior power")
    return wedge(a, b).coords.get(tuple(range(DIM)), ZERO)


def pluecker_relations_hold(w: WedgeVector) -> bool:
    """Grassmann-Pluecker quadrics for a grade-3 vector in dimension 6."""
    if w.grade != 3:
        raise ValueError("relations implemented for grade 3")
    for i in combinations(range(DIM), 2):
        for j in combinations(range(DIM), 4):
            total = ZERO
            for pos, jl in enumerate(j):
                rest = j[:pos] + j[pos + 1:]
                term = w[i + (jl,)] * w[rest]
                total = total + (term if pos % 2 == 0 else -term)
            if total:
                return False
    return True


@dataclass(frozen=True)
class PlaneLabel:
    """V_{a s b, c s d, e s f}: the zero set of Z_a + s Z_b = ... = 0 (s = +1 or -1)."""

    pairs: tuple  # three (a, sign, b) triples

    def equations(self) -> list[list[int]]:
        rows = []
        for a, s, b in self.pairs:
            row = [0] * DIM
            row[a] = 1
            row[b] = s
            rows.append(row)
        return rows

    def spanning_vectors(self) -> list[list[int]]:
        """e_a - s e_b for each pair: these span the common zero set."""
        rows = []
        for a, s, b in self.pairs:
            row = [0] * DIM
            row[a] = 1
            row[b] = -s
            rows.append(row)
        return rows

    def partition(self) -> frozenset:
        return frozenset(frozenset((a, b)) for a, _, b in self.pairs)

    def minus_count(self) -> int:
        return sum(1 for _, s, _ in self.pairs if s < 0)

    def __str__(self):
        return "V_{" + ",".join(f"{a}{'+' if s > 0 else '-'}{b}" for a, s, b in self.pairs) + "}"

    @classmethod
    def parse(cls, text: str) -> PlaneLabel:
        body = text.strip()
        if body.startswith("V_{") and body.endswith("}"):
            body = body[3:-1]
        pairs = []
        for chunk in body.split(","):
            chunk = chunk.strip().replace("−", "-")
            op = "+" if "+" in chunk else "-"
            a, b = chunk.split(op)
            pairs.append((int(a), 1 if op == "+" else -1, int(b)))
        return cls(tuple(pairs))


def canonical_label(pairs: Iterable[tuple[int, int, int]]) -> PlaneLabel:
    """Order each pair as (smaller, sign, larger) and the pairs by first index."""
    norm = sorted((min(a, b), s, max(a, b)) for a, s, b in pairs)
    return PlaneLabel(tuple(norm))


class ProjectivePlane:
    """A plane in P^5, stored as the reduced echelon basis of its 3-dim cone."""

    __slots__ = ("basis", "label", "_key")

    def __init__(self, spanning: Sequence[Sequence], label: PlaneLabel | None = None):
        rows, pivots = reduced_row_echelon(DenseMatrix.from_rows(spanning))
        if len(pivots) != 3:
            raise ValueError(f"spanning set has rank {len(pivots)}, not 3")
        self.basis = DenseMatrix.from_rows(rows[:3])
        self.label = label
        self._key = self.basis.entries

    @classmethod
    def from_label(cls, label: PlaneLabel | str) -> ProjectivePlane:
        if isinstance(label, str):
            label = PlaneLabel.parse(label)
        return cls(label.spanning_vectors(), label)

    @classmethod
    def from_equations(cls, forms: Sequence[Sequence], label: PlaneLabel | None = None) -> ProjectivePlane:
        kernel = matrix_kernel(DenseMatrix.from_rows(forms))
        if len(kernel) != 3:
            raise ValueError(f"equations cut out a space of dimension {len(kernel)}, not 3")
        return cls(kernel, label)

    def rows(self) -> list[list[GaussianRational]]:
        return self.basis.to_rows()

    def equations(self) -> list[list[GaussianRational]]:
        """Three independent linear forms vanishing on the plane."""
        return matrix_kernel(self.basis)

    def contains_point(self, point: Sequence) -> bool:
        stacked = DenseMatrix.from_rows(self.rows() + [list(point)])
        return matrix_rank(stacked) == 3

    def __eq__(self, other):
        return isinstance(other, ProjectivePlane) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"ProjectivePlane({self.label})" if self.label else f"ProjectivePlane({self.rows()})"


def plucker(plane: ProjectivePlane) -> WedgeVector:
    return wedge_all(WedgeVector.from_vector(r) for r in plane.rows())


def plane_intersection_dimension(a: ProjectivePlane, b: ProjectivePlane) -> int:
    stacked = DenseMatrix.from_rows(a.rows() + b.rows())
    return 5 - matrix_rank(stacked)


def plane_intersection_point(a: ProjectivePlane, b: ProjectivePlane) -> tuple | None:
    """The meeting point (normalized, first nonzero coordinate 1) when it is a single point."""
    if plane_intersection_dimension(a, b) != 0:
        return None
    stacked = DenseMatrix.from_rows(a.equations() + b.equations())
    kernel = matrix_kernel(stacked)
    return normalize_point(kernel[0])


def normalize_point(vector: Sequence) -> tuple:
    vector = [GaussianRational.of(v) for v in vector]
    lead = next((v for v in vector if v), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    inv = lead.inverse()
    return tuple(v * inv for v in vector)


def span_rows(vectors: Sequence[WedgeVector]) -> tuple[int, list[WedgeVector]]:
    if not vectors:
        return 0, []
    grade = vectors[0].grade
    rows, pivots = reduced_row_echelon(DenseMatrix.from_rows([v.coordinates() for v in vectors]))
    return len(pivots), [WedgeVector.from_coordinates(grade, rows[k]) for k in range(len(pivots))]


def span_and_isotropy(planes_or_vectors: Sequence) -> tuple[int, bool, list[WedgeVector]]:
    if not planes_or_vectors:
        raise ValueError("empty input")
    vectors = [plucker(p) if isinstance(p, ProjectivePlane) else p for p in planes_or_vectors]
    dim, basis = span_rows(vectors)
    isotropic = all(not symplectic_pairing(u, v) for u in basis for v in basis)
    return dim, isotropic, basis


def same_span(a: Sequence[WedgeVector], b: Sequence[WedgeVector]) -> bool:
    da, _ = span_rows(list(a))
    db, _ = span_rows(list(b))
    dab, _ = span_rows(list(a) + list(b))
    return da == db == dab


def in_span(vector: WedgeVector, basis: Sequence[WedgeVector]) -> bool:
    d, _ = span_rows(list(basis))
    d2, _ = span_rows(list(basis) + [vector])
    return d == d2


def permute_wedge(w: WedgeVector, perm: Sequence[int]) -> WedgeVector:
    """Image under e_k -> e_perm[k]."""
    return WedgeVector(w.grade, {tuple(perm[k] for k in key): v for key, v in w.coords.items()})
