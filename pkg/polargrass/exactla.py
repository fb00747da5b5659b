# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from polargrass.errors import DimensionMismatch, WrongCharacteristic, ZeroVector
from polargrass.ffield import FieldSpec


@dataclass(frozen=True, eq=False)
class MatrixGF:
    """Dense matrix over a finite field; entries are Scalar reps."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64, ndmin=2, copy=True)
        if entries.ndim != 2:
            raise DimensionMismatch(f"Expected a 2-d array, got shape {entries.shape}")
        if entries.size and (entries.min() < 0 or entries.max() >= self.field.q):
            raise ValueError(f"Matrix entries out of range for {self.field}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return (
            self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.entries.shape, self.entries.tobytes()))

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.field, self.entries.T)

    def to_text(self) -> str:
        """Matrix text format: header "rows cols q", then one line per row."""
        lines = [f"{self.rows} {self.cols} {self.field.q}"]
        lines.extend(" ".join(str(int(x)) for x in row) for row in self.entries)
        return "\n".join(lines) + "\n"


def zeros(field: FieldSpec, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(field, np.zeros((rows, cols), dtype=np.int64))


def identity(field: FieldSpec, size: int) -> MatrixGF:
    return MatrixGF(field, np.eye(size, dtype=np.int64))


def matmul_arrays(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Field matrix product of two int arrays (inner dimension is small)."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    b = np.atleast_2d(np.asarray(b, dtype=np.int64))
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out = field.add(out, field.mul(a[:, t, None], b[None, t, :]))
    return np.asarray(out, dtype=np.int64)


def dot_rows(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise dot products sum_j a[i, j] * b[i, j]."""
    prods = np.asarray(field.mul(a, b), dtype=np.int64)
    if field.p == 2:
        return np.bitwise_xor.reduce(prods, axis=-1)
    out = np.zeros(prods.shape[:-1], dtype=np.int64)
    for t in range(prods.shape[-1]):
        out = field.add(out, prods[..., t])
    return np.asarray(out, dtype=np.int64)


def matmul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    if a.field != b.field:
        raise DimensionMismatch(f"Field mismatch: {a.field} vs {b.field}")
    return MatrixGF(a.field, matmul_arrays(a.field, a.entries, b.entries))


def _rref_array(
    field: FieldSpec, a: np.ndarray, pivot_cols: Optional[int] = None
) -> Tuple[np.ndarray, List[int]]:
    r = np.array(a, dtype=np.int64, ndmin=2, copy=True)
    rows, cols = r.shape
    limit = cols if pivot_cols is None else pivot_cols
    pivots: List[int] = []
    row = 0
    for col in range(limit):
        if row == rows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        found = row + int(nz[0])
        if found != row:
            r[[row, found]] = r[[found, row]]
        r[row] = field.mul(field.inv(int(r[row, col])), r[row])
        factors = r[:, col].copy()
        factors[row] = 0
        targets = np.flatnonzero(factors)
        if targets.size:
            r[targets] = field.sub(
                r[targets], field.mul(factors[targets, None], r[row][None, :])
            )
        pivots.append(col)
        row += 1
    return r, pivots


def rref(m: MatrixGF) -> Tuple[MatrixGF, int, List[int]]:
    """Unique reduced row echelon form of m, its rank and pivot columns."""
    r, pivots = _rref_array(m.field, m.entries)
    return MatrixGF(m.field, r), len(pivots), pivots


def rref_with_transform(m: MatrixGF) -> Tuple[MatrixGF, int, List[int], MatrixGF]:
    """RREF of m together with an invertible T such that T * m = RREF(m)."""
    aug = np.hstack([m.entries, np.eye(m.rows, dtype=np.int64)])
    r, pivots = _rref_array(m.field, aug, pivot_cols=m.cols)
    return (
        MatrixGF(m.field, r[:, : m.cols]),
        len(pivots),
        pivots,
        MatrixGF(m.field, r[:, m.cols :]),
    )


def rank(m: MatrixGF) -> int:
    return rref(m)[1]


@dataclass(frozen=True, eq=False)
class SubspaceRREF:
    """A subspace held by its canonical RREF basis.

    Equality, hashing and ordering go through the basis entries, so two
    handles are equal exactly when they span the same subspace.
    """

    basis: MatrixGF

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def ambient(self) -> int:
        return self.basis.cols

    @cached_property
    def key(self) -> Tuple[int, ...]:
        return (self.ambient, self.dim) + tuple(int(x) for x in self.basis.entries.ravel())

    @cached_property
    def pivots(self) -> List[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceRREF):
            return NotImplemented
        return self.field == other.field and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "SubspaceRREF") -> bool:
        return self.key < other.key

    def contains(self, v: Sequence[int]) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.ambient,):
            raise DimensionMismatch(f"Vector of length {v.shape} in ambient {self.ambient}")
        if self.dim == 0:
            return not v.any()
        # in RREF, v lies in the span iff v = sum of v[pivot_i] * row_i
        rebuilt = combine(self.field, v[self.pivots][None, :], self.basis.entries)[0]
        return bool(np.array_equal(rebuilt, v))

    def to_text(self) -> str:
        return " ; ".join(" ".join(str(int(x)) for x in row) for row in self.basis.entries)


def span(field: FieldSpec, vectors, ambient: Optional[int] = None) -> SubspaceRREF:
    """Canonical subspace spanned by the rows of vectors."""
    arr = np.asarray(vectors, dtype=np.int64)
    if arr.size == 0:
        if ambient is None and arr.ndim == 2:
            ambient = arr.shape[1]
        if ambient is None:
            raise DimensionMismatch("Ambient dimension needed for an empty span")
        return SubspaceRREF(MatrixGF(field, np.zeros((0, ambient), dtype=np.int64)))
    arr = arr.reshape(-1, arr.shape[-1])
    r, pivots = _rref_array(field, arr)
    return SubspaceRREF(MatrixGF(field, r[: len(pivots)]))


def kernel(m: MatrixGF) -> SubspaceRREF:
    """{x : m x = 0} in canonical form."""
    field = m.field
    r, pivots = _rref_array(field, m.entries)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    if not free:
        return span(field, [], ambient=m.cols)
    basis = np.zeros((len(free), m.cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = field.neg(int(r[row, f]))
    return span(field, basis)


def row_space_contains(outer: MatrixGF, inner: MatrixGF) -> bool:
    if outer.cols != inner.cols or outer.field != inner.field:
        raise DimensionMismatch(
            f"Cannot compare row spaces of {outer.rows}x{outer.cols} over {outer.field} and {inner.rows}x{inner.cols} over {inner.field}"
        )
    stacked = MatrixGF(outer.field, np.vstack([outer.entries, inner.entries]))
    return rank(stacked) == rank(outer)


def canonical_point(field: FieldSpec, v: Sequence[int]) -> np.ndarray:
    """Scalar multiple of v whose first nonzero coordinate is 1."""
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        raise ZeroVector("The zero vector has no projective point")
    return np.asarray(field.mul(field.inv(int(v[nz[0]])), v), dtype=np.int64)


def canonical_rows(field: FieldSpec, vectors: np.ndarray) -> np.ndarray:
    """canonical_point applied to every (nonzero) row."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.shape[0] == 0:
        return vectors
    lead = vectors[np.arange(vectors.shape[0]), np.argmax(vectors != 0, axis=1)]
    if np.any(lead == 0):
        raise ZeroVector("The zero vector has no projective point")
    return np.asarray(field.mul(field.inv(lead)[:, None], vectors), dtype=np.int64)


def is_canonical_rows(vectors: np.ndarray) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.int64)
    lead = vectors[np.arange(vectors.shape[0]), np.argmax(vectors != 0, axis=1)]
    return lead == 1


def coefficient_tuples(q: int, dim: int) -> np.ndarray:
    """All of GF(q)^dim as rows, lexicographic (first coordinate slowest)."""
    idx = np.arange(q**dim, dtype=np.int64)
    powers = q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def all_vectors(field: FieldSpec, dim: int) -> np.ndarray:
    return coefficient_tuples(field.q, dim)


def combine(field: FieldSpec, coeffs: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """coeffs (m x d) times basis (d x n) over the field."""
    if basis.shape[0] == 0:
        return np.zeros((coeffs.shape[0], basis.shape[1]), dtype=np.int64)
    return matmul_arrays(field, coeffs, basis)


def subspace_vector_array(s: SubspaceRREF) -> np.ndarray:
    """The q^dim - 1 nonzero vectors of s, lexicographic in their coefficients."""
    if s.dim == 0:
        return np.zeros((0, s.ambient), dtype=np.int64)
    coeffs = coefficient_tuples(s.field.q, s.dim)[1:]
    return combine(s.field, coeffs, s.basis.entries)


def subspace_vectors(s: SubspaceRREF) -> Iterator[np.ndarray]:
    yield from subspace_vector_array(s)


def canonical_points_of(s: SubspaceRREF) -> np.ndarray:
    """Canonical representatives of the projective points of s.

    Because the basis is in RREF, a combination is canonical exactly when its
    first nonzero coefficient is 1.
    """
    if s.dim == 0:
        return np.zeros((0, s.ambient), dtype=np.int64)
    coeffs = coefficient_tuples(s.field.q, s.dim)[1:]
    coeffs = coeffs[is_canonical_rows(coeffs)]
    return combine(s.field, coeffs, s.basis.entries)


def lex_sort_rows(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.shape[0] == 0:
        return a
    return a[np.lexsort(a.T[::-1])]


def quotient_coordinates(sub: SubspaceRREF) -> List[int]:
    """Non-pivot coordinates; their unit vectors span the chosen complement."""
    pivots = set(sub.pivots)
    return [c for c in range(sub.ambient) if c not in pivots]


def project_to_quotient(sub: SubspaceRREF, vectors: np.ndarray) -> np.ndarray:
    """Coordinates of vectors modulo sub, in the complement of non-pivot units."""
    field = sub.field
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, sub.ambient)
    if sub.dim:
        coeffs = vectors[:, sub.pivots]
        vectors = np.asarray(
            field.sub(vectors, combine(field, coeffs, sub.basis.entries)),
            dtype=np.int64,
        )
    return vectors[:, quotient_coordinates(sub)]


def lift_from_quotient(sub: SubspaceRREF, coords: np.ndarray) -> np.ndarray:
    """Canonical lift: the vector with zeros on the pivot coordinates of sub."""
    coords = np.asarray(coords, dtype=np.int64).reshape(-1, sub.ambient - sub.dim)
    out = np.zeros((coords.shape[0], sub.ambient), dtype=np.int64)
    out[:, quotient_coordinates(sub)] = coords
    return out


def pack_rows(m: MatrixGF) -> List[int]:
    """GF(2) rows as Python ints, bit j holding column j."""
    if m.field.q != 2:
        raise WrongCharacteristic(f"Packed rows need GF(2), got {m.field}")
    weights = [1 << j for j in range(m.cols)]
    return [sum(w for w, bit in zip(weights, row) if bit) for row in m.entries.tolist()]


def unpack_rows(field: FieldSpec, packed: Sequence[int], cols: int) -> MatrixGF:
    if field.q != 2:
        raise WrongCharacteristic(f"Packed rows need GF(2), got {field}")
    entries = np.array(
        [[(word >> j) & 1 for j in range(cols)] for word in packed], dtype=np.int64
    ).reshape(len(packed), cols)
    return MatrixGF(field, entries)
