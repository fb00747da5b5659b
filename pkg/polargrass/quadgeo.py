# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import json
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from polargrass.errors import (
    DimensionMismatch,
    NonSingularPoint,
    NotAlternating,
    VertexNotSubspace,
    WrongCharacteristic,
)
from polargrass.exactla import (
    canonical_points_of,
    combine,
    is_canonical_rows,
    all_vectors,
    kernel,
    lift_from_quotient,
    matmul_arrays,
    MatrixGF,
    project_to_quotient,
    quotient_coordinates,
    span,
    SubspaceRREF,
)
from polargrass.ffield import FieldSpec, Scalar
from polargrass.formulas import section_point_count, SectionClass


@dataclass(frozen=True)
class QuadraticSpace:
    """V = GF(q)^(2n+1) with eta(x) = x1 x2 + ... + x_{2n-1} x_{2n} + x_{2n+1}^2."""

    n: int
    field: FieldSpec

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n has to be >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def q(self) -> int:
        return self.field.q

    def _check(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if x.shape[-1] != self.dim:
            raise DimensionMismatch(
                f"Vectors of length {x.shape[-1]} in a space of dimension {self.dim}"
            )
        return x

    def eta_many(self, x: np.ndarray) -> np.ndarray:
        """eta applied to every row of x."""
        x = self._check(x)
        f = self.field
        acc = f.mul(x[..., -1], x[..., -1])
        for i in range(self.n):
            acc = f.add(acc, f.mul(x[..., 2 * i], x[..., 2 * i + 1]))
        return np.asarray(acc, dtype=np.int64)

    def beta_many(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Row-wise polarization eta(x+y) - eta(x) - eta(y)."""
        x, y = self._check(x), self._check(y)
        f = self.field
        return np.asarray(
            f.sub(f.sub(self.eta_many(f.add(x, y)), self.eta_many(x)), self.eta_many(y)),
            dtype=np.int64,
        )

    @cached_property
    def beta_matrix(self) -> MatrixGF:
        d = self.dim
        eye = np.eye(d, dtype=np.int64)
        values = self.beta_many(np.repeat(eye, d, axis=0), np.tile(eye, (d, 1)))
        return MatrixGF(self.field, values.reshape(d, d))

    def gram(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Matrix of beta(x_i, y_j)."""
        m = self.beta_matrix.entries
        return matmul_arrays(self.field, matmul_arrays(self.field, x, m), np.asarray(y).T)

    @cached_property
    def points(self) -> np.ndarray:
        pts = _enumerate_quadric_points(self)
        pts.setflags(write=False)
        return pts

    @cached_property
    def point_index(self) -> Dict[Tuple[int, ...], int]:
        return {tuple(int(c) for c in p): i for i, p in enumerate(self.points)}

    @cached_property
    def nucleus_vector(self) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[-1] = 1
        return e

    @cached_property
    def residual_geometry(self) -> Tuple[np.ndarray, np.ndarray]:
        """Lifted residual quadric points of every singular point, with owners.

        Row r of the first array is a point of the residual quadric at
        ``points[owners[r]]``, lifted to V.
        """
        lifts, owners = [], []
        for i, u in enumerate(self.points):
            pts = residual_quadric(self, u)
            lifts.append(pts)
            owners.append(np.full(pts.shape[0], i, dtype=np.int64))
        logging.debug(f"Built residual quadrics for {len(self.points)} points of Q({2 * self.n},{self.q})")
        return np.vstack(lifts), np.concatenate(owners)

    @cached_property
    def tangent_bases(self) -> List[np.ndarray]:
        return [tangent_hyperplane(self, u).basis.entries for u in self.points]


def _enumerate_quadric_points(space: QuadraticSpace) -> np.ndarray:
    field = space.field
    if field.even:
        # x_{2n+1} is the square root of the hyperbolic part
        head = all_vectors(field, 2 * space.n)[1:]
        acc = np.zeros(head.shape[0], dtype=np.int64)
        for i in range(space.n):
            acc = field.add(acc, field.mul(head[:, 2 * i], head[:, 2 * i + 1]))
        vectors = np.hstack([head, np.asarray(field.sqrt(acc), dtype=np.int64)[:, None]])
    else:
        vectors = all_vectors(field, space.dim)[1:]
    vectors = vectors[is_canonical_rows(vectors)]
    return vectors[space.eta_many(vectors) == 0]


def eta_eval(space: QuadraticSpace, x: Sequence[int]) -> Scalar:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (space.dim,):
        raise DimensionMismatch(f"Expected a vector of length {space.dim}, got shape {x.shape}")
    return int(space.eta_many(x[None, :])[0])


def beta_eval(space: QuadraticSpace, x: Sequence[int], y: Sequence[int]) -> Scalar:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != (space.dim,) or y.shape != (space.dim,):
        raise DimensionMismatch(f"Expected vectors of length {space.dim}")
    return int(space.beta_many(x[None, :], y[None, :])[0])


def beta_matrix(space: QuadraticSpace) -> MatrixGF:
    return space.beta_matrix


def nucleus(space: QuadraticSpace) -> SubspaceRREF:
    if not space.field.even:
        raise WrongCharacteristic(f"The nucleus only exists for q even, got q={space.q}")
    return kernel(space.beta_matrix)


def quadric_points(space: QuadraticSpace) -> np.ndarray:
    """Canonical singular points in lexicographic order."""
    return space.points


def tangent_hyperplane(space: QuadraticSpace, u: Sequence[int]) -> SubspaceRREF:
    u = np.asarray(u, dtype=np.int64)
    if u.shape != (space.dim,):
        raise DimensionMismatch(f"Expected a vector of length {space.dim}, got shape {u.shape}")
    if not u.any() or eta_eval(space, u) != 0:
        raise NonSingularPoint(f"{u.tolist()} is not a singular point")
    functional = matmul_arrays(space.field, u[None, :], space.beta_matrix.entries)
    return kernel(MatrixGF(space.field, functional))


@dataclass(frozen=True, eq=False)
class AlternatingForm:
    """Alternating bilinear form phi(x, y) = x^T S y on V."""

    space: QuadraticSpace
    S: MatrixGF

    def __post_init__(self):
        d = self.space.dim
        s = self.S.entries
        if s.shape != (d, d) or self.S.field != self.space.field:
            raise DimensionMismatch(f"Form matrix has shape {s.shape}, expected {(d, d)}")
        if np.any(np.diagonal(s)):
            raise NotAlternating("Form matrix has a nonzero diagonal entry")
        if not np.array_equal(s.T, self.space.field.neg(s)):
            raise NotAlternating("Form matrix is not antisymmetric")

    @classmethod
    def from_array(cls, space: QuadraticSpace, s) -> "AlternatingForm":
        return cls(space, MatrixGF(space.field, s))

    @classmethod
    def zero(cls, space: QuadraticSpace) -> "AlternatingForm":
        return cls.from_array(space, np.zeros((space.dim, space.dim), dtype=np.int64))

    @classmethod
    def elementary(cls, space: QuadraticSpace, i: int, j: int) -> "AlternatingForm":
        """e_i^* wedge e_j^*, with 1-based coordinates."""
        d = space.dim
        if not (1 <= i <= d and 1 <= j <= d) or i == j:
            raise DimensionMismatch(f"Elementary form ({i},{j}) needs distinct indices in 1..{d}")
        s = np.zeros((d, d), dtype=np.int64)
        s[i - 1, j - 1] = 1
        s[j - 1, i - 1] = space.field.neg(1)
        return cls.from_array(space, s)

    @classmethod
    def beta(cls, space: QuadraticSpace) -> "AlternatingForm":
        if not space.field.even:
            raise WrongCharacteristic(f"beta is symmetric but not alternating for q={space.q}")
        return cls(space, space.beta_matrix)

    @classmethod
    def wedge(cls, space: QuadraticSpace, a: Sequence[int], b: Sequence[int]) -> "AlternatingForm":
        """The form x, y -> a(x) b(y) - a(y) b(x) for linear functionals a, b."""
        f = space.field
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        s = f.sub(f.mul(a[:, None], b[None, :]), f.mul(b[:, None], a[None, :]))
        return cls.from_array(space, s)

    @classmethod
    def from_coefficients(cls, space: QuadraticSpace, coeffs: Sequence[int]) -> "AlternatingForm":
        """Coefficients of e_i^* wedge e_j^* over pairs i < j in lexicographic order."""
        d = space.dim
        pairs = list(combinations(range(d), 2))
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (len(pairs),):
            raise DimensionMismatch(f"Expected {len(pairs)} coefficients, got {coeffs.shape}")
        s = np.zeros((d, d), dtype=np.int64)
        rows, cols = np.array(pairs).T
        s[rows, cols] = coeffs
        s[cols, rows] = space.field.neg(coeffs)
        return cls.from_array(space, s)

    @classmethod
    def pullback(cls, space: QuadraticSpace, s_bar) -> "AlternatingForm":
        """phi(x, y) := psi(x mod N, y mod N) for a form psi on V/N."""
        comp = quotient_coordinates(nucleus(space))
        s_bar = np.asarray(s_bar, dtype=np.int64)
        if s_bar.shape != (len(comp), len(comp)):
            raise DimensionMismatch(f"Quotient form has shape {s_bar.shape}")
        s = np.zeros((space.dim, space.dim), dtype=np.int64)
        s[np.ix_(comp, comp)] = s_bar
        return cls.from_array(space, s)

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    def coefficients(self) -> np.ndarray:
        rows, cols = np.triu_indices(self.space.dim, k=1)
        return self.S.entries[rows, cols].copy()

    def __add__(self, other: "AlternatingForm") -> "AlternatingForm":
        return AlternatingForm(
            self.space, MatrixGF(self.field, self.field.add(self.S.entries, other.S.entries))
        )

    def __sub__(self, other: "AlternatingForm") -> "AlternatingForm":
        return AlternatingForm(
            self.space, MatrixGF(self.field, self.field.sub(self.S.entries, other.S.entries))
        )

    def scale(self, c: Scalar) -> "AlternatingForm":
        return AlternatingForm(self.space, MatrixGF(self.field, self.field.mul(c, self.S.entries)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlternatingForm):
            return NotImplemented
        return self.space == other.space and self.S == other.S

    def __hash__(self) -> int:
        return hash((self.space, self.S))

    def is_zero(self) -> bool:
        return not self.S.entries.any()

    def evaluate(self, x: Sequence[int], y: Sequence[int]) -> Scalar:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return int(matmul_arrays(self.field, matmul_arrays(self.field, x[None, :], self.S.entries), y[:, None])[0, 0])

    def induced_quotient_form(self) -> np.ndarray:
        """Matrix of the form induced on V/N; N has to lie in the radical."""
        N = nucleus(self.space)
        if not form_radical(self).contains(N.basis.entries[0]):
            raise ValueError("The nucleus is not in the radical of the form")
        comp = quotient_coordinates(N)
        return self.S.entries[np.ix_(comp, comp)].copy()

    def to_text(self) -> str:
        return self.S.to_text()


def form_radical(f: AlternatingForm) -> SubspaceRREF:
    return kernel(f.S)


class SectionCensus(NamedTuple):
    point_count: int
    sigma: int
    vertex: SubspaceRREF


class RadicalProfile(NamedTuple):
    radical: SubspaceRREF
    rad_dim: int
    contains_nucleus: bool
    section_class: SectionClass
    point_count: int
    sigma: int
    vertex_dim: int

    def signature(self) -> Tuple[Any, ...]:
        return (self.rad_dim, self.contains_nucleus, self.section_class.value, self.point_count, self.sigma)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "radical": self.radical.basis.entries.tolist(),
            "rad_dim": self.rad_dim,
            "contains_nucleus": self.contains_nucleus,
            "section_class": self.section_class.value,
            "point_count": self.point_count,
            "sigma": self.sigma,
            "vertex_dim": self.vertex_dim,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def singular_points_of(space: QuadraticSpace, s: SubspaceRREF) -> np.ndarray:
    pts = canonical_points_of(s)
    return pts[space.eta_many(pts) == 0]


def _vertex(space: QuadraticSpace, s: SubspaceRREF) -> SubspaceRREF:
    field = space.field
    if s.dim == 0:
        return s
    basis = s.basis.entries
    restricted = space.gram(basis, basis)
    coeffs = kernel(MatrixGF(field, restricted))
    radical = span(field, combine(field, coeffs.basis.entries, basis), ambient=space.dim)
    singular = singular_points_of(space, radical)
    vertex = span(field, singular, ambient=space.dim)
    if (field.q**vertex.dim - 1) // (field.q - 1) != singular.shape[0]:
        raise VertexNotSubspace(
            f"Singular radical vectors of the section do not form a subspace ({singular.shape[0]} points)"
        )
    return vertex


def section_census(space: QuadraticSpace, s: SubspaceRREF) -> SectionCensus:
    """Singular point count, totally singular line count and vertex of s."""
    if s.ambient != space.dim:
        raise DimensionMismatch(f"Subspace of ambient {s.ambient} in a space of dimension {space.dim}")
    q = space.q
    pts = singular_points_of(space, s)
    sigma = 0
    if pts.shape[0] > 1:
        # ordered pairs of distinct collinear singular points, q(q+1) per line
        pairs = int(np.count_nonzero(space.gram(pts, pts) == 0)) - pts.shape[0]
        if pairs % (q * (q + 1)):
            raise RuntimeError(f"Failed to count singular lines: {pairs} collinear pairs")
        sigma = pairs // (q * (q + 1))
    return SectionCensus(int(pts.shape[0]), sigma, _vertex(space, s))


def _contains_nucleus(space: QuadraticSpace, s: SubspaceRREF) -> bool:
    return space.field.even and s.contains(space.nucleus_vector)


def classify_section(space: QuadraticSpace, s: SubspaceRREF) -> RadicalProfile:
    n, q = space.n, space.q
    if s.dim != 2 * n - 1:
        raise DimensionMismatch(f"Sections are classified in dimension {2 * n - 1}, got {s.dim}")
    census = section_census(space, s)
    cls = SectionClass.OTHER
    v = census.vertex.dim
    if v == 0 and census.point_count == section_point_count(q, n, SectionClass.PARABOLIC):
        cls = SectionClass.PARABOLIC
    elif v == 1:
        for candidate in (SectionClass.HYPERBOLIC_CONE, SectionClass.ELLIPTIC_CONE):
            if census.point_count == section_point_count(q, n, candidate):
                cls = candidate
    elif v == 2 and census.point_count == section_point_count(
        q, n, SectionClass.LINE_VERTEX_PARABOLIC
    ):
        cls = SectionClass.LINE_VERTEX_PARABOLIC
    return RadicalProfile(
        radical=s,
        rad_dim=s.dim,
        contains_nucleus=_contains_nucleus(space, s),
        section_class=cls,
        point_count=census.point_count,
        sigma=census.sigma,
        vertex_dim=v,
    )


def radical_profile(f: AlternatingForm) -> RadicalProfile:
    space = f.space
    radical = form_radical(f)
    if radical.dim == 2 * space.n - 1:
        return classify_section(space, radical)
    census = section_census(space, radical)
    return RadicalProfile(
        radical=radical,
        rad_dim=radical.dim,
        contains_nucleus=_contains_nucleus(space, radical),
        section_class=SectionClass.OTHER,
        point_count=census.point_count,
        sigma=census.sigma,
        vertex_dim=census.vertex.dim,
    )


def residual_quadric(space: QuadraticSpace, u: Sequence[int]) -> np.ndarray:
    """Singular points of u^perp / <u>, lifted to V with a zero on u's pivot."""
    field = space.field
    tangent = tangent_hyperplane(space, u)
    line = span(field, [u])
    quotient = span(
        field, project_to_quotient(line, tangent.basis.entries), ambient=space.dim - 1
    )
    lifts = lift_from_quotient(line, canonical_points_of(quotient))
    return lifts[space.eta_many(lifts) == 0]


def tangent_inclusion(space: QuadraticSpace, f: AlternatingForm) -> np.ndarray:
    """Per singular point u: whether the tangent hyperplane at u lies in u^{perp_f}."""
    field = space.field
    functionals = matmul_arrays(field, space.points, f.S.entries)
    out = np.zeros(space.points.shape[0], dtype=bool)
    for i, basis in enumerate(space.tangent_bases):
        out[i] = not np.any(matmul_arrays(field, functionals[i][None, :], basis.T))
    return out
