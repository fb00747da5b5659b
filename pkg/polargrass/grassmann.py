# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import json
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np

from polargrass.errors import BadGrade, ColumnMisalignment, WrongCharacteristic
from polargrass.exactla import (
    canonical_point,
    canonical_points_of,
    project_to_quotient,
    span,
    SubspaceRREF,
)
from polargrass.ffield import FieldSpec
from polargrass.formulas import line_count
from polargrass.quadgeo import nucleus, QuadraticSpace


def index_tuples(ambient: int, k: int) -> List[Tuple[int, ...]]:
    """Strictly increasing k-subsets of range(ambient), lexicographic."""
    return list(combinations(range(ambient), k))


def _permutation_sign(perm: Tuple[int, ...]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def minors(field: FieldSpec, basis: np.ndarray) -> np.ndarray:
    """All k x k minors of a k x d matrix, indexed by index_tuples(d, k)."""
    basis = np.asarray(basis, dtype=np.int64)
    k, d = basis.shape
    cols = np.array(index_tuples(d, k), dtype=np.int64).reshape(-1, k)
    out = np.zeros(cols.shape[0], dtype=np.int64)
    for perm in permutations(range(k)):
        term = np.ones(cols.shape[0], dtype=np.int64)
        for r in range(k):
            term = field.mul(term, basis[r, cols[:, perm[r]]])
        if _permutation_sign(perm) < 0:
            out = field.sub(out, term)
        else:
            out = field.add(out, term)
    return np.asarray(out, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class PluckerVector:
    coords: np.ndarray
    k: int

    def __eq__(self, other) -> bool:
        if not isinstance(other, PluckerVector):
            return NotImplemented
        return self.k == other.k and bool(np.array_equal(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash((self.k, self.coords.tobytes()))


def plucker_embed(s: SubspaceRREF, ambient: Optional[int] = None) -> PluckerVector:
    """Canonical Plücker coordinates of s (ambient defaults to s.ambient)."""
    if s.dim < 1:
        raise BadGrade("Plücker coordinates need a subspace of dimension >= 1")
    if ambient is not None and ambient != s.ambient:
        raise ValueError(f"Subspace lives in dimension {s.ambient}, not {ambient}")
    coords = canonical_point(s.field, minors(s.field, s.basis.entries))
    coords.setflags(write=False)
    return PluckerVector(coords=coords, k=s.dim)


@dataclass(frozen=True, eq=False)
class ProjectiveSystem:
    """Ordered column labels with their Plücker coordinates.

    ``labels`` are the subspaces the code evaluates on. For the symplectic
    system they are lines of V/N and ``sources`` holds the aligned lines of V.
    """

    space: QuadraticSpace
    k: int
    labels: Tuple[SubspaceRREF, ...]
    symplectic: bool = False
    sources: Optional[Tuple[SubspaceRREF, ...]] = None

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def ambient_dim(self) -> int:
        """Length of the Plücker vectors, C(2n+1, k) or C(2n, k)."""
        return len(index_tuples(self.labels[0].ambient, self.k)) if self.labels else 0

    @cached_property
    def coords(self) -> np.ndarray:
        """Plücker coordinates stacked as an ambient_dim x size matrix."""
        cols = [plucker_embed(label).coords for label in self.labels]
        out = np.array(cols, dtype=np.int64).T.reshape(self.ambient_dim, self.size)
        out.setflags(write=False)
        return out

    @cached_property
    def bases(self) -> np.ndarray:
        """RREF bases of the evaluation subspaces in V, shape size x k x (2n+1)."""
        lines = self.sources if self.symplectic else self.labels
        return np.array([s.basis.entries for s in lines], dtype=np.int64).reshape(
            len(lines), self.k, self.space.dim
        )

    @property
    def columns(self) -> List[Tuple[SubspaceRREF, PluckerVector]]:
        return [
            (label, PluckerVector(coords=self.coords[:, i], k=self.k))
            for i, label in enumerate(self.labels)
        ]

    def dump_lines(self) -> List[str]:
        """One "label-RREF | plucker coords" line per column."""
        return [
            f"{label.to_text()} | {' '.join(str(int(c)) for c in self.coords[:, i])}"
            for i, label in enumerate(self.labels)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.field.q,
            "n": self.space.n,
            "k": self.k,
            "symplectic": self.symplectic,
            "size": self.size,
            "ambient_dim": self.ambient_dim,
            "columns": [
                {
                    "label": label.basis.entries.tolist(),
                    "plucker": [int(c) for c in self.coords[:, i]],
                }
                for i, label in enumerate(self.labels)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def enumerate_delta_k(space: QuadraticSpace, k: int) -> ProjectiveSystem:
    """Totally singular k-subspaces, grown from singular points one point at a time."""
    if k < 1 or k > space.n:
        raise BadGrade(f"Grade k={k} is outside 1..{space.n}")
    field = space.field
    points = space.points
    index = space.point_index
    level: Set[SubspaceRREF] = {span(field, p[None, :]) for p in points}
    for j in range(1, k):
        grown: Set[SubspaceRREF] = set()
        for u in sorted(level):
            basis = u.basis.entries
            perp = ~np.any(space.gram(points, basis), axis=1)
            covered = np.zeros(points.shape[0], dtype=bool)
            for i in canonical_points_of(u):
                covered[index[tuple(int(c) for c in i)]] = True
            for i in np.flatnonzero(perp):
                if covered[i]:
                    continue
                w = span(field, np.vstack([basis, points[i]]))
                for p in canonical_points_of(w):
                    covered[index[tuple(int(c) for c in p)]] = True
                grown.add(w)
        level = grown
        logging.debug(f"Found {len(level)} totally singular {j + 1}-spaces of Q({2 * space.n},{space.q})")
    return ProjectiveSystem(space=space, k=k, labels=tuple(sorted(level)))


def quotient_line(space: QuadraticSpace, label: SubspaceRREF) -> SubspaceRREF:
    """The image <l, N>/N of a subspace of V in V/N."""
    N = nucleus(space)
    return span(space.field, project_to_quotient(N, label.basis.entries), ambient=space.dim - 1)


def enumerate_symplectic_lines(
    space: QuadraticSpace, orthogonal: Optional[ProjectiveSystem] = None
) -> ProjectiveSystem:
    """Totally isotropic lines of V/N, in the column order of the orthogonal lines."""
    if not space.field.even:
        raise WrongCharacteristic(f"The symplectic quotient needs q even, got q={space.q}")
    if orthogonal is None:
        orthogonal = enumerate_delta_k(space, 2)
    if orthogonal.k != 2 or orthogonal.symplectic:
        raise ColumnMisalignment("Symplectic lines are aligned with the orthogonal line system")
    field = space.field
    comp = [c for c in range(space.dim) if c not in nucleus(space).pivots]
    form = space.beta_matrix.entries[np.ix_(comp, comp)]
    images = []
    for line in orthogonal.labels:
        image = quotient_line(space, line)
        b = image.basis.entries
        if image.dim != 2 or _pairing(field, form, b[0], b[1]) != 0:
            raise ColumnMisalignment(f"{line.to_text()} does not map to an isotropic line")
        images.append(image)
    if len(set(images)) != len(images):
        raise ColumnMisalignment("Distinct orthogonal lines share a quotient line")
    if len(images) != line_count(space.q, space.n):
        raise ColumnMisalignment(
            f"Found {len(images)} isotropic lines, expected {line_count(space.q, space.n)}"
        )
    return ProjectiveSystem(
        space=space,
        k=2,
        labels=tuple(images),
        symplectic=True,
        sources=orthogonal.labels,
    )


def _pairing(field: FieldSpec, form: np.ndarray, x: np.ndarray, y: np.ndarray) -> int:
    acc = 0
    for i in np.flatnonzero(x):
        for j in np.flatnonzero(y):
            acc = field.add(acc, field.mul(field.mul(int(x[i]), int(form[i, j])), int(y[j])))
    return int(acc)
