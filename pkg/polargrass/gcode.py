# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import json
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from polargrass.errors import (
    AnnihilatorMismatch,
    ClassNotFound,
    ColumnMisalignment,
    DimensionMismatch,
    FormInAnnihilator,
    GradeMismatch,
    InconsistentRecursion,
    NonSingularPoint,
    WrongCharacteristic,
)
from polargrass.exactla import (
    all_vectors,
    canonical_point,
    dot_rows,
    is_canonical_rows,
    kernel,
    matmul_arrays,
    MatrixGF,
    rank,
    row_space_contains,
    rref,
    rref_with_transform,
)
from polargrass.formulas import (
    radical_census_weight,
    residual_weight_values,
    section_point_count,
    SectionClass,
)
from polargrass.grassmann import (
    enumerate_delta_k,
    enumerate_symplectic_lines,
    index_tuples,
    ProjectiveSystem,
)
from polargrass.quadgeo import (
    AlternatingForm,
    classify_section,
    eta_eval,
    form_radical,
    nucleus,
    QuadraticSpace,
    radical_profile,
    RadicalProfile,
    residual_quadric,
    section_census,
    singular_points_of,
)
from polargrass.scan import DEFAULT_BUDGET, DEFAULT_WORKERS, scan_code


@dataclass(frozen=True, eq=False)
class GrassCode:
    """Code of a projective system of totally singular subspaces.

    Row r of ``gen_full`` holds Plücker coordinate ``row_tuples[r]`` of every
    column, so for k = 2 a row combination with coefficients c is the codeword
    of the alternating form with entries c on those index pairs.
    ``row_transform`` expresses every row of ``gen_reduced`` in the rows of
    ``gen_full``.
    """

    system: ProjectiveSystem
    gen_full: MatrixGF
    gen_reduced: MatrixGF
    row_transform: MatrixGF
    row_tuples: Tuple[Tuple[int, ...], ...]
    pivot_rows: Tuple[int, ...]

    @property
    def space(self) -> QuadraticSpace:
        return self.system.space

    @property
    def field(self):
        return self.system.field

    @property
    def k(self) -> int:
        return self.system.k

    @property
    def N(self) -> int:
        return self.gen_full.cols

    @property
    def K(self) -> int:
        return self.gen_reduced.rows

    @property
    def symplectic(self) -> bool:
        return self.system.symplectic

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.field.q,
            "n": self.space.n,
            "k": self.k,
            "N": self.N,
            "K": self.K,
            "symplectic": self.symplectic,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True, eq=False)
class Codeword:
    values: np.ndarray

    @cached_property
    def weight(self) -> int:
        return int(np.count_nonzero(self.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Codeword):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash(self.values.tobytes())


class WeightReport(NamedTuple):
    weight: int
    A_prime: int
    B: int
    C: int
    S_count: int
    A: int
    low_count: int
    convention: str
    point_convention_holds: bool
    vector_convention_holds: bool
    profile: RadicalProfile
    method_agreement: Dict[str, Optional[int]]

    @property
    def agrees(self) -> bool:
        return len({w for w in self.method_agreement.values() if w is not None}) == 1

    def to_dict(self) -> Dict[str, Any]:
        data = {k: v for k, v in self._asdict().items() if k != "profile"}
        data["profile"] = self.profile.to_dict()
        data["agrees"] = self.agrees
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class MinDistanceResult(NamedTuple):
    d_min: int
    min_weight_count: int
    witnesses: List[AlternatingForm]
    histogram: Dict[int, int]
    evaluated: int


class StructuralScanReport(NamedTuple):
    total: int
    passed: int
    violations: List[str]
    profiles: Dict[Tuple[Any, ...], int]

    @property
    def all_pass(self) -> bool:
        return self.total > 0 and self.passed == self.total

    @property
    def single_profile(self) -> bool:
        return len(self.profiles) == 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "total": self.total,
            "passed": self.passed,
            "all_pass": self.all_pass,
            "single_profile": self.single_profile,
            "violations": self.violations,
            "profiles": [
                {"signature": list(sig), "count": count} for sig, count in sorted(self.profiles.items())
            ],
        }


def _gen_full_from(system: ProjectiveSystem) -> Tuple[MatrixGF, Tuple[Tuple[int, ...], ...]]:
    return MatrixGF(system.field, system.coords), tuple(
        index_tuples(system.labels[0].ambient, system.k)
    )


def _assemble(
    system: ProjectiveSystem, gen_full: MatrixGF, row_tuples: Tuple[Tuple[int, ...], ...]
) -> GrassCode:
    reduced, K, _, transform = rref_with_transform(gen_full)
    gen_reduced = MatrixGF(system.field, reduced.entries[:K])
    row_transform = MatrixGF(system.field, transform.entries[:K])
    # rows of gen_full forming a basis of its row space
    pivot_rows = tuple(rref(gen_full.transpose())[2])
    return GrassCode(
        system=system,
        gen_full=gen_full,
        gen_reduced=gen_reduced,
        row_transform=row_transform,
        row_tuples=row_tuples,
        pivot_rows=pivot_rows,
    )


def build_code(system: ProjectiveSystem) -> GrassCode:
    """Generator matrices of the code defined by a projective system."""
    if system.size == 0:
        raise ValueError("Cannot build a code from an empty projective system")
    gen_full, row_tuples = _gen_full_from(system)
    code = _assemble(system, gen_full, row_tuples)
    space = system.space
    if system.k == 2 and space.field.even and not system.symplectic:
        beta = AlternatingForm.beta(space).coefficients()
        if np.any(matmul_arrays(space.field, beta[None, :], gen_full.entries)):
            raise AnnihilatorMismatch("beta does not annihilate the line system")
        if code.K != gen_full.rows - 1:
            raise AnnihilatorMismatch(
                f"Row dependencies of dimension {gen_full.rows - code.K}, expected only beta"
            )
    logging.debug(f"Built code over GF({space.q}) n={space.n} k={system.k}: N={code.N} K={code.K}")
    return code


def _require_lines(code: GrassCode) -> None:
    if code.k != 2:
        raise GradeMismatch(f"Forms evaluate on lines, got grade {code.k}")


def codeword_of_form(code: GrassCode, f: AlternatingForm) -> Codeword:
    """Entry i is b1^T S b2 for the RREF basis (b1, b2) of line i."""
    _require_lines(code)
    if f.space != code.space:
        raise DimensionMismatch("Form and code live on different spaces")
    bases = code.system.bases
    field = code.field
    left = matmul_arrays(field, bases[:, 0, :], f.S.entries)
    values = dot_rows(field, left, bases[:, 1, :])
    values.setflags(write=False)
    return Codeword(values)


def encode_message(code: GrassCode, message: Sequence[int]) -> Codeword:
    message = np.asarray(message, dtype=np.int64)
    if message.shape != (code.K,):
        raise DimensionMismatch(f"Messages have length {code.K}, got {message.shape}")
    values = matmul_arrays(code.field, message[None, :], code.gen_reduced.entries)[0]
    values.setflags(write=False)
    return Codeword(values)


def normalize_form(f: AlternatingForm) -> AlternatingForm:
    """For q even, the member of f + <beta> with a zero (1,2) entry."""
    if not f.field.even:
        return f
    c = int(f.S.entries[0, 1])
    return f - AlternatingForm.beta(f.space).scale(c) if c else f


def form_of_message(code: GrassCode, message: Sequence[int]) -> AlternatingForm:
    """A form whose codeword is the encoding of message."""
    _require_lines(code)
    message = np.asarray(message, dtype=np.int64)
    if message.shape != (code.K,):
        raise DimensionMismatch(f"Messages have length {code.K}, got {message.shape}")
    field = code.field
    coeffs = matmul_arrays(field, message[None, :], code.row_transform.entries)[0]
    space = code.space
    s = np.zeros((space.dim, space.dim), dtype=np.int64)
    for (i, j), c in zip(code.row_tuples, coeffs):
        s[i, j] = c
        s[j, i] = field.neg(int(c))
    return normalize_form(AlternatingForm.from_array(space, s))


def weight_direct(code: GrassCode, f: AlternatingForm) -> int:
    return codeword_of_form(code, f).weight


def _singular_point(space: QuadraticSpace, u: Sequence[int]) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    if u.shape != (space.dim,):
        raise DimensionMismatch(f"Expected a vector of length {space.dim}, got shape {u.shape}")
    if not u.any() or eta_eval(space, u) != 0:
        raise NonSingularPoint(f"{u.tolist()} is not a singular point")
    return canonical_point(space.field, u)


def residual_weight(code: GrassCode, f: AlternatingForm, u: Sequence[int]) -> int:
    """Points x of the residual quadric at u with phi(u, x) != 0."""
    _require_lines(code)
    if f.space != code.space:
        raise DimensionMismatch("Form and code live on different spaces")
    space = code.space
    u = _singular_point(space, u)
    lifts = residual_quadric(space, u)
    functional = matmul_arrays(space.field, u[None, :], f.S.entries)
    values = matmul_arrays(space.field, lifts, functional.T)
    return int(np.count_nonzero(values))


def residual_weights(code: GrassCode, f: AlternatingForm) -> np.ndarray:
    """residual_weight for every singular point, in quadric_points order."""
    _require_lines(code)
    if f.space != code.space:
        raise DimensionMismatch("Form and code live on different spaces")
    space = code.space
    lifts, owners = space.residual_geometry
    functionals = matmul_arrays(space.field, space.points, f.S.entries)
    nonzero = dot_rows(space.field, functionals[owners], lifts) != 0
    return np.bincount(owners[nonzero], minlength=space.points.shape[0])


def weight_recursive(code: GrassCode, f: AlternatingForm) -> int:
    """Weight from the residual weights; every line is seen from its q + 1 points."""
    q = code.field.q
    total = int(residual_weights(code, f).sum())
    # vector counting: each point stands for q - 1 vectors
    numerator = (q - 1) * total
    if numerator % (q * q - 1):
        raise InconsistentRecursion(
            f"Residual weight sum {numerator} is not divisible by q^2 - 1 = {q * q - 1}"
        )
    return numerator // (q * q - 1)


def weight_from_radical(code: GrassCode, f: AlternatingForm) -> Optional[int]:
    """Census weight N - |lines meeting Rad| when dim Rad = 2n - 1, else None."""
    _require_lines(code)
    space = code.space
    radical = form_radical(f)
    if radical.dim != 2 * space.n - 1:
        return None
    census = section_census(space, radical)
    return radical_census_weight(space.q, space.n, census.point_count, census.sigma)


def in_annihilator(f: AlternatingForm) -> bool:
    if f.field.even:
        return normalize_form(f).is_zero()
    return f.is_zero()


def abc_census(code: GrassCode, f: AlternatingForm) -> WeightReport:
    """Census of singular points by residual weight, checked against the weight."""
    _require_lines(code)
    space = code.space
    q, n = space.q, space.n
    if not space.field.even:
        raise WrongCharacteristic(f"The residual census needs q even, got q={q}")
    if n < 2:
        raise DimensionMismatch(f"The residual census needs n >= 2, got n={n}")
    if in_annihilator(f):
        raise FormInAnnihilator("The form is a multiple of beta and has weight 0")
    base = q ** (2 * n - 3)
    step = q ** (n - 2)
    residuals = residual_weights(code, f)
    allowed = residual_weight_values(q, n)
    unexpected = sorted(set(int(r) for r in residuals) - allowed)
    if unexpected:
        raise InconsistentRecursion(f"Residual weights {unexpected} outside {sorted(allowed)}")
    counts = Counter(int(r) for r in residuals)
    S_pts, B_pts, C_pts, low_pts = (
        counts[0],
        counts[base],
        counts[base + step],
        counts[base - step],
    )
    weight = weight_direct(code, f)

    def reconstruct(scale: int) -> Fraction:
        A = q ** (2 * n - 2) - 1 - scale * S_pts
        inner = (q ** (n - 1) - 1) * A + scale * B_pts + 2 * scale * C_pts
        return q ** (4 * n - 5) - q ** (3 * n - 4) + Fraction(step * inner, q * q - 1)

    point_value = reconstruct(1)
    vector_value = reconstruct(q - 1)
    point_holds = point_value == weight
    vector_holds = vector_value == weight
    if not (point_holds or vector_holds):
        raise InconsistentRecursion(
            f"Residual census gives {point_value} (points) and {vector_value} (vectors), weight is {weight}"
        )
    scale = q - 1 if vector_holds else 1
    recursive = weight_recursive(code, f)
    return WeightReport(
        weight=weight,
        A_prime=scale * (space.points.shape[0] - S_pts),
        B=scale * B_pts,
        C=scale * C_pts,
        S_count=scale * S_pts,
        A=q ** (2 * n - 2) - 1 - scale * S_pts,
        low_count=scale * low_pts,
        convention="vector" if vector_holds else "point",
        point_convention_holds=point_holds,
        vector_convention_holds=vector_holds,
        profile=radical_profile(f),
        method_agreement={
            "direct": weight,
            "recursive": recursive,
            "census": int(vector_value if vector_holds else point_value),
            "radical": weight_from_radical(code, f),
        },
    )


def _candidate_functionals(space: QuadraticSpace) -> np.ndarray:
    """Canonical functionals supported on the last min(5, 2n+1) coordinates."""
    width = min(5, space.dim)
    head = all_vectors(space.field, width)[1:]
    head = head[is_canonical_rows(head)]
    out = np.zeros((head.shape[0], space.dim), dtype=np.int64)
    out[:, space.dim - width :] = head
    return out


def min_weight_form(
    space: QuadraticSpace, flavor: SectionClass = SectionClass.HYPERBOLIC_CONE
) -> AlternatingForm:
    """First rank-2 form a^b (lexicographic scan) whose radical section has the given class.

    The functionals a, b vanish on e_1..e_{2n-4}, so the radical is
    <e_1, ..., e_{2n-4}> plus a 3-space of the last five coordinates.
    """
    if flavor == SectionClass.OTHER:
        raise ClassNotFound("OTHER is not a constructible section class")
    field = space.field
    target = section_point_count(space.q, space.n, flavor)
    candidates = _candidate_functionals(space)
    for i in range(candidates.shape[0]):
        for j in range(i + 1, candidates.shape[0]):
            pair = MatrixGF(field, candidates[[i, j]])
            if rank(pair) < 2:
                continue
            radical = kernel(pair)
            if singular_points_of(space, radical).shape[0] != target:
                continue
            if classify_section(space, radical).section_class == flavor:
                f = AlternatingForm.wedge(space, candidates[i], candidates[j])
                logging.debug(f"Found a {flavor.value} radical at candidates {i}, {j}")
                return f
    raise ClassNotFound(f"No rank-2 form with a {flavor.value} radical over GF({space.q}) n={space.n}")


def min_distance_exhaustive(
    code: GrassCode, budget: int = DEFAULT_BUDGET, workers: int = DEFAULT_WORKERS
) -> MinDistanceResult:
    """Minimum distance by a full Gray-order scan, with a form per minimum-weight word."""
    result = scan_code(code.gen_reduced, budget=budget, workers=workers)
    witnesses = (
        [form_of_message(code, m) for m in result.witnesses] if code.k == 2 else []
    )
    logging.debug(f"Exhaustive scan: d_min={result.d_min}, {result.min_weight_count} words of minimum weight")
    return MinDistanceResult(
        d_min=result.d_min,
        min_weight_count=result.min_weight_count,
        witnesses=witnesses,
        histogram=result.histogram,
        evaluated=result.evaluated,
    )


def _coset(f: AlternatingForm) -> List[AlternatingForm]:
    if not f.field.even:
        return [f]
    beta = AlternatingForm.beta(f.space)
    return [f + beta.scale(int(a)) for a in f.field.elements()]


def min_weight_structural_scan(code: GrassCode, result: MinDistanceResult) -> StructuralScanReport:
    """Checks every minimum-weight word for a hyperbolic-cone radical off the nucleus."""
    _require_lines(code)
    space = code.space
    passed = 0
    violations: List[str] = []
    profiles: Counter = Counter()
    for f in result.witnesses:
        ok = False
        for g in _coset(f):
            profile = radical_profile(g)
            if (
                profile.rad_dim == 2 * space.n - 1
                and not profile.contains_nucleus
                and profile.section_class == SectionClass.HYPERBOLIC_CONE
            ):
                ok = True
                profiles[profile.signature()] += 1
                break
        if ok:
            passed += 1
        else:
            profiles[radical_profile(f).signature()] += 1
            violations.append(f.to_text())
    if violations:
        logging.warning(f"{len(violations)} minimum-weight words lack a hyperbolic-cone representative")
    return StructuralScanReport(
        total=len(result.witnesses),
        passed=passed,
        violations=violations,
        profiles=dict(profiles),
    )


def build_symplectic_code(
    space: QuadraticSpace, orthogonal: Optional[ProjectiveSystem] = None
) -> GrassCode:
    """Code of the symplectic lines of V/N, columns aligned with the orthogonal lines.

    Each generator row is the codeword of a pulled back elementary form of
    V/N, evaluated on the orthogonal lines.
    """
    if not space.field.even:
        raise WrongCharacteristic(f"The symplectic code needs q even, got q={space.q}")
    system = enumerate_symplectic_lines(space, orthogonal)
    N = nucleus(space)
    comp = [c for c in range(space.dim) if c not in N.pivots]
    pairs = index_tuples(len(comp), 2)
    ortho = ProjectiveSystem(space=space, k=2, labels=system.sources)
    rows = []
    for i, j in pairs:
        s_bar = np.zeros((len(comp), len(comp)), dtype=np.int64)
        s_bar[i, j] = 1
        s_bar[j, i] = space.field.neg(1)
        phi = AlternatingForm.pullback(space, s_bar)
        rows.append(_evaluate_on(ortho, phi))
    gen_full = MatrixGF(space.field, np.array(rows, dtype=np.int64))
    if gen_full != MatrixGF(space.field, system.coords):
        raise ColumnMisalignment("Pulled back forms disagree with the quotient Plücker coordinates")
    row_tuples = tuple((comp[i], comp[j]) for i, j in pairs)
    code = _assemble(system, gen_full, row_tuples)
    logging.debug(f"Built symplectic code over GF({space.q}) n={space.n}: N={code.N} K={code.K}")
    return code


def _evaluate_on(system: ProjectiveSystem, f: AlternatingForm) -> np.ndarray:
    bases = system.bases
    left = matmul_arrays(f.field, bases[:, 0, :], f.S.entries)
    return dot_rows(f.field, left, bases[:, 1, :])


def quotient_codeword(code: GrassCode, s_bar) -> Codeword:
    """Evaluate a form of V/N on the symplectic code's own quotient lines."""
    if not code.symplectic:
        raise ColumnMisalignment("Quotient forms evaluate on the symplectic system")
    field = code.field
    s_bar = np.asarray(s_bar, dtype=np.int64)
    quotient = np.array([label.basis.entries for label in code.system.labels], dtype=np.int64)
    left = matmul_arrays(field, quotient[:, 0, :], s_bar)
    values = dot_rows(field, left, quotient[:, 1, :])
    values.setflags(write=False)
    return Codeword(values)


class SubcodeResult(NamedTuple):
    is_subcode: bool
    codimension: int


def subcode_check(orth: GrassCode, symp: GrassCode) -> SubcodeResult:
    if not np.array_equal(orth.system.bases, symp.system.bases):
        raise ColumnMisalignment("The two codes do not share a column order")
    return SubcodeResult(
        is_subcode=row_space_contains(orth.gen_reduced, symp.gen_reduced),
        codimension=orth.K - symp.K,
    )


def build_line_code(space: QuadraticSpace, k: int = 2) -> GrassCode:
    return build_code(enumerate_delta_k(space, k))
