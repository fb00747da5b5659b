# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
"""Closed-form counts for polar line Grassmann codes.

Used for section classification thresholds and as oracles for the
enumeration-based computations. Everything is evaluated in exact rational
arithmetic: several expressions carry q^{n-3} or q^{2n-6}, which are
fractional at n = 2 but always multiplied by a vanishing factor there.
"""
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Dict, Set, Tuple


class SectionClass(str, Enum):
    PARABOLIC = "PARABOLIC"
    HYPERBOLIC_CONE = "HYPERBOLIC_CONE"
    ELLIPTIC_CONE = "ELLIPTIC_CONE"
    LINE_VERTEX_PARABOLIC = "LINE_VERTEX_PARABOLIC"
    OTHER = "OTHER"


STRUCTURED_CLASSES = (
    SectionClass.PARABOLIC,
    SectionClass.HYPERBOLIC_CONE,
    SectionClass.ELLIPTIC_CONE,
    SectionClass.LINE_VERTEX_PARABOLIC,
)


def _pow(q: int, k: int) -> Fraction:
    return Fraction(q) ** k


def _exact(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {x}")
    return int(x)


def quadric_point_count(q: int, n: int) -> int:
    return (q ** (2 * n) - 1) // (q - 1)


def line_count(q: int, n: int) -> int:
    """Number N of totally singular lines of Q(2n, q)."""
    return (q ** (2 * n) - 1) * (q ** (2 * n - 2) - 1) // ((q - 1) * (q * q - 1))


def generator_count(q: int, n: int) -> int:
    """Number of maximal (dimension n) totally singular subspaces of Q(2n, q)."""
    out = 1
    for i in range(1, n + 1):
        out *= q**i + 1
    return out


def code_dimension(q: int, n: int, k: int = 2) -> int:
    """Dimension of the orthogonal Grassmann code of grade k."""
    if q % 2 == 0:
        return comb(2 * n + 1, k) - (comb(2 * n + 1, k - 2) if k >= 2 else 0)
    return comb(2 * n + 1, k)


def symplectic_dimension(n: int) -> int:
    return comb(2 * n, 2) - 1


def min_distance(q: int, n: int) -> int:
    return q ** (4 * n - 5) - q ** (3 * n - 4)


def symplectic_min_distance(q: int, n: int) -> int:
    return q ** (4 * n - 5) - q ** (2 * n - 3)


def section_point_count(q: int, n: int, cls: SectionClass) -> int:
    if cls in (SectionClass.PARABOLIC, SectionClass.LINE_VERTEX_PARABOLIC):
        x = (_pow(q, 2 * n - 2) - 1) / (q - 1)
    elif cls == SectionClass.HYPERBOLIC_CONE:
        x = q * (_pow(q, n - 1) - 1) * (_pow(q, n - 2) + 1) / (q - 1) + 1
    elif cls == SectionClass.ELLIPTIC_CONE:
        x = q * (_pow(q, n - 1) + 1) * (_pow(q, n - 2) - 1) / (q - 1) + 1
    else:
        raise ValueError(f"No closed point count for {cls}")
    return _exact(x, f"point count of {cls.value}")


def section_sigma(q: int, n: int, cls: SectionClass) -> int:
    """Totally singular lines inside a radical section of the given class."""
    d = (q * q - 1) * (q - 1)
    if cls == SectionClass.PARABOLIC:
        x = (_pow(q, 2 * n - 4) - 1) * (_pow(q, 2 * n - 2) - 1) / d
    elif cls == SectionClass.HYPERBOLIC_CONE:
        x = (_pow(q, n - 1) - 1) * (_pow(q, n - 2) + 1) / (q - 1) + q * q * (
            _pow(q, 2 * n - 4) - 1
        ) * (_pow(q, n - 1) - 1) * (_pow(q, n - 3) + 1) / d
    elif cls == SectionClass.ELLIPTIC_CONE:
        x = (_pow(q, n - 1) + 1) * (_pow(q, n - 2) - 1) / (q - 1) + q * q * (
            _pow(q, 2 * n - 4) - 1
        ) * (_pow(q, n - 1) + 1) * (_pow(q, n - 3) - 1) / d
    elif cls == SectionClass.LINE_VERTEX_PARABOLIC:
        x = (
            1
            + q * (_pow(q, 2 * n - 4) - 1) / (q - 1)
            + q
            * q
            * (
                q * q * (_pow(q, 2 * n - 6) - 1) * (_pow(q, 2 * n - 4) - 1) / d
                + (_pow(q, 2 * n - 4) - 1) / (q - 1)
            )
        )
    else:
        raise ValueError(f"No closed sigma count for {cls}")
    return _exact(x, f"sigma of {cls.value}")


def section_weight(q: int, n: int, cls: SectionClass) -> int:
    """Weight of a rank-2 form whose radical section has the given class."""
    base = q ** (4 * n - 5)
    return {
        SectionClass.PARABOLIC: base - q ** (2 * n - 3),
        SectionClass.HYPERBOLIC_CONE: base - q ** (3 * n - 4),
        SectionClass.ELLIPTIC_CONE: base + q ** (3 * n - 4),
        SectionClass.LINE_VERTEX_PARABOLIC: base,
    }[cls]


def radical_census_weight(q: int, n: int, point_count: int, sigma: int) -> int:
    """N minus the singular lines meeting a (2n-1)-dimensional radical."""
    through_point = (q ** (2 * n - 2) - 1) // (q - 1)
    return line_count(q, n) - (point_count * through_point - q * sigma)


def residual_weight_values(q: int, n: int) -> Set[int]:
    base = q ** (2 * n - 3)
    step = _exact(_pow(q, n - 2), "q^(n-2)")
    return {0, base - step, base, base + step}


def class_table(q: int, n: int) -> Dict[SectionClass, Tuple[int, int, int]]:
    """(point_count, sigma, weight) for each structured class."""
    return {
        cls: (
            section_point_count(q, n, cls),
            section_sigma(q, n, cls),
            section_weight(q, n, cls),
        )
        for cls in STRUCTURED_CLASSES
    }
