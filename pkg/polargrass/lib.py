# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
from typing import Dict, Tuple

from polargrass.gcode import (
    build_code,
    build_symplectic_code,
    codeword_of_form,
    GrassCode,
    min_distance_exhaustive,
    subcode_check,
    SubcodeResult,
)
from polargrass.grassmann import enumerate_delta_k
from polargrass.quadgeo import AlternatingForm, QuadraticSpace
from polargrass.scan import DEFAULT_BUDGET, DEFAULT_WORKERS
from polargrass.validate import validate_code_params, validate_even
from polargrass.verify import spectrum as _spectrum

# Codes are built once per (q, n, k)
_codes: Dict[Tuple[int, int, int], GrassCode] = {}
_symplectic_codes: Dict[Tuple[int, int], GrassCode] = {}


def get_code(q: int, n: int, k: int = 2) -> GrassCode:
    """Get the polar Grassmann code, building it on first use."""
    key = (q, n, k)
    if key not in _codes:
        space = validate_code_params(q=q, n=n, k=k)
        _codes[key] = build_code(enumerate_delta_k(space, k))
    return _codes[key]


def get_symplectic_code(q: int, n: int) -> GrassCode:
    key = (q, n)
    if key not in _symplectic_codes:
        validate_even(q)
        orth = get_code(q, n)
        _symplectic_codes[key] = build_symplectic_code(orth.space, orth.system)
    return _symplectic_codes[key]


def get_space(q: int, n: int) -> QuadraticSpace:
    return get_code(q, n).space


def parameters(q: int, n: int, k: int = 2) -> Tuple[int, int]:
    """Get (N, K), the length and dimension of the code.

    Args:
        q (int): field order.
        n (int): V has dimension 2n + 1.
        k (int, optional): grade of the Grassmannian, 2 for lines.
    """
    code = get_code(q, n, k)
    return code.N, code.K


def weight(q: int, n: int, form: AlternatingForm) -> int:
    """Get the weight of the codeword of an alternating form."""
    return codeword_of_form(get_code(q, n), form).weight


def min_distance(
    q: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = DEFAULT_WORKERS,
) -> Tuple[int, int]:
    """Get (d_min, number of minimum-weight codewords) by exhaustive scan.

    Args:
        budget (int, optional): maximal number of codewords to enumerate.
        workers (int, optional): number of scanning processes.
    """
    result = min_distance_exhaustive(get_code(q, n), budget=budget, workers=workers)
    return result.d_min, result.min_weight_count


def spectrum(
    q: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = DEFAULT_WORKERS,
) -> Dict[int, int]:
    """Get the weight distribution of the line code."""
    return _spectrum(get_code(q, n), budget=budget, workers=workers)


def symplectic(q: int, n: int) -> SubcodeResult:
    """Check that the symplectic line code is a subcode and get its codimension."""
    return subcode_check(get_code(q, n), get_symplectic_code(q, n))
