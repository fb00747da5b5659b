#!/usr/bin/env python3
# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.


# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import logging
import sys

from polargrass.ffield import field_for_order, FieldSpec
from polargrass.parser import parse_form_spec
from polargrass.quadgeo import AlternatingForm, QuadraticSpace


def validate_field_order(q: int, exit_on_error: bool = False) -> FieldSpec:
    try:
        return field_for_order(q)
    except ValueError as e:
        if exit_on_error:
            logging.error(f"--q: {e}")
            sys.exit(2)
        raise


def validate_code_params(
    q: int,
    n: int,
    k: int = 2,
    exit_on_error: bool = False,
) -> QuadraticSpace:
    """Validate the parameters of a polar Grassmann code.
    This validation is used for CLI and API calls.

    Returns: the quadratic space V = GF(q)^(2n+1)

    Raises or Exits depending on exit_on_error(bool) flag
    """
    field = validate_field_order(q, exit_on_error=exit_on_error)
    if n < 2:
        if exit_on_error:
            logging.error(f"--n: n has to be >= 2, got {n}.")
            sys.exit(2)
        raise ValueError(f"n has to be >= 2, got {n}.")
    if k < 1 or k > n:
        if exit_on_error:
            logging.error(f"--k: the grade has to be in 1..{n}, got {k}.")
            sys.exit(2)
        raise ValueError(f"The grade has to be in 1..{n}, got {k}.")
    return QuadraticSpace(n, field)


def validate_even(q: int, exit_on_error: bool = False) -> None:
    if q % 2:
        if exit_on_error:
            logging.error(f"--q: the symplectic quotient needs q even, got q={q}.")
            sys.exit(2)
        raise ValueError(f"The symplectic quotient needs q even, got q={q}.")


def validate_form(
    spec: str, space: QuadraticSpace, exit_on_error: bool = False
) -> AlternatingForm:
    try:
        return parse_form_spec(spec, space)
    except (ValueError, OSError) as e:
        if exit_on_error:
            logging.error(f"--form: {e}")
            sys.exit(2)
        raise
