#!/usr/bin/env python3
# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.


# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
from typing import Optional

import numpy as np

from polargrass.errors import DimensionMismatch
from polargrass.exactla import MatrixGF
from polargrass.ffield import field_for_order, FieldSpec
from polargrass.quadgeo import AlternatingForm, QuadraticSpace


def parse_matrix(text: str, field: Optional[FieldSpec] = None) -> MatrixGF:
    """Parse the matrix text format: a "rows cols q" header, then one line per row.

    Returns:
        MatrixGF: the matrix over ``field`` (or the default field of order q)
    """
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 3:
        raise ValueError(f"Invalid matrix header: {lines[0] if lines else 'empty input'}")
    try:
        rows, cols, q = (int(x) for x in lines[0])
        entries = [[int(x) for x in line] for line in lines[1:]]
    except ValueError:
        raise ValueError("Invalid matrix format: entries have to be integers")
    if field is None:
        field = field_for_order(q)
    elif field.q != q:
        raise ValueError(f"Matrix is over GF({q}), expected {field}")
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise DimensionMismatch(f"Matrix body does not match its {rows}x{cols} header")
    return MatrixGF(field, np.array(entries, dtype=np.int64).reshape(rows, cols))


def parse_form_spec(spec: str, space: QuadraticSpace) -> AlternatingForm:
    """Form given as "beta", "elementary:i,j" (1-based) or a matrix file path."""
    if spec == "beta":
        return AlternatingForm.beta(space)
    if spec.startswith("elementary:"):
        try:
            i, j = (int(x) for x in spec.split(":", 1)[1].split(","))
        except ValueError:
            raise ValueError(f"Invalid elementary form {spec}, expected elementary:i,j")
        return AlternatingForm.elementary(space, i, j)
    with open(spec) as f:
        matrix = parse_matrix(f.read(), space.field)
    return AlternatingForm(space, matrix)
