# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
__version__ = "0.0.0"

from polargrass.lib import (
    get_code,
    get_space,
    get_symplectic_code,
    min_distance,
    parameters,
    spectrum,
    symplectic,
    weight,
)

__all__ = [
    "get_code",
    "get_space",
    "get_symplectic_code",
    "parameters",
    "weight",
    "min_distance",
    "spectrum",
    "symplectic",
]
