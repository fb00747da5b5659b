# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


# Field construction and arithmetic
class NonPrimeCharacteristic(ValueError):
    pass


class ReducibleModulus(ValueError):
    pass


class UnsupportedSize(ValueError):
    pass


class WrongCharacteristic(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


# Linear algebra and geometry inputs
class DimensionMismatch(ValueError):
    pass


class ZeroVector(ValueError):
    pass


class NonSingularPoint(ValueError):
    pass


class NotAlternating(ValueError):
    pass


class VertexNotSubspace(ValueError):
    pass


class BadGrade(ValueError):
    pass


class GradeMismatch(ValueError):
    pass


class FormInAnnihilator(ValueError):
    pass


class ColumnMisalignment(ValueError):
    pass


# Internal consistency and computation limits
class InconsistentRecursion(RuntimeError):
    pass


class AnnihilatorMismatch(RuntimeError):
    pass


class ClassNotFound(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class GrayWalkMismatch(RuntimeError):
    pass


class EmptyReport(RuntimeError):
    pass
