# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import unittest

import numpy as np

from polargrass.errors import DimensionMismatch, WrongCharacteristic, ZeroVector
from polargrass.exactla import (
    canonical_point,
    canonical_points_of,
    identity,
    kernel,
    lift_from_quotient,
    matmul,
    matmul_arrays,
    MatrixGF,
    pack_rows,
    project_to_quotient,
    rank,
    row_space_contains,
    rref,
    rref_with_transform,
    span,
    subspace_vectors,
    unpack_rows,
    zeros,
)
from polargrass.ffield import field_for_order


class TestRref(unittest.TestCase):

    def test_identity(self):
        f = field_for_order(3)
        r, rk, pivots = rref(identity(f, 4))
        self.assertEqual(r, identity(f, 4))
        self.assertEqual(rk, 4)
        self.assertEqual(pivots, [0, 1, 2, 3])

    def test_zero(self):
        f = field_for_order(4)
        r, rk, pivots = rref(zeros(f, 2, 3))
        self.assertEqual(r, zeros(f, 2, 3))
        self.assertEqual(rk, 0)
        self.assertEqual(pivots, [])

    def test_char2_dependency(self):
        f = field_for_order(2)
        m = MatrixGF(f, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        self.assertEqual(rank(m), 2)

    def test_random_properties(self):
        rng = np.random.default_rng(7)
        for q in (2, 3, 4, 9):
            f = field_for_order(q)
            for _ in range(20):
                m = MatrixGF(f, rng.integers(0, q, size=(4, 6)))
                with self.subTest(q=q, m=m.entries.tolist()):
                    r, rk, _ = rref(m)
                    self.assertEqual(rref(r)[0], r)
                    self.assertEqual(rank(r), rk)
                    ker = kernel(m)
                    self.assertEqual(ker.dim + rk, m.cols)
                    if ker.dim:
                        self.assertFalse(np.any(matmul_arrays(f, m.entries, ker.basis.entries.T)))

    def test_transform(self):
        rng = np.random.default_rng(11)
        f = field_for_order(4)
        m = MatrixGF(f, rng.integers(0, 4, size=(5, 7)))
        r, rk, pivots, t = rref_with_transform(m)
        self.assertEqual(matmul(t, m), r)
        self.assertEqual(r, rref(m)[0])
        self.assertEqual(rank(t), 5)

    def test_entries_out_of_range(self):
        with self.assertRaises(ValueError):
            MatrixGF(field_for_order(3), [[0, 3]])


class TestSubspaces(unittest.TestCase):

    def test_span_is_canonical(self):
        f = field_for_order(3)
        a = span(f, [[1, 2, 0, 1], [0, 1, 1, 2]])
        b = span(f, [[1, 0, 1, 0], [0, 2, 2, 1]])
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))

    def test_contains(self):
        f = field_for_order(2)
        s = span(f, [[1, 0, 1], [0, 1, 1]])
        self.assertTrue(s.contains([1, 1, 0]))
        self.assertFalse(s.contains([1, 0, 0]))
        with self.assertRaises(DimensionMismatch):
            s.contains([1, 0])

    def test_subspace_vectors(self):
        self.assertEqual(list(subspace_vectors(span(field_for_order(2), [], ambient=3))), [])
        self.assertEqual(len(list(subspace_vectors(span(field_for_order(2), [[0, 1, 1]])))), 1)
        vectors = list(subspace_vectors(span(field_for_order(4), [[1, 0, 2], [0, 1, 3]])))
        self.assertEqual(len(vectors), 15)
        self.assertEqual(len({tuple(v) for v in vectors}), 15)

    def test_canonical_points_of(self):
        s = span(field_for_order(4), [[1, 0, 2], [0, 1, 3]])
        self.assertEqual(canonical_points_of(s).shape, (5, 3))

    def test_row_space_contains(self):
        f = field_for_order(2)
        g = MatrixGF(f, [[1, 0, 1, 1], [0, 1, 1, 0]])
        self.assertTrue(row_space_contains(g, MatrixGF(f, [[1, 1, 0, 1]])))
        self.assertTrue(row_space_contains(g, zeros(f, 1, 4)))
        self.assertFalse(row_space_contains(g, MatrixGF(f, [[1, 0, 0, 0]])))
        with self.assertRaises(DimensionMismatch):
            row_space_contains(g, zeros(f, 1, 3))

    def test_quotient_round_trip(self):
        f = field_for_order(2)
        n = span(f, [[0, 0, 0, 0, 1]])
        coords = project_to_quotient(n, [[1, 0, 0, 0, 1]])
        self.assertEqual(coords.tolist(), [[1, 0, 0, 0]])
        self.assertEqual(lift_from_quotient(n, coords).tolist(), [[1, 0, 0, 0, 0]])


class TestCanonicalPoint(unittest.TestCase):

    def test_scaling(self):
        f = field_for_order(4)
        self.assertEqual(canonical_point(f, [0, 2, 2]).tolist(), [0, 1, 1])

    def test_idempotent_and_well_defined(self):
        f = field_for_order(9)
        v = np.array([0, 4, 7, 1])
        c = canonical_point(f, v)
        self.assertEqual(canonical_point(f, c).tolist(), c.tolist())
        for a in range(1, 9):
            self.assertEqual(canonical_point(f, f.mul(a, v)).tolist(), c.tolist())

    def test_zero_vector(self):
        with self.assertRaises(ZeroVector):
            canonical_point(field_for_order(2), [0, 0])


class TestPackedRows(unittest.TestCase):

    def test_round_trip(self):
        f = field_for_order(2)
        m = MatrixGF(f, [[1, 0, 1, 1], [0, 1, 0, 0]])
        packed = pack_rows(m)
        self.assertEqual(packed, [0b1101, 0b0010])
        self.assertEqual(unpack_rows(f, packed, 4), m)

    def test_needs_gf2(self):
        with self.assertRaises(WrongCharacteristic):
            pack_rows(identity(field_for_order(3), 2))


class TestMatrixText(unittest.TestCase):

    def test_to_text(self):
        m = MatrixGF(field_for_order(4), [[0, 1], [3, 2]])
        self.assertEqual(m.to_text(), "2 2 4\n0 1\n3 2\n")


if __name__ == "__main__":
    unittest.main()
