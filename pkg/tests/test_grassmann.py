# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import json
import unittest

import numpy as np

from polargrass.errors import BadGrade, WrongCharacteristic
from polargrass.exactla import canonical_point, span, subspace_vector_array
from polargrass.ffield import field_for_order
from polargrass.formulas import generator_count, line_count, quadric_point_count
from polargrass.grassmann import (
    enumerate_delta_k,
    enumerate_symplectic_lines,
    index_tuples,
    minors,
    plucker_embed,
    quotient_line,
)
from polargrass.quadgeo import QuadraticSpace


def make_space(q: int, n: int) -> QuadraticSpace:
    return QuadraticSpace(n, field_for_order(q))


class TestPlucker(unittest.TestCase):

    def test_index_tuples(self):
        self.assertEqual(index_tuples(4, 2), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])

    def test_coordinate_line(self):
        f = field_for_order(2)
        coords = plucker_embed(span(f, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])).coords
        self.assertEqual(coords.tolist(), [1] + [0] * 9)

    def test_small_line(self):
        f = field_for_order(2)
        # <e1 + e3, e2>: minors on {1,2} and {2,3}
        self.assertEqual(plucker_embed(span(f, [[1, 0, 1], [0, 1, 0]])).coords.tolist(), [1, 0, 1])

    def test_basis_independent(self):
        f = field_for_order(3)
        basis = np.array([[1, 2, 0, 1], [0, 1, 1, 2]])
        other = np.array([[1, 0, 1, 0], [0, 2, 2, 1]])
        expected = plucker_embed(span(f, basis)).coords
        self.assertEqual(canonical_point(f, minors(f, other)).tolist(), expected.tolist())

    def test_grade_three(self):
        f = field_for_order(2)
        p = plucker_embed(span(f, np.eye(4, dtype=np.int64)[:3]))
        self.assertEqual(p.k, 3)
        self.assertEqual(p.coords.tolist(), [1, 0, 0, 0])

    def test_empty_subspace(self):
        with self.assertRaises(BadGrade):
            plucker_embed(span(field_for_order(2), [], ambient=3))


class TestEnumerateDeltaK(unittest.TestCase):

    def test_line_counts(self):
        for q, n in ((2, 2), (2, 3), (4, 2), (3, 2)):
            with self.subTest(q=q, n=n):
                self.assertEqual(enumerate_delta_k(make_space(q, n), 2).size, line_count(q, n))

    def test_points_and_generators(self):
        space = make_space(2, 3)
        self.assertEqual(enumerate_delta_k(space, 1).size, quadric_point_count(2, 3))
        self.assertEqual(enumerate_delta_k(space, 3).size, generator_count(2, 3))

    def test_bad_grade(self):
        space = make_space(2, 2)
        with self.assertRaises(BadGrade):
            enumerate_delta_k(space, 3)
        with self.assertRaises(BadGrade):
            enumerate_delta_k(space, 0)

    def test_totally_singular(self):
        space = make_space(2, 3)
        for label in enumerate_delta_k(space, 3).labels:
            self.assertFalse(np.any(space.eta_many(subspace_vector_array(label))))

    def test_sorted_and_distinct(self):
        system = enumerate_delta_k(make_space(3, 2), 2)
        self.assertEqual(list(system.labels), sorted(system.labels))
        self.assertEqual(len(set(system.labels)), system.size)
        columns = {tuple(int(c) for c in system.coords[:, i]) for i in range(system.size)}
        self.assertEqual(len(columns), system.size)

    def test_system_shapes(self):
        system = enumerate_delta_k(make_space(2, 2), 2)
        self.assertEqual(system.ambient_dim, 10)
        self.assertEqual(system.coords.shape, (10, 15))
        self.assertEqual(system.bases.shape, (15, 2, 5))
        label, plucker = system.columns[0]
        self.assertEqual(label, system.labels[0])
        self.assertEqual(plucker.coords.tolist(), system.coords[:, 0].tolist())

    def test_dump(self):
        system = enumerate_delta_k(make_space(2, 2), 2)
        lines = system.dump_lines()
        self.assertEqual(len(lines), 15)
        self.assertTrue(all(" | " in line for line in lines))
        data = json.loads(system.to_json())
        self.assertEqual(data["size"], 15)
        self.assertEqual(len(data["columns"][0]["plucker"]), 10)


class TestSymplecticLines(unittest.TestCase):

    def test_aligned_with_orthogonal(self):
        space = make_space(2, 2)
        orth = enumerate_delta_k(space, 2)
        symp = enumerate_symplectic_lines(space, orth)
        self.assertTrue(symp.symplectic)
        self.assertEqual(symp.size, 15)
        self.assertEqual(symp.ambient_dim, 6)
        self.assertEqual(symp.sources, orth.labels)
        for line, image in zip(orth.labels, symp.labels):
            self.assertEqual(quotient_line(space, line), image)
        self.assertTrue(np.array_equal(symp.bases, orth.bases))

    def test_images_distinct(self):
        symp = enumerate_symplectic_lines(make_space(2, 3))
        self.assertEqual(len(set(symp.labels)), 315)

    def test_odd_q(self):
        with self.assertRaises(WrongCharacteristic):
            enumerate_symplectic_lines(make_space(3, 2))


if __name__ == "__main__":
    unittest.main()
