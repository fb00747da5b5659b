# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import unittest

from polargrass.formulas import (
    class_table,
    code_dimension,
    generator_count,
    line_count,
    min_distance,
    quadric_point_count,
    radical_census_weight,
    residual_weight_values,
    section_point_count,
    SectionClass,
    symplectic_dimension,
    symplectic_min_distance,
)


class TestCounts(unittest.TestCase):

    def test_line_count(self):
        for (q, n), expected in {(2, 2): 15, (2, 3): 315, (4, 2): 85, (3, 2): 40, (8, 2): 585}.items():
            with self.subTest(q=q, n=n):
                self.assertEqual(line_count(q, n), expected)

    def test_quadric_point_count(self):
        self.assertEqual(quadric_point_count(2, 2), 15)
        self.assertEqual(quadric_point_count(2, 3), 63)
        self.assertEqual(quadric_point_count(3, 2), 40)

    def test_generator_count(self):
        self.assertEqual(generator_count(2, 2), 15)
        self.assertEqual(generator_count(2, 3), 135)

    def test_code_dimension(self):
        self.assertEqual(code_dimension(2, 2), 9)
        self.assertEqual(code_dimension(4, 3), 20)
        self.assertEqual(code_dimension(3, 2), 10)
        self.assertEqual(code_dimension(2, 3, 3), 28)

    def test_symplectic_dimension(self):
        self.assertEqual(symplectic_dimension(2), 5)
        self.assertEqual(symplectic_dimension(3), 14)


class TestDistances(unittest.TestCase):

    def test_min_distance(self):
        for (q, n), expected in {(2, 2): 4, (2, 3): 96, (4, 2): 48, (3, 2): 18}.items():
            with self.subTest(q=q, n=n):
                self.assertEqual(min_distance(q, n), expected)

    def test_symplectic_below_orthogonal_length(self):
        self.assertEqual(symplectic_min_distance(2, 2), 6)
        self.assertGreater(symplectic_min_distance(2, 3), min_distance(2, 3))


class TestClassTable(unittest.TestCase):

    def test_n3_q2(self):
        self.assertEqual(
            class_table(2, 3),
            {
                SectionClass.PARABOLIC: (15, 15, 120),
                SectionClass.HYPERBOLIC_CONE: (19, 33, 96),
                SectionClass.ELLIPTIC_CONE: (11, 5, 160),
                SectionClass.LINE_VERTEX_PARABOLIC: (15, 19, 128),
            },
        )

    def test_n2_q4(self):
        self.assertEqual(
            class_table(4, 2),
            {
                SectionClass.PARABOLIC: (5, 0, 60),
                SectionClass.HYPERBOLIC_CONE: (9, 2, 48),
                SectionClass.ELLIPTIC_CONE: (1, 0, 80),
                SectionClass.LINE_VERTEX_PARABOLIC: (5, 1, 64),
            },
        )

    def test_q8_weights(self):
        weights = sorted(w for _, _, w in class_table(8, 2).values())
        self.assertEqual(weights, [448, 504, 512, 576])

    def test_census_weight_matches_class_weight(self):
        for q, n in ((2, 2), (2, 3), (3, 2), (4, 2), (2, 4), (3, 3)):
            for cls, (pc, sigma, w) in class_table(q, n).items():
                with self.subTest(q=q, n=n, cls=cls):
                    self.assertEqual(radical_census_weight(q, n, pc, sigma), w)

    def test_hyperbolic_is_minimum(self):
        for q, n in ((2, 2), (2, 3), (3, 2), (4, 2)):
            table = class_table(q, n)
            with self.subTest(q=q, n=n):
                self.assertEqual(min(w for _, _, w in table.values()), min_distance(q, n))
                self.assertEqual(table[SectionClass.HYPERBOLIC_CONE][2], min_distance(q, n))

    def test_other_has_no_count(self):
        with self.assertRaises(ValueError):
            section_point_count(2, 2, SectionClass.OTHER)


class TestResidualValues(unittest.TestCase):

    def test_values(self):
        self.assertEqual(residual_weight_values(2, 2), {0, 1, 2, 3})
        self.assertEqual(residual_weight_values(2, 3), {0, 6, 8, 10})
        self.assertEqual(residual_weight_values(4, 2), {0, 3, 4, 5})


if __name__ == "__main__":
    unittest.main()
