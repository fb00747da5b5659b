# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import json
import unittest

import numpy as np

from polargrass.errors import DimensionMismatch
from polargrass.exactla import MatrixGF
from polargrass.ffield import field_for_order
from polargrass.gcode import WeightReport
from polargrass.parser import parse_form_spec, parse_matrix
from polargrass.quadgeo import AlternatingForm, QuadraticSpace, radical_profile


class TestParseMatrix(unittest.TestCase):

    def test_parse(self):
        m = parse_matrix("2 3 4\n0 1 2\n3 0 1\n")
        self.assertEqual(m.field.q, 4)
        self.assertEqual(m.entries.tolist(), [[0, 1, 2], [3, 0, 1]])

    def test_text_format(self):
        m = MatrixGF(field_for_order(9), np.arange(12).reshape(3, 4) % 9)
        self.assertEqual(parse_matrix(m.to_text()), m)

    def test_blank_lines(self):
        self.assertEqual(parse_matrix("\n1 2 2\n\n1 1\n\n").entries.tolist(), [[1, 1]])

    def test_bad_header(self):
        with self.assertRaises(ValueError):
            parse_matrix("2 2\n1 0\n0 1\n")
        with self.assertRaises(ValueError):
            parse_matrix("")
        with self.assertRaises(ValueError):
            parse_matrix("2 2 two\n1 0\n0 1\n")

    def test_body_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            parse_matrix("2 2 2\n1 0\n")
        with self.assertRaises(DimensionMismatch):
            parse_matrix("2 2 2\n1 0 1\n0 1 0\n")

    def test_field_mismatch(self):
        with self.assertRaises(ValueError):
            parse_matrix("1 1 3\n1\n", field_for_order(2))

    def test_entry_out_of_range(self):
        with self.assertRaises(ValueError):
            parse_matrix("1 2 2\n0 2\n")


class TestParseFormSpec(unittest.TestCase):

    def setUp(self):
        self.space = QuadraticSpace(2, field_for_order(4))

    def test_beta(self):
        self.assertEqual(parse_form_spec("beta", self.space), AlternatingForm.beta(self.space))

    def test_elementary(self):
        f = parse_form_spec("elementary:2,5", self.space)
        self.assertEqual(f, AlternatingForm.elementary(self.space, 2, 5))

    def test_malformed_elementary(self):
        for spec in ("elementary:", "elementary:1,2,3", "elementary:a,b"):
            with self.subTest(spec=spec):
                with self.assertRaises(ValueError):
                    parse_form_spec(spec, self.space)


class TestReports(unittest.TestCase):

    def test_profile_immutable(self):
        profile = radical_profile(AlternatingForm.zero(QuadraticSpace(2, field_for_order(2))))
        self.assertEqual(profile.rad_dim, 5)
        with self.assertRaises(AttributeError):
            profile.sigma = 0

    def test_weight_report_fields(self):
        self.assertEqual(
            WeightReport._fields[:8],
            ("weight", "A_prime", "B", "C", "S_count", "A", "low_count", "convention"),
        )

    def test_profile_json(self):
        profile = radical_profile(AlternatingForm.zero(QuadraticSpace(2, field_for_order(2))))
        data = json.loads(profile.to_json())
        self.assertEqual(data["point_count"], 15)
        self.assertEqual(data["section_class"], "OTHER")


if __name__ == "__main__":
    unittest.main()
