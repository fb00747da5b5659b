#!/usr/bin/env python3
# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.


# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import os
import tempfile
import unittest

from unittest.mock import patch

from polargrass.errors import NonPrimeCharacteristic, NotAlternating
from polargrass.quadgeo import AlternatingForm
from polargrass.validate import (
    validate_code_params,
    validate_even,
    validate_field_order,
    validate_form,
)


class TestValidator(unittest.TestCase):

    def test_validate_field_order(self):
        self.assertEqual(validate_field_order(8).q, 8)
        with self.assertRaises(NonPrimeCharacteristic):
            validate_field_order(6)

    def test_validate_code_params_valid(self):
        space = validate_code_params(q=4, n=2)
        self.assertEqual(space.dim, 5)
        self.assertEqual(space.q, 4)
        self.assertEqual(validate_code_params(q=2, n=3, k=3).n, 3)

    def test_validate_code_params_bad_n(self):
        with self.assertRaises(ValueError):
            validate_code_params(q=2, n=1)

    def test_validate_code_params_bad_k(self):
        for k in (0, 3):
            with self.subTest(k=k):
                with self.assertRaises(ValueError):
                    validate_code_params(q=2, n=2, k=k)

    def test_validate_code_params_bad_q(self):
        with self.assertRaises(ValueError):
            validate_code_params(q=12, n=2)

    @patch("polargrass.validate.logging.error")
    def test_validate_code_params_exit_on_error(self, mock_error):
        with self.assertRaises(SystemExit) as cm:
            validate_code_params(q=2, n=1, exit_on_error=True)
        self.assertEqual(cm.exception.code, 2)
        mock_error.assert_called_once()
        self.assertTrue(mock_error.call_args[0][0].startswith("--n:"))

    @patch("polargrass.validate.logging.error")
    def test_validate_field_order_exit_on_error(self, mock_error):
        with self.assertRaises(SystemExit) as cm:
            validate_field_order(6, exit_on_error=True)
        self.assertEqual(cm.exception.code, 2)
        self.assertTrue(mock_error.call_args[0][0].startswith("--q:"))

    def test_validate_even(self):
        validate_even(2)
        validate_even(8)
        with self.assertRaises(ValueError):
            validate_even(3)

    @patch("polargrass.validate.logging.error")
    def test_validate_even_exit_on_error(self, mock_error):
        with self.assertRaises(SystemExit) as cm:
            validate_even(9, exit_on_error=True)
        self.assertEqual(cm.exception.code, 2)

    def test_validate_form_named(self):
        space = validate_code_params(q=2, n=2)
        self.assertEqual(validate_form("beta", space), AlternatingForm.beta(space))
        self.assertEqual(validate_form("elementary:1,2", space), AlternatingForm.elementary(space, 1, 2))

    def test_validate_form_bad_spec(self):
        space = validate_code_params(q=2, n=2)
        with self.assertRaises(ValueError):
            validate_form("elementary:1", space)
        with self.assertRaises(OSError):
            validate_form("/nonexistent/form.txt", space)

    def test_validate_form_file(self):
        space = validate_code_params(q=3, n=2)
        rows = ["5 5 3", "0 1 0 0 0", "2 0 0 0 0", "0 0 0 0 0", "0 0 0 0 0", "0 0 0 0 0"]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "form.txt")
            with open(path, "w") as f:
                f.write("\n".join(rows) + "\n")
            self.assertEqual(validate_form(path, space), AlternatingForm.elementary(space, 1, 2))

    def test_validate_form_not_alternating(self):
        space = validate_code_params(q=3, n=2)
        rows = ["5 5 3", "0 1 0 0 0", "1 0 0 0 0", "0 0 0 0 0", "0 0 0 0 0", "0 0 0 0 0"]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "form.txt")
            with open(path, "w") as f:
                f.write("\n".join(rows) + "\n")
            with self.assertRaises(NotAlternating):
                validate_form(path, space)

    @patch("polargrass.validate.logging.error")
    def test_validate_form_exit_on_error(self, mock_error):
        space = validate_code_params(q=2, n=2)
        with self.assertRaises(SystemExit) as cm:
            validate_form("elementary:0,1", space, exit_on_error=True)
        self.assertEqual(cm.exception.code, 2)
        self.assertTrue(mock_error.call_args[0][0].startswith("--form:"))


if __name__ == "__main__":
    unittest.main()
