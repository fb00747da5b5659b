# Copyright (c) Meta Platforms, Inc. and affiliates.
# All rights reserved.

# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.
import csv
import io
import json
import unittest
from unittest.mock import patch

import numpy as np

from polargrass.errors import EmptyReport
from polargrass.quadgeo import QuadraticSpace
from polargrass.verify import ANCHORS, CheckRecord, run_suite, VerifyReport


def eta_without_square(self, x):
    """The hyperbolic part of eta only: drops x_{2n+1}^2."""
    x = np.asarray(x, dtype=np.int64)
    f = self.field
    acc = np.zeros(x.shape[:-1], dtype=np.int64)
    for i in range(self.n):
        acc = f.add(acc, f.mul(x[..., 2 * i], x[..., 2 * i + 1]))
    return np.asarray(acc, dtype=np.int64)


class TestRunSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.report = run_suite("core", configs=[(2, 2)], samples=20, residual_samples=20)

    def test_passes(self):
        self.assertTrue(self.report.ok, [r for r in self.report.records if not r.passed])
        self.assertEqual(self.report.failed, 0)
        self.assertEqual(self.report.skipped, 0)
        self.assertEqual(self.report.configs, [{"q": 2, "n": 2, "k": 2}])

    def test_checks_present(self):
        names = {r.name for r in self.report.records}
        for name in (
            "parameters",
            "min_distance",
            "min_weight_count",
            "structural",
            "spectrum",
            "class_weights",
            "class_census",
            "recursion",
            "census_identity",
            "residual_values",
            "residual_zero",
            "subcode",
            "symplectic_min_distance",
        ):
            self.assertIn(name, names)

    def test_anchors(self):
        for r in self.report.records:
            self.assertEqual(r.anchor, ANCHORS[r.name])

    def test_json(self):
        data = json.loads(self.report.to_json())
        self.assertEqual(data["suite"], "core")
        self.assertEqual(data["totals"]["failed"], 0)
        self.assertEqual(data["totals"]["checks"], len(self.report.records))

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(self.report.to_csv())))
        self.assertEqual(rows[0][:3], ["name", "anchor", "q"])
        self.assertEqual(len(rows), len(self.report.records) + 1)

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            run_suite("nightly")


class TestBudgetSkips(unittest.TestCase):

    def test_skipped_scan(self):
        report = run_suite("core", budget=100, configs=[(2, 2)], samples=5, residual_samples=5)
        skipped = [r for r in report.records if r.skipped]
        self.assertEqual([r.name for r in skipped], ["min_distance"])
        self.assertIn("budget", skipped[0].reason)
        self.assertTrue(report.ok)


class TestMutation(unittest.TestCase):

    def test_broken_quadratic_form_is_detected(self):
        with patch.object(QuadraticSpace, "eta_many", eta_without_square):
            report = run_suite("core", configs=[(2, 2)], samples=5, residual_samples=5)
        self.assertFalse(report.ok)
        self.assertGreater(report.failed, 0)
        parameters = next(r for r in report.records if r.name == "parameters")
        self.assertFalse(parameters.passed)


class TestVerifyReport(unittest.TestCase):

    def test_empty(self):
        with self.assertRaises(EmptyReport):
            VerifyReport(suite="core", records=[])

    def test_counts(self):
        config = {"q": 2, "n": 2, "k": 2}
        records = [
            CheckRecord("parameters", ANCHORS["parameters"], config, [15, 9], [15, 9], True),
            CheckRecord("min_distance", ANCHORS["min_distance"], config, 4, None, False, True, "over budget"),
            CheckRecord("recursion", ANCHORS["recursion"], config, [], [3], False),
        ]
        report = VerifyReport(suite="core", records=records)
        self.assertEqual((report.passed, report.failed, report.skipped), (1, 1, 1))
        self.assertFalse(report.ok)


if __name__ == "__main__":
    unittest.main()
