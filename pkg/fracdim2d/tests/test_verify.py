import io
import json
from unittest import mock

from django.test import SimpleTestCase

from fracdim2d import fracint, verify
from fracdim2d.constructions import catalog
from fracdim2d.exceptions import ParameterError
from fracdim2d.fracint import QuadratureSpec


class ReportTestCase(SimpleTestCase):
    """
    python manage.py test fracdim2d.tests.test_verify
    """

    def test_report(self):
        report = verify.Report("semigroup", "constant:1")
        self.assertTrue(report.check("small", 1e-9, 1e-8))
        self.assertTrue(report.passed)
        self.assertFalse(report.check("large", 1.0, 1e-8))
        self.assertFalse(report.passed)
        fh = io.StringIO()
        report.to_json(fh)
        data = json.loads(fh.getvalue())
        self.assertEqual(data["suite"], "semigroup")
        self.assertEqual([a["passed"] for a in data["assertions"]], [True, False])

    def test_unknown_suite(self):
        with self.assertRaises(ParameterError) as cm:
            verify.run_suite("nope", catalog("plane"))
        self.assertEqual(cm.exception.parameter, "suite")


class SuitesTestCase(SimpleTestCase):
    def assert_passes(self, report):
        self.assertTrue(report.passed, report.as_dict())
        self.assertTrue(report.assertions)

    def test_semigroup(self):
        for name in ["constant", "plane", "product"]:
            report = verify.run_suite("semigroup", catalog(name))
            self.assert_passes(report)
            self.assertEqual(
                [a["name"] for a in report.assertions],
                ["composed vs direct", "gap ratio with twice the panels"],
            )

    def test_special_cases(self):
        self.assert_passes(
            verify.run_suite("special-cases", catalog("product"), quad=QuadratureSpec(32))
        )

    def test_special_cases_catch_a_wrong_rule(self):
        product_rule = fracint._product_rule

        def inflated(*args, **kwargs):
            nodes, weights = product_rule(*args, **kwargs)
            return nodes, 1.1 * weights

        with mock.patch("fracdim2d.fracint._product_rule", inflated):
            report = verify.run_suite(
                "special-cases", catalog("product"), quad=QuadratureSpec(32)
            )
        self.assertFalse(report.passed)
        self.assertFalse(report.assertions[0]["passed"])

    def test_separable(self):
        for name in ["constant", "linear-x", "sine-x"]:
            self.assert_passes(verify.run_suite("separable", catalog(name)))

    def test_boundedness(self):
        report = verify.run_suite("boundedness", catalog("constant", 3))
        self.assert_passes(report)
        self.assertEqual(report.assertions[1]["name"], "bound attained")
        self.assert_passes(
            verify.run_suite("boundedness", catalog("product"), quad=QuadratureSpec(32))
        )

    def test_bv_preservation(self):
        self.assert_passes(
            verify.run_suite("bv-preservation", catalog("product"), levels=(16, 32, 64))
        )
        with self.assertRaises(ParameterError):
            verify.run_suite("bv-preservation", catalog("paper-t-1"))

    def test_dimension_bounds(self):
        report = verify.run_suite("dimension-bounds", catalog("plane"))
        self.assert_passes(report)
        self.assertEqual(len(report.assertions), 5)
        self.assertEqual(report.assertions[2]["name"], "integral slope <= raw slope")
        with self.assertRaises(ParameterError):
            verify.run_suite("dimension-bounds", catalog("rational-indicator"))
