import math

import numpy as np
from django.test import SimpleTestCase, override_settings

from fracdim2d.apps import Fracdim2dConfig
from fracdim2d.constructions import (
    TConstruction,
    amplitude,
    catalog,
    catalog_entries,
    parse_function_spec,
    psi_n,
    sequence_a,
    t_eval,
)
from fracdim2d.core import Domain
from fracdim2d.exceptions import CatalogError, DomainError, ParameterError
from fracdim2d.sources.builtin import SourcePlane
from fracdim2d.sources.generating import is_rational

UNIT = Domain(0, 1, 0, 1)


class PsiTestCase(SimpleTestCase):
    """
    python manage.py test fracdim2d.tests.test_constructions
    """

    def test_sequence(self):
        self.assertEqual(list(sequence_a(np.arange(4), 0, 1)), [0, 0.5, 0.75, 0.875])
        self.assertEqual(float(sequence_a(1, 1, 3)), 2)

    def test_examples(self):
        self.assertEqual(psi_n(0.3, 1, 0, 1), 0.3)
        self.assertEqual(psi_n(0.5, 2, 0, 1), 0)
        self.assertEqual(psi_n(0.75, 2, 0, 1), 0.5)
        self.assertAlmostEqual(psi_n(0.625, 2, 0, 1), 0.25, places=15)

    def test_endpoints(self):
        for a, b in [(0, 1), (1, 3), (0.25, 0.75)]:
            a0, a1 = a, float(sequence_a(1, a, b))
            for n in range(1, 21):
                lo, hi = sequence_a(n - 1, a, b), sequence_a(n, a, b)
                self.assertAlmostEqual(psi_n(lo, n, a, b), a0, delta=1e-8)
                self.assertAlmostEqual(psi_n(hi, n, a, b), a1, delta=1e-8)

    def test_outside_the_piece(self):
        with self.assertRaises(DomainError):
            psi_n(0.4, 2, 0, 1)
        with self.assertRaises(ParameterError) as cm:
            psi_n(0.4, 0, 0, 1)
        self.assertEqual(cm.exception.parameter, "n")


class TConstructionTestCase(SimpleTestCase):
    def setUp(self):
        self.phi = catalog("paper-phi-1")
        self.t = catalog("paper-t-1")

    def test_value(self):
        expected = 0.5 * 0.25 * (0.25 - 0.5) * math.sin(1)
        self.assertAlmostEqual(t_eval(self.t, 0.625, 1), expected, places=15)
        self.assertAlmostEqual(self.phi(0.25, 1), 2 * expected, places=15)

    def test_first_piece_is_phi(self):
        rng = np.random.default_rng(0)
        x = rng.uniform(0, 0.5, 200)
        y = rng.uniform(0, 1, 200)
        np.testing.assert_array_equal(self.t.evaluate(x, y), self.phi.evaluate(x, y))

    def test_right_edge(self):
        for y in [0, 0.3, 1]:
            self.assertEqual(self.t(1, y), self.phi(0, y))

    def test_continuity_at_the_breaks(self):
        eps = 1e-8
        for k in range(1, 11):
            ak = float(sequence_a(k, 0, 1))
            for y in [0.2, 0.9]:
                gap = abs(self.t(ak - eps, y) - self.t(ak + eps, y))
                self.assertLessEqual(gap, 2 ** k * eps, (k, y))

    def test_tail(self):
        t = catalog("paper-t-1", 4)
        self.assertEqual(t.depth, 4)
        x = np.array([0.95, 0.99, 1.0])
        self.assertEqual(list(t.piece_index(x)), [5, 5, 5])
        np.testing.assert_array_equal(
            t.evaluate(x, np.full(3, 0.5)), self.phi.evaluate(np.zeros(3), 0.5)
        )

    def test_amplitude_decay(self):
        for t in [self.t, catalog("paper-t-2")]:
            first = amplitude(t, 1)
            self.assertGreater(first, 0)
            for k in range(2, 21):
                self.assertAlmostEqual(k * amplitude(t, k) / first, 1, places=6)

    def test_bound(self):
        self.assertAlmostEqual(self.t.bound(UNIT), math.sin(1) / 16, places=15)
        x, y = np.meshgrid(np.linspace(0, 1, 101), np.linspace(0, 1, 101))
        self.assertLessEqual(np.abs(self.t.evaluate(x, y)).max(), self.t.bound(UNIT))

    def test_flags(self):
        self.assertTrue(self.t.continuous)
        self.assertFalse(self.t.bounded_variation)
        self.assertEqual(str(TConstruction(UNIT, self.phi)), "t:paper-phi-1")
        self.assertEqual(str(self.t), "paper-t-1:0")

    def test_incompatible_phi(self):
        with self.assertRaises(ParameterError) as cm:
            TConstruction(UNIT, SourcePlane())
        self.assertEqual(cm.exception.parameter, "phi")

    def test_phi_domain(self):
        with self.assertRaises(DomainError) as cm:
            TConstruction(Domain(0, 2, 0, 1), self.phi)
        self.assertEqual(cm.exception.parameter, "phi")

    def test_invalid_depth(self):
        for depth in [0, 2.5]:
            with self.assertRaises(ParameterError):
                TConstruction(UNIT, self.phi, depth)

    @override_settings(FRACDIM2D_COMPAT_TOLERANCE=1e-3)
    def test_compat_tolerance_setting(self):
        perturbed = parse_function_spec("paper-phi-1")
        perturbed.evaluate = (
            lambda x, y, f=perturbed.evaluate: f(x, y) + 1e-4 * np.asarray(x)
        )
        TConstruction(UNIT, perturbed)


class CatalogTestCase(SimpleTestCase):
    def test_registry(self):
        self.assertIs(Fracdim2dConfig.get_source_class("plane"), SourcePlane)
        self.assertIsNone(Fracdim2dConfig.get_source_class("nope"))
        names = set(Fracdim2dConfig.get_source_classes())
        self.assertLessEqual(
            {
                "constant",
                "plane",
                "product",
                "linear-x",
                "sine-x",
                "weierstrass",
                "paper-phi-1",
                "paper-phi-2",
                "paper-t-1",
                "paper-t-2",
                "rational-indicator",
            },
            names,
        )

    def test_entries(self):
        entries = {e["name"]: e for e in catalog_entries()}
        self.assertFalse(entries["rational-indicator"]["continuous"])
        self.assertFalse(entries["rational-indicator"]["bounded_variation"])
        self.assertFalse(entries["paper-t-1"]["bounded_variation"])
        self.assertTrue(entries["paper-t-1"]["continuous"])
        self.assertEqual(entries["weierstrass"]["holder"], 0.5)
        self.assertEqual(
            entries["weierstrass"]["params"],
            [
                {"name": "lambda", "default": 2.0},
                {"name": "s", "default": 2.5},
                {"name": "terms", "default": 12},
            ],
        )

    def test_values(self):
        self.assertEqual(catalog("constant", 3)(5, 7), 3)
        self.assertEqual(catalog("plane")(1, 2), 3)
        self.assertAlmostEqual(catalog("product")(1, 2), math.sin(2), places=15)
        self.assertAlmostEqual(
            catalog("paper-phi-2")(0.25, 0.4), math.sin(-1 / 16), places=15
        )

    def test_unknown(self):
        with self.assertRaises(CatalogError) as cm:
            catalog("nope")
        self.assertEqual(cm.exception.exit_code, 2)
        with self.assertRaises(CatalogError):
            catalog("plane", 1)
        with self.assertRaises(CatalogError):
            catalog("constant", "one")

    def test_domain_check(self):
        with self.assertRaises(DomainError) as cm:
            catalog("paper-phi-1")(0.75, 0.5)
        self.assertEqual(cm.exception.parameter, "point")

    def test_parse(self):
        w = parse_function_spec("weierstrass:3,2.2,5")
        self.assertEqual(w.args, {"lambda": 3, "s": 2.2, "terms": 5})
        self.assertAlmostEqual(w.holder, 0.8, places=15)
        t = parse_function_spec("t:paper-phi-2")
        self.assertEqual(t.domain, UNIT)
        self.assertEqual(t(0.2, 0.5), catalog("paper-phi-2")(0.2, 0.5))
        with self.assertRaises(CatalogError):
            parse_function_spec("")
        with self.assertRaises(ParameterError):
            parse_function_spec("csv:/nonexistent/samples.csv")

    def test_weierstrass_parameters(self):
        for params in [(1,), (2, 3), (2, 2), (2, 2.5, 1.5), (2, 2.5, -1)]:
            with self.assertRaises(CatalogError):
                catalog("weierstrass", *params)
        w = catalog("weierstrass", 2, 2.5, 0)
        self.assertAlmostEqual(w(1, 2), math.sin(1) + math.sin(2), places=15)
        self.assertEqual(w.bound(UNIT), 2)


class RationalIndicatorTestCase(SimpleTestCase):
    def test_values(self):
        f = catalog("rational-indicator")
        self.assertEqual(f(0.5, 0.25), 0)
        self.assertEqual(f(1 / 3, 2 / 7), 0)
        self.assertEqual(f(math.sqrt(2) / 2, 0.5), 1)
        self.assertEqual(f(0.5, math.pi / 4), 1)
        self.assertFalse(f.continuous)
        self.assertFalse(f.bounded_variation)

    def test_denominator(self):
        self.assertTrue(is_rational(1 / 3, 3))
        self.assertFalse(is_rational(1 / 3, 2))
        self.assertFalse(is_rational(math.inf, 10))
        self.assertEqual(catalog("rational-indicator", 2)(1 / 3, 0.5), 1)
