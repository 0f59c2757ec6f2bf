import io
import json

import numpy as np
from django.test import SimpleTestCase

from fracdim2d import fracint, variation
from fracdim2d.constructions import catalog
from fracdim2d.core import Domain, FracOrder, GridSpec, Rectangle, sample
from fracdim2d.exceptions import ParameterError, SizeError
from fracdim2d.fracint import QuadratureSpec

UNIT = Domain(0, 1, 0, 1)
SHAPES = [(1, 5), (2, 2), (2, 5), (3, 3), (3, 4), (4, 3), (4, 4)]


def dyadic_grid(rng, shape):
    # exact sums, so the dynamic programme and brute force agree bitwise
    return rng.integers(-1024, 1025, shape) / 1024


class ArzelaTestCase(SimpleTestCase):
    """
    python manage.py test fracdim2d.tests.test_variation
    """

    def test_two_by_two(self):
        result = variation.arzela_variation([[0, 1], [1, 0]])
        self.assertEqual(result.value, 2)
        self.assertEqual(result.path, ((0, 0), (0, 1), (1, 1)))

    def test_constant(self):
        result = variation.arzela_variation(np.full((5, 7), 3.0))
        self.assertEqual(result.value, 0)
        self.assertEqual(result.path, ((0, 0),))

    def test_plane(self):
        samples = sample(catalog("plane"), GridSpec(UNIT, 3, 3))
        self.assertEqual(variation.arzela_variation(samples).value, 2)
        self.assertEqual(variation.arzela_variation_bruteforce(samples), 2)

    def test_monotone_samples(self):
        # coordinatewise increasing: f(top right) - f(bottom left)
        spec = GridSpec(Rectangle(1, 2, 1, 3), 17, 9)
        samples = sample(catalog("plane"), spec)
        self.assertEqual(variation.arzela_variation(samples).value, 3)

    def test_single_row(self):
        rng = np.random.default_rng(3)
        for n in range(1, 17):
            values = dyadic_grid(rng, (1, n))
            expected = variation.row_variation(values)
            self.assertEqual(variation.arzela_variation(values).value, expected)
            self.assertEqual(variation.arzela_variation(values.T).value, expected)
            self.assertEqual(variation.arzela_variation_bruteforce(values), expected)

    def test_matches_bruteforce(self):
        rng = np.random.default_rng(0)
        for k in range(500):
            values = dyadic_grid(rng, SHAPES[k % len(SHAPES)])
            self.assertEqual(
                variation.arzela_variation(values).value,
                variation.arzela_variation_bruteforce(values),
                values,
            )

    def test_path(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            values = dyadic_grid(rng, (6, 9))
            result = variation.arzela_variation(values)
            steps = set()
            total = 0.0
            for (i, j), (k, l) in zip(result.path, result.path[1:]):
                steps.add((k - i, l - j))
                total += abs(values[k, l] - values[i, j])
            self.assertLessEqual(steps, {(1, 0), (0, 1), (1, 1)})
            self.assertEqual(total, result.value)

    def test_pinned(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            values = dyadic_grid(rng, (5, 6))
            pinned = variation.arzela_variation(values, pinned=True)
            self.assertEqual(pinned.path[0], (0, 0))
            self.assertEqual(pinned.path[-1], (4, 5))
            self.assertLessEqual(pinned.value, variation.arzela_variation(values).value)

    def test_refinement_never_decreases(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            values = dyadic_grid(rng, (4, 5))
            row = rng.integers(0, 3)
            refined = np.insert(values, row + 1, dyadic_grid(rng, (5,)), axis=0)
            self.assertGreaterEqual(
                variation.arzela_variation(refined).value,
                variation.arzela_variation(values).value,
            )

    def test_bruteforce_size_limit(self):
        with self.assertRaises(SizeError) as cm:
            variation.arzela_variation_bruteforce(np.zeros((5, 4)))
        self.assertEqual(cm.exception.parameter, "grid")

    def test_invalid_values(self):
        for values in ([1, 2, 3], [[]]):
            with self.assertRaises(ParameterError):
                variation.arzela_variation(values)

    def test_json(self):
        fh = io.StringIO()
        variation.arzela_variation([[0, 1], [1, 0]]).to_json(fh)
        self.assertEqual(
            json.loads(fh.getvalue()),
            {"value": 2, "path": [[0, 0], [0, 1], [1, 1]]},
        )


class TrendTestCase(SimpleTestCase):
    def test_constant_and_plane(self):
        levels = [2, 4, 8, 16]
        trend = variation.variation_trend(catalog("constant"), UNIT, levels)
        self.assertEqual(trend, [(level, 0) for level in levels])
        trend = variation.variation_trend(catalog("plane"), UNIT, levels)
        self.assertEqual(trend, [(level, 2) for level in levels])

    def test_construction_grows(self):
        levels = [16, 32, 64, 128, 256, 512, 1024]
        trend = variation.variation_trend(catalog("paper-t-1"), UNIT, levels)
        values = [v for _, v in trend]
        self.assertTrue(all(a < b for a, b in zip(values, values[1:])), values)
        slope = np.polyfit(np.log(levels), values, 1)[0]
        self.assertGreater(slope, 0)

    def test_integral_saturates(self):
        rect = Rectangle(1, 2, 1, 2)
        quad = QuadratureSpec(16)
        ord = FracOrder(0.5, 0.5)
        trend = variation.variation_trend(
            None,
            rect,
            [16, 32, 64],
            sampler=lambda spec: fracint.katugampola_2d_grid(
                catalog("product"), spec, ord, quad
            ),
        )
        (_, coarse), (_, fine) = trend[-2], trend[-1]
        self.assertLess(abs(fine / coarse - 1), 0.05)

    def test_integral_of_plane_saturates(self):
        quad = QuadratureSpec(16)
        trend = variation.variation_trend(
            None,
            Rectangle(1, 2, 1, 2),
            [128, 256],
            sampler=lambda spec: fracint.katugampola_2d_grid(
                catalog("plane"), spec, FracOrder(0.5, 0.5), quad
            ),
        )
        (_, coarse), (_, fine) = trend
        self.assertGreater(coarse, 0)
        self.assertLess(abs(fine / coarse - 1), 0.05)

    def test_invalid_levels(self):
        for levels in ([], [1, 2], [4, 4], [8, 4]):
            with self.assertRaises(ParameterError) as cm:
                variation.variation_trend(catalog("plane"), UNIT, levels)
            self.assertEqual(cm.exception.parameter, "levels")
