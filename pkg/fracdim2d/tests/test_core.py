import io
import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from fracdim2d.core import (
    Accumulator,
    Domain,
    FracOrder,
    GridSamples,
    GridSpec,
    Rectangle,
    sample,
    stable_sum,
)
from fracdim2d.constructions import catalog
from fracdim2d.exceptions import DomainError, NumericError, ParameterError
from fracdim2d.sources.sampled import SampledSource

UNIT = Domain(0, 1, 0, 1)
SQUARE = Rectangle(1, 2, 1, 2)


class DomainTestCase(SimpleTestCase):
    """
    python manage.py test fracdim2d.tests.test_core
    """

    def test_rectangle_needs_positive_lower_limits(self):
        for args in [(0, 1, 1, 2), (1, 2, -1, 2), (2, 1, 1, 2), (1, 2, 2, 2)]:
            with self.assertRaises(DomainError) as cm:
                Rectangle(*args)
            self.assertEqual(cm.exception.parameter, "rect")

    def test_rectangle_is_bounded(self):
        with self.assertRaises(DomainError):
            Rectangle(1, math.inf, 1, 2)

    def test_from_string(self):
        self.assertEqual(Domain.from_string("0,1,2,3"), Domain(0, 1, 2, 3))
        for value in ["0,1,2", "a,b,c,d"]:
            with self.assertRaises(ParameterError):
                Domain.from_string(value)

    def test_contains(self):
        self.assertTrue(UNIT.contains(Domain(0, 0.5, 0.25, 1)))
        self.assertFalse(UNIT.contains(SQUARE))
        self.assertTrue(Domain.everywhere().contains(SQUARE))


class FracOrderTestCase(SimpleTestCase):
    @given(
        st.sampled_from(["alpha", "beta", "p", "q"]),
        st.floats(max_value=0, allow_nan=False),
    )
    def test_invalid_orders_name_the_parameter(self, name, value):
        kwargs = {"alpha": 0.5, "beta": 0.5, "p": 0.0, "q": 0.0}
        # p and q are only invalid at or below -1
        kwargs[name] = value - 1 if name in "pq" else value
        with self.assertRaises(ParameterError) as cm:
            FracOrder(**kwargs)
        self.assertEqual(cm.exception.parameter, name)

    def test_non_finite(self):
        with self.assertRaises(ParameterError):
            FracOrder(math.inf, 1)

    def test_plus(self):
        self.assertEqual(
            FracOrder(0.5, 0.25, 1, 2).plus(FracOrder(0.5, 0.75, 1, 2)),
            FracOrder(1, 1, 1, 2),
        )


class GridTestCase(SimpleTestCase):
    def test_grid_size(self):
        for m in [0, 1, 2.5, None, "3", math.nan, math.inf]:
            with self.assertRaises(ParameterError) as cm:
                GridSpec(UNIT, m, 3)
            self.assertEqual(cm.exception.parameter, "grid")

    def test_axes_include_both_ends(self):
        spec = GridSpec(UNIT, 5, 3)
        self.assertEqual(list(spec.xs), [0, 0.25, 0.5, 0.75, 1])
        self.assertEqual(list(spec.ys), [0, 0.5, 1])
        self.assertEqual(spec.hx, 0.25)

    def test_sample_is_row_major(self):
        spec = GridSpec(SQUARE, 2, 3)
        samples = sample(catalog("plane"), spec)
        self.assertEqual(list(samples.values), [2, 2.5, 3, 3, 3.5, 4])
        self.assertEqual(samples.value(1, 0), 3)
        self.assertEqual(samples.array.shape, (2, 3))

    def test_sample_outside_domain(self):
        with self.assertRaises(DomainError):
            sample(catalog("paper-phi-1"), GridSpec(UNIT, 3, 3))

    def test_threads_do_not_change_bits(self):
        spec = GridSpec(SQUARE, 33, 17)
        src = catalog("weierstrass")
        self.assertEqual(sample(src, spec, threads=1), sample(src, spec, threads=4))

    def test_samples_are_finite_and_read_only(self):
        spec = GridSpec(UNIT, 2, 2)
        with self.assertRaises(NumericError):
            GridSamples(spec, [0, 1, math.nan, 0])
        with self.assertRaises(ParameterError):
            GridSamples(spec, [0, 1, 2])
        samples = GridSamples(spec, [0, 1, 2, 3])
        with self.assertRaises(ValueError):
            samples.values[0] = 1

    def test_resampling_sampled_source_is_exact(self):
        spec = GridSpec(SQUARE, 9, 9)
        samples = sample(catalog("product"), spec)
        self.assertEqual(sample(SampledSource(samples), spec), samples)


class SerialisationTestCase(SimpleTestCase):
    def test_csv(self):
        samples = sample(catalog("product"), GridSpec(Domain(1, 2, 1, 2), 4, 3))
        fh = io.StringIO()
        samples.to_csv(fh)
        self.assertTrue(fh.getvalue().startswith("x,y,value\n1,1,"))
        fh.seek(0)
        self.assertEqual(GridSamples.from_csv(fh), samples)

    def test_json(self):
        samples = sample(catalog("plane"), GridSpec(Domain(1, 2, 1, 2), 3, 3))
        fh = io.StringIO()
        samples.to_json(fh)
        fh.seek(0)
        self.assertEqual(GridSamples.from_json(fh), samples)

    def test_invalid_csv(self):
        cases = [
            "a,b,c\n0,0,0\n",
            "x,y,value\n",
            "x,y,value\n0,0,0\n0,1,0\n1,0,0\n",
            "x,y,value\n0,0,0\n1,0,0\n0,1,0\n1,1,0\n",
            "x,y,value\n0,0,zero\n",
            # axes are read in ascending order
            "x,y,value\n1,0,0\n1,1,0\n0,0,0\n0,1,0\n",
        ]
        for case in cases:
            with self.assertRaises(ParameterError):
                GridSamples.from_csv(io.StringIO(case))


class SummationTestCase(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(stable_sum([]), 0.0)
        self.assertEqual(stable_sum([1.0, 2.0, 3.0]), 6.0)
        self.assertEqual(stable_sum([1e16, 1.0, -1e16]), 1.0)
        self.assertEqual(stable_sum([1e100, 1.0, -1e100]), 1.0)
        self.assertEqual(stable_sum([0.1] * 10), 1.0)
        with self.assertRaises(NumericError):
            stable_sum([1.0, math.inf])

    def test_accumulator(self):
        acc = Accumulator(1.0)
        for _ in range(1000):
            acc.add(1e-16)
        self.assertNotEqual(acc.sum, 1.0)
        self.assertAlmostEqual(acc.sum, 1.0 + 1e-13, places=15)

    @settings(deadline=None)
    @given(
        st.lists(
            st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
            min_size=1,
            max_size=200,
        ),
        st.randoms(),
    )
    def test_order_insensitive_and_accurate(self, terms, rnd):
        exact = sum(Fraction(t) for t in terms)
        magnitude = sum(abs(Fraction(t)) for t in terms)
        # well conditioned sums only
        if exact == 0 or magnitude / abs(exact) > 1e4:
            return
        exact = float(exact)
        shuffled = list(terms)
        rnd.shuffle(shuffled)
        for candidate in (terms, shuffled):
            self.assertLessEqual(
                abs(stable_sum(candidate) - exact), 4 * np.spacing(abs(exact))
            )
