"""
Verification suites: numerical checks of the laws of the mixed integral
and of the dimension results. Each suite returns a Report listing every
assertion with its measured gap and the tolerance it was held to.
"""
import json
import logging

import numpy as np

from . import boxdim, fracint, variation
from .core import FracOrder, GridSpec, Rectangle, sample
from .exceptions import ParameterError
from .fracint import QuadratureSpec

logger = logging.getLogger(__name__)

DEFAULT_RECT = Rectangle(1.0, 2.0, 1.0, 2.0)
HALF = FracOrder(0.5, 0.5)

SEMIGROUP_TOLERANCE = 1e-3
# the gap must shrink at least this much when the panels double
SEMIGROUP_REFINEMENT = 2.0
# below this a gap is rounding
SEMIGROUP_FLOOR = 1e-12
HADAMARD_EPSILON = 1e-4
HADAMARD_TOLERANCE = 1e-2
SEPARABLE_TOLERANCE = 1e-8
SEPARABLE_POINTS = 50
SATURATION_TOLERANCE = 0.05
# fit noise allowed when comparing two slopes near 2
SMOOTHING_TOLERANCE = 0.02


class Report:
    def __init__(self, suite, subject=""):
        self.suite = suite
        self.subject = subject
        self.assertions = []

    def check(self, name, gap, tolerance):
        gap, tolerance = float(gap), float(tolerance)
        passed = bool(gap <= tolerance)
        self.assertions.append(
            {"name": name, "gap": gap, "tolerance": tolerance, "passed": passed}
        )
        logger.debug("%s %s: gap=%g tolerance=%g", self.suite, name, gap, tolerance)
        return passed

    @property
    def passed(self):
        return all(a["passed"] for a in self.assertions)

    def as_dict(self):
        return {
            "suite": self.suite,
            "subject": self.subject,
            "passed": self.passed,
            "assertions": self.assertions,
        }

    def to_json(self, fh):
        json.dump(self.as_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


def _sup(values):
    return float(np.max(np.abs(values)))


def suite_semigroup(
    f, rect=None, size=33, quad=None, threads=None, ord1=HALF, ord2=HALF
):
    rect = rect or DEFAULT_RECT
    quad = quad or QuadratureSpec()
    report = Report("semigroup", str(f))

    spec = GridSpec(rect, size, size)
    lhs, rhs = fracint.compose_semigroup(f, spec, ord1, ord2, quad, threads)
    gap = _sup(lhs.values - rhs.values)
    report.check("composed vs direct", gap, SEMIGROUP_TOLERANCE)

    lhs, rhs = fracint.compose_semigroup(f, spec, ord1, ord2, quad.refined(), threads)
    fine_gap = _sup(lhs.values - rhs.values)
    report.check(
        "gap ratio with twice the panels",
        fine_gap / gap if gap > SEMIGROUP_FLOOR else 0.0,
        1 / SEMIGROUP_REFINEMENT,
    )
    return report


def suite_special_cases(f, rect=None, size=17, quad=None, threads=None):
    rect = rect or DEFAULT_RECT
    quad = quad or QuadratureSpec()
    report = Report("special-cases", str(f))

    spec = GridSpec(rect, size, size)
    kat = fracint.katugampola_2d_grid(f, spec, HALF, quad, threads)
    rl = fracint.riemann_liouville_2d_grid(f, spec, 0.5, 0.5, quad, threads)
    scale = max(f.bound(rect) or _sup(sample(f, spec).values), 1.0)
    budget = fracint.error_budget(quad, scale * fracint.bound_constant(rect, HALF))
    report.check(
        "katugampola(p=q=0) vs riemann-liouville",
        _sup(kat.values - rl.values),
        2 * budget,
    )

    near = 1 - HADAMARD_EPSILON
    limit = fracint.katugampola_2d(
        f, rect, rect.b, rect.d, FracOrder(0.5, 0.5, -near, -near), quad
    )
    exact = fracint.hadamard_2d(f, rect, rect.b, rect.d, 0.5, 0.5, quad)
    report.check(
        "katugampola(p=q=-1+eps) vs hadamard",
        abs(limit - exact) / max(abs(exact), 1e-300),
        HADAMARD_TOLERANCE,
    )
    return report


def suite_separable(g, rect=None, quad=None, threads=None, alpha=0.5, p=0.0, seed=0):
    """f(x, y) = g(x) with beta = 1, q = 0 gives (y - c) times the 1D integral."""
    rect = rect or DEFAULT_RECT
    quad = quad or QuadratureSpec()
    if not g.univariate:
        raise ParameterError("{} is not a univariate source".format(g), "g")
    report = Report("separable", str(g))

    ord = FracOrder(alpha, 1.0, p, 0.0)
    rng = np.random.default_rng(seed)
    gap = 0.0
    for x, y in zip(
        rng.uniform(rect.a, rect.b, SEPARABLE_POINTS),
        rng.uniform(rect.c, rect.d, SEPARABLE_POINTS),
    ):
        two = fracint.katugampola_2d(g, rect, x, y, ord, quad)
        one = fracint.katugampola_1d(g, rect.a, x, alpha, p, quad)
        gap = max(gap, abs(two - (y - rect.c) * one))
    report.check("2D vs (y - c) * 1D", gap, SEPARABLE_TOLERANCE)
    return report


def suite_boundedness(f, rect=None, size=17, quad=None, threads=None, M=None, ord=HALF):
    rect = rect or DEFAULT_RECT
    report = Report("boundedness", str(f))
    spec = GridSpec(rect, size, size)
    cert = fracint.boundedness_certificate(f, spec, ord, quad, M, threads)
    report.check("sup |I f| <= bound", cert.sup_abs_observed - cert.bound, cert.tolerance)
    if f.name == "constant" and M is None:
        # a constant attains the bound at (b, d)
        report.check(
            "bound attained",
            abs(cert.sup_abs_observed - cert.bound) / max(cert.bound, 1e-300),
            1e-6,
        )
    return report


def suite_bv_preservation(
    f, rect=None, levels=(64, 128, 256), quad=None, threads=None, ord=HALF
):
    rect = rect or DEFAULT_RECT
    quad = quad or QuadratureSpec(16)
    if not f.bounded_variation:
        raise ParameterError("{} is not of bounded variation".format(f), "fn")
    report = Report("bv-preservation", str(f))

    trend = variation.variation_trend(
        f,
        rect,
        levels,
        sampler=lambda spec: fracint.katugampola_2d_grid(f, spec, ord, quad, threads),
    )
    (_, coarse), (_, fine) = trend[-2], trend[-1]
    report.check(
        "variation saturates",
        abs(fine / coarse - 1) if coarse else fine,
        SATURATION_TOLERANCE,
    )
    return report


def suite_dimension_bounds(
    f, rect=None, size=257, quad=None, threads=None, ord=HALF
):
    rect = rect or DEFAULT_RECT
    report = Report("dimension-bounds", str(f))
    if not f.continuous:
        raise ParameterError(
            "{} is not continuous, its graph cannot be sampled".format(f), "fn"
        )

    spec = GridSpec(rect, size, size)
    fit = boxdim.dimension_fit(sample(f, spec, threads))
    report.check("slope >= 2", 2 - fit.slope, 0.1)
    if f.holder is not None:
        report.check("slope <= 3 - holder", fit.slope - (3 - f.holder), 0.2)

    quad = quad or QuadratureSpec(16)
    integral = boxdim.dimension_fit(
        fracint.katugampola_2d_grid(f, spec, ord, quad, threads)
    )
    report.check(
        "integral slope <= raw slope", integral.slope - fit.slope, SMOOTHING_TOLERANCE
    )
    if f.bounded_variation:
        report.check("integral slope = 2", abs(integral.slope - 2), 0.1)
    upper = fracint.holder_upper_bound(ord)
    if upper is not None:
        report.check("integral slope <= upper bound", integral.slope - upper, 0.2)
    return report


SUITES = {
    "semigroup": suite_semigroup,
    "special-cases": suite_special_cases,
    "separable": suite_separable,
    "boundedness": suite_boundedness,
    "bv-preservation": suite_bv_preservation,
    "dimension-bounds": suite_dimension_bounds,
}


def run_suite(name, source, **kwargs):
    suite = SUITES.get(name)
    if suite is None:
        raise ParameterError(
            "unknown suite '{}' ({})".format(name, ", ".join(SUITES)), "suite"
        )
    return suite(source, **kwargs)
