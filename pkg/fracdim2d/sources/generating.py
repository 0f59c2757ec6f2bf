from fractions import Fraction

import numpy as np

from ..constructions import TConstruction
from ..core import Domain
from ..settings import get_var
from .base import SourceBase

# generating functions live on [a0, a1] x [c, d] of the unit square
PHI_DOMAIN = Domain(0.0, 0.5, 0.0, 1.0)
UNIT_SQUARE = Domain(0.0, 1.0, 0.0, 1.0)


class SourcePaperPhi1(SourceBase):
    name = "paper-phi-1"
    label = "Generating function x(x - 0.5) sin y"
    description = "phi(x, y) = x (x - 0.5) sin y on [0, 0.5] x [0, 1]"
    holder = 1.0

    @property
    def domain(self):
        return PHI_DOMAIN

    def evaluate(self, x, y):
        x = np.asarray(x, dtype=float)
        return x * (x - 0.5) * np.sin(np.asarray(y, dtype=float))

    def bound(self, rect):
        # |x (x - 0.5)| <= 1/16 on [0, 0.5], |sin y| <= sin 1 on [0, 1]
        return np.sin(1.0) / 16


class SourcePaperPhi2(SourceBase):
    name = "paper-phi-2"
    label = "Generating function sin(x(x - 0.5))"
    description = "phi(x, y) = sin(x (x - 0.5)) on [0, 0.5] x [0, 1]"
    holder = 1.0

    @property
    def domain(self):
        return PHI_DOMAIN

    def evaluate(self, x, y):
        x = np.asarray(x, dtype=float)
        return np.sin(x * (x - 0.5)) + 0.0 * np.asarray(y, dtype=float)

    def bound(self, rect):
        return np.sin(1.0 / 16)


class SourcePaperT1(TConstruction):
    name = "paper-t-1"
    label = "Limit construction over x(x - 0.5) sin y"
    description = "continuous, unbounded variation, box dimension 2"
    params = (("depth", 0),)

    def __init__(self, *args):
        SourceBase.__init__(self, *args)
        self._setup(UNIT_SQUARE, SourcePaperPhi1(), self.args["depth"] or None)


class SourcePaperT2(TConstruction):
    name = "paper-t-2"
    label = "Limit construction over sin(x(x - 0.5))"
    description = "continuous, unbounded variation, box dimension 2"
    params = (("depth", 0),)

    def __init__(self, *args):
        SourceBase.__init__(self, *args)
        self._setup(UNIT_SQUARE, SourcePaperPhi2(), self.args["depth"] or None)


class SourceRationalIndicator(SourceBase):
    """0 if x and y are both rational, 1 otherwise.

    A float counts as rational when a fraction with a denominator
    up to max_denominator rounds to it exactly, e.g. nodes like
    a + i (b - a) / (m - 1) built from small integers.
    """

    name = "rational-indicator"
    label = "Rational indicator"
    description = "0 on Q x Q, 1 elsewhere; neither continuous nor BV"
    continuous = False
    bounded_variation = False
    params = (("max_denominator", 0),)

    def evaluate(self, x, y):
        limit = int(
            self.args["max_denominator"] or get_var("RATIONAL_DENOMINATOR")
        )
        x, y = np.broadcast_arrays(
            np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        )
        ret = np.ones(x.shape)
        for idx in np.ndindex(x.shape):
            if is_rational(x[idx], limit) and is_rational(y[idx], limit):
                ret[idx] = 0.0
        return ret

    def bound(self, rect):
        return 1.0


def is_rational(value, max_denominator):
    value = float(value)
    if not np.isfinite(value):
        return False
    return float(Fraction(value).limit_denominator(max_denominator)) == value
