import numpy as np

from ..core import Domain
from ..exceptions import CatalogError, DomainError


class SourceBase:
    """Abstract function source / plugin class.
    An evaluatable bivariate function f(x, y) on a declared domain.

    Subclasses MUST override evaluate() and the following fields.
    """

    # The catalog name, e.g. 'plane'. 'base' means not in the catalog.
    name = "base"
    # A short label for the function
    label = "Abstract function"
    # A sentence describing the function
    description = ""
    # Flags, each one exercised by the test suite
    continuous = True
    bounded_variation = True
    # Hoelder exponent if known, else None
    holder = None
    # True when the value does not depend on y (can be used as g(t))
    univariate = False
    # (name, default) of each positional catalog parameter
    params = ()

    def __init__(self, *args):
        if len(args) > len(self.params):
            raise CatalogError(
                "{} takes at most {} parameter(s), got {}".format(
                    self.name, len(self.params), len(args)
                ),
                "fn",
            )
        self.args = {}
        for i, (param, default) in enumerate(self.params):
            value = args[i] if i < len(args) else default
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise CatalogError(
                    "parameter {} of {} must be a number, got {!r}".format(
                        param, self.name, value
                    ),
                    "fn",
                )
            self.args[param] = value

    @property
    def domain(self):
        return Domain.everywhere()

    def evaluate(self, x, y):
        """TO BE OVERRIDDEN
        x, y: broadcastable arrays; returns an array of values.
        Must be pure: the same point always gives the same value.
        """
        raise NotImplementedError()

    def __call__(self, x, y):
        '''Scalar evaluation with a domain check.'''
        if not self.domain.contains_points(x, y):
            raise DomainError(
                "({}, {}) is outside the domain of {}".format(x, y, self), "point"
            )
        return float(self.evaluate(np.atleast_1d(float(x)), np.atleast_1d(float(y)))[0])

    def evaluate_1d(self, t):
        '''g(t) for univariate sources.'''
        t = np.asarray(t, dtype=float)
        return self.evaluate(t, np.zeros_like(t))

    def bound(self, rect):
        """A known M >= sup |f| over rect, None if unknown."""
        return None

    def __str__(self):
        if self.args:
            return "{}:{}".format(
                self.name, ",".join("{:g}".format(v) for v in self.args.values())
            )
        return self.name

    def __repr__(self):
        return "<{} {}>".format(self.__class__.__name__, self)


class ShiftedSource(SourceBase):
    """source translated by (dx, dy): g(x, y) = source(x - dx, y - dy)"""

    def __init__(self, source, dx, dy=None):
        super().__init__()
        self.source = source
        self.dx = float(dx)
        self.dy = self.dx if dy is None else float(dy)
        self.continuous = source.continuous
        self.bounded_variation = source.bounded_variation
        self.holder = source.holder
        self.univariate = source.univariate

    @property
    def domain(self):
        return self.source.domain.shifted(self.dx, self.dy)

    def evaluate(self, x, y):
        return self.source.evaluate(np.asarray(x) - self.dx, np.asarray(y) - self.dy)

    def bound(self, rect):
        return self.source.bound(rect.shifted(-self.dx, -self.dy))

    def __str__(self):
        return "{}@shift({:g},{:g})".format(self.source, self.dx, self.dy)


class LinearCombination(SourceBase):
    """sum of weight * source"""

    def __init__(self, terms):
        super().__init__()
        self.terms = [(float(w), s) for w, s in terms]
        sources = [s for _, s in self.terms]
        self.continuous = all(s.continuous for s in sources)
        self.bounded_variation = all(s.bounded_variation for s in sources)

    @property
    def domain(self):
        ret = self.terms[0][1].domain
        for _, s in self.terms[1:]:
            other = s.domain
            ret = Domain(
                max(ret.a, other.a),
                min(ret.b, other.b),
                max(ret.c, other.c),
                min(ret.d, other.d),
            )
        return ret

    def evaluate(self, x, y):
        ret = 0.0
        for weight, s in self.terms:
            ret = ret + weight * s.evaluate(x, y)
        return ret

    def bound(self, rect):
        bounds = [s.bound(rect) for _, s in self.terms]
        if any(b is None for b in bounds):
            return None
        return sum(abs(w) * b for (w, _), b in zip(self.terms, bounds))

    def __str__(self):
        return " + ".join("{:g}*{}".format(w, s) for w, s in self.terms)
