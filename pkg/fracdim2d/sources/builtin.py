import numpy as np

from .base import SourceBase


def _full(x, y, value):
    return np.full(np.broadcast(np.asarray(x), np.asarray(y)).shape, float(value))


class SourceConstant(SourceBase):
    name = "constant"
    label = "Constant"
    description = "f(x, y) = k"
    holder = 1.0
    univariate = True
    params = (("k", 1.0),)

    def evaluate(self, x, y):
        return _full(x, y, self.args["k"])

    def bound(self, rect):
        return abs(self.args["k"])


class SourcePlane(SourceBase):
    name = "plane"
    label = "Plane"
    description = "f(x, y) = x + y, coordinatewise increasing"
    holder = 1.0

    def evaluate(self, x, y):
        return np.asarray(x, dtype=float) + np.asarray(y, dtype=float)

    def bound(self, rect):
        return max(abs(rect.a + rect.c), abs(rect.b + rect.d))


class SourceProduct(SourceBase):
    name = "product"
    label = "Product sine"
    description = "f(x, y) = sin(x y)"
    holder = 1.0

    def evaluate(self, x, y):
        return np.sin(np.asarray(x, dtype=float) * np.asarray(y, dtype=float))

    def bound(self, rect):
        return 1.0


class SourceLinearX(SourceBase):
    name = "linear-x"
    label = "Linear in x"
    description = "f(x, y) = x, i.e. g(t) = t"
    holder = 1.0
    univariate = True

    def evaluate(self, x, y):
        return np.asarray(x, dtype=float) + 0.0 * np.asarray(y, dtype=float)

    def bound(self, rect):
        return max(abs(rect.a), abs(rect.b))


class SourceSineX(SourceBase):
    name = "sine-x"
    label = "Sine in x"
    description = "f(x, y) = sin x, i.e. g(t) = sin t"
    holder = 1.0
    univariate = True

    def evaluate(self, x, y):
        return np.sin(np.asarray(x, dtype=float)) + 0.0 * np.asarray(y, dtype=float)

    def bound(self, rect):
        return 1.0
