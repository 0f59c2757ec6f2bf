import numpy as np

from ..exceptions import CatalogError
from .base import SourceBase


class SourceWeierstrass(SourceBase):
    """
    W(x, y) = sum_{k=0}^{K} lambda^{(s-3)k} (sin(lambda^k x) + sin(lambda^k y))

    Hoelder continuous with exponent 3 - s, graph box dimension close to s
    at the scales resolved by the K terms.
    """

    name = "weierstrass"
    label = "Weierstrass-type surface"
    description = "rough surface, Hoelder exponent 3 - s"
    bounded_variation = False
    holder = 0.5
    params = (("lambda", 2.0), ("s", 2.5), ("terms", 12))

    def __init__(self, *args):
        super().__init__(*args)
        if not self.args["lambda"] > 1:
            raise CatalogError("weierstrass: lambda must be > 1", "fn")
        if not 2 < self.args["s"] < 3:
            raise CatalogError("weierstrass: s must be in (2, 3)", "fn")
        terms = self.args["terms"]
        if terms != int(terms) or terms < 0:
            raise CatalogError("weierstrass: terms must be an integer >= 0", "fn")
        self.holder = 3 - self.args["s"]

    def _amplitudes(self):
        lam, s = self.args["lambda"], self.args["s"]
        k = np.arange(int(self.args["terms"]) + 1)
        return lam ** ((s - 3) * k), lam ** k

    def evaluate(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        ret = 0.0
        for amplitude, frequency in zip(*self._amplitudes()):
            ret = ret + amplitude * (np.sin(frequency * x) + np.sin(frequency * y))
        return ret

    def bound(self, rect):
        return float(2 * np.sum(self._amplitudes()[0]))
