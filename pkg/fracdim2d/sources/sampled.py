import numpy as np

from ..core import GridSamples
from .base import SourceBase


class SampledSource(SourceBase):
    """
    Bilinear interpolation of GridSamples.
    Exact at the grid nodes; second order accurate in the grid steps
    for functions with bounded second derivatives.
    """

    label = "Sampled data"
    description = "bilinear interpolation of samples on a uniform grid"
    holder = None

    def __init__(self, samples, origin=None):
        super().__init__()
        self.samples = samples
        self.origin = origin
        self._xs = samples.spec.xs
        self._ys = samples.spec.ys
        self._values = samples.array

    @classmethod
    def from_file(cls, path):
        return cls(GridSamples.load(path), origin=path)

    @property
    def domain(self):
        return self.samples.spec.rect

    def evaluate(self, x, y):
        x, y = np.broadcast_arrays(
            np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        )
        xs, ys, v = self._xs, self._ys, self._values

        i = np.clip(np.searchsorted(xs, x, side="right") - 1, 0, len(xs) - 2)
        j = np.clip(np.searchsorted(ys, y, side="right") - 1, 0, len(ys) - 2)
        tx = (x - xs[i]) / (xs[i + 1] - xs[i])
        ty = (y - ys[j]) / (ys[j + 1] - ys[j])

        return (
            v[i, j] * (1 - tx) * (1 - ty)
            + v[i + 1, j] * tx * (1 - ty)
            + v[i, j + 1] * (1 - tx) * ty
            + v[i + 1, j + 1] * tx * ty
        )

    def bound(self, rect):
        # bilinear interpolation never leaves the range of the nodes
        return float(np.max(np.abs(self._values)))

    def __str__(self):
        if self.origin:
            return "csv:{}".format(self.origin)
        return "sampled({}x{})".format(self.samples.spec.m, self.samples.spec.n)
