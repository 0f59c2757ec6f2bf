"""
Box-counting dimension of the graph of a sampled function.

The rectangle is cut into m x n delta-cells (the last row and column
absorb the remainder). With R the oscillation of f over a closed cell,
the number N of delta-cubes meeting the graph satisfies

    sum max(R / delta, 1) <= N <= 2 m n + sum R / delta

and the dimension is the slope of log N against log(1 / delta).
"""
import csv
import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import linregress

from .exceptions import FitError, ParameterError, ResolutionError, SizeError
from .settings import get_var

logger = logging.getLogger(__name__)

# slack for comparisons of ratios that should be integers
TOLERANCE = 1e-9

WHICH = ("lower", "upper")


@dataclass(frozen=True)
class BoxCount:
    delta: float
    n_lower: int
    n_upper: int
    m: int
    n: int

    def count(self, which):
        return self.n_lower if which == "lower" else self.n_upper

    def as_dict(self):
        return {
            "delta": self.delta,
            "n_lower": self.n_lower,
            "n_upper": self.n_upper,
            "m": self.m,
            "n": self.n,
        }


@dataclass(frozen=True)
class DimensionFit:
    points: tuple
    slope: float
    intercept: float
    r_squared: float
    which: str
    dropped: tuple = ()
    counts: tuple = field(default=(), repr=False)

    def as_dict(self):
        return {
            "points": [list(p) for p in self.points],
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "which": self.which,
            "dropped": list(self.dropped),
        }

    def to_json(self, fh):
        json.dump(self.as_dict(), fh, sort_keys=True)
        fh.write("\n")


def _cells(lo, hi, count, delta):
    """Cuts the axis [lo, hi] sampled at count nodes into delta-cells.

    Returns (closed, half_open): for each cell, the first and last
    index of the nodes in the closed cell, and of the nodes
    in [edge_k, edge_k+1) (the last cell is closed).
    """
    length = hi - lo
    step = length / (count - 1)
    cells = max(1, math.ceil(length / delta - TOLERANCE))
    first = [math.ceil(k * delta / step - TOLERANCE) for k in range(cells)]
    last = [
        min(count - 1, math.floor((k + 1) * delta / step + TOLERANCE))
        for k in range(cells)
    ]
    last[-1] = count - 1
    half_open = [
        (first[k], first[k + 1] - 1 if k + 1 < cells else count - 1)
        for k in range(cells)
    ]
    return list(zip(first, last)), half_open


def _partition(spec, delta):
    rect = spec.rect
    if not 0 < delta < min(rect.width, rect.height):
        raise ResolutionError(
            "delta={} must be in (0, {})".format(
                delta, min(rect.width, rect.height)
            ),
            "deltas",
        )
    xcells, xinner = _cells(rect.a, rect.b, spec.m, delta)
    ycells, yinner = _cells(rect.c, rect.d, spec.n, delta)
    minimum = get_var("MIN_CELL_NODES")
    for first, last in xcells + ycells:
        if last - first + 1 < minimum:
            raise ResolutionError(
                "the {}x{} grid is too coarse for delta={}: a cell holds fewer "
                "than {} nodes per axis".format(spec.m, spec.n, delta, minimum),
                "deltas",
            )
    return xcells, xinner, ycells, yinner


def _oscillations(values, xcells, ycells):
    '''(m, n) array of max - min over each closed cell'''
    high = np.empty((len(xcells), values.shape[1]))
    low = np.empty_like(high)
    for k, (first, last) in enumerate(xcells):
        high[k] = values[first : last + 1].max(axis=0)
        low[k] = values[first : last + 1].min(axis=0)
    ret = np.empty((len(xcells), len(ycells)))
    for l, (first, last) in enumerate(ycells):
        ret[:, l] = (
            high[:, first : last + 1].max(axis=1) - low[:, first : last + 1].min(axis=1)
        )
    return ret


def oscillation_counts(g, delta):
    """Both box-count bounds for the delta-mesh."""
    delta = float(delta)
    xcells, _, ycells, _ = _partition(g.spec, delta)
    ratios = _oscillations(g.array, xcells, ycells) / delta
    m, n = ratios.shape
    return BoxCount(
        delta=delta,
        n_lower=int(math.ceil(float(np.sum(np.maximum(ratios, 1.0))) - TOLERANCE)),
        n_upper=int(math.floor(2 * m * n + float(np.sum(ratios)) + TOLERANCE)),
        m=m,
        n=n,
    )


def boxcount_bruteforce_3d(g, delta):
    """Number of delta-cubes of the mesh over [a,b] x [c,d] x [min f, max f]
    meeting the graph.

    Cubes and cells are half-open, closed on the far boundary of the
    mesh. Over a cell, the graph takes every value between the smallest
    and largest sample of the closed cell; the largest is excluded when
    it is only reached on the far edges of the cell.
    """
    delta = float(delta)
    spec = g.spec
    limit = get_var("ORACLE_MAX_CELLS")
    if spec.m * spec.n > limit:
        raise SizeError(
            "the 3D oracle is limited to {} samples (got {}x{})".format(
                limit, spec.m, spec.n
            ),
            "grid",
        )
    xcells, xinner, ycells, yinner = _partition(spec, delta)
    values = g.array
    bottom, top = float(values.min()), float(values.max())
    layers = max(1, math.ceil((top - bottom) / delta - TOLERANCE))

    ret = 0
    for (x0, x1), (u0, u1) in zip(xcells, xinner):
        for (y0, y1), (v0, v1) in zip(ycells, yinner):
            block = values[x0 : x1 + 1, y0 : y1 + 1]
            low, high = float(block.min()), float(block.max())
            first = min(math.floor((low - bottom) / delta), layers - 1)
            position = (high - bottom) / delta
            last = min(math.floor(position), layers - 1)
            reached = float(values[u0 : u1 + 1, v0 : v1 + 1].max()) == high
            if not reached and last == position and last > first:
                # open at the top, on the bottom face of the cube
                last -= 1
            ret += last - first + 1
    return ret


def default_deltas(spec):
    """min(width, height) / 4 halved down to 8 grid spacings"""
    rect = spec.rect
    delta = min(rect.width, rect.height) / 4
    finest = 8 * max(spec.hx, spec.hy)
    ret = []
    while delta >= finest * (1 - TOLERANCE):
        ret.append(delta)
        delta /= 2
    return ret


def _check_which(which):
    if which not in WHICH:
        raise ParameterError(
            "which must be one of {} (got {})".format(", ".join(WHICH), which),
            "which",
        )


def _fit(points, which, dropped=(), counts=()):
    points = sorted(points, key=lambda p: -p[0])
    minimum = get_var("MIN_FIT_POINTS")
    if len(points) < minimum:
        raise FitError(
            "{} usable deltas, at least {} are needed (dropped: {})".format(
                len(points), minimum, list(dropped)
            ),
            "deltas",
        )
    deltas = np.array([p[0] for p in points], dtype=float)
    values = np.array([p[1] for p in points], dtype=float)
    if np.any(deltas <= 0) or np.any(values <= 0):
        raise FitError("deltas and counts must be positive", "deltas")
    fit = linregress(np.log(1 / deltas), np.log(values))
    return DimensionFit(
        points=tuple((float(d), c) for d, c in points),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue ** 2),
        which=which,
        dropped=tuple(dropped),
        counts=tuple(counts),
    )


def dimension_fit(g, deltas=None, which="lower"):
    """Least-squares slope of log N_delta against log(1 / delta).

    Deltas the grid cannot resolve are dropped and reported.
    """
    _check_which(which)
    if deltas is None:
        deltas = default_deltas(g.spec)

    counts, dropped = [], []
    for delta in deltas:
        try:
            counts.append(oscillation_counts(g, delta))
        except ResolutionError as e:
            logger.debug("dropped delta=%g: %s", delta, e)
            dropped.append(float(delta))

    points = [(c.delta, c.count(which)) for c in counts]
    counts = sorted(counts, key=lambda c: -c.delta)
    return _fit(points, which, dropped, counts)


def dimension_fit_counts(points, which="lower"):
    '''Fit from (delta, count) pairs supplied by the caller.'''
    _check_which(which)
    return _fit(list(points), which)


# CSV


def write_counts_csv(fh, fit, oracle=None):
    """delta,count_lower,count_upper[,count_oracle] per delta.
    oracle: {delta: count}
    """
    writer = csv.writer(fh, lineterminator="\n")
    header = ["delta", "count_lower", "count_upper"]
    if oracle is not None:
        header.append("count_oracle")
    writer.writerow(header)
    for count in fit.counts:
        row = ["{:.17g}".format(count.delta), count.n_lower, count.n_upper]
        if oracle is not None:
            row.append(oracle[count.delta])
        writer.writerow(row)


def read_counts_csv(fh, which="lower"):
    """[(delta, count), ...] from a CSV with a 'delta' column and a
    'count' or 'count_<which>' column.
    """
    _check_which(which)
    reader = csv.DictReader(fh)
    fields = reader.fieldnames or []
    column = "count" if "count" in fields else "count_" + which
    if "delta" not in fields or column not in fields:
        raise ParameterError(
            "counts CSV needs the columns delta and count (or {})".format(
                "count_" + which
            ),
            "counts-from",
        )
    try:
        return [(float(row["delta"]), float(row[column])) for row in reader]
    except (TypeError, ValueError) as e:
        raise ParameterError("invalid counts CSV: {}".format(e), "counts-from")
