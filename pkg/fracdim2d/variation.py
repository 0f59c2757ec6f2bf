"""
Variation in the sense of Arzela of sampled bivariate functions:
the supremum of sum |f(P_k+1) - f(P_k)| over chains of points
nondecreasing in both coordinates.
"""
import json
import logging
from dataclasses import dataclass

import numpy as np

from .core import GridSamples, GridSpec, sample, stable_sum
from .exceptions import NumericError, ParameterError, SizeError
from .settings import get_var

logger = logging.getLogger(__name__)

# predecessor codes, in tie-breaking order
LEFT, DOWN, DIAGONAL, START = 0, 1, 2, 3


@dataclass(frozen=True)
class VariationResult:
    value: float
    path: tuple

    def as_dict(self):
        return {"value": self.value, "path": [list(p) for p in self.path]}

    def to_json(self, fh):
        json.dump(self.as_dict(), fh, sort_keys=True)
        fh.write("\n")


def _as_array(g):
    if isinstance(g, GridSamples):
        return g.array
    ret = np.asarray(g, dtype=float)
    if ret.ndim != 2 or not ret.size:
        raise ParameterError("expected a non empty 2D array of samples", "values")
    if not np.all(np.isfinite(ret)):
        raise NumericError("samples must be finite", "values")
    return ret


def arzela_variation(g, pinned=False):
    """Grid Arzela variation by dynamic programming over saturated chains.

    g: GridSamples or a 2D array, g[i, j] at (x_i, y_j).
    best(i, j) is the largest sum over chains ending at (i, j); the
    predecessors of (i, j) are (i-1, j), (i, j-1) and (i-1, j-1).
    The table is filled one anti-diagonal at a time.

    pinned: only chains from (0, 0) to (m-1, n-1).
    """
    values = _as_array(g)
    m, n = values.shape
    best = np.full((m, n), -np.inf)
    pred = np.full((m, n), START, dtype=np.int8)

    for s in range(m + n - 1):
        i = np.arange(max(0, s - n + 1), min(s, m - 1) + 1)
        j = s - i
        here = values[i, j]
        candidates = np.full((4, i.size), -np.inf)
        for code, di, dj in ((LEFT, 1, 0), (DOWN, 0, 1), (DIAGONAL, 1, 1)):
            ok = (i >= di) & (j >= dj)
            pi, pj = i[ok] - di, j[ok] - dj
            candidates[code, ok] = best[pi, pj] + np.abs(here[ok] - values[pi, pj])
        if pinned:
            candidates[START] = np.where((i == 0) & (j == 0), 0.0, -np.inf)
        else:
            candidates[START] = 0.0
        # argmax returns the first maximum: the tie-breaking order
        choice = np.argmax(candidates, axis=0)
        best[i, j] = candidates[choice, np.arange(i.size)]
        pred[i, j] = choice

    if pinned:
        end = (m - 1, n - 1)
    else:
        end = np.unravel_index(int(np.argmax(best)), best.shape)

    path = [tuple(int(v) for v in end)]
    while pred[path[-1]] != START:
        i, j = path[-1]
        code = pred[i, j]
        path.append((i - int(code != DOWN), j - int(code != LEFT)))
    path.reverse()

    return VariationResult(float(best[end]), tuple(path))


def arzela_variation_bruteforce(g):
    """Exhaustive maximum over every monotone chain, saturated or not.
    Only for grids with up to FRACDIM2D_BRUTEFORCE_MAX_NODES nodes.
    """
    values = _as_array(g)
    m, n = values.shape
    limit = get_var("BRUTEFORCE_MAX_NODES")
    if m * n > limit:
        raise SizeError(
            "brute force is limited to {} nodes (got {}x{})".format(limit, m, n),
            "grid",
        )

    def extend(i, j, acc):
        ret = acc
        for k in range(i, m):
            for l in range(j, n):
                if (k, l) != (i, j):
                    step = acc + abs(values[k, l] - values[i, j])
                    ret = max(ret, extend(k, l, step))
        return ret

    return float(max(extend(i, j, 0.0) for i in range(m) for j in range(n)))


def row_variation(values):
    '''1D total variation sum |v[k+1] - v[k]|'''
    values = np.asarray(values, dtype=float).reshape(-1)
    return stable_sum(np.abs(np.diff(values)))


def variation_trend(src, rect, levels, pinned=False, sampler=None, threads=None):
    """[(level, variation), ...] with src sampled on (level + 1)^2 grids.

    Doubling levels gives nested grids, so a trend can only increase.
    sampler(spec) -> GridSamples replaces plain sampling of src,
    e.g. to measure the variation of an integral of src.
    """
    levels = [int(level) for level in levels]
    if not levels:
        raise ParameterError("no levels given", "levels")
    if levels[0] < 2 or any(a >= b for a, b in zip(levels, levels[1:])):
        raise ParameterError(
            "levels must be strictly increasing and >= 2 (got {})".format(levels),
            "levels",
        )

    ret = []
    for level in levels:
        spec = GridSpec(rect, level + 1, level + 1)
        samples = sampler(spec) if sampler else sample(src, spec, threads)
        value = arzela_variation(samples, pinned=pinned).value
        logger.debug("variation level %d: %r", level, value)
        ret.append((level, value))
    return ret
