"""
Domain types and grid plumbing shared by the other modules.

Grids are uniform, endpoint-inclusive and stored row-major
(x index major): values[i * n + j] is the sample at (xs[i], ys[j]).
"""
import csv
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, NumericError, ParameterError
from .settings import get_threads

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Domain:
    """Closed box [a,b] x [c,d]. Bounds may be infinite."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in "abcd":
            value = getattr(self, name)
            if value is None or math.isnan(value):
                raise DomainError("{} must be a number".format(name), name)
            object.__setattr__(self, name, float(value))
        if not self.a < self.b:
            raise DomainError(
                "empty domain: a={} is not < b={}".format(self.a, self.b), "rect"
            )
        if not self.c < self.d:
            raise DomainError(
                "empty domain: c={} is not < d={}".format(self.c, self.d), "rect"
            )

    @classmethod
    def everywhere(cls):
        return Domain(-math.inf, math.inf, -math.inf, math.inf)

    @classmethod
    def from_string(cls, value):
        '''"a,b,c,d" -> instance of cls'''
        try:
            parts = [float(v) for v in str(value).split(",")]
        except ValueError:
            raise ParameterError("rect must be a,b,c,d: {}".format(value), "rect")
        if len(parts) != 4:
            raise ParameterError("rect must be a,b,c,d: {}".format(value), "rect")
        return cls(*parts)

    @property
    def width(self):
        return self.b - self.a

    @property
    def height(self):
        return self.d - self.c

    def contains(self, other):
        return (
            self.a <= other.a
            and other.b <= self.b
            and self.c <= other.c
            and other.d <= self.d
        )

    def contains_points(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        return (self.a <= x) & (x <= self.b) & (self.c <= y) & (y <= self.d)

    def shifted(self, dx, dy):
        return Domain(self.a + dx, self.b + dx, self.c + dy, self.d + dy)

    def as_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


@dataclass(frozen=True)
class Rectangle(Domain):
    """Operator domain: 0 < a < b < inf and 0 < c < d < inf."""

    def __post_init__(self):
        super().__post_init__()
        if not (0 < self.a and 0 < self.c):
            raise DomainError(
                "the operator domain needs 0 < a and 0 < c (got a={}, c={}),"
                " use a shift".format(self.a, self.c),
                "rect",
            )
        if math.isinf(self.b) or math.isinf(self.d):
            raise DomainError("the operator domain must be bounded", "rect")

    @classmethod
    def from_domain(cls, domain):
        if isinstance(domain, Rectangle):
            return domain
        return Rectangle(domain.a, domain.b, domain.c, domain.d)


@dataclass(frozen=True)
class FracOrder:
    """Orders (alpha, beta) and exponents (p, q) of the mixed integral."""

    alpha: float
    beta: float
    p: float = 0.0
    q: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "p", "q"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ParameterError("{} must be a number".format(name), name)
            if not math.isfinite(value):
                raise ParameterError("{} must be finite".format(name), name)
            object.__setattr__(self, name, value)
        if not self.alpha > 0:
            raise ParameterError("alpha must be > 0", "alpha")
        if not self.beta > 0:
            raise ParameterError("beta must be > 0", "beta")
        if not self.p > -1:
            raise ParameterError(
                "p must be > -1 (use the hadamard operator for the limit)", "p"
            )
        if not self.q > -1:
            raise ParameterError(
                "q must be > -1 (use the hadamard operator for the limit)", "q"
            )

    def plus(self, other):
        '''Order of the composition of self with other (shared p, q).'''
        return FracOrder(
            self.alpha + other.alpha, self.beta + other.beta, self.p, self.q
        )


@dataclass(frozen=True)
class GridSpec:
    rect: Domain
    m: int
    n: int

    def __post_init__(self):
        for name in ("m", "n"):
            value = getattr(self, name)
            try:
                valid = int(value) == value and value >= 2
            except (TypeError, ValueError, OverflowError):
                valid = False
            if not valid:
                raise ParameterError(
                    "{} must be an integer >= 2 (got {})".format(name, value), "grid"
                )
            object.__setattr__(self, name, int(value))
        if math.isinf(self.rect.width) or math.isinf(self.rect.height):
            raise DomainError("a grid needs a bounded rectangle", "rect")

    @classmethod
    def square(cls, rect, size):
        return cls(rect, size, size)

    @property
    def xs(self):
        return _axis(self.rect.a, self.rect.b, self.m)

    @property
    def ys(self):
        return _axis(self.rect.c, self.rect.d, self.n)

    @property
    def hx(self):
        return self.rect.width / (self.m - 1)

    @property
    def hy(self):
        return self.rect.height / (self.n - 1)

    def node(self, i, j):
        return self.xs[i], self.ys[j]


def _axis(lo, hi, count):
    ret = lo + np.arange(count) * ((hi - lo) / (count - 1))
    ret[-1] = hi
    return ret


@dataclass(frozen=True)
class GridSamples:
    spec: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size != self.spec.m * self.spec.n:
            raise ParameterError(
                "expected {} values, got {}".format(
                    self.spec.m * self.spec.n, values.size
                ),
                "values",
            )
        if not np.all(np.isfinite(values)):
            raise NumericError("grid samples must be finite", "values")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def array(self):
        '''values as a (m, n) array, array[i, j] at (xs[i], ys[j])'''
        return self.values.reshape(self.spec.m, self.spec.n)

    def value(self, i, j):
        return float(self.values[i * self.spec.n + j])

    def __eq__(self, other):
        if not isinstance(other, GridSamples):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.values, other.values)

    __hash__ = None

    # serialisation

    def to_csv(self, fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "y", "value"])
        xs, ys = self.spec.xs, self.spec.ys
        arr = self.array
        for i in range(self.spec.m):
            for j in range(self.spec.n):
                writer.writerow([_fmt(xs[i]), _fmt(ys[j]), _fmt(arr[i, j])])

    @classmethod
    def from_csv(cls, fh):
        """Reads a CSV written by to_csv().
        The grid size and rectangle are inferred from the node coordinates.
        """
        rows = []
        first_line = True
        for line in csv.reader(fh):
            if first_line:
                first_line = False
                if [c.strip() for c in line] != ["x", "y", "value"]:
                    raise ParameterError(
                        "CSV header must be x,y,value", "fn"
                    )
                continue
            if not line:
                continue
            try:
                rows.append([float(c) for c in line])
            except ValueError:
                raise ParameterError("non numeric CSV row: {}".format(line), "fn")

        if not rows:
            raise ParameterError("CSV file has no samples", "fn")
        data = np.array(rows)
        xs = _unique_sorted(data[:, 0])
        ys = _unique_sorted(data[:, 1])
        m, n = len(xs), len(ys)
        if m * n != len(rows):
            raise ParameterError(
                "CSV rows do not form a {}x{} grid".format(m, n), "fn"
            )
        expected_x = np.repeat(xs, n)
        expected_y = np.tile(ys, m)
        if not (
            np.array_equal(data[:, 0], expected_x)
            and np.array_equal(data[:, 1], expected_y)
        ):
            raise ParameterError("CSV rows are not in row-major grid order", "fn")
        spec = GridSpec(Domain(xs[0], xs[-1], ys[0], ys[-1]), m, n)
        return cls(spec, data[:, 2])

    def as_dict(self):
        return {
            "rect": self.spec.rect.as_dict(),
            "m": self.spec.m,
            "n": self.spec.n,
            "values": [float(v) for v in self.values],
        }

    def to_json(self, fh):
        json.dump(self.as_dict(), fh, sort_keys=True)
        fh.write("\n")

    @classmethod
    def from_json(cls, fh):
        try:
            data = json.load(fh)
            rect = data["rect"]
            spec = GridSpec(
                Domain(rect["a"], rect["b"], rect["c"], rect["d"]),
                data["m"],
                data["n"],
            )
            return cls(spec, data["values"])
        except (KeyError, TypeError, ValueError) as e:
            raise ParameterError("invalid grid JSON: {}".format(e), "fn")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            if str(path).lower().endswith(".json"):
                return cls.from_json(fh)
            return cls.from_csv(fh)

    def save(self, path, fmt="csv"):
        with open(path, "w", newline="") as fh:
            if fmt == "json":
                self.to_json(fh)
            else:
                self.to_csv(fh)


def _fmt(value):
    return "{:.17g}".format(float(value))


def _unique_sorted(values):
    return np.unique(np.asarray(values, dtype=float))


# sampling


def sample(src, spec, threads=None):
    """Evaluates src at every node of spec.

    Rows are the unit of work: each row is evaluated with the same
    array shapes whatever the number of threads, so parallel and
    sequential runs give identical bits.
    """
    if not src.domain.contains(spec.rect):
        raise DomainError(
            "grid rectangle {} is outside the domain {} of {}".format(
                spec.rect.as_dict(), src.domain.as_dict(), src
            ),
            "rect",
        )

    xs, ys = spec.xs, spec.ys
    out = np.empty((spec.m, spec.n))

    def row(i):
        out[i, :] = src.evaluate(np.full(spec.n, xs[i]), ys)

    for_each(row, range(spec.m), threads)

    if not np.all(np.isfinite(out)):
        raise NumericError("{} returned non-finite values".format(src), "fn")

    return GridSamples(spec, out)


def for_each(func, items, threads=None):
    """Calls func(item) for each item, on a pool of threads if more than one.
    func must only write to disjoint slots.
    """
    items = list(items)
    threads = min(get_threads(threads), max(1, len(items)))
    if threads == 1:
        for item in items:
            func(item)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # list() re-raises the first exception
            list(pool.map(func, items))


# summation


class Accumulator:
    """Running compensated sum (error-free transformation of each addition)."""

    @staticmethod
    def two_sum(u, v):
        # u + v == s + t exactly
        s = u + v
        up = s - v
        vpp = s - up
        up -= u
        vpp -= v
        t = -(up + vpp)
        return s, t

    def __init__(self, value=0.0):
        self._s = float(value)
        self._t = 0.0

    def add(self, value):
        value, u = self.two_sum(value, self._t)
        self._s, self._t = self.two_sum(value, self._s)
        if self._s == 0:
            self._s = u
        else:
            self._t += u

    @property
    def sum(self):
        return self._s + self._t


def stable_sum(terms):
    """Compensated sum of terms, added in the given order."""
    acc = Accumulator()
    for term in terms:
        term = float(term)
        if not math.isfinite(term):
            raise NumericError("cannot sum a non-finite term: {}".format(term))
        acc.add(term)
    return acc.sum
