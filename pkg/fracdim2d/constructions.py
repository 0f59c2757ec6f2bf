"""
Limit constructions over a generating function, and the function catalog.

Given a generating function phi on [a0, a1] x [c, d] with
phi(a0, y) == phi(a1, y), the domain [a, b] x [c, d] is cut at
a_n = a + (b - a)(1 - 2^-n) and the n-th piece is

    F_n(x, y) = phi(psi_n(x), y) / n + (n - 1) / n * phi(a0, y)

where psi_n maps [a_{n-1}, a_n] affinely onto [a0, a1].
"""
import logging

import numpy as np

from .core import Domain, GridSamples
from .exceptions import CatalogError, DomainError, ParameterError
from .settings import get_var
from .sources.base import SourceBase

logger = logging.getLogger(__name__)


def sequence_a(n, a, b):
    '''a_n = a + (b - a)(1 - 2^-n), n may be an integer array'''
    return a + (b - a) * (1 - np.exp2(-np.asarray(n, dtype=float)))


def psi_n(x, n, a, b):
    '''Affine map of [a_{n-1}, a_n] onto [a_0, a_1].'''
    n = int(n)
    if n < 1:
        raise ParameterError("n must be >= 1 (got {})".format(n), "n")
    lo, hi = sequence_a(n - 1, a, b), sequence_a(n, a, b)
    if not lo <= x <= hi:
        raise DomainError(
            "x={} is outside the piece [{}, {}] of psi_{}".format(x, lo, hi, n),
            "x",
        )
    return float(_psi(np.asarray(x, dtype=float), n, a, b))


def _psi(x, n, a, b):
    a0, a1 = a, sequence_a(1, a, b)
    an, an1 = sequence_a(n, a, b), sequence_a(n - 1, a, b)
    return np.exp2(n) * ((a1 - a0) * x + a0 * an - a1 * an1) / (b - a)


class TConstruction(SourceBase):
    """T(x, y) = lim T_n(x, y), materialised up to `depth` pieces.

    Beyond a_depth the exact limit value phi(a0, y) is used.
    """

    label = "Limit construction"
    description = "continuous, unbounded variation, box dimension 2"
    bounded_variation = False

    def __init__(self, domain, phi, depth=None):
        super().__init__()
        self._setup(domain, phi, depth)

    def _setup(self, domain, phi, depth):
        if depth is None:
            depth = get_var("T_DEPTH")
        if int(depth) != depth or depth < 1:
            raise ParameterError(
                "depth must be an integer >= 1 (got {})".format(depth), "depth"
            )
        if domain.a < 0 or domain.c < 0:
            raise DomainError(
                "a construction domain needs a >= 0 and c >= 0", "rect"
            )
        if np.isinf(domain.b) or np.isinf(domain.d):
            raise DomainError("a construction domain must be bounded", "rect")

        self.rect = domain
        self.phi = phi
        self.depth = int(depth)
        self.continuous = phi.continuous
        self.a0 = domain.a
        self.a1 = float(sequence_a(1, domain.a, domain.b))
        # a_0 .. a_depth
        self.breaks = sequence_a(np.arange(self.depth + 1), domain.a, domain.b)

        piece = Domain(self.a0, self.a1, domain.c, domain.d)
        if not phi.domain.contains(piece):
            raise DomainError(
                "{} is not defined on the first piece {}".format(
                    phi, piece.as_dict()
                ),
                "phi",
            )
        self.check_compatibility()

    def check_compatibility(self):
        '''phi(a0, y) == phi(a1, y) on the verification samples'''
        ys = np.linspace(self.rect.c, self.rect.d, get_var("COMPAT_SAMPLES"))
        left = self.phi.evaluate(np.full_like(ys, self.a0), ys)
        right = self.phi.evaluate(np.full_like(ys, self.a1), ys)
        scale = max(1.0, float(np.max(np.abs(left))), float(np.max(np.abs(right))))
        gap = float(np.max(np.abs(left - right)))
        if gap > get_var("COMPAT_TOLERANCE") * scale:
            raise ParameterError(
                "{} violates phi(a0, y) = phi(a1, y): gap {:.3g}".format(
                    self.phi, gap
                ),
                "phi",
            )

    @property
    def domain(self):
        return self.rect

    def piece_index(self, x):
        '''k such that x is in [a_{k-1}, a_k), depth + 1 on the tail'''
        return np.searchsorted(self.breaks, np.asarray(x, dtype=float), side="right")

    def piece(self, k, x, y):
        '''F_k(x, y) without locating x'''
        x, y = np.broadcast_arrays(
            np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        )
        base = self.phi.evaluate(np.full(x.shape, self.a0), y)
        if k == 1:
            u = x
        else:
            u = np.clip(_psi(x, k, self.rect.a, self.rect.b), self.a0, self.a1)
        return self.phi.evaluate(u, y) / k + (k - 1) / k * base

    def evaluate(self, x, y):
        x, y = np.broadcast_arrays(
            np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        )
        k = self.piece_index(x)
        ret = np.array(self.phi.evaluate(np.full(x.shape, self.a0), y), dtype=float)
        for piece in np.unique(k[k <= self.depth]):
            sel = k == piece
            ret[sel] = self.piece(int(piece), x[sel], y[sel])
        return ret

    def bound(self, rect):
        # every value is a convex combination of values of phi
        return self.phi.bound(Domain(self.a0, self.a1, self.rect.c, self.rect.d))

    def __str__(self):
        if self.name != "base":
            return super().__str__()
        return "t:{}".format(self.phi)


def t_eval(tc, x, y):
    return tc(x, y)


def amplitude(tc, k, samples=65):
    """sup |F_k - phi(a0, .)| over [a_{k-1}, a_k] x [c, d], on a
    samples x samples verification grid.
    """
    lo, hi = tc.breaks[k - 1], tc.breaks[k]
    xs = np.linspace(lo, hi, samples)
    ys = np.linspace(tc.rect.c, tc.rect.d, samples)
    x, y = np.meshgrid(xs, ys, indexing="ij")
    base = tc.phi.evaluate(np.full_like(x, tc.a0), y)
    return float(np.max(np.abs(tc.piece(k, x, y) - base)))


# catalog


def catalog(name, *params):
    """Returns an instance of the catalog source registered as name."""
    from .apps import Fracdim2dConfig

    source_class = Fracdim2dConfig.get_source_class(name)
    if source_class is None:
        raise CatalogError(
            "unknown function '{}', see the 'sources' action".format(name), "fn"
        )
    return source_class(*params)


def parse_function_spec(value):
    """
    'name', 'name:p1,p2', 'csv:path', 'json:path' or 't:<spec>'
    -> FunctionSource
    """
    from .sources.sampled import SampledSource

    value = (value or "").strip()
    if not value:
        raise CatalogError("empty function specification", "fn")
    name, _, rest = value.partition(":")

    if name in ("csv", "json"):
        try:
            samples = GridSamples.load(rest)
        except OSError as e:
            raise ParameterError("cannot read {}: {}".format(rest, e), "fn")
        return SampledSource(samples, origin=rest)

    if name == "t":
        phi = parse_function_spec(rest)
        d = phi.domain
        if np.isinf(d.b) or np.isinf(d.d):
            raise DomainError(
                "t: needs a generating function with a bounded domain", "fn"
            )
        return TConstruction(Domain(d.a, d.a + 2 * (d.b - d.a), d.c, d.d), phi)

    params = [p for p in rest.split(",") if p.strip()] if rest else []
    return catalog(name, *params)


def catalog_entries():
    '''[{name, label, ...flags}, ...] sorted by name'''
    from .apps import Fracdim2dConfig

    ret = []
    for name, source_class in sorted(Fracdim2dConfig.get_source_classes().items()):
        ret.append(
            {
                "name": name,
                "label": source_class.label,
                "description": source_class.description,
                "continuous": source_class.continuous,
                "bounded_variation": source_class.bounded_variation,
                "holder": source_class.holder,
                "univariate": source_class.univariate,
                "params": [{"name": p, "default": d} for p, d in source_class.params],
            }
        )
    return ret
