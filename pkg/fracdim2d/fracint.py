"""
Mixed Katugampola fractional integrals of bivariate functions.

    I(x, y) = (p+1)^(1-a) (q+1)^(1-b) / (G(a) G(b))
              * int_a^x int_c^y (x^(p+1) - s^(p+1))^(a-1) (y^(q+1) - t^(q+1))^(b-1)
                s^p t^q f(s, t) dt ds

The power weights are removed by u = s^(p+1), v = t^(q+1). What is
left is integrated by a tensor product of 1D product midpoint rules:
the kernel (X - u)^(a-1) is integrated exactly on every panel and f
is sampled once per panel. Panels are graded toward the singular
endpoint X.

Riemann-Liouville integrals use a Gauss-Jacobi rule instead.
"""
import functools
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi
from scipy.stats import linregress

from .core import FracOrder, GridSamples, Rectangle, for_each, sample, stable_sum
from .exceptions import DomainError, FitError, NumericError, ParameterError
from .settings import get_var

logger = logging.getLogger(__name__)

LANCZOS_G = 7
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_EMPTY = np.empty(0)


def gamma(x):
    '''Gamma function, Lanczos approximation (about 15 digits).'''
    x = float(x)
    if x < 0.5:
        if x == math.floor(x):
            raise NumericError("gamma has a pole at {}".format(x))
        # reflection formula
        return math.pi / (math.sin(math.pi * x) * gamma(1 - x))
    x -= 1
    acc = LANCZOS_COEFFICIENTS[0]
    for i in range(1, LANCZOS_G + 2):
        acc += LANCZOS_COEFFICIENTS[i] / (x + i)
    t = x + LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


@dataclass(frozen=True)
class QuadratureSpec:
    panels: int = None
    grading: float = None

    def __post_init__(self):
        panels = get_var("PANELS") if self.panels is None else self.panels
        if int(panels) != panels or panels < 4:
            raise ParameterError(
                "panels must be an integer >= 4 (got {})".format(panels), "panels"
            )
        object.__setattr__(self, "panels", int(panels))

        grading = get_var("GRADING") if self.grading is None else self.grading
        if grading is not None:
            grading = float(grading)
            if not grading >= 1:
                raise ParameterError(
                    "grading must be >= 1 (got {})".format(grading), "grading"
                )
        object.__setattr__(self, "grading", grading)

    def grading_for(self, *orders):
        if self.grading is not None:
            return self.grading
        return 2.0 if min(orders) < 1 else 1.0

    def refined(self, factor=2):
        return QuadratureSpec(self.panels * factor, self.grading)


@dataclass(frozen=True)
class BoundCertificate:
    bound: float
    sup_abs_observed: float
    tolerance: float

    @property
    def holds(self):
        return self.sup_abs_observed <= self.bound + self.tolerance

    def as_dict(self):
        return {
            "bound": self.bound,
            "sup_abs_observed": self.sup_abs_observed,
            "tolerance": self.tolerance,
            "holds": bool(self.holds),
        }


# error budget


def error_budget(quad, scale=1.0):
    """C * scale * panels^-r, the tolerance attached to one integral.
    scale is the magnitude of the integral, e.g. M * bound_constant().
    """
    ret = get_var("QUAD_CONSTANT") * abs(scale) * quad.panels ** -get_var("QUAD_ORDER")
    # rounding of the contractions
    return ret + 64 * np.finfo(float).eps * max(abs(scale), 1.0)


def bound_constant(rect, ord):
    '''The boundedness constant with M = 1: sup |I f| <= M * bound_constant'''
    rect = Rectangle.from_domain(rect)
    kp, kq = ord.p + 1, ord.q + 1
    return (
        kp ** -ord.alpha
        * kq ** -ord.beta
        * (rect.b ** kp - rect.a ** kp) ** ord.alpha
        * (rect.d ** kq - rect.c ** kq) ** ord.beta
        / (gamma(ord.alpha + 1) * gamma(ord.beta + 1))
    )


def empirical_order(panels, values):
    """Observed convergence order of a refinement sequence.

    values[k] is a result with panels[k]; the order is minus the
    least-squares slope of log |values[k] - values[k + 1]| against
    log panels[k].
    """
    panels = np.asarray(panels, dtype=float)
    gaps = np.abs(np.diff(np.asarray(values, dtype=float)))
    keep = gaps > 0
    if np.count_nonzero(keep) < 2:
        raise FitError("not enough distinct values to fit an order", "panels")
    fit = linregress(np.log(panels[:-1][keep]), np.log(gaps[keep]))
    return -fit.slope


def holder_upper_bound(ord):
    '''Upper bound of the graph dimension of the integral of a continuous f'''
    if -1 < ord.p <= 0 and -1 < ord.q <= 0 and ord.alpha < 1 and ord.beta < 1:
        return 3 - min(ord.alpha, ord.beta)
    if ord.alpha >= 1 and ord.beta >= 1:
        return 2.0
    return None


# rules


def _product_rule(lo, hi, order, panels, grading):
    """
    Product midpoint rule for int_lo^hi (hi - u)^(order - 1) h(u) du.
    Returns (nodes, weights).
    """
    length = hi - lo
    if not length > 0:
        return _EMPTY, _EMPTY
    # distances to hi, computed directly to avoid cancellation near hi
    dist = length * (1 - np.arange(panels + 1) / panels) ** grading
    powered = dist ** order
    weights = (powered[:-1] - powered[1:]) / order
    nodes = hi - 0.5 * (dist[:-1] + dist[1:])
    return nodes, weights


def _katugampola_rule(lo, x, order, power, quad, grading):
    k = power + 1
    nodes, weights = _product_rule(lo ** k, x ** k, order, quad.panels, grading)
    return np.clip(nodes ** (1 / k), lo, x), weights


def _hadamard_rule(lo, x, order, quad, grading):
    nodes, weights = _product_rule(
        math.log(lo), math.log(x), order, quad.panels, grading
    )
    return np.clip(np.exp(nodes), lo, x), weights


@functools.lru_cache(maxsize=64)
def _jacobi(points, order):
    '''Gauss-Jacobi nodes and weights on [-1, 1] for the weight (1 - t)^(order - 1)'''
    nodes, weights = roots_jacobi(points, order - 1, 0.0)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _gauss_jacobi_rule(lo, x, order, quad):
    """
    Gauss-Jacobi rule for int_lo^x (x - s)^(order - 1) h(s) ds,
    quad.panels points, directly in s.
    """
    length = x - lo
    if not length > 0:
        return _EMPTY, _EMPTY
    t, w = _jacobi(quad.panels, float(order))
    half = 0.5 * length
    return np.clip(lo + half * (1 + t), lo, x), half ** order * w


def _trapezoid_mesh(lo, hi, nodes, panels, grading):
    """Mesh of [lo, hi] graded toward lo, merged with nodes.

    Returns (mesh, index of each node in mesh).
    """
    base = lo + (hi - lo) * (np.arange(panels + 1) / panels) ** grading
    gap = 0.25 * float(np.min(np.diff(base)))
    near = np.min(np.abs(base[:, None] - nodes[None, :]), axis=1) <= gap
    mesh = np.union1d(base[~near], nodes)
    return mesh, np.searchsorted(mesh, nodes)


def _trapezoid_matrix(mesh, order):
    """
    W with sum_j W[i, j] h(mesh[j])
        = int_mesh[0]^mesh[i] (mesh[i] - u)^(order - 1) h(u) du
    for every h linear between consecutive mesh points.
    """
    X = mesh[:, None]
    left, right = mesh[None, :-1], mesh[None, 1:]
    below = right <= X
    dl = np.where(below, X - left, 0.0)
    dr = np.where(below, X - right, 0.0)
    m0 = (dl ** order - dr ** order) / order
    # moment of (u - left)
    m1 = dl * m0 - (dl ** (order + 1) - dr ** (order + 1)) / (order + 1)
    upper = m1 / (right - left)
    ret = np.zeros((mesh.size, mesh.size))
    ret[:, :-1] += m0 - upper
    ret[:, 1:] += upper
    return ret


def _sandwich(wx, values, wy):
    '''wx . values . wy^T, with a fixed summation order'''
    return np.einsum("jl,kl->jk", np.einsum("ij,jl->il", wx, values), wy)


def _contract(f, xrule, yrule):
    '''sum_k sum_l wx[k] f(sx[k], sy[l]) wy[l], u-major'''
    (sx, wx), (sy, wy) = xrule, yrule
    if not (wx.size and wy.size):
        return 0.0
    values = np.asarray(f.evaluate(sx[:, None], sy[None, :]), dtype=float)
    values = np.broadcast_to(values, (wx.size, wy.size))
    return float(np.sum(wx * np.sum(values * wy, axis=1)))


def _katugampola_constant(ord):
    return (
        (ord.p + 1) ** -ord.alpha
        * (ord.q + 1) ** -ord.beta
        / (gamma(ord.alpha) * gamma(ord.beta))
    )


def _check_source(f, rect, allow_discontinuous=False):
    if not f.domain.contains(rect):
        raise DomainError(
            "{} is not defined on the whole rectangle {}".format(f, rect.as_dict()),
            "fn",
        )
    if not f.continuous and not allow_discontinuous:
        raise ParameterError(
            "{} is not continuous and cannot be integrated numerically".format(f),
            "fn",
        )


def _check_point(rect, x, y):
    rect = Rectangle.from_domain(rect)
    x, y = float(x), float(y)
    if not (rect.a <= x <= rect.b and rect.c <= y <= rect.d):
        raise DomainError(
            "({}, {}) is outside the rectangle {}".format(x, y, rect.as_dict()),
            "point",
        )
    return rect, x, y


def _grid(f, spec, xrules, yrules, constant, threads):
    out = np.empty((spec.m, spec.n))

    def row(i):
        for j in range(spec.n):
            out[i, j] = constant * _contract(f, xrules[i], yrules[j])

    for_each(row, range(spec.m), threads)
    return GridSamples(spec, out)


# operators


def katugampola_1d(g, a, x, alpha, p=0.0, quad=None):
    """1D Katugampola integral of a univariate source g from a to x."""
    ord = FracOrder(alpha, 1.0, p, 0.0)
    if not g.univariate:
        raise ParameterError("{} is not a univariate source".format(g), "g")
    a, x = float(a), float(x)
    if not a > 0:
        raise DomainError("a must be > 0 (got {})".format(a), "a")
    if x < a:
        raise DomainError("x={} is below the lower limit a={}".format(x, a), "x")
    quad = quad or QuadratureSpec()

    nodes, weights = _katugampola_rule(
        a, x, ord.alpha, ord.p, quad, quad.grading_for(ord.alpha)
    )
    if not weights.size:
        return 0.0
    terms = weights * g.evaluate_1d(nodes)
    return (ord.p + 1) ** -ord.alpha / gamma(ord.alpha) * stable_sum(terms)


def katugampola_2d(f, rect, x, y, ord, quad=None, allow_discontinuous=False):
    rect, x, y = _check_point(rect, x, y)
    _check_source(f, rect, allow_discontinuous)
    quad = quad or QuadratureSpec()
    grading = quad.grading_for(ord.alpha, ord.beta)
    return _katugampola_constant(ord) * _contract(
        f,
        _katugampola_rule(rect.a, x, ord.alpha, ord.p, quad, grading),
        _katugampola_rule(rect.c, y, ord.beta, ord.q, quad, grading),
    )


def katugampola_2d_grid(
    f, spec, ord, quad=None, threads=None, allow_discontinuous=False
):
    """katugampola_2d at every node of spec.

    The 1D rules are built once per grid line and shared by all the
    nodes on it. Each node is contracted exactly as katugampola_2d
    would, so both give the same bits.
    """
    rect = Rectangle.from_domain(spec.rect)
    _check_source(f, rect, allow_discontinuous)
    quad = quad or QuadratureSpec()
    grading = quad.grading_for(ord.alpha, ord.beta)
    logger.debug(
        "katugampola grid %dx%d, %s, panels=%d, grading=%g",
        spec.m,
        spec.n,
        ord,
        quad.panels,
        grading,
    )
    xrules = [
        _katugampola_rule(rect.a, x, ord.alpha, ord.p, quad, grading)
        for x in spec.xs
    ]
    yrules = [
        _katugampola_rule(rect.c, y, ord.beta, ord.q, quad, grading)
        for y in spec.ys
    ]
    return _grid(f, spec, xrules, yrules, _katugampola_constant(ord), threads)


def riemann_liouville_2d(f, rect, x, y, alpha, beta, quad=None):
    """Mixed Riemann-Liouville integral, integrated directly in (s, t)
    with a Gauss-Jacobi rule of quad.panels points per axis.
    """
    FracOrder(alpha, beta)
    rect, x, y = _check_point(rect, x, y)
    _check_source(f, rect)
    quad = quad or QuadratureSpec()
    return _contract(
        f,
        _gauss_jacobi_rule(rect.a, x, alpha, quad),
        _gauss_jacobi_rule(rect.c, y, beta, quad),
    ) / (gamma(alpha) * gamma(beta))


def riemann_liouville_2d_grid(f, spec, alpha, beta, quad=None, threads=None):
    FracOrder(alpha, beta)
    rect = Rectangle.from_domain(spec.rect)
    _check_source(f, rect)
    quad = quad or QuadratureSpec()
    xrules = [_gauss_jacobi_rule(rect.a, x, alpha, quad) for x in spec.xs]
    yrules = [_gauss_jacobi_rule(rect.c, y, beta, quad) for y in spec.ys]
    return _grid(
        f, spec, xrules, yrules, 1 / (gamma(alpha) * gamma(beta)), threads
    )


def hadamard_2d(f, rect, x, y, alpha, beta, quad=None):
    """Mixed Hadamard integral, the p, q -> -1 limit; u = log s, v = log t."""
    FracOrder(alpha, beta)
    rect, x, y = _check_point(rect, x, y)
    _check_source(f, rect)
    quad = quad or QuadratureSpec()
    grading = quad.grading_for(alpha, beta)
    return _contract(
        f,
        _hadamard_rule(rect.a, x, alpha, quad, grading),
        _hadamard_rule(rect.c, y, beta, quad, grading),
    ) / (gamma(alpha) * gamma(beta))


def hadamard_2d_grid(f, spec, alpha, beta, quad=None, threads=None):
    FracOrder(alpha, beta)
    rect = Rectangle.from_domain(spec.rect)
    _check_source(f, rect)
    quad = quad or QuadratureSpec()
    grading = quad.grading_for(alpha, beta)
    xrules = [_hadamard_rule(rect.a, x, alpha, quad, grading) for x in spec.xs]
    yrules = [_hadamard_rule(rect.c, y, beta, quad, grading) for y in spec.ys]
    return _grid(
        f, spec, xrules, yrules, 1 / (gamma(alpha) * gamma(beta)), threads
    )


def _semigroup_axis(lo, hi, nodes, power, quad, grading):
    '''mesh in u = s^(power+1), the same mesh in s, and the indices of nodes'''
    k = power + 1
    mesh, index = _trapezoid_mesh(lo ** k, hi ** k, nodes ** k, quad.panels, grading)
    points = np.clip(mesh ** (1 / k), lo, hi)
    points[index] = nodes
    return mesh, points, index


def compose_semigroup(f, spec, ord1, ord2, quad=None, threads=None):
    """(lhs, rhs): I[ord1] applied to I[ord2] f, and I[ord1 + ord2] f,
    both on spec.

    rhs is katugampola_2d_grid. For lhs, I[ord2] f is materialized on a
    mesh of quad.panels panels per axis, graded toward (a, c) and holding
    every node of spec; both integrals are product trapezoid rules on
    that mesh, i.e. I[ord1] acts on the bilinear interpolant of I[ord2] f.
    """
    if ord1.p != ord2.p or ord1.q != ord2.q:
        raise ParameterError(
            "composed integrals must share p and q (got ({}, {}) and ({}, {}))".format(
                ord1.p, ord1.q, ord2.p, ord2.q
            ),
            "ord",
        )
    rect = Rectangle.from_domain(spec.rect)
    _check_source(f, rect)
    quad = quad or QuadratureSpec()
    grading = quad.grading_for(ord2.alpha, ord2.beta)

    umesh, s, ix = _semigroup_axis(rect.a, rect.b, spec.xs, ord2.p, quad, grading)
    vmesh, t, iy = _semigroup_axis(rect.c, rect.d, spec.ys, ord2.q, quad, grading)
    logger.debug(
        "semigroup mesh %dx%d for a %dx%d grid", umesh.size, vmesh.size, spec.m, spec.n
    )
    values = np.broadcast_to(
        np.asarray(f.evaluate(s[:, None], t[None, :]), dtype=float),
        (s.size, t.size),
    )
    inner = _katugampola_constant(ord2) * _sandwich(
        _trapezoid_matrix(umesh, ord2.alpha),
        values,
        _trapezoid_matrix(vmesh, ord2.beta),
    )
    outer = _katugampola_constant(ord1) * _sandwich(
        _trapezoid_matrix(umesh, ord1.alpha),
        inner,
        _trapezoid_matrix(vmesh, ord1.beta),
    )
    lhs = GridSamples(spec, outer[np.ix_(ix, iy)])
    rhs = katugampola_2d_grid(f, spec, ord1.plus(ord2), quad, threads)
    return lhs, rhs


def _checked_bound(f, spec, M, threads):
    if M is None:
        M = f.bound(spec.rect)
        if M is None:
            raise ParameterError("{} has no known bound, pass M".format(f), "bound")
    M = float(M)
    sup_f = float(np.max(np.abs(sample(f, spec, threads).values)))
    if sup_f > M:
        raise ParameterError(
            "M={} is below the sampled sup |f| = {}".format(M, sup_f), "bound"
        )
    return M


def certificate_for(samples, f, ord, quad=None, M=None, threads=None):
    """BoundCertificate of samples, an already computed integral of f.

    M defaults to the bound the source declares.
    """
    quad = quad or QuadratureSpec()
    M = _checked_bound(f, samples.spec, M, threads)
    bound = M * bound_constant(samples.spec.rect, ord)
    return BoundCertificate(
        bound=bound,
        sup_abs_observed=float(np.max(np.abs(samples.values))),
        tolerance=error_budget(quad, bound),
    )


def boundedness_certificate(f, spec, ord, quad=None, M=None, threads=None):
    '''Checks sup |I f| <= M * bound_constant on the grid.'''
    samples = katugampola_2d_grid(f, spec, ord, quad, threads)
    return certificate_for(samples, f, ord, quad, M, threads)


def integral_grid(op, f, spec, ord, quad=None, threads=None):
    '''Grid of the operator named op: katugampola, riemann-liouville or hadamard'''
    if op == "katugampola":
        return katugampola_2d_grid(f, spec, ord, quad, threads)
    if op == "riemann-liouville":
        return riemann_liouville_2d_grid(f, spec, ord.alpha, ord.beta, quad, threads)
    if op == "hadamard":
        return hadamard_2d_grid(f, spec, ord.alpha, ord.beta, quad, threads)
    raise ParameterError(
        "unknown operator '{}' (katugampola, riemann-liouville, hadamard)".format(op),
        "op",
    )
