#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import csv
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from ansible_collections.community.cantor.plugins.module_utils.cantor_construction import (
    level_intervals,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_density import (
    prefix_measure_bounds,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    CantorException,
    DegenerateDerivative,
    DomainError,
    NumericalInconsistency,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_target import (
    TargetFunction,
    decreasing_envelope,
    evaluate,
    parse_expression,
)

try:
    import numpy as np
    from numpy.polynomial import Polynomial
    HAS_NUMPY = True
except ImportError:
    HAS_NUMPY = False

try:
    from scipy.integrate import quad
    from scipy.interpolate import BPoly
    from scipy.optimize import brentq, minimize_scalar, newton
    HAS_SCIPY = True
except ImportError:
    HAS_SCIPY = False


UNIT_SPEED_TOL = 1e-8
SAMPLE_GRID = 1024
QUADRATURE_CELLS = 256
INVERSION_KNOTS = 512
INVERSION_ROUNDS = 8
MAX_INVERSION_KNOTS = 1 << 16
SPEED_CHECK_FRACTIONS = (0.1, 0.3, 0.5, 0.7, 0.9)
SPEED_STEP = 1e-3
QUAD_EPSREL = 1e-13
DEFAULT_TOL = 1e-10
VALUE_CACHE_SIZE = 1 << 14
UPPER_INEQUALITY_TOL = 1e-6
ATTAINMENT_TOL = 1e-12
MIN_SEPARATION_CELLS = 2
DEFAULT_EVAL_LEVEL = 40
RELIABLE_CHORD_EXPONENT = 12
CURVATURE_SAFETY = 1.5

LipschitzSample = namedtuple("LipschitzSample", ["t", "s", "quotient", "chord", "arc"])


def require_numeric():
    if not (HAS_NUMPY and HAS_SCIPY):
        raise CantorException("numpy and scipy are required for the curve operations")


class ParametricCurve(object):
    """
        t -> alpha(t) in R^d on [t0, t1], evaluated in floating point.
        ``point`` and ``derivative`` take arrays and return arrays of shape (d,) + t.shape.
    """

    def __init__(self, point, derivative, domain, dimension, arc_length=False, name="curve"):
        require_numeric()
        t0, t1 = float(domain[0]), float(domain[1])
        if not t1 > t0:
            raise DomainError("curve domain [{0}, {1}] is empty".format(t0, t1))
        self._point = point
        self._derivative = derivative
        self.domain = (t0, t1)
        self.dimension = dimension
        self.arc_length_flag = arc_length
        self.name = name

    @property
    def length(self):
        return self.domain[1] - self.domain[0]

    def point(self, t):
        return np.asarray(self._point(np.asarray(t, dtype=float)), dtype=float)

    def derivative(self, t):
        return np.asarray(self._derivative(np.asarray(t, dtype=float)), dtype=float)

    def speed(self, t):
        return np.linalg.norm(self.derivative(t), axis=0)

    def grid(self, count=SAMPLE_GRID):
        return np.linspace(self.domain[0], self.domain[1], count)

    def unit_speed_defect(self, count=SAMPLE_GRID):
        return float(np.max(np.abs(self.speed(self.grid(count)) - 1.0)))

    def derivative_modulus(self, count=SAMPLE_GRID):
        """Largest jump of alpha' between adjacent grid points."""
        d = self.derivative(self.grid(count))
        return float(np.max(np.linalg.norm(np.diff(d, axis=1), axis=0)))

    def shifted(self):
        """Same curve on [0, length], flagged arc-length when it is unit speed."""
        t0 = self.domain[0]
        return ParametricCurve(
            lambda u: self._point(u + t0),
            lambda u: self._derivative(u + t0),
            (0.0, self.length),
            self.dimension,
            arc_length=self.arc_length_flag or self.unit_speed_defect() <= UNIT_SPEED_TOL,
            name=self.name,
        )

    def restrict(self, t0, t1):
        if t0 < self.domain[0] or t1 > self.domain[1]:
            raise DomainError("[{0}, {1}] is not inside the domain {2}".format(t0, t1, self.domain))
        return ParametricCurve(self._point, self._derivative, (t0, t1), self.dimension, self.arc_length_flag, self.name)

    def __repr__(self):
        return "ParametricCurve({0}, domain={1}, arc_length={2})".format(self.name, self.domain, self.arc_length_flag)


def _line(length=1.0):
    return ParametricCurve(
        lambda t: np.array([t, np.zeros_like(t)]),
        lambda t: np.array([np.ones_like(t), np.zeros_like(t)]),
        (0.0, float(length)), 2, arc_length=True, name="line",
    )


def _circle(radius=1.0, span=None):
    radius = float(radius)
    span = 2 * np.pi * radius if span is None else float(span)
    return ParametricCurve(
        lambda t: radius * np.array([np.cos(t / radius), np.sin(t / radius)]),
        lambda t: np.array([-np.sin(t / radius), np.cos(t / radius)]),
        (0.0, span), 2, arc_length=True, name="circle",
    )


def _ellipse(a=1.0, b=0.5, span=2 * 3.141592653589793):
    a, b = float(a), float(b)
    return ParametricCurve(
        lambda t: np.array([a * np.cos(t), b * np.sin(t)]),
        lambda t: np.array([-a * np.sin(t), b * np.cos(t)]),
        (0.0, float(span)), 2, name="ellipse",
    )


def _parabola(end=1.0):
    return ParametricCurve(
        lambda t: np.array([t, t * t / 2]),
        lambda t: np.array([np.ones_like(t), t]),
        (0.0, float(end)), 2, name="parabola",
    )


def _spiral(turns=1.0, growth=1.0):
    growth = float(growth)
    return ParametricCurve(
        lambda t: np.array([(1 + growth * t) * np.cos(t), (1 + growth * t) * np.sin(t)]),
        lambda t: np.array([
            growth * np.cos(t) - (1 + growth * t) * np.sin(t),
            growth * np.sin(t) + (1 + growth * t) * np.cos(t),
        ]),
        (0.0, 2 * np.pi * float(turns)), 2, name="spiral",
    )


BUILTIN_CURVES = {
    "line": _line,
    "circle": _circle,
    "ellipse": _ellipse,
    "parabola": _parabola,
    "spiral": _spiral,
}


def builtin_curve(name, params=None):
    if name not in BUILTIN_CURVES:
        raise DomainError("unknown curve '{0}', expected one of {1}".format(name, ", ".join(sorted(BUILTIN_CURVES))))
    require_numeric()
    try:
        return BUILTIN_CURVES[name](**(params or {}))
    except TypeError as e:
        raise DomainError("invalid parameters for curve '{0}': {1}".format(name, e))


class PolynomialAlgebra(object):
    """Rational-coefficient polynomials in t; only division by constants."""

    def const(self, q):
        return Polynomial([float(q)])

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        b = b.trim()
        if b.degree() > 0 or b.coef[0] == 0:
            raise ValueError("polynomial coordinates can only be divided by non zero constants")
        return a / b.coef[0]

    def pow(self, a, n):
        return a ** n

    def _unsupported(self, *args):
        raise ValueError("sqrt, min and max are not polynomial")

    call_sqrt = call_min = call_max = _unsupported


def split_components(text):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts]


def polynomial_curve(text, domain=(0.0, 1.0)):
    """Curve from coordinate polynomials, e.g. "(t, t^2/2)"."""
    require_numeric()
    algebra = PolynomialAlgebra()
    t = Polynomial([0.0, 1.0])
    try:
        coords = [evaluate(parse_expression(c, "t"), t, algebra) for c in split_components(text)]
    except ValueError as e:
        raise DomainError("invalid polynomial curve '{0}': {1}".format(text, e))
    if len(coords) < 2:
        raise DomainError("polynomial curve '{0}' needs at least two coordinates".format(text))
    derivs = [c.deriv() for c in coords]
    return ParametricCurve(
        lambda s: np.array([c(s) for c in coords]),
        lambda s: np.array([d(s) * np.ones_like(s) for d in derivs]),
        domain, len(coords), name=text.strip(),
    )


def curve_from_spec(name=None, poly=None, params=None, domain=None):
    if poly:
        return polynomial_curve(poly, tuple(domain) if domain else (0.0, 1.0))
    curve = builtin_curve(name or "circle", params)
    if domain:
        curve = curve.restrict(*domain)
    return curve


def _inverse_jets(curve, ts, step):
    """p, p' = 1 / |alpha'| and p'' = -|alpha'|' / |alpha'|**3 of the inverse arc length at ``ts``."""
    speed = curve.speed(ts)
    dspeed = (
        curve.speed(ts - 2 * step) - 8 * curve.speed(ts - step) + 8 * curve.speed(ts + step) - curve.speed(ts + 2 * step)
    ) / (12 * step)
    dp = 1.0 / speed
    return np.column_stack([ts, dp, -dspeed * dp ** 3])


def _speed_defects(curve, parameter, slope, us):
    """Largest |speed - 1| of u -> alpha(p(u)) inside every knot interval."""
    points = us[:-1, None] + np.diff(us)[:, None] * np.asarray(SPEED_CHECK_FRACTIONS)[None, :]
    flat = points.ravel()
    speed = curve.speed(parameter(flat)) * np.abs(slope(flat))
    return np.abs(speed - 1.0).reshape(points.shape).max(axis=1)


def arclength_reparametrize(curve, tol=DEFAULT_TOL, cells=QUADRATURE_CELLS, knots=INVERSION_KNOTS):
    """
        Unit-speed version of ``curve`` on [0, total length]. The speed is integrated cell by
        cell and the arc length is inverted at the knots by bracketing root finding with a
        Newton polish. A quintic Hermite interpolant with the slope and second derivative of
        the inverse joins the knots; intervals where the measured speed misses 1 by more
        than ``tol`` are split until none is left.
    """
    if tol <= 0:
        raise DomainError("tolerance must be positive, got {0}".format(tol))
    speeds = curve.speed(curve.grid())
    low = float(np.min(speeds))
    if low < 10 * tol:
        raise DegenerateDerivative(
            "speed of {0} drops to {1:.3g} on the sample grid".format(curve.name, low),
            min_speed=low,
        )
    if curve.arc_length_flag or curve.unit_speed_defect() <= tol:
        result = curve.shifted()
        result.arc_length_flag = True
        return result

    inner = tol * 1e-3

    def speed(t):
        return float(curve.speed(t))

    edges = np.linspace(curve.domain[0], curve.domain[1], cells + 1)
    pieces = [
        quad(speed, a, b, epsabs=inner, epsrel=QUAD_EPSREL, limit=200)[0] for a, b in zip(edges[:-1], edges[1:])
    ]
    cumulative = np.concatenate([[0.0], np.cumsum(pieces)])
    total = float(cumulative[-1])

    def arc(t, k):
        return cumulative[k] + quad(speed, edges[k], t, epsabs=inner, epsrel=QUAD_EPSREL)[0]

    def invert(u):
        k = int(np.clip(np.searchsorted(cumulative, u, side="right") - 1, 0, cells - 1))
        if u <= cumulative[k]:
            return float(edges[k])
        if u >= cumulative[k + 1]:
            return float(edges[k + 1])
        t = brentq(lambda s: arc(s, k) - u, edges[k], edges[k + 1], xtol=inner)
        try:
            t = newton(lambda s: arc(s, k) - u, t, fprime=speed, tol=inner, maxiter=4)
        except RuntimeError:
            pass
        return float(np.clip(t, edges[k], edges[k + 1]))

    step = SPEED_STEP * curve.length
    us = np.linspace(0.0, total, knots + 1)
    ts = np.array([invert(u) for u in us])
    rounds = 0
    while True:
        spline = BPoly.from_derivatives(us, _inverse_jets(curve, ts, step))
        slope = spline.derivative()
        defects = _speed_defects(curve, spline, slope, us)
        worst = float(np.max(defects))
        split = np.nonzero(defects > tol)[0]
        if not split.size:
            break
        if rounds == INVERSION_ROUNDS or len(us) + split.size > MAX_INVERSION_KNOTS:
            raise NumericalInconsistency(
                "arc length inversion of {0} misses unit speed by {1:.3g} > {2:.3g} with {3} knots".format(
                    curve.name, worst, tol, len(us)),
                defect=worst, knots=len(us),
            )
        middles = (us[split] + us[split + 1]) / 2
        us = np.concatenate([us, middles])
        ts = np.concatenate([ts, [invert(u) for u in middles]])
        order = np.argsort(us)
        us, ts = us[order], ts[order]
        rounds += 1

    def parameter(u):
        return spline(np.clip(np.asarray(u, dtype=float), 0.0, total))

    def point(u):
        return curve.point(parameter(u))

    def derivative(u):
        u = np.clip(np.asarray(u, dtype=float), 0.0, total)
        return curve.derivative(spline(u)) * slope(u)

    result = ParametricCurve(point, derivative, (0.0, total), curve.dimension, arc_length=True, name=curve.name)
    result.parameter = parameter
    result.invert = invert
    result.speed_defect = worst
    result.knots = len(us)
    return result


def _require_arc_length(curve):
    if not curve.arc_length_flag:
        raise DomainError("curve {0} is not arc-length parametrized".format(curve.name))


def chord_ratio_search(curve, x, grid_size=SAMPLE_GRID):
    """(value, argmin t, grid resolution) of inf ||alpha(t + x) - alpha(t)|| / x."""
    _require_arc_length(curve)
    t0, t1 = curve.domain
    if not 0 < x <= curve.length * (1 + 1e-12):
        raise DomainError("x = {0} is outside (0, {1}]".format(x, curve.length))
    x = min(x, curve.length)
    last = t1 - x
    if last <= t0:
        return float(np.linalg.norm(curve.point(t1) - curve.point(t0)) / x), t0, 0.0

    ts = np.linspace(t0, last, grid_size)
    ratios = np.linalg.norm(curve.point(ts + x) - curve.point(ts), axis=0) / x
    k = int(np.argmin(ratios))
    best, where = float(ratios[k]), float(ts[k])
    resolution = (last - t0) / (grid_size - 1)

    lo, hi = ts[max(k - 1, 0)], ts[min(k + 1, grid_size - 1)]
    if hi > lo:
        refined = minimize_scalar(
            lambda t: float(np.linalg.norm(curve.point(t + x) - curve.point(t))) / x,
            bounds=(lo, hi), method="bounded", options=dict(xatol=resolution * 1e-6),
        )
        if refined.success and refined.fun < best:
            best, where = float(refined.fun), float(refined.x)
    return best, where, resolution


def chord_ratio_inf(curve, x, grid_size=SAMPLE_GRID):
    return chord_ratio_search(curve, x, grid_size)[0]


def chord_ratio_sup(curve, x, grid_size=SAMPLE_GRID):
    t0, t1 = curve.domain
    last = max(t1 - x, t0)
    ts = np.linspace(t0, last, grid_size)
    return float(np.max(np.linalg.norm(curve.point(ts + x) - curve.point(ts), axis=0) / x))


def find_rho(curve, grid=256, grid_size=SAMPLE_GRID):
    """
        Largest rho <= min(1, length) with chord ratio >= 1/2 at every sampled x <= rho,
        located on the grid and refined by root finding on the first crossing.
    """
    _require_arc_length(curve)
    limit = min(1.0, curve.length)
    xs = np.linspace(limit / grid, limit, grid)
    previous = 0.0
    for x in xs:
        upper = chord_ratio_sup(curve, x, grid_size)
        if upper > 1 + UPPER_INEQUALITY_TOL:
            raise NumericalInconsistency(
                "chord exceeds arc by {0:.3g} at x = {1:.6g}".format(upper - 1, x),
                x=float(x), excess=upper - 1,
            )
        if chord_ratio_inf(curve, x, grid_size) < 0.5:
            if previous == 0.0:
                raise NumericalInconsistency("chord ratio is below 1/2 on the first grid cell")
            return float(brentq(lambda y: chord_ratio_inf(curve, y, grid_size) - 0.5, previous, x, xtol=1e-9))
        previous = float(x)
    return float(limit)


def chord_ratio_target(curve, rho, depth, grid_size=SAMPLE_GRID, horizon=4):
    """
        f(u) = g(rho u) tabulated from below at the dyadics 2**-k, k <= horizon * depth + 2,
        then made non-increasing. Past the reliable float range the unit-speed bound
        g(x) >= 1 - (kappa x)**2 / 24 is used exactly, kappa the sampled curvature with a
        safety factor.
    """
    _require_arc_length(curve)
    kappa = CURVATURE_SAFETY * curve.derivative_modulus() * (SAMPLE_GRID - 1) / curve.length
    coefficient = Fraction((kappa * rho) ** 2 / 24) * (1 + Fraction(1, 2 ** 40))
    table = []
    for k in range(0, horizon * depth + 3):
        u = Fraction(1, 2 ** k)
        if k <= RELIABLE_CHORD_EXPONENT:
            value = chord_ratio_inf(curve, rho * float(u), grid_size)
            value = Fraction(float(np.nextafter(min(max(value, 0.0), 1.0), 0.0)))
        else:
            value = max(1 - coefficient * u * u, Fraction(0))
        table.append((u, value))
    target = TargetFunction.from_table(table, description="chord_ratio({0}, rho={1:.6g})".format(curve.name, rho))
    return decreasing_envelope(target, [u for u, _ in table])


class CurveFunction(object):
    """Real function on the arc alpha([0, rho]) given through the arc parameter t."""

    def __init__(self, name, evaluate_at, curve, rho, error=0.0):
        self.name = name
        self._evaluate = evaluate_at
        self.curve = curve
        self.rho = float(rho)
        self.error = error
        self._cached = lru_cache(maxsize=VALUE_CACHE_SIZE)(evaluate_at)

    def value(self, t):
        t = float(t)
        if t < -1e-12 or t > self.rho * (1 + 1e-12):
            raise DomainError("t = {0} is outside [0, {1}]".format(t, self.rho))
        return self._cached(min(max(t, 0.0), self.rho))

    def cache_info(self):
        return self._cached.cache_info()

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        values = np.array([self.value(v) for v in arr.ravel()]).reshape(arr.shape)
        return float(values) if arr.ndim == 0 else values


def _deep(approx, eval_level):
    eval_level = max(approx.level, DEFAULT_EVAL_LEVEL if eval_level is None else eval_level)
    return approx.deepen(eval_level - approx.level) if eval_level > approx.level else approx


def build_F(approx, curve, rho, eval_level=None):
    """F(alpha(t)) = integral of the indicator of rho C over [0, t], from the prefix enclosure midpoint."""
    _require_arc_length(curve)
    if rho > curve.length * (1 + 1e-12):
        raise DomainError("rho = {0} exceeds the curve length {1}".format(rho, curve.length))
    deep = _deep(approx, eval_level)
    rho = float(rho)

    def _F(t):
        u = min(Fraction(t) / Fraction(rho), Fraction(1))
        return rho * float(prefix_measure_bounds(deep, u).midpoint)

    return CurveFunction("F", _F, curve, rho, error=rho * float(deep.r[deep.level]))


def build_H(approx, curve, rho, eval_level=None):
    """H = F - (1/8) (t - F): slope 1 on the set and -1/8 on its gaps."""
    F = build_F(approx, curve, rho, eval_level)

    def _H(t):
        f = F.value(t)
        return f - (t - f) / 8.0

    return CurveFunction("H", _H, curve, rho, error=F.error * 9 / 8)


def distance_handle(curve, rho):
    """p -> ||p - alpha(0)||, a function attaining its Lipschitz constant on a segment."""
    origin = curve.point(0.0)
    return CurveFunction(
        "distance", lambda t: float(np.linalg.norm(curve.point(t) - origin)), curve, rho,
    )


class AttainmentScan(object):

    def __init__(self, name, sup_estimate, separated_sup, reverse_sup, witnesses, attained, resolution, samples):
        self.name = name
        self.sup_estimate = sup_estimate
        self.separated_sup = separated_sup
        self.reverse_sup = reverse_sup
        self.witnesses = witnesses
        self.attained = attained
        self.resolution = resolution
        self.samples = samples

    def to_dict(self):
        return dict(
            name=self.name,
            sup_estimate=self.sup_estimate,
            separated_sup=self.separated_sup,
            reverse_sup=self.reverse_sup,
            attained=self.attained,
            resolution=self.resolution,
            witnesses=[w._asdict() for w in self.witnesses],
        )

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["t", "s", "quotient", "chord", "arc"])
        for sample in self.samples:
            writer.writerow(["{0:.12g}".format(v) for v in sample])


def _sample(handle, curve, t, s):
    chord = float(np.linalg.norm(curve.point(t) - curve.point(s)))
    if chord <= 0:
        return None
    return LipschitzSample(t, s, abs(handle.value(t) - handle.value(s)) / chord, chord, abs(t - s))


def attainment_scan(handle, curve, coarse_grid=400, refine_rounds=6, top=8):
    """
        Lipschitz quotients of ``handle`` over all pairs of a coarse grid on [0, rho], then
        ``refine_rounds`` local refinements around the best pairs, each at a quarter of the
        previous resolution. The constant counts as attained when a pair at least two coarse
        cells apart comes within 1e-12 of the overall supremum.
    """
    rho = handle.rho
    ts = np.linspace(0.0, rho, coarse_grid)
    step = rho / (coarse_grid - 1)
    values = handle(ts)
    points = curve.point(ts)

    dv = values[None, :] - values[:, None]
    chord = np.sqrt(((points[:, None, :] - points[:, :, None]) ** 2).sum(axis=0))
    upper = np.triu(np.ones((coarse_grid, coarse_grid), dtype=bool), k=1) & (chord > 0)
    safe = np.where(upper, chord, 1.0)
    quotient = np.where(upper, np.abs(dv) / safe, -1.0)
    reverse = np.where(upper, -dv / safe, -np.inf)

    samples = {}
    order = np.argsort(quotient, axis=None)[::-1][:top]
    for flat in order:
        i, j = np.unravel_index(flat, quotient.shape)
        sample = LipschitzSample(float(ts[i]), float(ts[j]), float(quotient[i, j]), float(chord[i, j]), float(ts[j] - ts[i]))
        samples[(sample.t, sample.s)] = sample
    separated = upper & (np.abs(ts[None, :] - ts[:, None]) >= MIN_SEPARATION_CELLS * step - 1e-15)
    separated_sup = float(np.max(np.where(separated, quotient, -1.0))) if separated.any() else 0.0
    reverse_sup = float(max(np.max(reverse), 0.0))

    h = step
    for _ in range(refine_rounds):
        best = sorted(samples.values(), key=lambda x: x.quotient, reverse=True)[:top]
        offsets = np.linspace(-h, h, 5)
        for w in best:
            for a in np.clip(w.t + offsets, 0.0, rho):
                for b in np.clip(w.s + offsets, 0.0, rho):
                    a, b = float(a), float(b)
                    if a == b or (min(a, b), max(a, b)) in samples:
                        continue
                    sample = _sample(handle, curve, min(a, b), max(a, b))
                    if sample is None:
                        continue
                    samples[(sample.t, sample.s)] = sample
                    if sample.arc >= MIN_SEPARATION_CELLS * step:
                        separated_sup = max(separated_sup, sample.quotient)
                    drop = handle.value(sample.t) - handle.value(sample.s)
                    reverse_sup = max(reverse_sup, drop / sample.chord)
        h /= 4

    ranked = sorted(samples.values(), key=lambda x: x.quotient, reverse=True)
    sup_estimate = max(ranked[0].quotient, separated_sup) if ranked else separated_sup
    attained = separated_sup >= sup_estimate - ATTAINMENT_TOL
    return AttainmentScan(handle.name, sup_estimate, separated_sup, reverse_sup, ranked[:top], attained, h * 4, ranked)


def quotient_sequence(handle, curve, approx, levels):
    """Quotients at the pairs (0, rho r_n): they approach the Lipschitz constant from below."""
    result = []
    for n in levels:
        t = handle.rho * float(approx.r[n])
        sample = _sample(handle, curve, 0.0, t)
        result.append((n, t, None if sample is None else sample.quotient))
    return result


def gap_slopes(handle, approx, level):
    """Slope of ``handle`` across the middle half of each gap of C_level, in arc units."""
    rho = handle.rho
    slopes = []
    intervals = level_intervals(approx.lambda_sequence, level)
    for (a0, b0), (a1, b1) in zip(intervals[:-1], intervals[1:]):
        width = a1 - b0
        lo = rho * float(b0 + width / 4)
        hi = rho * float(a1 - width / 4)
        slopes.append((handle.value(hi) - handle.value(lo)) / (hi - lo))
    return slopes
