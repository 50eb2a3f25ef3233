from __future__ import absolute_import, division, print_function

__metaclass__ = type

import io
import math
from fractions import Fraction

import pytest

np = pytest.importorskip("numpy")
pytest.importorskip("scipy")

from ansible_collections.community.cantor.plugins.module_utils.cantor_construction import (  # noqa: E402
    CantorApproximation,
    level_intervals,
    synthesize_lambda,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_curves import (  # noqa: E402
    DEFAULT_TOL,
    VALUE_CACHE_SIZE,
    CurveFunction,
    arclength_reparametrize,
    attainment_scan,
    build_F,
    build_H,
    chord_ratio_inf,
    chord_ratio_sup,
    chord_ratio_target,
    curve_from_spec,
    distance_handle,
    find_rho,
    gap_slopes,
    quotient_sequence,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (  # noqa: E402
    DegenerateDerivative,
    DomainError,
)


def unit_speed(name=None, poly=None, params=None, domain=None):
    return arclength_reparametrize(curve_from_spec(name, poly, params, domain))


@pytest.fixture(scope="module")
def circle_scan():
    curve = unit_speed("circle")
    rho = find_rho(curve)
    lam = synthesize_lambda(chord_ratio_target(curve, rho, 14), 14)
    approx = CantorApproximation(lam)
    F = build_F(approx, curve, rho)
    H = build_H(approx, curve, rho)
    return dict(
        curve=curve,
        rho=rho,
        approx=approx,
        F=F,
        H=H,
        F_scan=attainment_scan(F, curve, coarse_grid=400, refine_rounds=6),
        H_scan=attainment_scan(H, curve, coarse_grid=400, refine_rounds=6),
    )


def test_chord_ratio_on_the_circle():
    curve = unit_speed("circle")
    for x in np.logspace(-3, math.log10(math.pi), 20):
        expected = 2 * math.sin(x / 2) / x
        assert abs(chord_ratio_inf(curve, float(x)) - expected) < 1e-6
    assert chord_ratio_inf(curve, 1e-3) > 1 - 1e-6


testdata = [
    ("name", "poly", "params", "expected"),
    [
        ("circle", None, {"span": math.pi}, math.pi),
        (None, "(2*t, 0)", None, 2.0),
        (None, "(t, t^2/2)", None, (math.sqrt(2) + math.asinh(1)) / 2),
        ("parabola", None, None, 1.1477935747),
        ("line", None, {"length": 3}, 3.0),
    ],
]


@pytest.mark.parametrize(*testdata)
def test_arclength(name, poly, params, expected):
    curve = unit_speed(name, poly, params)
    assert curve.arc_length_flag
    assert curve.domain[0] == 0.0
    assert abs(curve.length - expected) < 1e-8


def test_arclength_keeps_the_end_points():
    curve = unit_speed(poly="(t, t^2/2)")
    assert np.allclose(curve.point(0.0), [0.0, 0.0], atol=1e-10)
    assert np.allclose(curve.point(curve.length), [1.0, 0.5], atol=1e-8)


@pytest.mark.parametrize(
    "name,poly",
    [
        ("ellipse", None),
        ("spiral", None),
        ("parabola", None),
        (None, "(t, t^3)"),
    ],
)
def test_arclength_speed_by_central_differences(name, poly):
    curve = unit_speed(name, poly)
    assert curve.unit_speed_defect() <= DEFAULT_TOL
    assert curve.speed_defect <= DEFAULT_TOL
    h = 1e-5
    us = np.linspace(h, curve.length - h, 4001)
    difference = (curve.point(us + h) - curve.point(us - h)) / (2 * h)
    assert np.max(np.abs(np.linalg.norm(difference, axis=0) - 1.0)) < 1e-8
    assert np.max(np.abs(difference - curve.derivative(us))) < 1e-8
    # a chord never outruns its arc
    assert chord_ratio_sup(curve, 1e-3) <= 1 + 1e-9


def test_arclength_rejects_stationary_points():
    with pytest.raises(DegenerateDerivative):
        unit_speed(poly="(t^2, t^3)")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(name="torus"),
        dict(name="circle", params={"sides": 3}),
        dict(poly="(sqrt(t), t)"),
        dict(poly="(t)"),
        dict(poly="(t, t / t)"),
        dict(name="circle", domain=[1.0, 0.5]),
    ],
)
def test_curve_spec_errors(kwargs):
    with pytest.raises(DomainError):
        curve_from_spec(**kwargs)


def test_chord_ratio_needs_arc_length():
    with pytest.raises(DomainError):
        chord_ratio_inf(curve_from_spec("ellipse"), 0.5)
    with pytest.raises(DomainError):
        chord_ratio_inf(unit_speed("line"), 2.0)


def test_find_rho():
    assert find_rho(unit_speed("circle")) == 1.0
    assert find_rho(unit_speed("line", params={"length": 3})) == 1.0
    small = unit_speed("circle", params={"radius": 0.1})
    # sin(y) / y = 1/2 at y = 1.8954942670
    assert abs(find_rho(small) - 0.2 * 1.8954942670) < 1e-6


def test_chord_ratio_target():
    curve = unit_speed("circle")
    target = chord_ratio_target(curve, 1.0, 6)
    assert target.monotone_flag
    at_one = target(Fraction(1))
    assert 0.95 < at_one.lo <= 2 * math.sin(0.5)
    assert target(Fraction(1, 2 ** 20)).lo > 1 - 1e-10


def test_F_does_not_attain_its_constant(circle_scan):
    scan = circle_scan["F_scan"]
    assert scan.sup_estimate < 1
    assert all(w.quotient < 1 for w in scan.samples)
    assert not scan.attained
    assert scan.reverse_sup == 0.0


def test_H_does_not_attain_its_constant(circle_scan):
    scan = circle_scan["H_scan"]
    assert 1 - 1e-3 <= scan.sup_estimate < 1
    assert all(w.quotient < 1 for w in scan.samples)
    assert not scan.attained
    assert 0 < scan.reverse_sup <= 0.25


def test_quotients_approach_one(circle_scan):
    sequence = quotient_sequence(circle_scan["F"], circle_scan["curve"], circle_scan["approx"], range(4, 13))
    quotients = [q for _, _, q in sequence]
    assert [n for n, _, _ in sequence] == list(range(4, 13))
    assert all(a < b for a, b in zip(quotients, quotients[1:]))
    assert quotients[-1] > 0.99
    assert quotients[-1] < 1


def test_H_slopes_on_gaps(circle_scan):
    slopes = gap_slopes(circle_scan["H"], circle_scan["approx"], 3)
    assert len(slopes) == 7
    assert all(abs(slope + 1 / 8) < 1e-9 for slope in slopes)


def test_F_is_non_decreasing(circle_scan):
    F = circle_scan["F"]
    rho = circle_scan["rho"]
    values = F(np.linspace(0.0, rho, 2001))
    assert np.all(np.diff(values) >= -1e-12)
    assert abs(values[-1] - rho * float(circle_scan["approx"].measure().midpoint)) < 1e-9


@pytest.mark.parametrize("level", [4, 8, 12])
def test_slopes_on_components(circle_scan, level):
    approx = circle_scan["approx"]
    rho = circle_scan["rho"]
    # share of each level component that stays in the set
    density = float(approx.lambda_sequence.tail_factor(level).midpoint)
    for a, b in level_intervals(approx.lambda_sequence, level)[::2 ** (level - 2)]:
        lo, hi = rho * float(a), rho * float(b)
        f_slope = (circle_scan["F"].value(hi) - circle_scan["F"].value(lo)) / (hi - lo)
        h_slope = (circle_scan["H"].value(hi) - circle_scan["H"].value(lo)) / (hi - lo)
        assert abs(f_slope - density) < 1e-8
        assert abs(h_slope - (9 * density - 1) / 8) < 1e-8
        assert 0 < h_slope <= f_slope <= 1 + 1e-12


def test_distance_attains_its_constant():
    curve = unit_speed("circle")
    scan = attainment_scan(distance_handle(curve, 1.0), curve, coarse_grid=60, refine_rounds=2)
    assert scan.attained
    assert abs(scan.sup_estimate - 1) < 1e-9

    segment = unit_speed("line")
    scan = attainment_scan(distance_handle(segment, 1.0), segment, coarse_grid=30, refine_rounds=1)
    assert scan.attained
    assert abs(scan.separated_sup - 1) < 1e-12


def test_curve_function_domain(circle_scan):
    F = circle_scan["F"]
    assert F(0.0) == 0.0
    assert F(np.array([0.0, circle_scan["rho"]])).shape == (2,)
    with pytest.raises(DomainError):
        F.value(circle_scan["rho"] + 0.5)
    with pytest.raises(DomainError):
        build_F(circle_scan["approx"], circle_scan["curve"], 10.0)


def test_curve_function_cache_is_bounded():
    calls = []
    handle = CurveFunction("count", lambda t: calls.append(t) or t, unit_speed("line"), 1.0)
    ts = np.linspace(0.0, 1.0, VALUE_CACHE_SIZE + 100)
    handle(ts)
    handle(ts[-10:])
    info = handle.cache_info()
    assert info.maxsize == VALUE_CACHE_SIZE
    assert info.currsize == VALUE_CACHE_SIZE
    assert len(calls) == len(ts)


def test_scan_csv(circle_scan):
    stream = io.StringIO()
    circle_scan["F_scan"].write_csv(stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "t,s,quotient,chord,arc"
    assert len(lines) == len(circle_scan["F_scan"].samples) + 1
    data = circle_scan["F_scan"].to_dict()
    assert data["name"] == "F"
    assert data["attained"] is False
