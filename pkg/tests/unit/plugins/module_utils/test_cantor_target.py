from __future__ import absolute_import, division, print_function

__metaclass__ = type

from fractions import Fraction

import pytest

from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    DomainError,
    InvalidTarget,
    MissingInput,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_rational import (
    RationalEnclosure,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_target import (
    TargetFunction,
    build_target,
    decreasing_envelope,
    default_envelope_grid,
    load_table,
    monotone_violations,
    parse_expression,
    tokenize,
)


def test_tokenize():
    assert tokenize("2**-x") == [("num", "2"), ("op", "^"), ("op", "-"), ("name", "x")]
    assert tokenize(u"1 − √x") == [
        ("num", "1"), ("op", "-"), ("name", "sqrt"), ("op", "("), ("name", "x"), ("op", ")"),
    ]
    assert tokenize(u"√(x × 4)")[0:2] == [("name", "sqrt"), ("op", "(")]
    with pytest.raises(ValueError):
        tokenize("x % 2")


def test_parse_expression_tree():
    assert parse_expression("1 - x^2") == ("sub", ("num", Fraction(1)), ("pow", ("var",), 2))
    assert parse_expression("-x/2") == ("div", ("neg", ("var",)), ("num", Fraction(2)))
    assert parse_expression("max(1/2, x)")[0:2] == ("call", "max")


@pytest.mark.parametrize(
    "text",
    ["", "1 +", "sin(x)", "y", "x^(1/2)", "max(x)", "sqrt(x, 2)", "(x", "x)", "2 x"],
)
def test_parse_expression_errors(text):
    with pytest.raises(ValueError):
        parse_expression(text)


testdata = [
    ("expression", "x", "expected"),
    [
        ("max(1/2, 1 - sqrt(x))", Fraction(1, 4), Fraction(1, 2)),
        ("max(1/2, 1 - sqrt(x))", Fraction(0), Fraction(1)),
        ("max(1/2, 1 - sqrt(x))", Fraction(1, 100), Fraction(9, 10)),
        (u"1 − √x", Fraction(4, 9), Fraction(1, 3)),
        ("1 - x^2 / 2", Fraction(1, 2), Fraction(7, 8)),
        ("min(1, 3/4 + x)", Fraction(1, 8), Fraction(7, 8)),
        ("(1 + x) / 2", Fraction(1), Fraction(1)),
        ("0.25 * 2", Fraction(1, 3), Fraction(1, 2)),
    ],
]


@pytest.mark.parametrize(*testdata)
def test_expression_values(expression, x, expected):
    f = TargetFunction.from_expression(expression)
    assert f(x) == RationalEnclosure(expected)


def test_expression_enclosure_is_tight():
    f = TargetFunction.from_expression("1 - sqrt(x)", bits=64)
    value = f(Fraction(1, 2))
    assert value.lo < value.hi
    assert value.width <= Fraction(1, 2 ** 64)
    assert (1 - value.hi) ** 2 <= Fraction(1, 2) <= (1 - value.lo) ** 2


def test_target_domain_and_range():
    f = TargetFunction.from_expression("2 - x")
    with pytest.raises(DomainError):
        f(Fraction(3, 2))
    with pytest.raises(InvalidTarget):
        f(Fraction(1, 2))
    with pytest.raises(InvalidTarget):
        TargetFunction.from_expression("1 / x")(0)
    with pytest.raises(InvalidTarget):
        TargetFunction.from_expression("1 +")


def test_target_values_are_clipped():
    f = TargetFunction.from_expression("sqrt(x) + 1 - sqrt(x)")
    value = f(Fraction(1, 2))
    assert value.hi == 1
    assert value.lo < 1


def test_table_step_from_below():
    f = TargetFunction.from_table([("1/2", "3/4"), (0, 1), (1, "1/2")])
    assert f.kind == "tabulated"
    assert f(0) == RationalEnclosure(1)
    assert f(Fraction(1, 4)) == RationalEnclosure(Fraction(3, 4))
    assert f(Fraction(1, 2)) == RationalEnclosure(Fraction(3, 4))
    assert f(Fraction(3, 4)) == RationalEnclosure(Fraction(1, 2))
    assert f(1) == RationalEnclosure(Fraction(1, 2))

    g = TargetFunction.from_table([(Fraction(1, 4), Fraction(1, 2))])
    assert g(0) == RationalEnclosure(Fraction(1, 2))
    assert g(1) == RationalEnclosure(Fraction(1, 2))


@pytest.mark.parametrize("points", [[], [(0, 1), (0, "1/2")], [("a", 1)]])
def test_table_errors(points):
    with pytest.raises(InvalidTarget):
        TargetFunction.from_table(points)


def test_load_table(tmp_path):
    path = tmp_path / "target.yml"
    path.write_text("points:\n  - [0, 1]\n  - ['1/2', '3/4']\n  - [1, 0.5]\n")
    f = load_table(str(path))
    assert f(Fraction(3, 4)) == RationalEnclosure(Fraction(1, 2))
    assert f.description == "target.yml"

    listing = tmp_path / "list.json"
    listing.write_text("[[0, 1], [1, 0.5]]")
    assert load_table(str(listing))(0) == RationalEnclosure(1)

    empty = tmp_path / "empty.yml"
    empty.write_text("")
    with pytest.raises(MissingInput):
        load_table(str(empty))
    with pytest.raises(MissingInput):
        load_table(str(tmp_path / "missing.yml"))


def test_envelope_of_non_increasing_target():
    g = TargetFunction.from_expression("1 - x / 2")
    grid = [Fraction(k, 8) for k in range(1, 9)]
    h = decreasing_envelope(g, grid)
    assert h.monotone_flag
    assert h.kind == "envelope-of"
    for x in grid:
        assert h(x) == g(x)


def test_envelope_of_constant():
    h = decreasing_envelope(TargetFunction.constant(1), default_envelope_grid(4))
    for x in [Fraction(1, 1000), Fraction(1, 3), Fraction(1)]:
        assert h(x) == RationalEnclosure(1)


def test_envelope_takes_running_minimum():
    g = TargetFunction.from_table([(Fraction(1, 4), Fraction(1, 2)), (Fraction(1, 2), Fraction(3, 4)), (1, Fraction(1, 4))])
    h = decreasing_envelope(g, [Fraction(1, 4), Fraction(1, 2), Fraction(1)])
    assert h(Fraction(1, 2)) == RationalEnclosure(Fraction(1, 2))
    assert h(Fraction(3, 4)) == RationalEnclosure(Fraction(1, 2))
    assert h(Fraction(1)) == RationalEnclosure(Fraction(1, 4))
    grid = [Fraction(k, 64) for k in range(16, 65)]
    assert monotone_violations(h, grid) == []
    assert monotone_violations(g, grid) != []


def test_envelope_single_point_and_errors():
    g = TargetFunction.from_expression("1 - x / 2")
    h = decreasing_envelope(g, [Fraction(1, 2)])
    assert h(Fraction(1, 10)) == h(1) == RationalEnclosure(Fraction(3, 4))
    with pytest.raises(DomainError):
        decreasing_envelope(g, [])
    with pytest.raises(DomainError):
        decreasing_envelope(g, [0, Fraction(1, 2)])


def test_default_envelope_grid():
    grid = default_envelope_grid(2)
    assert grid[0] == Fraction(1, 2 ** 10)
    assert grid[-1] == 1
    assert Fraction(5, 64) in grid
    assert grid == sorted(set(grid))


def test_build_target():
    original, target = build_target(expression="max(1/2, 1 - sqrt(x))", monotone=True)
    assert original is target
    original, target = build_target(expression="max(1/2, 1 - sqrt(x))", depth=4)
    assert not original.monotone_flag
    assert target.monotone_flag
    assert target(Fraction(1, 4)).lo <= original(Fraction(1, 4)).lo
    with pytest.raises(InvalidTarget):
        build_target()
    with pytest.raises(InvalidTarget):
        build_target(expression="x", table="t.yml")
