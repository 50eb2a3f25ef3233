from __future__ import absolute_import, division, print_function

__metaclass__ = type

import io
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from ansible_collections.community.cantor.plugins.module_utils.cantor_construction import (
    LambdaSequence,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    DomainError,
    IndexOutOfRange,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_figure import (
    level_rectangles,
    render_svg,
    to_pixels,
    write_levels_csv,
)


THIRDS = LambdaSequence([Fraction(1, 3)] * 3)

testdata = [
    ("value", "expected"),
    [
        (0, 0),
        (1, 800),
        (Fraction(1, 3), 267),
        (Fraction(1, 1600), 0),
        (Fraction(3, 1600), 2),
        (Fraction(5, 6), 667),
    ],
]


@pytest.mark.parametrize(*testdata)
def test_to_pixels(value, expected):
    assert to_pixels(value) == expected


def test_level_rectangles():
    rects = level_rectangles(THIRDS, 2)
    assert [len([r for r in rects if r.level == n]) for n in range(3)] == [1, 2, 4]
    assert rects[0].x == 0 and rects[0].width == 800
    level1 = [r for r in rects if r.level == 1]
    assert [(r.x, r.width) for r in level1] == [(0, 267), (400, 267)]
    assert level1[1].left == Fraction(1, 2)
    assert level1[1].right == Fraction(5, 6)


@pytest.mark.parametrize("levels", [-1, 11])
def test_level_rectangles_bounds(levels):
    with pytest.raises(DomainError):
        level_rectangles(LambdaSequence([Fraction(1, 3)] * 12), levels)


def test_level_rectangles_depth():
    with pytest.raises(IndexOutOfRange):
        level_rectangles(THIRDS, 4)


def test_render_svg():
    svg = render_svg(level_rectangles(THIRDS, 2), 2)
    root = ET.fromstring(svg)
    assert root.get("width") == "800"
    assert root.get("height") == "120"
    rects = [child for child in root if child.tag.endswith("rect")]
    assert len(rects) == 7
    assert {r.get("y") for r in rects} == {"10", "50", "90"}
    assert rects[-1].get("data-level") == "2"


def test_levels_csv():
    stream = io.StringIO()
    write_levels_csv(stream, level_rectangles(THIRDS, 1))
    assert stream.getvalue().splitlines() == [
        "level,index,left_num,left_den,right_num,right_den,x,width",
        "0,0,0,1,1,1,0,800",
        "1,0,0,1,1,3,0,267",
        "1,1,1,2,5,6,400,267",
    ]
