#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import csv
from collections import namedtuple
from fractions import Fraction

from ansible_collections.community.cantor.plugins.module_utils.cantor_construction import (
    level_intervals,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    DomainError,
    IndexOutOfRange,
)


CANVAS_WIDTH = 800
ROW_HEIGHT = 40
BAR_HEIGHT = 20
MAX_FIGURE_LEVELS = 10

Rectangle = namedtuple("Rectangle", ["level", "index", "left", "right", "x", "width"])

SVG_HEADER = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
    'viewBox="0 0 {width} {height}">\n'
)
SVG_RECT = '  <rect x="{x}" y="{y}" width="{w}" height="{h}" fill="black" data-level="{level}"/>\n'


def to_pixels(value, width=CANVAS_WIDTH):
    """Exact rational to pixel, ties to even."""
    return int(round(Fraction(value) * width))


def level_rectangles(lam, levels, cap=MAX_FIGURE_LEVELS):
    if levels < 0 or levels > cap:
        raise DomainError("figure levels must be in [0, {0}], got {1}".format(cap, levels), levels=levels, cap=cap)
    if levels > lam.depth:
        raise IndexOutOfRange("figure needs {0} levels, sequence depth is {1}".format(levels, lam.depth))
    rectangles = []
    for level in range(levels + 1):
        for index, (left, right) in enumerate(level_intervals(lam, level)):
            x = to_pixels(left)
            rectangles.append(Rectangle(level, index, left, right, x, to_pixels(right) - x))
    return rectangles


def render_svg(rectangles, levels):
    height = ROW_HEIGHT * (levels + 1)
    offset = (ROW_HEIGHT - BAR_HEIGHT) // 2
    parts = [SVG_HEADER.format(width=CANVAS_WIDTH, height=height)]
    for rect in rectangles:
        parts.append(SVG_RECT.format(
            x=rect.x, y=rect.level * ROW_HEIGHT + offset, w=rect.width, h=BAR_HEIGHT, level=rect.level,
        ))
    parts.append("</svg>\n")
    return "".join(parts)


def write_levels_csv(stream, rectangles):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["level", "index", "left_num", "left_den", "right_num", "right_den", "x", "width"])
    for rect in rectangles:
        writer.writerow([
            rect.level, rect.index,
            rect.left.numerator, rect.left.denominator,
            rect.right.numerator, rect.right.denominator,
            rect.x, rect.width,
        ])
