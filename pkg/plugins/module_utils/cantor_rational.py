#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    DomainError,
)


DEFAULT_PRECISION = 64
GUARD_BITS = 8

DECIMAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\.(\d*))?\s*$")


def to_fraction(value):
    """
        Convert user input to an exact rational.
        Accepted forms: Fraction, int, exact float, "3", "-1/3", "0.125",
        and [numerator, denominator] pairs of ints or decimal strings.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("boolean is not a rational value")
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("rational pair must have exactly two items, found %d" % len(value))
        return pair_to_fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        m = DECIMAL_RE.match(text)
        if not m:
            raise ValueError("invalid rational literal '{0}'".format(value))
        return Fraction(text)
    raise ValueError("cannot convert {0!r} to a rational".format(value))


def fraction_to_pair(value):
    value = Fraction(value)
    return [str(value.numerator), str(value.denominator)]


def pair_to_fraction(pair):
    num, den = pair
    den = int(den)
    if den == 0:
        raise ValueError("zero denominator in rational pair")
    return Fraction(int(num), den)


def to_decimal_string(value, digits=12):
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits + 8
        d = Decimal(value.numerator) / Decimal(value.denominator)
        return "{0:.{1}g}".format(d, digits)


def floor_dyadic(value, bits):
    scale = 1 << bits
    return Fraction((value.numerator * scale) // value.denominator, scale)


def ceil_dyadic(value, bits):
    scale = 1 << bits
    return Fraction(-((-value.numerator * scale) // value.denominator), scale)


class RationalEnclosure(object):
    """Certified bracket [lo, hi] of an exactly defined real quantity."""

    __slots__ = ("_lo", "_hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError("invalid enclosure, lo {0} > hi {1}".format(lo, hi))
        self._lo = lo
        self._hi = hi

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    @property
    def width(self):
        return self._hi - self._lo

    @property
    def midpoint(self):
        return (self._lo + self._hi) / 2

    def is_exact(self):
        return self._lo == self._hi

    def contains(self, value):
        if isinstance(value, RationalEnclosure):
            return self._lo <= value.lo and value.hi <= self._hi
        return self._lo <= value <= self._hi

    def certainly_below(self, other):
        other = as_enclosure(other)
        return self._hi < other.lo

    def certainly_above(self, other):
        other = as_enclosure(other)
        return self._lo > other.hi

    def __add__(self, other):
        other = as_enclosure(other)
        return RationalEnclosure(self._lo + other.lo, self._hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_enclosure(other)
        return RationalEnclosure(self._lo - other.hi, self._hi - other.lo)

    def __rsub__(self, other):
        return as_enclosure(other) - self

    def __neg__(self):
        return RationalEnclosure(-self._hi, -self._lo)

    def __mul__(self, other):
        other = as_enclosure(other)
        products = (self._lo * other.lo, self._lo * other.hi, self._hi * other.lo, self._hi * other.hi)
        return RationalEnclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_enclosure(other)
        if other.lo <= 0 <= other.hi:
            raise DomainError("division by an enclosure containing zero", divisor=other.to_dict())
        return self * RationalEnclosure(1 / other.hi, 1 / other.lo)

    def __eq__(self, other):
        if not isinstance(other, RationalEnclosure):
            return NotImplemented
        return self._lo == other.lo and self._hi == other.hi

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self._lo, self._hi))

    def __repr__(self):
        return "RationalEnclosure({0}, {1})".format(self._lo, self._hi)

    def intersect(self, other):
        other = as_enclosure(other)
        lo, hi = max(self._lo, other.lo), min(self._hi, other.hi)
        if lo > hi:
            return None
        return RationalEnclosure(lo, hi)

    def clip(self, lower, upper):
        return RationalEnclosure(min(max(self._lo, lower), upper), max(min(self._hi, upper), lower))

    def to_dict(self):
        return dict(
            lo=fraction_to_pair(self._lo),
            hi=fraction_to_pair(self._hi),
            lo_decimal=to_decimal_string(self._lo),
            hi_decimal=to_decimal_string(self._hi),
            width_decimal=to_decimal_string(self.width),
        )

    @classmethod
    def from_dict(cls, data):
        return cls(pair_to_fraction(data["lo"]), pair_to_fraction(data["hi"]))


def as_enclosure(value):
    if isinstance(value, RationalEnclosure):
        return value
    return RationalEnclosure(Fraction(value))


def _working_bits(bits):
    return bits + GUARD_BITS


def exp_enclosure(x, bits=DEFAULT_PRECISION):
    """
        Enclosure of e**x for rational x.
        Taylor series on |x| / 2**m <= 1/2 with the tail bounded by twice the first omitted
        term, then m outward-rounded squarings, then reciprocal for negative x.
    """
    x = Fraction(x)
    if x == 0:
        return RationalEnclosure(1)

    a = abs(x)
    m = 0
    while a > Fraction(1, 2):
        a /= 2
        m += 1
    w = _working_bits(bits) + m + 4

    total = Fraction(1)
    term = Fraction(1)
    k = 0
    ulp = Fraction(1, 1 << (w + 8))
    eps = Fraction(1, 1 << w)
    while True:
        k += 1
        term = floor_dyadic(term * a / k, w + 8)
        total += term
        if term < eps:
            break
    # every rounded term loses less than ulp and drags the later ones down by less than
    # that again; the exact tail after term k is below term_k / 2
    lo = floor_dyadic(total, w)
    hi = ceil_dyadic(total + 2 * term + 2 * k * ulp, w)

    for _ in range(m):
        lo = floor_dyadic(lo * lo, w)
        hi = ceil_dyadic(hi * hi, w)

    if x < 0:
        lo, hi = floor_dyadic(1 / hi, w), ceil_dyadic(1 / lo, w)
    return RationalEnclosure(lo, hi)


def _atanh_enclosure(z, w):
    # 0 <= z < 1; atanh z = sum z**(2j+1) / (2j+1)
    if z == 0:
        return Fraction(0), Fraction(0)
    g = w + 8
    z2_lo, z2_hi = floor_dyadic(z * z, g), ceil_dyadic(z * z, g)
    p_lo, p_hi = floor_dyadic(z, g), ceil_dyadic(z, g)
    lo = hi = Fraction(0)
    j = 0
    eps = Fraction(1, 1 << (w + 2))
    while True:
        lo += floor_dyadic(p_lo / (2 * j + 1), g)
        hi += ceil_dyadic(p_hi / (2 * j + 1), g)
        j += 1
        p_lo = floor_dyadic(p_lo * z2_lo, g)
        p_hi = ceil_dyadic(p_hi * z2_hi, g)
        if p_hi < eps:
            break
    hi += p_hi / ((2 * j + 1) * (1 - z2_hi))
    return floor_dyadic(lo, w), ceil_dyadic(hi, w)


@lru_cache(maxsize=16)
def _log2_enclosure(w):
    lo, hi = _atanh_enclosure(Fraction(1, 3), w + 2)
    return floor_dyadic(2 * lo, w), ceil_dyadic(2 * hi, w)


def log_enclosure(x, bits=DEFAULT_PRECISION):
    """
        Enclosure of the natural logarithm of a positive rational.
        log x = k log 2 + 2 atanh((y - 1) / (y + 1)) with y = x / 2**k in [1, 2).
    """
    x = Fraction(x)
    if x <= 0:
        raise DomainError("logarithm of a non positive value", value=fraction_to_pair(x))
    if x == 1:
        return RationalEnclosure(0)

    k = x.numerator.bit_length() - x.denominator.bit_length()
    y = x / (Fraction(2) ** k)
    while y < 1:
        y *= 2
        k -= 1
    while y >= 2:
        y /= 2
        k += 1

    w = _working_bits(bits) + max(k, -k).bit_length() + 2
    zlo, zhi = _atanh_enclosure((y - 1) / (y + 1), w)
    l2lo, l2hi = _log2_enclosure(w)
    if k >= 0:
        klo, khi = k * l2lo, k * l2hi
    else:
        klo, khi = k * l2hi, k * l2lo
    return RationalEnclosure(klo + 2 * zlo, khi + 2 * zhi)


def neg_log_enclosure(x, bits=DEFAULT_PRECISION):
    return -log_enclosure(x, bits)


def sqrt_enclosure(x, bits=DEFAULT_PRECISION):
    x = Fraction(x)
    if x < 0:
        raise DomainError("square root of a negative value", value=fraction_to_pair(x))
    w = _working_bits(bits)
    num, den = x.numerator, x.denominator
    scaled = num * den << (2 * w)
    root = math.isqrt(scaled)
    lo = Fraction(root, den << w)
    if root * root == scaled:
        return RationalEnclosure(lo)
    return RationalEnclosure(lo, Fraction(root + 1, den << w))


def geometric_tail(first, ratio):
    """Sum of first * ratio**j for j >= 0, None when it diverges."""
    if ratio >= 1:
        return None if first > 0 else Fraction(0)
    return Fraction(first) / (1 - ratio)
