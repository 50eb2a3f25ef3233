#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import json
import os
from fractions import Fraction

from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    IndexOutOfRange,
    InvalidSequence,
    InvalidTarget,
    MissingInput,
    NumericalInconsistency,
    SynthesisUnverified,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_rational import (
    DEFAULT_PRECISION,
    RationalEnclosure,
    ceil_dyadic,
    exp_enclosure,
    fraction_to_pair,
    log_enclosure,
    pair_to_fraction,
    to_decimal_string,
    to_fraction,
)


DEFAULT_HEADROOM = Fraction(1, 16)
DEFAULT_TAIL_RATIO = Fraction(1, 2)
MAX_TAIL_RATIO = Fraction(15, 16)
TAIL_RATIO_GRID_BITS = 16
TAIL_HORIZON = 4


class LambdaSequence(object):
    """
        Generator of a Cantor set: explicit lambda_1..lambda_N plus the geometric tail
        l_j = tail_base * tail_ratio ** (j - N), lambda_j = 1 - exp(-l_j) for j > N.

        tail_ratio == 1 is the constant tail (the series of l diverges and the set has
        measure zero). tail_base == 0 is the truncated tail (lambda_j = 0 beyond N).

        ``perturbation`` bounds sup_x of the difference between the measure functions
        x -> |C cap [0, x]| of this set and of the set it was materialised from, see ``extend``.
    """

    def __init__(self, prefix, tail_ratio=DEFAULT_TAIL_RATIO, tail_base=None, bits=DEFAULT_PRECISION, _zero_run=False,
                 perturbation=0):
        try:
            self.prefix = tuple(to_fraction(v) for v in prefix)
            self.tail_ratio = to_fraction(tail_ratio)
            self.tail_base = None if tail_base is None else to_fraction(tail_base)
            self.perturbation = to_fraction(perturbation)
        except (TypeError, ValueError) as e:
            raise InvalidSequence("invalid lambda sequence: {0}".format(e))
        if self.perturbation < 0:
            raise InvalidSequence("perturbation {0} is negative".format(self.perturbation))
        self.schedule = None
        self._validate_prefix(_zero_run)
        if self.tail_base is None:
            # largest tail value the last prefix term allows
            self.tail_base = max(-log_enclosure(1 - self.prefix[-1], bits).hi, Fraction(0))
        self._validate_tail(bits)

    def _validate_prefix(self, zero_run):
        if not self.prefix:
            raise InvalidSequence("lambda sequence must have a positive depth")
        previous = None
        for i, value in enumerate(self.prefix, start=1):
            if value >= 1 or value < 0 or (value == 0 and not zero_run):
                raise InvalidSequence("lambda_{0} = {1} is not in (0, 1)".format(i, value), index=i)
            if previous is not None and value > previous:
                raise InvalidSequence(
                    "lambda must be non-increasing, lambda_{0} = {1} > lambda_{2} = {3}".format(i, value, i - 1, previous),
                    index=i,
                )
            previous = value

    def _validate_tail(self, bits):
        if not 0 < self.tail_ratio <= 1:
            raise InvalidSequence("tail ratio {0} is not in (0, 1]".format(self.tail_ratio))
        if self.tail_base < 0:
            raise InvalidSequence("tail base {0} is negative".format(self.tail_base))
        last = self.prefix[-1]
        if last == 0:
            if self.tail_base != 0:
                raise InvalidSequence("a zero lambda can only be followed by a truncated tail")
            return
        bound = -log_enclosure(1 - last, bits)
        if self.tail_base * self.tail_ratio > bound.hi:
            raise InvalidSequence(
                "tail does not continue the non-increasing sequence: l_N * q = {0} > -log(1 - lambda_N)".format(
                    to_decimal_string(self.tail_base * self.tail_ratio)),
            )

    @property
    def depth(self):
        return len(self.prefix)

    def is_truncated(self):
        return self.tail_base == 0

    def __eq__(self, other):
        if not isinstance(other, LambdaSequence):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.prefix, self.tail_ratio, self.tail_base, self.perturbation)

    def __repr__(self):
        return "LambdaSequence(depth={0}, tail_ratio={1}, tail_base={2})".format(self.depth, self.tail_ratio, self.tail_base)

    def tail_sum(self, after=None):
        """Sum of l_j over j > after (after >= depth), None when it diverges."""
        after = self.depth if after is None else after
        if self.tail_base == 0:
            return Fraction(0)
        if self.tail_ratio == 1:
            return None
        first = self.tail_base * self.tail_ratio ** (after - self.depth + 1)
        return first / (1 - self.tail_ratio)

    def tail_factor(self, level=None, bits=DEFAULT_PRECISION):
        """Enclosure of prod_{j > level} (1 - lambda_j)."""
        level = self.depth if level is None else level
        if not 0 <= level <= self.depth:
            raise IndexOutOfRange("level {0} is outside [0, {1}]".format(level, self.depth), level=level)
        total = self.tail_sum()
        if total is None:
            tau = RationalEnclosure(0)
        elif total == 0:
            tau = RationalEnclosure(1)
        else:
            tau = exp_enclosure(-total, bits)
        partial = Fraction(1)
        for value in self.prefix[level:]:
            partial *= 1 - value
        return tau * partial

    def partial_product(self, n):
        product = Fraction(1)
        for value in self.prefix[:n]:
            product *= 1 - value
        return product

    def measure(self, bits=DEFAULT_PRECISION):
        return self.tail_factor(0, bits)

    def extend(self, count, bits=DEFAULT_PRECISION):
        """
            Materialise ``count`` tail terms as rational upper enclosures of 1 - exp(-l_j).

            Replacing one lambda_j by a value at distance d scales the mass of every
            component below level j by rho and compresses each one of level j - 1 by rho,
            which moves the measure function by at most 4 (1 / rho - 1) <= 4 d / (1 - lambda_hi).
            These bounds add up in ``perturbation``.
        """
        if count <= 0:
            return self
        prefix = list(self.prefix)
        base = self.tail_base
        perturbation = self.perturbation
        for _ in range(count):
            base = base * self.tail_ratio
            if base == 0:
                prefix.append(Fraction(0))
                continue
            e = exp_enclosure(-base, bits)
            # the exact term lies in [1 - e.hi, 1 - e.lo]
            value = min(1 - e.lo, prefix[-1])
            distance = max(1 - e.lo - value, value - (1 - e.hi))
            perturbation += 4 * distance / e.lo
            prefix.append(value)
        return LambdaSequence(
            prefix, self.tail_ratio, base, bits, _zero_run=self.is_truncated(), perturbation=perturbation,
        )

    def truncated(self):
        return LambdaSequence(self.prefix, 1, 0)

    def to_dict(self):
        result = dict(
            prefix=[fraction_to_pair(v) for v in self.prefix],
            tail_ratio=fraction_to_pair(self.tail_ratio),
            tail_base=fraction_to_pair(self.tail_base),
            depth=self.depth,
        )
        if self.perturbation:
            result["perturbation"] = fraction_to_pair(self.perturbation)
        return result

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise InvalidSequence("sequence document must be a mapping")
        try:
            prefix = [pair_to_fraction(p) for p in data["prefix"]]
            tail_ratio = pair_to_fraction(data["tail_ratio"])
            tail_base = pair_to_fraction(data["tail_base"])
            depth = int(data.get("depth", len(prefix)))
            perturbation = pair_to_fraction(data["perturbation"]) if "perturbation" in data else 0
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidSequence("malformed sequence document: {0}".format(e))
        if depth != len(prefix):
            raise InvalidSequence("depth {0} does not match the prefix length {1}".format(depth, len(prefix)))
        return cls(prefix, tail_ratio, tail_base, _zero_run=tail_base == 0, perturbation=perturbation)

    @classmethod
    def from_values(cls, values, tail_ratio=None, tail_base=None, bits=DEFAULT_PRECISION):
        return cls(values, DEFAULT_TAIL_RATIO if tail_ratio is None else tail_ratio, tail_base, bits)

    @classmethod
    def constant(cls, value, depth, bits=DEFAULT_PRECISION):
        value = to_fraction(value)
        return cls([value] * depth, 1, None, bits)


def read_sequence_file(path):
    if not os.path.exists(path):
        raise MissingInput("sequence file {0} does not exist".format(path), path=path)
    with open(path, "r") as f:
        content = f.read()
    if not content.strip():
        raise MissingInput("sequence file {0} is empty".format(path), path=path)
    try:
        data = json.loads(content)
    except ValueError as e:
        raise InvalidSequence("sequence file {0} is not valid JSON: {1}".format(path, e), path=path)
    return LambdaSequence.from_dict(data)


def write_sequence_file(sequence, path):
    with open(path, "w") as f:
        json.dump(sequence.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")


def _check_index(lam, n, lower=1):
    if not lower <= n <= lam.depth:
        raise IndexOutOfRange(
            "level {0} is outside [{1}, {2}]".format(n, lower, lam.depth), level=n, depth=lam.depth,
        )


def radii(lam, n):
    """r_0..r_n of the construction, exact."""
    _check_index(lam, n, lower=0)
    r = [Fraction(1)]
    for value in lam.prefix[:n]:
        r.append(r[-1] * (1 - value) / 2)
    return r


def gaps(lam, n):
    """g_0..g_n with g_0 = 0 as a placeholder."""
    r = radii(lam, n)
    return [Fraction(0)] + [r[i - 1] * lam.prefix[i - 1] / 2 for i in range(1, n + 1)]


def lemma1_quantities(lam, n):
    """
        r_n = 2**-n prod_{i <= n} (1 - lambda_i), g_n = r_{n-1} lambda_n / 2 and the
        level measure 2**n r_n, all exact.
    """
    _check_index(lam, n)
    r = radii(lam, n)
    g_n = r[n - 1] * lam.prefix[n - 1] / 2
    return r[n], g_n, r[n] * 2 ** n


class IntervalAddress(object):
    """Word b_1..b_n selecting a level-n component, b_i = 1 meaning the right half at step i."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("address digits must be 0 or 1")
        self.bits = bits

    @property
    def level(self):
        return len(self.bits)

    @property
    def index(self):
        value = 0
        for b in self.bits:
            value = value * 2 + b
        return value

    @classmethod
    def from_index(cls, index, level):
        if not 0 <= index < 2 ** level:
            raise IndexOutOfRange("component {0} does not exist on level {1}".format(index, level))
        return cls((index >> (level - 1 - i)) & 1 for i in range(level))

    def left_endpoint(self, r):
        return sum((r[i - 1] / 2 for i, b in enumerate(self.bits, start=1) if b), Fraction(0))

    def interval(self, r):
        left = self.left_endpoint(r)
        return left, left + r[self.level]

    def __eq__(self, other):
        return isinstance(other, IntervalAddress) and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        return "IntervalAddress({0})".format("".join(str(b) for b in self.bits) or "-")


def level_left_endpoints(lam, n):
    r = radii(lam, n)
    lefts = [Fraction(0)]
    for i in range(1, n + 1):
        step = r[i - 1] / 2
        lefts = [a + d for a in lefts for d in (0, step)]
    return lefts


def level_intervals(lam, n):
    """Components of C_n in increasing order, built from the address sums."""
    r = radii(lam, n)
    return [(a, a + r[n]) for a in level_left_endpoints(lam, n)]


def level_intervals_recursive(lam, n):
    """Components of C_n by the literal rule: keep a left-aligned (1 - lambda_i) part of each half."""
    _check_index(lam, n, lower=0)
    intervals = [(Fraction(0), Fraction(1))]
    for value in lam.prefix[:n]:
        keep = 1 - value
        refined = []
        for a, b in intervals:
            half = (b - a) / 2
            refined.append((a, a + half * keep))
            refined.append((a + half, a + half + half * keep))
        intervals = refined
    return intervals


class CantorApproximation(object):
    """
        Level-N picture of the Cantor set: the radii r_0..r_N, the gaps g_1..g_N and an
        enclosure of the tail factor tau_N = prod_{j > N} (1 - lambda_j).
        The 2**N components are built on first access.

        An approximation made by ``deepen`` keeps the one it came from as ``parent``;
        the measure enclosures of both are intersected.
    """

    def __init__(self, lam, level=None, bits=DEFAULT_PRECISION, parent=None):
        level = lam.depth if level is None else level
        _check_index(lam, level, lower=0)
        self.lambda_sequence = lam
        self.level = level
        self.bits = bits
        self.r = tuple(radii(lam, level))
        self.g = tuple(gaps(lam, level))
        self.tail_factor = lam.tail_factor(level, bits)
        self.parent = parent
        self._intervals = None

    @property
    def intervals(self):
        if self._intervals is None:
            self._intervals = level_intervals(self.lambda_sequence, self.level)
        return self._intervals

    @property
    def level_measure(self):
        return self.r[self.level] * 2 ** self.level

    @property
    def perturbation(self):
        return self.lambda_sequence.perturbation

    def widen(self, enclosure, upper):
        """Grow a measure enclosure of the materialised set into one of the original set, within [0, upper]."""
        if not self.perturbation:
            return enclosure
        return RationalEnclosure(
            max(enclosure.lo - self.perturbation, Fraction(0)),
            min(enclosure.hi + self.perturbation, upper),
        )

    def refine(self, enclosure, parent_enclosure):
        result = enclosure.intersect(parent_enclosure)
        if result is None:
            raise NumericalInconsistency(
                "enclosures at levels {0} and {1} are disjoint".format(self.parent.level, self.level),
                level=self.level,
            )
        return result

    def measure(self):
        result = self.widen(self.tail_factor * self.level_measure, Fraction(1))
        if self.parent is not None:
            result = self.refine(result, self.parent.measure())
        return result

    def deepen(self, levels=2, bits=None):
        """Approximation ``levels`` deeper, extending the sequence when needed."""
        bits = self.bits if bits is None else bits
        lam = self.lambda_sequence
        target = self.level + levels
        if target > lam.depth:
            lam = lam.extend(target - lam.depth, bits)
        return CantorApproximation(lam, target, bits, parent=self)

    def to_dict(self):
        result = self.lambda_sequence.to_dict()
        result.update(
            level=self.level,
            tail_factor=self.tail_factor.to_dict(),
            perturbation=fraction_to_pair(self.perturbation),
            measure=self.measure().to_dict(),
        )
        return result


def _upper_L(f, n, bits):
    """Upper bound of L_n = -log f(2**(-n + 1)), from the lower bound of f."""
    x = Fraction(1, 2 ** (n - 1))
    lower = f(x).lo
    if lower <= 0:
        raise InvalidTarget("target has no positive lower bound at x = 2^-{0}".format(n - 1), n=n)
    return -log_enclosure(lower, bits).lo


def _tail_ratio(L_up, depth):
    ratios = []
    for n in range(max(1, depth // 2), len(L_up) - 1):
        if L_up[n] > 0:
            ratios.append(L_up[n + 1] / L_up[n])
    q = max([DEFAULT_TAIL_RATIO] + ratios)
    q = ceil_dyadic(q, TAIL_RATIO_GRID_BITS)
    return min(q, MAX_TAIL_RATIO)


def synthesize_lambda(f, depth, headroom=DEFAULT_HEADROOM, bits=DEFAULT_PRECISION):
    """
        Build lambda with prod_{j > n} (1 - lambda_j) < f(2**(-n + 1)) for n <= depth, and the
        tail domination sum_{j > n} l_j > L_n checked for depth < n <= 4 * depth.

        l_n = (L_{n-1} - L_n) + c 2**-n for n >= 2, l_1 = l_2 + c, raised to a decreasing
        majorant; lambda_n is the upper enclosure of 1 - exp(-l_n).
    """
    headroom = to_fraction(headroom)
    if headroom <= 0:
        raise InvalidTarget("headroom must be positive, got {0}".format(headroom))
    if depth < 1:
        raise InvalidSequence("synthesis depth must be positive, got {0}".format(depth))
    if not f.monotone_flag:
        raise InvalidTarget("target is not asserted non-increasing, take its decreasing envelope first")

    if f(Fraction(1)).lo <= 0:
        raise InvalidTarget("target lower bound at x = 1 is not positive")

    horizon = TAIL_HORIZON * depth
    # L_up[n] for 1 <= n <= horizon + 1, L_up[0] unused
    L_up = [None] + [_upper_L(f, n, bits) for n in range(1, horizon + 2)]
    if L_up[horizon + 1] > L_up[1] / 2:
        raise InvalidTarget(
            "target does not approach 1 near 0 at the sampled resolution: L_1 = {0}, L_{1} = {2}".format(
                to_decimal_string(L_up[1]), horizon + 1, to_decimal_string(L_up[horizon + 1])),
            L_first=to_decimal_string(L_up[1]),
            L_last=to_decimal_string(L_up[horizon + 1]),
        )

    ell = [None, None]
    for n in range(2, depth + 1):
        floor = headroom / 2 ** n
        ell.append(max(L_up[n - 1] - L_up[n] + floor, floor))
    ell[1] = (ell[2] if depth >= 2 else Fraction(0)) + headroom

    q = _tail_ratio(L_up, depth)
    # the tail past N has to carry L_N on its own
    needed = (L_up[depth] + headroom / 2 ** depth) * (1 - q) / q
    ell[depth] = max(ell[depth], needed)

    for n in range(depth - 1, 0, -1):
        ell[n] = max(ell[n], ell[n + 1])

    lam = [None] * (depth + 1)
    for n in range(1, depth + 1):
        lam[n] = 1 - exp_enclosure(-ell[n], bits).lo
        if not 0 < lam[n] < 1:
            raise SynthesisUnverified("lambda_{0} rounds outside (0, 1)".format(n), n=n)
    for n in range(depth - 1, 0, -1):
        lam[n] = max(lam[n], lam[n + 1])

    sequence = LambdaSequence(lam[1:], q, ell[depth], bits)
    _verify_synthesis(sequence, f, L_up, bits)
    sequence.schedule = [
        dict(n=n, L_up=L_up[n], ell=ell[n], lam=lam[n]) for n in range(1, depth + 1)
    ]
    return sequence


def _verify_synthesis(sequence, f, L_up, bits):
    depth = sequence.depth
    tau = sequence.tail_factor(depth, bits)
    if tau.lo <= 0:
        raise SynthesisUnverified("tail factor enclosure does not stay positive")

    # sum_{j > n} l_j with l_j = -log(1 - lambda_j) taken from below
    tail = sequence.tail_sum()
    for n in range(depth, 0, -1):
        if tail <= L_up[n]:
            raise SynthesisUnverified(
                "tail sum does not exceed L_{0}".format(n), n=n,
                tail=to_decimal_string(tail), L_up=to_decimal_string(L_up[n]),
            )
        tail += -log_enclosure(1 - sequence.prefix[n - 1], bits).hi

    product = tau.hi
    for n in range(depth, 0, -1):
        bound = f(Fraction(1, 2 ** (n - 1))).lo
        if not product < bound:
            raise SynthesisUnverified(
                "product past level {0} is not below the target".format(n), n=n,
                product=to_decimal_string(product), target=to_decimal_string(bound),
            )
        product *= 1 - sequence.prefix[n - 1]

    for n in range(depth + 1, len(L_up)):
        tail = sequence.tail_sum(n)
        if not tail > L_up[n]:
            raise SynthesisUnverified(
                "geometric tail does not dominate L_{0}".format(n), n=n,
                tail=to_decimal_string(tail), L_up=to_decimal_string(L_up[n]),
            )
