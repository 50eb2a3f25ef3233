#!/usr/bin/env python

# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import csv
import random
from fractions import Fraction
from functools import reduce
from math import gcd

from ansible_collections.community.cantor.plugins.module_utils.cantor_construction import (
    IntervalAddress,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    CertificateFailed,
    DomainError,
    IndeterminateResult,
    NumericalInconsistency,
    ResourceLimit,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_rational import (
    RationalEnclosure,
    fraction_to_pair,
    to_decimal_string,
)


DEFAULT_ORACLE_CAP = 20
DEFAULT_SAMPLE_COUNT = 128
DEFAULT_ESCALATION_BUDGET = 3

PASS = "pass"
FAIL = "fail"
INDETERMINATE = "indeterminate"


def rational_dict(value):
    return dict(value=fraction_to_pair(value), decimal=to_decimal_string(value))


def _lcm(a, b):
    return a * b // gcd(a, b)


def _check_unit(x, name="x", open_left=False):
    x = Fraction(x)
    if x > 1 or x < 0 or (open_left and x == 0):
        raise DomainError("{0} = {1} is outside {2}0, 1]".format(name, x, "(" if open_left else "["), **{name: fraction_to_pair(x)})
    return x


def _descend(approx, x):
    """
        Walk the address tree towards x. Returns (full, overlap): the number of level-N
        components inside [0, x] and the overlap of x with the one partially covered.
    """
    r = approx.r
    level = approx.level
    full = 0
    offset = x
    for i in range(1, level + 1):
        if offset >= r[i - 1]:
            return full + 2 ** (level - i + 1), Fraction(0)
        half = r[i - 1] / 2
        if offset > half:
            full += 2 ** (level - i)
            offset -= half
    if offset >= r[level]:
        return full + 1, Fraction(0)
    return full, offset


def prefix_measure_levelN(approx, x):
    """Exact |C_N intersected with [0, x]|."""
    x = _check_unit(x)
    full, overlap = _descend(approx, x)
    return full * approx.r[approx.level] + overlap


def prefix_measure_summed(approx, x):
    """Same quantity by summing over every component; used to cross-check the descent."""
    x = _check_unit(x)
    total = Fraction(0)
    for a, b in approx.intervals:
        if a >= x:
            break
        total += min(b, x) - a
    return total


def prefix_measure_bounds(approx, x):
    """
        Enclosure of |C intersected with [0, x]|. Full components contribute r_N tau_N, the partial
        one with overlap o lies in [max(0, o - r_N (1 - tau.lo)), min(o, r_N tau.hi)].
        Deepened approximations widen this by their perturbation and stay inside the
        enclosure of the approximation they were deepened from.
    """
    x = _check_unit(x)
    full, overlap = _descend(approx, x)
    r_n = approx.r[approx.level]
    tau = approx.tail_factor
    lo = full * r_n * tau.lo + max(Fraction(0), overlap - r_n * (1 - tau.lo))
    hi = full * r_n * tau.hi + min(overlap, r_n * tau.hi)
    bounds = approx.widen(RationalEnclosure(lo, hi), x)
    if approx.parent is not None:
        bounds = approx.refine(bounds, prefix_measure_bounds(approx.parent, x))
    return bounds


def phi(approx, s):
    s = _check_unit(s, "s", open_left=True)
    return prefix_measure_bounds(approx, s) * (1 / s)


def _scaled_lefts(approx):
    cached = getattr(approx, "_scaled_lefts", None)
    if cached is not None:
        return cached
    r = approx.r
    level = approx.level
    steps = [r[i - 1] / 2 for i in range(1, level + 1)]
    denominator = reduce(_lcm, [q.denominator for q in steps + [r[level]]], 1)
    lefts = [0]
    for step in steps:
        d = int(step * denominator)
        lefts = [a + e for a in lefts for e in (0, d)]
    cached = (denominator, lefts, int(r[level] * denominator))
    approx._scaled_lefts = cached
    return cached


def phi_bruteforce(approx, s, cap=DEFAULT_ORACLE_CAP):
    """
        Exact maximum of a -> |C_N intersected with [a, a + s]| over a in [0, 1 - s].

        The objective is piecewise linear with slope [a + s in C_N] - [a in C_N]; every
        breakpoint is swept once on integers scaled by a common denominator.
        Returns (max_value, witnesses) with every maximising breakpoint, ascending.
    """
    s = _check_unit(s, "s", open_left=True)
    if approx.level > cap:
        raise ResourceLimit(
            "brute force oracle is capped at level {0}, got {1}".format(cap, approx.level),
            level=approx.level, cap=cap,
        )
    base, lefts, length = _scaled_lefts(approx)
    denominator = _lcm(base, s.denominator)
    factor = denominator // base
    width = int(s * denominator)
    end = denominator - width
    length *= factor

    deltas = {}
    for a in lefts:
        a *= factor
        b = a + length
        for position, delta in ((a - width, 1), (b - width, -1), (a, -1), (b, 1)):
            deltas[position] = deltas.get(position, 0) + delta

    value = int(prefix_measure_levelN(approx, s) * denominator)
    slope = 0
    positions = []
    for position in sorted(deltas):
        if position <= 0:
            slope += deltas[position]
        elif position < end:
            positions.append(position)
    positions.append(end)

    best = value
    witnesses = [0]
    previous = 0
    for position in positions:
        if position == previous:
            continue
        value += slope * (position - previous)
        previous = position
        slope += deltas.get(position, 0)
        if value > best:
            best = value
            witnesses = [position]
        elif value == best:
            witnesses.append(position)
    return Fraction(best, denominator), [Fraction(w, denominator) for w in witnesses]


class CheckReport(object):
    """Per-sample records of a check, with counts by status."""

    def __init__(self, name):
        self.name = name
        self.records = []
        self.facts = []
        self.warnings = []
        self.counts = {PASS: 0, FAIL: 0, INDETERMINATE: 0}
        # secondary comparisons left open while the record itself was decided
        self.enclosure_indeterminate = 0

    def add(self, status, **record):
        record["status"] = status
        self.counts[status] += 1
        self.records.append(record)

    @property
    def failures(self):
        return [r for r in self.records if r["status"] == FAIL] + [f for f in self.facts if not f["holds"]]

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return dict(
            name=self.name,
            ok=self.ok,
            passed=self.counts[PASS],
            failed=self.counts[FAIL],
            indeterminate=self.counts[INDETERMINATE],
            enclosure_indeterminate=self.enclosure_indeterminate,
            facts=self.facts,
            records=self.records,
            warnings=self.warnings,
        )


def sample_grid(count, seed=None, denominator_bits=32):
    """k / count for k = 1..count, or ``count`` seeded random dyadics in (0, 1]."""
    if seed is None:
        return [Fraction(k, count) for k in range(1, count + 1)]
    rng = random.Random(seed)
    scale = 2 ** denominator_bits
    return sorted(Fraction(rng.randint(1, scale), scale) for _ in range(count))


def check_lemma2(approx, samples, cap=DEFAULT_ORACLE_CAP):
    """
        For every s the sliding window maximum equals the prefix measure at level N, and the
        enclosure of |C intersected with [0, s]| sits between tau.lo times it and it.
    """
    report = CheckReport("sliding_window_equals_prefix")
    tau = approx.tail_factor
    for s in samples:
        s = _check_unit(s, "s", open_left=True)
        best, witnesses = phi_bruteforce(approx, s, cap)
        prefix = prefix_measure_levelN(approx, s)
        bounds = prefix_measure_bounds(approx, s)
        bracketed = bounds.lo <= best and bounds.hi >= tau.lo * best
        status = PASS if best == prefix and bracketed else FAIL
        report.add(
            status,
            s=rational_dict(s),
            oracle_max=rational_dict(best),
            prefix=rational_dict(prefix),
            witnesses=[fraction_to_pair(w) for w in witnesses],
            bracketed=bracketed,
        )
    return report


def band_samples(approx, n, count, seed=None):
    lower, upper = approx.r[n], approx.r[n - 1]
    if seed is None:
        return [lower + (upper - lower) * Fraction(k, count) for k in range(count)]
    rng = random.Random("{0}-{1}".format(seed, n))
    scale = 2 ** 32
    return [lower + (upper - lower) * Fraction(rng.randrange(scale), scale) for _ in range(count)]


def check_lemma4(approx, samples_per_band=100, seed=None):
    """
        For r_n <= s < r_{n-1}: prefix(s) / s <= prefix(r_n) / r_n exactly at level N, and the
        enclosure comparison of phi(s) against phi(r_n) when the widths allow a decision.
        Also records the gap ratio bound and the last endpoint bound the argument rests on.
    """
    report = CheckReport("density_monotone_in_band")
    level = approx.level
    r, g = approx.r, approx.g
    lam = approx.lambda_sequence.prefix

    for n in range(1, level + 1):
        reference = prefix_measure_levelN(approx, r[n]) / r[n]
        reference_phi = phi(approx, r[n])
        for s in band_samples(approx, n, samples_per_band, seed):
            exact = prefix_measure_levelN(approx, s) / s
            if s == r[n]:
                enclosure = PASS
            else:
                value = phi(approx, s)
                if value.hi <= reference_phi.lo:
                    enclosure = PASS
                elif value.lo > reference_phi.hi:
                    enclosure = FAIL
                else:
                    enclosure = INDETERMINATE
            if exact > reference:
                status = FAIL
            elif enclosure == FAIL:
                status = FAIL
            else:
                status = PASS
            report.add(
                status, n=n, s=rational_dict(s),
                ratio=to_decimal_string(exact), reference=to_decimal_string(reference),
                enclosure=enclosure,
            )
            if enclosure == INDETERMINATE:
                report.enclosure_indeterminate += 1

    for i in range(1, level):
        ratio = g[i + 1] / g[i]
        report.facts.append(dict(
            fact="gap_ratio", n=i, value=to_decimal_string(ratio),
            holds=ratio <= (1 - lam[i - 1]) / 2 < Fraction(1, 2),
        ))
    for n in range(1, level + 1):
        address = IntervalAddress((0,) * (n - 1) + (1,) * (level - n + 1))
        endpoint = address.interval(r)[1]
        closed_form = r[n - 1] - sum(g[n:level + 1], Fraction(0))
        report.facts.append(dict(
            fact="last_endpoint", n=n, value=to_decimal_string(endpoint),
            holds=endpoint == closed_form and endpoint >= 2 * r[n],
        ))

    if report.enclosure_indeterminate:
        report.warnings.append(
            "{0} enclosure comparisons were indeterminate, the exact level {1} comparison decided them".format(
                report.enclosure_indeterminate, level))
    return report


class PrefixDecomposition(object):
    """
        b = r_k * copies_of_Ik + gap_mass for the right endpoint b of a level-k component of I_{n-1},
        with theta the address digits from step n on and G_{n+i} the gap measure inside I_{n+i}.
    """

    def __init__(self, n, k, endpoint, theta, copies_of_Ik, gap_mass, G):
        self.n = n
        self.k = k
        self.endpoint = endpoint
        self.theta = tuple(theta)
        self.copies_of_Ik = copies_of_Ik
        self.gap_mass = gap_mass
        self.G = tuple(G)

    def to_dict(self):
        return dict(
            n=self.n,
            k=self.k,
            endpoint=rational_dict(self.endpoint),
            theta=list(self.theta),
            copies_of_Ik=self.copies_of_Ik,
            gap_mass=rational_dict(self.gap_mass),
        )


def decompose_endpoint(approx, address, n):
    k = address.level
    if not 1 <= n <= k <= approx.level:
        raise DomainError("need 1 <= n <= k <= {0}, got n={1}, k={2}".format(approx.level, n, k))
    if any(address.bits[:n - 1]):
        raise DomainError("component {0!r} does not lie in I_{1}".format(address, n - 1))
    r, g = approx.r, approx.g

    theta = address.bits[n - 1:]
    # G[i] for G_{n+i}, i = 0..k-n, G_k = 0
    G = [sum((2 ** (j - i) * g[n + j] for j in range(i + 1, k - n + 1)), Fraction(0)) for i in range(k - n + 1)]
    copies = 1 + sum(t * 2 ** (k - (n + i)) for i, t in enumerate(theta))
    gap_mass = sum((t * (G[i] + g[n + i]) for i, t in enumerate(theta)), Fraction(0))
    endpoint = address.interval(r)[1]

    problems = []
    if r[k] * copies + gap_mass != endpoint:
        problems.append("endpoint reconstruction")
    for i in range(k - n):
        if G[i] != 2 * G[i + 1] + 2 * g[n + i + 1]:
            problems.append("gap recursion at {0}".format(n + i))
    for i in range(k - n + 1):
        if r[n + i] != 2 ** (k - (n + i)) * r[k] + G[i]:
            problems.append("radius decomposition at {0}".format(n + i))
    if prefix_measure_levelN(approx, endpoint) != copies * 2 ** (approx.level - k) * r[approx.level]:
        problems.append("prefix measure identity")
    if problems:
        raise NumericalInconsistency(
            "endpoint decomposition of {0!r} does not close: {1}".format(address, ", ".join(problems)),
        )
    return PrefixDecomposition(n, k, endpoint, theta, copies, gap_mass, G)


def check_density_limit(approx):
    """lo(phi(r_n)) non-decreasing in n, lo(phi(r_N)) > lo(phi(r_1)), and bounded away from zero."""
    report = CheckReport("density_tends_to_one")
    level = approx.level
    lows = []
    for n in range(1, level + 1):
        value = phi(approx, approx.r[n])
        lows.append(value.lo)
        status = PASS if len(lows) == 1 or value.lo >= lows[-2] else FAIL
        report.add(status, n=n, phi=value.to_dict())
    report.facts.append(dict(fact="positive_measure", holds=bool(lows) and min(lows) > 0))
    if level >= 2:
        report.facts.append(dict(fact="approaches_one", holds=lows[-1] > lows[0]))
    return report


class DensityProfile(object):

    def __init__(self, samples, phis, targets, structural):
        self.samples = samples
        self.phis = phis
        self.targets = targets
        self.structural = structural

    def margins(self):
        return [f.lo - p.hi for p, f in zip(self.phis, self.targets)]

    def to_dict(self):
        return dict(
            samples=[
                dict(s=rational_dict(s), phi=p.to_dict(), f=f.to_dict(), margin=rational_dict(f.lo - p.hi))
                for s, p, f in zip(self.samples, self.phis, self.targets)
            ],
            structural=[dict(n=n, r=rational_dict(r_n), phi=p.to_dict()) for n, r_n, p in self.structural],
        )

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["s_num", "s_den", "phi_lo", "phi_hi", "f_lo", "f_hi", "margin"])
        for s, p, f in zip(self.samples, self.phis, self.targets):
            writer.writerow([
                s.numerator, s.denominator,
                to_decimal_string(p.lo), to_decimal_string(p.hi),
                to_decimal_string(f.lo), to_decimal_string(f.hi),
                to_decimal_string(f.lo - p.hi),
            ])


def density_profile(approx, f, samples):
    samples = [_check_unit(s, "s", open_left=True) for s in samples]
    phis = [phi(approx, s) for s in samples]
    targets = [f(s) for s in samples]
    structural = [(n, approx.r[n], phi(approx, approx.r[n])) for n in range(1, approx.level + 1)]
    return DensityProfile(samples, phis, targets, structural)


def default_samples(count=DEFAULT_SAMPLE_COUNT, depth=14):
    points = set(Fraction(k, count) for k in range(1, count + 1))
    points.update(Fraction(1, 2 ** k) for k in range(1, depth + 1))
    return sorted(points)


class Certificate(object):
    """Outcome of the target check: structural records per n, sampled records per s."""

    def __init__(self, approx):
        self.level = approx.level
        self.bits = approx.bits
        self.tail_factor = approx.tail_factor
        self.measure = approx.measure()
        self.structural = CheckReport("structural")
        self.sampled = CheckReport("sampled")
        self.positive_measure = self.measure.lo > 0
        self.escalations = 0
        self.warnings = []
        self._margins = []

    def record(self, report, status, margin, **record):
        if status == PASS:
            self._margins.append(margin)
        report.add(status, margin=rational_dict(margin), **record)

    @property
    def failures(self):
        failures = self.structural.failures + self.sampled.failures
        if not self.positive_measure and self.tail_factor.hi == 0:
            failures.append(dict(status=FAIL, reason="tail factor enclosure is zero, the set has measure zero"))
        return failures

    @property
    def indeterminate(self):
        pending = [r for r in self.structural.records + self.sampled.records if r["status"] == INDETERMINATE]
        if not self.positive_measure and self.tail_factor.hi > 0:
            pending.append(dict(status=INDETERMINATE, reason="tail factor enclosure touches zero"))
        return pending

    @property
    def holds(self):
        return not self.failures and not self.indeterminate

    @property
    def min_margin(self):
        return min(self._margins) if self._margins else None

    def to_dict(self):
        return dict(
            holds=self.holds,
            level=self.level,
            precision=self.bits,
            escalations=self.escalations,
            positive_measure=self.positive_measure,
            tail_factor=self.tail_factor.to_dict(),
            measure=self.measure.to_dict(),
            min_margin=None if self.min_margin is None else rational_dict(self.min_margin),
            structural=self.structural.to_dict(),
            sampled=self.sampled.to_dict(),
            failures=self.failures,
            warnings=self.warnings,
        )


def _compare(value, target):
    if value.hi < target.lo:
        return PASS
    if value.lo >= target.hi:
        return FAIL
    return INDETERMINATE


def _certify(approx, f, samples):
    certificate = Certificate(approx)
    for n in range(1, approx.level + 1):
        value = phi(approx, approx.r[n])
        target = f(Fraction(1, 2 ** (n - 1)))
        certificate.record(
            certificate.structural, _compare(value, target), target.lo - value.hi,
            n=n, r=rational_dict(approx.r[n]), phi=value.to_dict(), f=target.to_dict(),
        )
    for s in samples:
        value = phi(approx, s)
        target = f(s)
        certificate.record(
            certificate.sampled, _compare(value, target), target.lo - value.hi,
            s=rational_dict(s), phi=value.to_dict(), f=target.to_dict(),
        )
    return certificate


def verify_target(approx, f, samples=None, budget=DEFAULT_ESCALATION_BUDGET):
    """
        Certificate that phi(r_n) < f(2**(-n + 1)) for n <= N and phi(s) < f(s) on the samples,
        with a positive lower bound on the measure. Indeterminate comparisons deepen the
        approximation by two levels and add a bit of precision, ``budget`` times at most.
    """
    if samples is None:
        samples = default_samples(depth=approx.level)
    samples = [_check_unit(s, "s", open_left=True) for s in samples]

    escalations = 0
    notes = []
    while True:
        certificate = _certify(approx, f, samples)
        certificate.escalations = escalations
        certificate.warnings.extend(notes)
        failures = certificate.failures
        if failures:
            raise CertificateFailed(
                "certificate failed at {0}".format(", ".join(_describe(r) for r in failures[:10])),
                certificate=certificate,
                failures=len(failures),
            )
        pending = certificate.indeterminate
        if not pending:
            return certificate
        if escalations >= budget:
            raise IndeterminateResult(
                "{0} comparisons still indeterminate after {1} escalations".format(len(pending), escalations),
                certificate=certificate,
            )
        escalations += 1
        approx = approx.deepen(2, approx.bits + 1)
        notes.append("{0} indeterminate comparisons, escalated to level {1} with {2} bits".format(
            len(pending), approx.level, approx.bits))


def _describe(record):
    if "n" in record:
        return "n={0}".format(record["n"])
    if "s" in record:
        return "s={0}".format("/".join(record["s"]["value"]))
    return record.get("reason", "?")
