from __future__ import absolute_import, division, print_function

__metaclass__ = type

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ansible_collections.community.cantor.plugins.module_utils.cantor_construction import (
    CantorApproximation,
    IntervalAddress,
    LambdaSequence,
    gaps,
    lemma1_quantities,
    level_intervals,
    level_intervals_recursive,
    radii,
    read_sequence_file,
    synthesize_lambda,
    write_sequence_file,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_exceptions import (
    IndexOutOfRange,
    InvalidSequence,
    InvalidTarget,
    MissingInput,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_rational import (
    RationalEnclosure,
    exp_enclosure,
    log_enclosure,
)
from ansible_collections.community.cantor.plugins.module_utils.cantor_target import (
    TargetFunction,
)


THIRDS = LambdaSequence([Fraction(1, 3), Fraction(1, 3)])

non_increasing_prefixes = st.lists(
    st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=60),
    min_size=1,
    max_size=12,
).map(lambda values: sorted(values, reverse=True))


@settings(max_examples=50, deadline=None)
@given(non_increasing_prefixes)
def test_closed_forms_match_recursive_construction(prefix):
    lam = LambdaSequence(prefix)
    for n in range(1, lam.depth + 1):
        r_n, g_n, measure = lemma1_quantities(lam, n)
        intervals = level_intervals_recursive(lam, n)
        assert len(intervals) == 2 ** n
        assert all(b - a == r_n for a, b in intervals)
        assert intervals[1][0] - intervals[0][1] == g_n
        assert sum(b - a for a, b in intervals) == measure
        assert r_n == Fraction(1, 2 ** n) * lam.partial_product(n)
    assert level_intervals(lam, lam.depth) == level_intervals_recursive(lam, lam.depth)


testdata = [
    ("n", "r_n", "g_n", "measure"),
    [
        (1, Fraction(1, 3), Fraction(1, 6), Fraction(2, 3)),
        (2, Fraction(1, 9), Fraction(1, 18), Fraction(4, 9)),
    ],
]


@pytest.mark.parametrize(*testdata)
def test_lemma1_quantities(n, r_n, g_n, measure):
    assert lemma1_quantities(THIRDS, n) == (r_n, g_n, measure)


def test_lemma1_quantities_out_of_range():
    with pytest.raises(IndexOutOfRange):
        lemma1_quantities(THIRDS, 3)
    with pytest.raises(IndexOutOfRange):
        lemma1_quantities(THIRDS, 0)


def test_level_intervals():
    assert level_intervals(THIRDS, 0) == [(0, 1)]
    assert level_intervals(LambdaSequence([Fraction(1, 3)]), 1) == [
        (0, Fraction(1, 3)), (Fraction(1, 2), Fraction(5, 6)),
    ]
    assert level_intervals(THIRDS, 2) == [
        (0, Fraction(1, 9)),
        (Fraction(1, 6), Fraction(5, 18)),
        (Fraction(1, 2), Fraction(11, 18)),
        (Fraction(2, 3), Fraction(7, 9)),
    ]
    with pytest.raises(IndexOutOfRange):
        level_intervals(THIRDS, 3)


def test_radii_and_gaps():
    assert radii(THIRDS, 2) == [1, Fraction(1, 3), Fraction(1, 9)]
    assert gaps(THIRDS, 2) == [0, Fraction(1, 6), Fraction(1, 18)]


def test_interval_address():
    address = IntervalAddress.from_index(5, 3)
    assert address.bits == (1, 0, 1)
    assert address.index == 5
    assert address.level == 3
    r = radii(LambdaSequence([Fraction(1, 3)] * 3), 3)
    assert address.interval(r) == level_intervals(LambdaSequence([Fraction(1, 3)] * 3), 3)[5]
    assert IntervalAddress(()).left_endpoint(r) == 0
    with pytest.raises(IndexOutOfRange):
        IntervalAddress.from_index(8, 3)
    with pytest.raises(ValueError):
        IntervalAddress((0, 2))


@pytest.mark.parametrize(
    "prefix",
    [[], [Fraction(1)], [0], [Fraction(-1, 2)], [Fraction(1, 4), Fraction(1, 3)], ["x"]],
)
def test_invalid_sequences(prefix):
    with pytest.raises(InvalidSequence):
        LambdaSequence(prefix)


def test_invalid_tails():
    with pytest.raises(InvalidSequence):
        LambdaSequence([Fraction(1, 3)], tail_ratio=0)
    with pytest.raises(InvalidSequence):
        LambdaSequence([Fraction(1, 3)], tail_ratio=Fraction(3, 2))
    with pytest.raises(InvalidSequence):
        LambdaSequence([Fraction(1, 3)], tail_ratio=Fraction(1, 2), tail_base=2)
    with pytest.raises(InvalidSequence):
        LambdaSequence([Fraction(1, 3)], tail_base=-1)


def test_non_strict_decrease_is_allowed():
    lam = LambdaSequence([Fraction(1, 3)] * 5)
    assert lam.depth == 5
    assert lam.tail_sum() > 0


def test_tail_factor_and_measure():
    lam = LambdaSequence([Fraction(1, 2), Fraction(1, 4)], tail_ratio=Fraction(1, 2), tail_base=Fraction(1, 8))
    assert lam.tail_sum() == Fraction(1, 8)
    assert lam.tail_sum(3) == Fraction(1, 16)
    tau = lam.tail_factor()
    assert tau.lo < tau.hi < 1
    assert lam.tail_factor(0).contains(lam.measure())
    assert lam.measure().hi <= Fraction(3, 8) * tau.hi
    with pytest.raises(IndexOutOfRange):
        lam.tail_factor(3)


def test_constant_and_truncated_tails():
    constant = LambdaSequence.constant(Fraction(1, 3), 4)
    assert constant.tail_ratio == 1
    assert constant.tail_sum() is None
    assert constant.measure() == RationalEnclosure(0)

    truncated = THIRDS.truncated()
    assert truncated.is_truncated()
    assert truncated.tail_factor() == RationalEnclosure(1)
    assert truncated.measure() == RationalEnclosure(Fraction(4, 9))
    deeper = truncated.extend(2)
    assert deeper.prefix[2:] == (0, 0)
    assert deeper.measure() == RationalEnclosure(Fraction(4, 9))


def test_extend_keeps_prefix_and_order():
    lam = LambdaSequence.from_values([Fraction(1, 2), Fraction(1, 3)])
    deeper = lam.extend(4)
    assert deeper.depth == 6
    assert deeper.prefix[:2] == lam.prefix
    assert all(a >= b for a, b in zip(deeper.prefix, deeper.prefix[1:]))
    assert all(0 < value < 1 for value in deeper.prefix)
    assert deeper.tail_ratio == lam.tail_ratio
    assert lam.extend(0) is lam
    # materialised terms are rounded up, so the deeper set is not larger
    assert deeper.measure().lo <= lam.measure().hi
    assert 0 < deeper.perturbation < Fraction(1, 2 ** 55)
    assert deeper.extend(3).perturbation > deeper.perturbation
    assert LambdaSequence.from_dict(json.loads(json.dumps(deeper.to_dict()))) == deeper
    assert THIRDS.truncated().extend(2).perturbation == 0
    with pytest.raises(InvalidSequence):
        LambdaSequence([Fraction(1, 3)], perturbation=-1)


def test_halving_tail_materialised_to_depth_40():
    # lambda_j = 1 - exp(-2^-j), so the products tend to exp(-1)
    first = 1 - exp_enclosure(Fraction(-1, 2)).lo
    lam = LambdaSequence([first], Fraction(1, 2), Fraction(1, 2)).extend(39)
    assert lam.depth == 40
    for n in range(1, 41):
        exact = exp_enclosure(-(1 - Fraction(1, 2 ** n)))
        product = lam.partial_product(n)
        assert product <= exact.hi
        assert exact.lo - product <= n * Fraction(1, 2 ** 60)
        assert abs(-log_enclosure(1 - lam.prefix[n - 1]).midpoint - Fraction(1, 2 ** n)) < Fraction(1, 2 ** 60)
    e = exp_enclosure(-1)
    assert abs(lam.measure().midpoint - e.midpoint) < Fraction(1, 2 ** 55)
    assert abs(CantorApproximation(lam).measure().midpoint - e.midpoint) < Fraction(1, 2 ** 55)


def test_sequence_dict_and_file(tmp_path):
    lam = LambdaSequence([Fraction(1, 3), Fraction(1, 5)], Fraction(1, 2), Fraction(1, 10))
    assert LambdaSequence.from_dict(json.loads(json.dumps(lam.to_dict()))) == lam

    path = str(tmp_path / "lambda.json")
    write_sequence_file(lam, path)
    assert read_sequence_file(path) == lam


def test_sequence_file_errors(tmp_path):
    with pytest.raises(MissingInput):
        read_sequence_file(str(tmp_path / "missing.json"))

    empty = tmp_path / "empty.json"
    empty.write_text("\n")
    with pytest.raises(MissingInput):
        read_sequence_file(str(empty))

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(InvalidSequence):
        read_sequence_file(str(broken))

    mismatch = tmp_path / "mismatch.json"
    data = THIRDS.to_dict()
    data["depth"] = 3
    mismatch.write_text(json.dumps(data))
    with pytest.raises(InvalidSequence):
        read_sequence_file(str(mismatch))


def test_approximation():
    approx = CantorApproximation(THIRDS)
    assert approx.level == 2
    assert approx.r == (1, Fraction(1, 3), Fraction(1, 9))
    assert approx.level_measure == Fraction(4, 9)
    assert approx.intervals == level_intervals(THIRDS, 2)
    assert approx.measure().hi <= Fraction(4, 9)

    deeper = approx.deepen(2)
    assert deeper.level == 4
    assert deeper.lambda_sequence.depth == 4
    assert deeper.measure().lo <= approx.measure().hi

    with pytest.raises(IndexOutOfRange):
        CantorApproximation(THIRDS, 3)


def test_synthesize_rejects_constant_target():
    with pytest.raises(InvalidTarget):
        synthesize_lambda(TargetFunction.constant(Fraction(1, 2)), 8)


def test_synthesize_rejects_unflagged_target():
    f = TargetFunction.from_expression("max(1/2, 1 - sqrt(x))")
    with pytest.raises(InvalidTarget):
        synthesize_lambda(f, 8)


def test_synthesize_rejects_bad_parameters():
    f = TargetFunction.from_expression("max(1/2, 1 - sqrt(x))", monotone_flag=True)
    with pytest.raises(InvalidTarget):
        synthesize_lambda(f, 8, headroom=0)
    with pytest.raises(InvalidSequence):
        synthesize_lambda(f, 0)
    with pytest.raises(InvalidTarget):
        synthesize_lambda(TargetFunction.from_expression("1 - x", monotone_flag=True), 8)


def test_synthesize_schedule_of_the_square_root_target():
    f = TargetFunction.from_expression("max(1/2, 1 - sqrt(x))", monotone_flag=True)
    lam = synthesize_lambda(f, 8)
    L = [row["L_up"] for row in lam.schedule]
    log_half = log_enclosure(Fraction(1, 2))
    # the target is exactly 1/2 at x = 1, 1/2 and 1/4
    assert L[0] == L[1] == L[2] == -log_half.lo
    assert abs(float(L[0]) - math.log(2)) < 1e-15
    assert abs(float(L[3]) - -math.log(1 - math.sqrt(1 / 8))) < 1e-9
    assert abs(float(L[3]) - 0.4362646) < 1e-6
    assert all(a >= b for a, b in zip(L, L[1:]))


def test_synthesize_condition_holds():
    f = TargetFunction.from_expression("max(1/2, 1 - sqrt(x))", monotone_flag=True)
    lam = synthesize_lambda(f, 14)
    assert lam.depth == 14
    assert all(a >= b for a, b in zip(lam.prefix, lam.prefix[1:]))
    assert 0 < lam.tail_ratio < 1
    assert [row["n"] for row in lam.schedule] == list(range(1, 15))

    for n in range(1, 15):
        product = lam.tail_factor(n)
        assert product.hi < f(Fraction(1, 2 ** (n - 1))).lo

    assert lam.measure().lo > Fraction(1, 10)
