import math
import random

import pytest

from fibword import (
    BudgetError,
    DomainError,
    FactorialWordStream,
    coverage_profile,
    digits_through_block,
    factor_search,
    factorial_word_prefix,
    leading_digits_search,
    logfactorial_equidistribution,
    to_base_digits,
)

PREFIX_21 = "112624120720504040320"


# ---------------------------------------------------------------------------
# base conversion


def digits_by_divmod(x, base):
    if x == 0:
        return [0]
    out = []
    while x:
        x, r = divmod(x, base)
        out.append(r)
    return out[::-1]


def test_to_base_digits_small():
    assert to_base_digits(0, 10) == [0]
    assert to_base_digits(7, 2) == [1, 1, 1]
    assert to_base_digits(255, 16) == [15, 15]
    assert to_base_digits(10 ** 6, 10) == [1, 0, 0, 0, 0, 0, 0]


def test_to_base_digits_matches_divmod_oracle():
    rng = random.Random(31)
    for _ in range(500):
        base = rng.choice((2, 3, 7, 10, 16, 36))
        x = rng.randrange(0, 10 ** rng.randrange(1, 40))
        assert to_base_digits(x, base) == digits_by_divmod(x, base)


def test_to_base_digits_huge_value_roundtrip():
    x = math.factorial(300)
    digits = to_base_digits(x, 10)
    assert int("".join(map(str, digits))) == x
    assert digits[0] != 0
    back = 0
    for d in to_base_digits(x, 7):
        back = back * 7 + d
    assert back == x


def test_to_base_digits_rejects_bad_input():
    with pytest.raises(DomainError):
        to_base_digits(-1, 10)
    with pytest.raises(DomainError):
        to_base_digits(5, 1)


# ---------------------------------------------------------------------------
# the stream


def test_prefix_is_frozen_constant():
    assert str(factorial_word_prefix(10, 21)) == PREFIX_21
    # shorter requests are prefixes of longer ones
    assert str(factorial_word_prefix(10, 7)) == PREFIX_21[:7]


def test_stream_is_deterministic_across_chunkings():
    a = FactorialWordStream(10)
    b = FactorialWordStream(10)
    left = a.take(1000)
    right = b"".join(bytes(b.take(n)) for n in (1, 2, 3, 500, 494))
    assert bytes(left) == right
    assert a.emitted == b.emitted == 1000


def test_stream_blocks_are_factorials():
    """Each block of the stream is the base-b expansion of the next factorial."""
    rng = random.Random(32)
    for base in (2, 10, 16):
        budget = digits_through_block(base, 120)
        data = bytes(FactorialWordStream(base).take(budget))
        for _ in range(20):
            n = rng.randrange(0, 120)
            start = digits_through_block(base, n - 1) if n else 0
            end = digits_through_block(base, n)
            assert list(data[start:end]) == to_base_digits(math.factorial(n), base)


def test_stream_block_audit_large_n():
    # a deeper single probe near the audit ceiling
    n = 500
    start = digits_through_block(10, n - 1)
    end = digits_through_block(10, n)
    data = bytes(FactorialWordStream(10).take(end))
    assert list(data[start:end]) == to_base_digits(math.factorial(n), 10)


def test_digits_through_block_counts():
    # blocks 0!..3! in base 10: 1,1,2,6 -> four single digits
    assert digits_through_block(10, 3) == 4
    assert digits_through_block(10, 0) == 1
    assert digits_through_block(2, 3) == 1 + 1 + 2 + 3


# ---------------------------------------------------------------------------
# searching


def test_factor_search_examples():
    assert factor_search(10, "5040", 100) == 12
    assert factor_search(10, "999", 100_000) == 640
    assert factor_search(10, PREFIX_21, 1000) == 0
    assert factor_search(10, "987654321", 10_000) is None


def test_factor_search_positions_reextract():
    rng = random.Random(33)
    prefix = str(factorial_word_prefix(10, 50_000))
    for _ in range(40):
        start = rng.randrange(0, 49_000)
        size = rng.randrange(1, 12)
        target = prefix[start : start + size]
        pos = factor_search(10, target, 50_000)
        assert pos is not None and pos <= start
        assert prefix[pos : pos + size] == target


def test_factor_search_straddles_chunk_boundaries():
    # targets crossing the internal 4096-digit chunk edge must still be found
    prefix = str(factorial_word_prefix(10, 4200))
    target = prefix[4090:4105]
    assert factor_search(10, target, 4200) == prefix.find(target)


def test_factor_search_validates_target():
    with pytest.raises(DomainError):
        factor_search(10, "", 100)
    with pytest.raises(DomainError):
        factor_search(2, "012", 100)  # '2' is not a binary digit


# ---------------------------------------------------------------------------
# coverage


def test_coverage_single_digits_base10():
    report = coverage_profile(10, 1, 21)
    assert (report.found, report.total) == (8, 10)
    assert set(report.missing_sample) == {"8", "9"}


def test_coverage_block_budget_reading():
    # by the end of 2! the stream is "111" + "2": both binary digits by block 3
    report = coverage_profile(2, 1, block_budget=3)
    assert report.complete
    assert (report.found, report.total) == (2, 2)


def test_coverage_bigrams_base10():
    full = coverage_profile(10, 2, 608, track_positions=True)
    assert full.complete and full.found == 100
    almost = coverage_profile(10, 2, 607)
    assert almost.found == 99
    # recorded first positions re-extract from a fresh prefix
    prefix = str(factorial_word_prefix(10, 608))
    for block, pos in full.first_positions.items():
        assert prefix[pos : pos + 2] == block
    assert full.first_positions["75"] == 606


def test_coverage_is_monotone_in_the_budget():
    found = [coverage_profile(10, 2, budget).found
             for budget in (50, 100, 200, 400, 608)]
    assert found == sorted(found)
    assert found[-1] == 100


def test_coverage_budget_arguments():
    with pytest.raises(DomainError):
        coverage_profile(10, 2)  # no budget at all
    with pytest.raises(DomainError):
        coverage_profile(10, 2, 100, block_budget=5)  # both budgets
    with pytest.raises(BudgetError):
        coverage_profile(10, 9, 100)  # 10^9 cells exceeds the cell budget
    with pytest.raises(DomainError):
        coverage_profile(10, 0, 100)


# ---------------------------------------------------------------------------
# leading digits


def test_leading_digits_small_targets():
    assert leading_digits_search(10, "1", 10) == 0   # 0! = 1
    assert leading_digits_search(10, "2", 10) == 2   # 2! = 2
    assert leading_digits_search(10, "7", 10) == 6   # 6! = 720
    assert leading_digits_search(10, "72", 10) == 6
    assert leading_digits_search(10, "99", 1000) == 96
    assert leading_digits_search(10, "999", 10_000) == 261


def test_leading_digits_verifies_exactly():
    budget = 600
    table = []
    f = 1
    for n in range(budget + 1):
        if n:
            f *= n
        table.append(str(f))
    rng = random.Random(34)
    for _ in range(40):
        target = str(rng.randrange(1, 500))
        expected = next((i for i, s in enumerate(table) if s.startswith(target)), None)
        assert leading_digits_search(10, target, budget) == expected


def test_leading_digits_other_bases():
    # 5! = 120 = 1111000 in binary
    assert leading_digits_search(2, "1111", 100) == 5
    n = leading_digits_search(16, "ff", 3000)
    assert n is not None
    hex_digits = format(math.factorial(n), "x")
    assert hex_digits.startswith("ff")


def test_leading_digits_rejects_leading_zero():
    with pytest.raises(DomainError):
        leading_digits_search(10, "099", 100)
    with pytest.raises(DomainError):
        leading_digits_search(10, "", 100)


def test_leading_digits_not_found_returns_none():
    assert leading_digits_search(10, "99999999", 50) is None


# ---------------------------------------------------------------------------
# equidistribution diagnostics


def test_weyl_magnitude_shrinks():
    small = logfactorial_equidistribution(10, 100)
    large = logfactorial_equidistribution(10, 20_000)
    assert large.weyl_magnitude < small.weyl_magnitude
    assert large.weyl_magnitude < 0.05


def test_weyl_histogram_accounts_for_every_index():
    report = logfactorial_equidistribution(10, 5000, bins=50)
    assert len(report.histogram) == 50
    assert sum(report.histogram) == 5000
    assert min(report.histogram) > 0


def test_weyl_error_bound_is_small():
    report = logfactorial_equidistribution(10, 10_000)
    assert 0 < report.summation_error_bound < 1e-6


def test_weyl_single_point():
    # with one sample the normalized exponential sum has magnitude 1
    report = logfactorial_equidistribution(10, 1)
    assert report.weyl_magnitude == pytest.approx(1.0)


def test_weyl_rejects_bad_args():
    with pytest.raises(DomainError):
        logfactorial_equidistribution(1, 100)
    with pytest.raises(DomainError):
        logfactorial_equidistribution(10, 0)
    with pytest.raises(DomainError):
        logfactorial_equidistribution(10, 100, frequency=0)
