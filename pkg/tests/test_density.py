import math
import random
from fractions import Fraction

import pytest

from fibword import (
    BalanceViolation,
    DomainError,
    GOLDEN_RATIO,
    RARE_LETTER_TARGET,
    Word,
    adjacency_matrix,
    balance_check,
    binary_alphabet,
    fibonacci_morphism,
    fibonacci_ratio,
    fixed_point_prefix,
    frequency_report,
    golden_density,
    golden_deviation,
    golden_deviation_below,
    mbonacci_morphism,
    perron_eigenvalue,
    symbol_frequency,
    tribonacci_morphism,
    window_frequency_sup,
)


def test_symbol_frequency_exact():
    w = Word.from_string("abaab", binary_alphabet())
    assert symbol_frequency(w, "a") == Fraction(3, 5)
    assert symbol_frequency(w, "b") == Fraction(2, 5)
    assert symbol_frequency(Word.from_string("", binary_alphabet()), "a") == 0


def test_window_frequency_sup():
    w = Word.from_string("aabab", binary_alphabet())
    assert window_frequency_sup(w, "a", 2) == Fraction(1, 1)   # the "aa" window
    assert window_frequency_sup(w, "b", 2) == Fraction(1, 2)
    assert window_frequency_sup(w, "a", 5) == Fraction(3, 5)
    with pytest.raises(DomainError):
        window_frequency_sup(w, "a", 6)


def test_frequency_report_fields():
    w = fixed_point_prefix(fibonacci_morphism(), "a", 6765)
    rep = frequency_report(w, "b", window=100, target=RARE_LETTER_TARGET)
    assert rep.global_frequency == Fraction(2584, 6765)
    assert rep.window_sup is not None and rep.window_sup <= Fraction(1, 2)
    assert rep.max_deviation is not None and rep.max_deviation < 0.02


def test_fibonacci_letter_counts_are_fibonacci_numbers():
    # on a prefix of length F(n), the rare letter appears F(n-2) times
    w = fixed_point_prefix(fibonacci_morphism(), "a", 6765)
    assert w.count("b") == 2584
    assert w.count("a") == 4181


def test_balance_check_on_fibonacci_prefix():
    w = fixed_point_prefix(fibonacci_morphism(), "a", 20_000)
    report = balance_check(w, "b", RARE_LETTER_TARGET, range(5, 200))
    assert report.within_bound()
    assert report.worst_n in range(5, 200)
    # deviations shrink roughly like 1/n, so the scaled worst is close to 1
    assert 0 < report.worst_deviation <= 1.0 / report.worst_n


def test_balance_check_flags_unbalanced_words():
    # long runs of each letter: windows of all-a and all-b both exist
    w = Word.from_string("a" * 50 + "b" * 50, binary_alphabet())
    with pytest.raises(BalanceViolation) as info:
        balance_check(w, "b", 0.5, [10])
    err = info.value
    assert err.n == 10
    assert err.deviation == pytest.approx(0.5)
    assert err.bound == pytest.approx(0.1)


def test_balance_check_argument_validation():
    w = Word.from_string("abab", binary_alphabet())
    with pytest.raises(DomainError):
        balance_check(w, "a", 0.5, [])
    with pytest.raises(DomainError):
        balance_check(w, "a", 0.5, [0])
    with pytest.raises(DomainError):
        balance_check(w, "a", 0.5, [5])


def test_golden_density_ratios():
    ratios = golden_density(10)
    assert ratios[0] == Fraction(1, 1)
    assert ratios[1] == Fraction(1, 2)
    assert ratios[9] == Fraction(55, 89)
    assert ratios == [fibonacci_ratio(n) for n in range(1, 11)]


def test_golden_ratios_alternate_around_the_limit():
    ratios = golden_density(12)
    target = (math.sqrt(5) - 1) / 2
    signs = [1 if float(r) > target else -1 for r in ratios]
    assert signs == [(-1) ** i for i in range(12)]


def test_golden_deviation_certificate():
    assert golden_deviation_below(fibonacci_ratio(40), Fraction(1, 10 ** 15))
    assert not golden_deviation_below(fibonacci_ratio(10), Fraction(1, 10 ** 15))
    # the certificate is two-sided: a value clearly off must fail
    assert not golden_deviation_below(Fraction(1, 2), Fraction(1, 100))
    assert golden_deviation_below(Fraction(1, 2), Fraction(1, 4))


def test_golden_deviation_magnitude():
    dev10 = golden_deviation(fibonacci_ratio(10))
    dev20 = golden_deviation(fibonacci_ratio(20))
    assert dev20 < dev10 < Fraction(1, 1000)
    # compare against the float computation loosely
    assert float(dev10) == pytest.approx(abs(float(fibonacci_ratio(10)) - (GOLDEN_RATIO - 1)), abs=1e-12)


def test_rare_letter_target_is_inverse_golden_squared():
    assert RARE_LETTER_TARGET == pytest.approx(1 / GOLDEN_RATIO ** 2, abs=1e-15)
    assert RARE_LETTER_TARGET == pytest.approx(2 - GOLDEN_RATIO, abs=1e-15)


# ---------------------------------------------------------------------------
# Perron data


def test_perron_known_values():
    assert perron_eigenvalue(2).rho == pytest.approx(GOLDEN_RATIO, abs=1e-12)
    assert perron_eigenvalue(3).rho == pytest.approx(1.8392867552141612, abs=1e-12)


@pytest.mark.parametrize("m", range(2, 9))
def test_perron_data_quality(m):
    data = perron_eigenvalue(m)
    assert data.poly_residual < 1e-10
    assert data.frequency_sum_error < 1e-10
    assert data.eigen_residual < 1e-9
    assert data.pisot
    assert 1 < data.rho < 2
    assert len(data.frequencies) == m
    assert len(data.conjugate_moduli) == m - 1
    assert all(0 < c < 1 for c in data.conjugate_moduli)
    # frequencies are the descending powers rho^-1 .. rho^-m
    for i, f in enumerate(data.frequencies, start=1):
        assert f == pytest.approx(data.rho ** -i, rel=1e-12)


def test_perron_rho_increases_with_m():
    rhos = [perron_eigenvalue(m).rho for m in range(2, 9)]
    assert rhos == sorted(rhos)
    assert rhos[-1] < 2


def test_perron_matches_adjacency_matrix():
    """The stored matrix must be the adjacency matrix of the same substitution."""
    for m in (2, 3, 4):
        data = perron_eigenvalue(m)
        assert [list(row) for row in data.matrix] == adjacency_matrix(mbonacci_morphism(m))


def test_perron_rejects_bad_m():
    with pytest.raises(DomainError):
        perron_eigenvalue(1)


def test_tribonacci_prefix_frequencies_approach_perron_data():
    w = fixed_point_prefix(tribonacci_morphism(), "a", 50_000)
    tau = perron_eigenvalue(3).rho
    for i, sym in enumerate("abc", start=1):
        assert float(symbol_frequency(w, sym)) == pytest.approx(tau ** -i, abs=1e-3)


def test_random_word_frequencies_sum_to_one():
    rng = random.Random(21)
    for _ in range(100):
        length = rng.randrange(1, 60)
        w = Word.from_indices(binary_alphabet(), (rng.randrange(2) for _ in range(length)))
        total = symbol_frequency(w, "a") + symbol_frequency(w, "b")
        assert total == 1
