"""Combinatorics on words: substitutions, complexity, densities, and friends."""

from .complexity import (
    ComplexityProfile,
    SquareFreeCensus,
    arithmetic_complexity,
    count_square_free,
    delta_apply,
    delta_factorize,
    delta_morphism,
    factor_complexity,
    is_square_free,
    is_sturmian_profile,
    palindromic_factor_count,
    scattered_palindrome_count,
    scattered_palindromes_by_length,
    square_free_census,
    square_free_words,
)
from .density import (
    GOLDEN_RATIO,
    RARE_LETTER_TARGET,
    BalanceReport,
    FrequencyReport,
    PerronData,
    balance_check,
    fibonacci_ratio,
    frequency_report,
    golden_density,
    golden_deviation,
    golden_deviation_below,
    perron_eigenvalue,
    symbol_frequency,
    window_frequency_sup,
)
from .errors import BalanceViolation, BudgetError, DomainError, FactorizationError
from .factorial_word import (
    CoverageReport,
    FactorialWordStream,
    WeylReport,
    coverage_profile,
    digits_through_block,
    factor_search,
    factorial_word_prefix,
    leading_digits_search,
    logfactorial_equidistribution,
    to_base_digits,
)
from .modfib import (
    DensityResult,
    PrimeContext,
    bruteforce_trace,
    density_formula,
    fib,
    fib_mod,
    fib_pair,
    fib_pair_mod,
    is_prime,
    lucas,
    lucas_mod,
    lucas_zeros,
    pisano_period,
    prime_context,
    residue_density_bruteforce,
    restricted_period,
)
from .words import (
    Alphabet,
    Morphism,
    Word,
    adjacency_matrix,
    binary_alphabet,
    compose_sturmian,
    digit_alphabet,
    fibonacci_morphism,
    fixed_point_prefix,
    identity_morphism,
    mbonacci_alphabet,
    mbonacci_morphism,
    sturmian_generator,
    ternary_alphabet,
    thue_morse_morphism,
    tribonacci_morphism,
)

__version__ = "0.1.0"
