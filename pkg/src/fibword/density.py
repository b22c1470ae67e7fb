"""Symbol densities: exact frequencies, window bounds, golden ratios, Perron data."""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BalanceViolation, DomainError
from .modfib import fib
from .words import Word, adjacency_matrix, mbonacci_morphism


def symbol_frequency(w: Word, symbol: "int | str") -> Fraction:
    """Exact occurrence frequency of a symbol; 0 for the empty word by convention."""
    if len(w) == 0:
        return Fraction(0)
    return Fraction(w.count(symbol), len(w))


def window_frequency_sup(w: Word, symbol: "int | str", n: int) -> Fraction:
    """Largest frequency of the symbol over all length-n windows of w."""
    if not 1 <= n <= len(w):
        raise DomainError(f"window length must be in 1..{len(w)}, got {n}")
    s = w.alphabet.as_index(symbol)
    data = w.data
    count = data[:n].count(s)
    best = count
    for i in range(n, len(data)):
        count += (data[i] == s) - (data[i - n] == s)
        if count > best:
            best = count
    return Fraction(best, n)


@dataclass(frozen=True)
class FrequencyReport:
    symbol: str
    word_length: int
    global_frequency: Fraction
    window: int | None = None
    window_sup: Fraction | None = None
    target: float | None = None
    max_deviation: float | None = None


def frequency_report(w: Word, symbol: "int | str", window: int | None = None,
                     target: float | None = None) -> FrequencyReport:
    """Global frequency of a symbol, with optional window sup and target deviation."""
    s = w.alphabet.as_index(symbol)
    freq = symbol_frequency(w, s)
    sup = window_frequency_sup(w, s, window) if window is not None else None
    dev = None
    if target is not None:
        dev = abs(float(freq) - target)
        if sup is not None:
            dev = max(dev, abs(float(sup) - target))
    return FrequencyReport(w.alphabet.label(s), len(w), freq, window, sup, target, dev)


@dataclass(frozen=True)
class BalanceReport:
    """Per-window-length deviation maxima of a symbol frequency from a target."""

    symbol: str
    target: float
    rows: tuple[tuple[int, float, int], ...]  # (n, max deviation, window position)
    worst_n: int
    worst_position: int
    worst_deviation: float

    def within_bound(self) -> bool:
        return all(dev <= 1.0 / n for n, dev, _ in self.rows)


def balance_check(w: Word, symbol: "int | str", target: float,
                  n_values) -> BalanceReport:
    """Check |window frequency - target| <= 1/n for each window length n.

    Raises BalanceViolation on the first offending window, which is how a
    non-Sturmian input announces itself.
    """
    s = w.alphabet.as_index(symbol)
    ns = sorted(set(int(n) for n in n_values))
    if not ns:
        raise DomainError("need at least one window length")
    if ns[0] < 1 or ns[-1] > len(w):
        raise DomainError(f"window lengths must lie in 1..{len(w)}")
    occ = (np.frombuffer(w.data, dtype=np.uint8) == s).astype(np.int64)
    prefix = np.concatenate([[0], np.cumsum(occ)])
    rows = []
    worst = (-1.0, 0, 0)  # (deviation * n, n, position)
    for n in ns:
        counts = prefix[n:] - prefix[:-n]
        hi_at = int(np.argmax(counts))
        lo_at = int(np.argmin(counts))
        dev_hi = counts[hi_at] / n - target
        dev_lo = target - counts[lo_at] / n
        if dev_hi >= dev_lo:
            dev, pos = float(dev_hi), hi_at
        else:
            dev, pos = float(dev_lo), lo_at
        if dev > 1.0 / n:
            raise BalanceViolation(n, pos, dev, 1.0 / n)
        rows.append((n, dev, pos))
        if dev * n > worst[0]:
            worst = (dev * n, n, pos)
    _, wn, wpos = worst
    wdev = next(dev for n, dev, _ in rows if n == wn)
    return BalanceReport(w.alphabet.label(s), target, tuple(rows), wn, wpos, wdev)


# ---------------------------------------------------------------------------
# golden ratio density


def golden_density(n_max: int) -> list[Fraction]:
    """The exact ratios F(n)/F(n+1) for n = 1..n_max; they approach 1/phi."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    out = []
    a, b = 1, 1  # F(1), F(2)
    for _ in range(n_max):
        out.append(Fraction(a, b))
        a, b = b, a + b
    return out


def _lt_sqrt5(q: Fraction) -> bool:
    return q < 0 or q * q < 5


def _gt_sqrt5(q: Fraction) -> bool:
    return q > 0 and q * q > 5


def golden_deviation_below(d: Fraction, eps: Fraction) -> bool:
    """Certify |d - (phi - 1)| < eps with integer arithmetic only.

    phi - 1 = (sqrt(5) - 1) / 2, so the claim is 2(d - eps) + 1 < sqrt(5)
    < 2(d + eps) + 1, and each side reduces to comparing a square with 5.
    """
    lo = 2 * (d - eps) + 1
    hi = 2 * (d + eps) + 1
    return _lt_sqrt5(lo) and _gt_sqrt5(hi)


def golden_deviation(d: Fraction, digits: int = 30) -> Fraction:
    """|d - (phi - 1)| to `digits` decimal places, as an exact rational."""
    scale = 10 ** digits
    root = math.isqrt(5 * scale * scale)  # floor(sqrt(5) * 10^digits)
    golden = (Fraction(root, scale) - 1) / 2
    dev = abs(d - golden)
    return dev


def fibonacci_ratio(n: int) -> Fraction:
    """F(n) / F(n+1), exactly."""
    if n < 1:
        raise DomainError("n must be at least 1")
    return Fraction(fib(n), fib(n + 1))


GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
RARE_LETTER_TARGET = (3 - math.sqrt(5)) / 2  # 1/phi^2, frequency of 'b' under a->ab, b->a


# ---------------------------------------------------------------------------
# Perron data of the m-bonacci substitutions


@dataclass(frozen=True)
class PerronData:
    """Dominant eigenvalue data of the m-letter substitution matrix."""

    m: int
    rho: float
    poly_residual: float
    frequencies: tuple[float, ...]   # (rho^-1, ..., rho^-m), the symbol frequencies
    frequency_sum_error: float       # |sum - 1|
    eigen_residual: float            # max_j |(d A)_j - rho d_j|
    conjugate_moduli: tuple[float, ...]
    pisot: bool
    matrix: tuple[tuple[int, ...], ...] = field(repr=False)
    tolerance: float = 1e-12


def _poly_eval(m: int, x: float) -> float:
    # x^m - x^(m-1) - ... - x - 1 by Horner
    v = 1.0
    for _ in range(m):
        v = v * x - 1.0
    return v


def _poly_deriv(m: int, x: float) -> float:
    v = float(m)
    for k in range(m - 1, 0, -1):
        v = v * x - k
    return v


def perron_eigenvalue(m: int) -> PerronData:
    """Root of x^m = x^(m-1) + ... + 1 in (1, 2), plus spectral side data.

    The root is found by bisection and polished by Newton steps; the other
    eigenvalues come from the companion matrix and feed the Pisot flag.
    """
    if m < 2:
        raise DomainError("m must be at least 2")
    lo, hi = 1.0, 2.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _poly_eval(m, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(50):
        fx = _poly_eval(m, x)
        step = fx / _poly_deriv(m, x)
        x -= step
        if abs(step) <= 1e-16 * x:
            break
    rho = x
    coeffs = [1.0] + [-1.0] * m
    roots = np.roots(coeffs)
    conj = sorted(
        (float(abs(z)) for z in roots if abs(z - rho) > 1e-6), reverse=True
    )
    freqs = tuple(rho ** -(i + 1) for i in range(m))
    matrix = adjacency_matrix(mbonacci_morphism(m))
    resid = max(
        abs(sum(freqs[i] * matrix[i][j] for i in range(m)) - rho * freqs[j])
        for j in range(m)
    )
    return PerronData(
        m=m,
        rho=rho,
        poly_residual=abs(_poly_eval(m, rho)),
        frequencies=freqs,
        frequency_sum_error=abs(sum(freqs) - 1.0),
        eigen_residual=resid,
        conjugate_moduli=tuple(conj),
        pisot=bool(conj and max(conj) < 1.0 - 1e-9),
        matrix=tuple(tuple(row) for row in matrix),
    )
