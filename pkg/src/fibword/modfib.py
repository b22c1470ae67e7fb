"""Fibonacci and Lucas numbers modulo m: periods, zero sets, residue densities."""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .budgets import budget
from .errors import BudgetError, DomainError


def fib_pair(n: int) -> tuple[int, int]:
    """(F(n), F(n+1)) by fast doubling, exact."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    a, b = 0, 1  # F(0), F(1)
    for bit in bin(n)[2:]:
        c = a * (2 * b - a)          # F(2k)
        d = a * a + b * b            # F(2k+1)
        if bit == "0":
            a, b = c, d
        else:
            a, b = d, c + d
    return a, b


def fib(n: int) -> int:
    return fib_pair(n)[0]


def lucas(n: int) -> int:
    """L(n) with L(0) = 2, L(1) = 1; equals 2 F(n+1) - F(n)."""
    a, b = fib_pair(n)
    return 2 * b - a


def fib_pair_mod(n: int, m: int) -> tuple[int, int]:
    """(F(n) mod m, F(n+1) mod m) by fast doubling, O(log n) multiplications."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if m < 1:
        raise DomainError("modulus must be at least 1")
    a, b = 0 % m, 1 % m
    for bit in bin(n)[2:]:
        c = a * (2 * b - a) % m
        d = (a * a + b * b) % m
        if bit == "0":
            a, b = c, d
        else:
            a, b = d, (c + d) % m
    return a, b


def fib_mod(n: int, m: int) -> int:
    return fib_pair_mod(n, m)[0]


def lucas_mod(n: int, m: int) -> int:
    a, b = fib_pair_mod(n, m)
    return (2 * b - a) % m


def pisano_period(m: int) -> int:
    """Period of the Fibonacci sequence modulo m."""
    if m < 2:
        raise DomainError("modulus must be at least 2")
    a, b, k = 0, 1, 0
    while True:
        a, b = b, (a + b) % m
        k += 1
        if a == 0 and b == 1:
            return k


def restricted_period(m: int) -> int:
    """Smallest k >= 1 with F(k) divisible by m (the rank of apparition)."""
    if m < 2:
        raise DomainError("modulus must be at least 2")
    a, b, k = 1, 1, 1  # F(1), F(2)
    while a != 0:
        a, b = b, (a + b) % m
        k += 1
    return k


def lucas_zeros(p: int) -> tuple[int, ...]:
    """Indices i in [0, pisano(p)) with L(i) divisible by p."""
    period = pisano_period(p)
    zeros = []
    a, b = 2 % p, 1 % p  # L(0), L(1)
    for i in range(period):
        if a == 0:
            zeros.append(i)
        a, b = b, (a + b) % p
    return tuple(zeros)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeContext:
    """Everything about p the density formula consumes."""

    prime: int
    eps: int              # +1 when p = +-1 mod 5, else -1
    e: int                # largest power of p dividing F(p - eps)
    pisano: int
    restricted: int
    lucas_zero_indices: tuple[int, ...]


def prime_context(p: int) -> PrimeContext:
    """Validate p and collect its periods, zero set, and the exponent e.

    The density formula needs an odd prime other than 5, because it builds on
    p dividing F(p - eps) with eps read off p mod 5.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p in (2, 5):
        raise DomainError(
            f"p = {p} is unsupported: the density formula is stated for an odd "
            "prime p != 5, since both 2 and 5 break the F(p - eps) divisibility "
            "it is built on"
        )
    eps = 1 if p % 5 in (1, 4) else -1
    target = fib(p - eps)
    if target % p != 0:
        raise RuntimeError(
            f"refusing to continue: p={p} does not divide F(p - {eps:+d}), "
            "which contradicts the defining property of eps"
        )
    e = 0
    while target % p == 0:
        target //= p
        e += 1
    return PrimeContext(
        prime=p,
        eps=eps,
        e=e,
        pisano=pisano_period(p),
        restricted=restricted_period(p),
        lucas_zero_indices=lucas_zeros(p),
    )


@dataclass(frozen=True)
class DensityResult:
    """Limiting density of Fibonacci residues modulo p^lambda as lambda grows."""

    context: PrimeContext
    nonzero_residues: tuple[int, ...]   # F(i) mod p^e over indices with L(i) != 0 mod p
    outside_zero_residues: tuple[int, ...]
    n_count: int
    z_count: int
    density: Fraction
    shared_outside_residue: bool  # True when two Lucas zeros landed on one residue

    @property
    def prime(self) -> int:
        return self.context.prime


def density_formula(p: int) -> DensityResult:
    """Exact limiting density N/p^e + Z/(2 p^(2e-1) (p+1)).

    One pass over a full Pisano period splits the indices by L(i) mod p:
    non-zero indices contribute their residue F(i) mod p^e to the set behind
    N, and Lucas-zero indices count toward Z only when their residue falls
    outside that set.
    """
    ctx = prime_context(p)
    pe = p ** ctx.e
    fa, fb = 0, 1 % pe           # F(i), F(i+1) mod p^e
    la, lb = 2 % p, 1 % p        # L(i), L(i+1) mod p
    nonzero: set[int] = set()
    zero_entries: list[int] = []
    for _ in range(ctx.pisano):
        if la == 0:
            zero_entries.append(fa)
        else:
            nonzero.add(fa)
        fa, fb = fb, (fa + fb) % pe
        la, lb = lb, (la + lb) % p
    outside = [r for r in zero_entries if r not in nonzero]
    z = len(outside)
    shared = len(set(outside)) < z
    density = Fraction(len(nonzero), pe) + Fraction(z, 2 * p ** (2 * ctx.e - 1) * (p + 1))
    return DensityResult(
        context=ctx,
        nonzero_residues=tuple(sorted(nonzero)),
        outside_zero_residues=tuple(sorted(set(outside))),
        n_count=len(nonzero),
        z_count=z,
        density=density,
        shared_outside_residue=shared,
    )


def residue_density_bruteforce(p: int, lam: int,
                               modulus_limit: int | None = None) -> Fraction:
    """|{F(n) mod p^lam}| / p^lam by walking one full period.

    Exact and formula-free, which is what makes it a useful cross-check; the
    budget guards against runaway moduli.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    if lam == 0:
        return Fraction(1, 1)
    modulus = p ** lam
    limit = budget("MODULUS_LIMIT") if modulus_limit is None else modulus_limit
    if modulus > limit:
        raise BudgetError(f"p^lambda = {modulus} exceeds the modulus budget {limit}")
    seen = bytearray(modulus)
    a, b = 0, 1 % modulus
    while True:
        seen[a] = 1
        a, b = b, (a + b) % modulus
        if a == 0 and b == 1 % modulus:
            break
    return Fraction(sum(seen), modulus)


def bruteforce_trace(p: int, lam_max: int,
                     modulus_limit: int | None = None) -> list[Fraction]:
    """The densities for lambda = 0..lam_max, a non-increasing sequence."""
    if lam_max < 0:
        raise DomainError("lambda must be nonnegative")
    return [residue_density_bruteforce(p, lam, modulus_limit)
            for lam in range(lam_max + 1)]
