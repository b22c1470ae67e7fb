"""Complexity profiles, square-free censuses, a block code, and palindrome counts."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .budgets import budget
from .errors import BudgetError, DomainError, FactorizationError
from .words import Alphabet, Morphism, Word, binary_alphabet, ternary_alphabet


@dataclass(frozen=True)
class ComplexityProfile:
    """Distinct word counts per length, counts[i] holding the value for n = i + 1."""

    kind: str                 # "factor" or "arithmetic"
    counts: tuple[int, ...]
    word_length: int
    alphabet_size: int

    @property
    def n_max(self) -> int:
        return len(self.counts)

    def count(self, n: int) -> int:
        if not 1 <= n <= len(self.counts):
            raise DomainError(f"profile covers 1..{len(self.counts)}, got n={n}")
        return self.counts[n - 1]

    def rows(self) -> list[tuple[int, int]]:
        return [(n, c) for n, c in enumerate(self.counts, start=1)]


def _check_profile_args(w: Word, n_max: int) -> None:
    if len(w) == 0:
        raise DomainError("complexity profiles need a nonempty word")
    if not 1 <= n_max <= len(w):
        raise DomainError(f"n_max must be in 1..{len(w)}, got {n_max}")


def factor_complexity(w: Word, n_max: int, backend: str = "auto") -> ComplexityProfile:
    """Count distinct length-n factors of w for each n in 1..n_max.

    Both backends produce identical counts; "windows" deduplicates sliding
    windows per length, "automaton" reads all lengths off a suffix automaton
    and is preferred once len(w) * n_max gets large.
    """
    _check_profile_args(w, n_max)
    if backend == "auto":
        backend = "windows" if len(w) * n_max <= 2_000_000 else "automaton"
    if backend == "windows":
        counts = _factor_counts_windows(w.data, n_max)
    elif backend == "automaton":
        counts = _factor_counts_automaton(w.data, n_max)
    else:
        raise DomainError(f"unknown backend {backend!r}")
    return ComplexityProfile("factor", tuple(counts), len(w), len(w.alphabet))


def _factor_counts_windows(data: bytes, n_max: int) -> list[int]:
    L = len(data)
    return [len({data[i : i + n] for i in range(L - n + 1)}) for n in range(1, n_max + 1)]


def _factor_counts_automaton(data: bytes, n_max: int) -> list[int]:
    # Suffix automaton; each non-initial state contributes one distinct factor
    # for every length in (len(link(v)), len(v)].
    length = [0]
    link = [-1]
    trans: list[dict[int, int]] = [{}]
    last = 0
    for c in data:
        cur = len(length)
        length.append(length[last] + 1)
        link.append(-1)
        trans.append({})
        p = last
        while p != -1 and c not in trans[p]:
            trans[p][c] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p][c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = len(length)
                length.append(length[p] + 1)
                link.append(link[q])
                trans.append(dict(trans[q]))
                while p != -1 and trans[p].get(c) == q:
                    trans[p][c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    diff = [0] * (len(data) + 2)
    for v in range(1, len(length)):
        diff[length[link[v]] + 1] += 1
        diff[length[v] + 1] -= 1
    counts = []
    run = 0
    for n in range(1, n_max + 1):
        run += diff[n]
        counts.append(run)
    return counts


def arithmetic_complexity(w: Word, n_max: int) -> ComplexityProfile:
    """Count distinct words read along arithmetic progressions inside w.

    For each n, a progression is a start i >= 0 and step d >= 1 with all n
    sampled indices below len(w). Restricted to a finite w this is a lower
    bound for the quantity on the corresponding infinite word.
    """
    _check_profile_args(w, n_max)
    data = w.data
    L = len(data)
    counts = [len(set(data))]
    for n in range(2, n_max + 1):
        span = n - 1
        seen: set[bytes] = set()
        add = seen.update
        for d in range(1, (L - 1) // span + 1):
            # every progression with step d is a contiguous window of one of
            # the d residue streams data[r::d]
            for r in range(d):
                t = data[r::d]
                m = len(t) - n + 1
                if m > 0:
                    add(t[j : j + n] for j in range(m))
        counts.append(len(seen))
    return ComplexityProfile("arithmetic", tuple(counts), len(w), len(w.alphabet))


def is_sturmian_profile(profile: ComplexityProfile, n_max: int | None = None) -> bool:
    """True when the factor counts equal n + 1 for every covered n (up to n_max)."""
    limit = profile.n_max if n_max is None else n_max
    if not 1 <= limit <= profile.n_max:
        raise DomainError(f"n_max must be in 1..{profile.n_max}, got {limit}")
    return all(profile.counts[n - 1] == n + 1 for n in range(1, limit + 1))


# ---------------------------------------------------------------------------
# square-free words


def is_square_free(w: Word) -> bool:
    """True when w contains no factor of the shape uu with u nonempty."""
    data = w.data
    L = len(data)
    for h in range(1, L // 2 + 1):
        for i in range(L - 2 * h + 1):
            if data[i : i + h] == data[i + h : i + 2 * h]:
                return False
    return True


def _no_new_square(w: bytearray) -> bool:
    # w grew by one symbol; any new square must have its second half ending
    # at the last position, so only those alignments are checked.
    j = len(w)
    for h in range(1, j // 2 + 1):
        if w[j - 2 * h : j - h] == w[j - h : j]:
            return False
    return True


def _subtree_counts(args: tuple[int, int, bytes, int]) -> list[int]:
    """Count square-free extensions of a prefix, by absolute length."""
    k, n_max, prefix, node_budget = args
    counts = [0] * (n_max + 1)
    w = bytearray(prefix)
    if w:
        counts[len(w)] += 1
    nodes = 0

    def rec() -> None:
        nonlocal nodes
        if len(w) == n_max:
            return
        for c in range(k):
            nodes += 1
            if nodes > node_budget:
                raise BudgetError(
                    f"square-free census exceeded its node budget of {node_budget}"
                )
            w.append(c)
            if _no_new_square(w):
                counts[len(w)] += 1
                rec()
            w.pop()

    rec()
    return counts


@dataclass(frozen=True)
class SquareFreeCensus:
    """Counts of square-free words by length, counts[n] = a(n) with a(0) = 1."""

    alphabet_size: int
    counts: tuple[int, ...]
    terminated: bool  # True when the census ran until a(n) reached 0

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1

    def count(self, n: int) -> int:
        if not 0 <= n < len(self.counts):
            raise DomainError(f"census covers 0..{self.n_max}, got n={n}")
        return self.counts[n]

    def growth_estimate(self, n: int) -> float:
        """a(n) ** (1/n), a crude view of the exponential growth rate."""
        if n < 1:
            raise DomainError("growth estimates need n >= 1")
        return self.count(n) ** (1.0 / n)


def square_free_census(alphabet_size: int, n_max: int | None = None,
                       workers: int = 1, node_budget: int | None = None) -> SquareFreeCensus:
    """Tabulate a(n) by backtracking, pruning at the first square.

    With n_max=None the census runs until a(n) = 0, which only terminates on
    alphabets of size <= 2.
    """
    if alphabet_size < 1:
        raise DomainError("alphabet_size must be at least 1")
    if workers < 1:
        raise DomainError("workers must be at least 1")
    if node_budget is None:
        node_budget = budget("CENSUS_NODES")
    terminated = False
    if n_max is None:
        if alphabet_size > 2:
            raise DomainError(
                "census never terminates on 3+ letters (square-free words of "
                "every length exist); pass an explicit n_max"
            )
        n_max = 8  # binary and unary square-free words die out by length 4
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")

    counts = _census_counts(alphabet_size, n_max, workers, node_budget)
    if 0 in counts[1:]:
        first_zero = counts.index(0, 1)
        counts = counts[: first_zero + 1]
        terminated = True
    return SquareFreeCensus(alphabet_size, tuple(counts), terminated)


def _census_counts(k: int, n_max: int, workers: int, node_budget: int) -> list[int]:
    if workers == 1 or n_max < 3:
        counts = _subtree_counts((k, n_max, b"", node_budget))
        counts[0] = 1
        return counts
    # fan out one subtree per square-free prefix of length 2; the aggregate is
    # a plain sum, so worker count cannot affect the result
    split = 2
    prefixes = [bytes(p) for p in _enumerate_square_free(k, split) if len(p) == split]
    counts = [0] * (n_max + 1)
    counts[0] = 1
    for p in _enumerate_square_free(k, split):
        counts[len(p)] += 1 if len(p) < split else 0
    jobs = [(k, n_max, p, node_budget) for p in prefixes]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for sub in pool.map(_subtree_counts, jobs):
            for n in range(split, n_max + 1):
                counts[n] += sub[n]
    return counts


def _enumerate_square_free(k: int, n_max: int):
    """Yield every square-free word over 0..k-1 of length 1..n_max, as bytearrays."""
    w = bytearray()

    def rec():
        if len(w) == n_max:
            return
        for c in range(k):
            w.append(c)
            if _no_new_square(w):
                yield w
                yield from rec()
            w.pop()

    yield from rec()


def count_square_free(alphabet_size: int, n: int, workers: int = 1,
                      node_budget: int | None = None) -> int:
    """Number of square-free words of length exactly n over the given alphabet."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    census = square_free_census(alphabet_size, n, workers, node_budget)
    return census.counts[n] if n < len(census.counts) else 0


def square_free_words(alphabet_size: int, max_len: int | None = None,
                      alphabet: Alphabet | None = None) -> list[Word]:
    """All square-free words up to max_len (unbounded only for <= 2 letters)."""
    if alphabet is None:
        alphabet = Alphabet("abcdefghijklmnopqrstuvwxyz"[:alphabet_size])
    elif len(alphabet) != alphabet_size:
        raise DomainError("alphabet size mismatch")
    if max_len is None:
        if alphabet_size > 2:
            raise DomainError("a bound is required on 3+ letters")
        max_len = 4
    return [Word.from_indices(alphabet, bytes(p))
            for p in _enumerate_square_free(alphabet_size, max_len)]


# ---------------------------------------------------------------------------
# the three-letter block code a -> abb, b -> ab, c -> a


def delta_morphism() -> Morphism:
    return Morphism.from_dict({"a": "abb", "b": "ab", "c": "a"},
                              ternary_alphabet(), binary_alphabet())


def delta_apply(w: Word) -> Word:
    """Image of a ternary word under a -> abb, b -> ab, c -> a."""
    return delta_morphism().apply(w)


def delta_factorize(v: Word) -> Word:
    """Invert delta_apply by greedy longest match from the left.

    The match is forced: every block starts with the unique 'a', so the input
    splits at each 'a' and the run of following 'b's picks the block.
    """
    if v.alphabet != binary_alphabet():
        raise DomainError("factorization input must be a word over {a, b}")
    data = v.data
    L = len(data)
    out = bytearray()
    i = 0
    while i < L:
        if data[i] != 0:
            raise FactorizationError(f"expected 'a' at position {i}, found 'b'")
        j = i + 1
        while j < L and data[j] == 1:
            j += 1
        run = j - i - 1
        if run == 0:
            out.append(2)  # block "a"   <- c
        elif run == 1:
            out.append(1)  # block "ab"  <- b
        elif run == 2:
            out.append(0)  # block "abb" <- a
        else:
            raise FactorizationError(
                f"run of {run} 'b's starting at position {i + 1} fits no block"
            )
        i = j
    return Word.from_indices(ternary_alphabet(), out)


# ---------------------------------------------------------------------------
# palindromes


def palindromic_factor_count(w: Word) -> int:
    """Number of distinct nonempty palindromic factors of w."""
    data = w.data
    L = len(data)
    found: set[bytes] = set()
    for center in range(L):
        for left, right in ((center, center), (center, center + 1)):
            while left >= 0 and right < L and data[left] == data[right]:
                found.add(data[left : right + 1])
                left -= 1
                right += 1
    return len(found)


def scattered_palindrome_count(w: Word) -> int:
    """Number of distinct nonempty palindromic subsequences of w.

    Distinct means counted once no matter how many index sets produce the
    same palindrome. Interval recurrence over exact integers; the count can
    reach 2^(|w|/2), hence the length budget.
    """
    data = w.data
    L = len(data)
    if L > budget("SP_TOTAL_MAXLEN"):
        raise BudgetError(f"word length {L} exceeds the scattered palindrome budget")
    if L == 0:
        return 0
    nxt, prv = _occurrence_tables(data)
    # dp[i][j] = count on the slice data[i..j]; cells with i > j stay 0
    dp = [[0] * L for _ in range(L)]
    for i in range(L):
        dp[i][i] = 1
    for span in range(2, L + 1):
        for i in range(L - span + 1):
            j = i + span - 1
            inner = dp[i + 1][j - 1]
            if data[i] != data[j]:
                dp[i][j] = dp[i + 1][j] + dp[i][j - 1] - inner
            else:
                # lo/hi: first/last occurrence of the shared letter strictly
                # inside (i, j); since data[i] == data[j], lo > hi iff none
                lo = nxt[i + 1][data[i]]
                hi = prv[j - 1][data[j]]
                if lo > hi:
                    dp[i][j] = 2 * inner + 2   # adds c and cc
                elif lo == hi:
                    dp[i][j] = 2 * inner + 1   # c already counted inside
                else:
                    dp[i][j] = 2 * inner - dp[lo + 1][hi - 1]
    return dp[0][L - 1]


def scattered_palindromes_by_length(w: Word) -> list[int]:
    """Distinct palindromic subsequence counts split by length.

    Returns counts where counts[t - 1] is the number of distinct palindromic
    subsequences of length t; the sum equals scattered_palindrome_count(w).
    """
    data = w.data
    L = len(data)
    if L > budget("SP_LENGTH_MAXLEN"):
        raise BudgetError(f"word length {L} exceeds the per-length palindrome budget")
    if L == 0:
        return []
    nxt, prv = _occurrence_tables(data)
    zero = [0] * (L + 1)
    dp: list[list[list[int] | None]] = [[None] * L for _ in range(L)]
    for i in range(L):
        v = [0] * (L + 1)
        v[1] = 1
        dp[i][i] = v
    for span in range(2, L + 1):
        for i in range(L - span + 1):
            j = i + span - 1
            inner = dp[i + 1][j - 1] if span > 2 else zero
            v = [0] * (L + 1)
            if data[i] != data[j]:
                a, b = dp[i + 1][j], dp[i][j - 1]
                for t in range(1, span + 1):
                    v[t] = a[t] + b[t] - inner[t]
            else:
                # same split as the total count: unwrapped + wrapped (+2 to
                # the length) with the usual duplicate correction
                lo = nxt[i + 1][data[i]]
                hi = prv[j - 1][data[j]]
                for t in range(1, span + 1):
                    v[t] = inner[t] + (inner[t - 2] if t >= 2 else 0)
                if lo > hi:
                    v[1] += 1
                    v[2] += 1
                elif lo == hi:
                    v[2] += 1
                else:
                    dup = dp[lo + 1][hi - 1] if lo + 1 <= hi - 1 else zero
                    for t in range(3, span + 1):
                        v[t] -= dup[t - 2]
            dp[i][j] = v
    full = dp[0][L - 1]
    out = full[1:]
    while out and out[-1] == 0:
        out.pop()
    return out


def _occurrence_tables(data: bytes):
    """nxt[i][c]: first index >= i holding c (len(data) if none); prv[j][c] mirrors."""
    L = len(data)
    sigma = max(data) + 1
    nxt: list[list[int]] = [None] * (L + 1)  # type: ignore[list-item]
    row = [L] * sigma
    nxt[L] = row
    for i in range(L - 1, -1, -1):
        row = row[:]
        row[data[i]] = i
        nxt[i] = row
    prv: list[list[int]] = [None] * L  # type: ignore[list-item]
    row = [-1] * sigma
    for i in range(L):
        row = row[:]
        row[data[i]] = i
        prv[i] = row
    return nxt, prv
