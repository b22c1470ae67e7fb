"""Command line interface.

Every subcommand takes --format json|csv|text (text is the default). JSON
output is one object per invocation with a "command" key and sorted keys, so
runs are byte-for-byte reproducible; exact rationals serialize as "num/den".
Errors go to stderr as a one-line JSON object and set the exit status:
1 for bad input or usage, 2 for an exhausted resource budget.
"""

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import complexity, density, factorial_word, modfib, verify, words
from .errors import BudgetError, DomainError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_BUDGET = 2


class UsageError(Exception):
    """Bad command line; reported like a domain error but flagged as usage."""


class _Parser(argparse.ArgumentParser):
    # argparse wants to sys.exit(2) on bad flags; route through our own
    # error path instead so every failure mode has one exit-code contract
    def error(self, message):
        raise UsageError(message)


def _plain(value):
    """Make a value JSON- and CSV-friendly; Fractions become 'num/den'."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, words.Word):
        return str(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _emit(args, payload: dict, text_lines, csv_rows=None) -> None:
    fmt = getattr(args, "format", "text")
    if fmt == "json":
        print(json.dumps(_plain(payload), sort_keys=True))
    elif fmt == "csv":
        if csv_rows is None:
            csv_rows = [("key", "value")]
            csv_rows += [(k, _plain(v)) for k, v in sorted(payload.items()) if k != "command"]
        writer = csv.writer(sys.stdout)
        writer.writerows(csv_rows)
    else:
        for line in text_lines:
            print(line)


def _fail(kind: str, message: str) -> None:
    print(json.dumps({"command": "error", "error": message, "kind": kind},
                     sort_keys=True), file=sys.stderr)


# ---------------------------------------------------------------------------
# word sources


def _resolve_morphism(spec: str) -> words.Morphism:
    if "->" in spec:
        return words.Morphism.from_rules(spec)
    name, _, arg = spec.partition(":")
    name = name.strip().lower().replace("_", "-")
    if name == "fibonacci":
        return words.fibonacci_morphism()
    if name == "tribonacci":
        return words.tribonacci_morphism()
    if name in ("thue-morse", "thuemorse"):
        return words.thue_morse_morphism()
    if name == "mbonacci":
        if not arg:
            raise UsageError("mbonacci needs an order, e.g. --morphism mbonacci:4")
        try:
            order = int(arg)
        except ValueError:
            raise UsageError(f"mbonacci order must be an integer, got {arg!r}") from None
        return words.mbonacci_morphism(order)
    if name == "sturmian":
        if not arg:
            raise UsageError("sturmian needs steps, e.g. --morphism sturmian:phi,E")
        return words.compose_sturmian(arg.split(","))
    raise UsageError(
        f"unknown morphism {spec!r}; use fibonacci, tribonacci, thue-morse, "
        "mbonacci:M, sturmian:STEPS, or literal rules like 'a->ab,b->a'"
    )


def _add_word_source(sp) -> None:
    sp.add_argument("--text", help="the word itself, one character per symbol")
    sp.add_argument("--alphabet",
                    help="alphabet for --text (default: the characters present, sorted)")
    sp.add_argument("--morphism",
                    help="named morphism or rules; iterated to produce the word")
    sp.add_argument("--length", type=int,
                    help="prefix length to generate when using --morphism")
    sp.add_argument("--seed-symbol",
                    help="symbol to iterate from (default: first letter of the alphabet)")


def _resolve_word(args) -> words.Word:
    if args.text is not None and args.morphism is not None:
        raise UsageError("pass --text or --morphism, not both")
    if args.text is not None:
        labels = args.alphabet or "".join(sorted(set(args.text)))
        return words.Word.from_string(args.text, words.Alphabet(labels))
    if args.morphism is not None:
        if args.length is None:
            raise UsageError("--morphism needs --length")
        morph = _resolve_morphism(args.morphism)
        seed = args.seed_symbol or morph.source.label(0)
        return words.fixed_point_prefix(morph, seed, args.length)
    raise UsageError("give a word with --text or with --morphism and --length")


def _parse_target(text: str) -> float:
    named = {
        # frequency of the rare letter 'b' in the fixed point of a->ab, b->a
        "golden": density.RARE_LETTER_TARGET,
        "inv-phi": density.GOLDEN_RATIO - 1,
        "inv-phi2": density.RARE_LETTER_TARGET,
    }
    key = text.strip().lower()
    if key in named:
        return named[key]
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse target {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    morph = _resolve_morphism(args.morphism)
    seed = args.seed_symbol or morph.source.label(0)
    w = words.fixed_point_prefix(morph, seed, args.length)
    payload = {
        "command": "generate",
        "word": str(w),
        "length": len(w),
        "morphism": morph.rules_text(),
        "seed_symbol": seed,
    }
    _emit(args, payload, [str(w)])
    return EXIT_OK


def cmd_complexity(args) -> int:
    w = _resolve_word(args)
    profile = complexity.factor_complexity(w, args.n_max, backend=args.backend)
    rows = profile.rows()
    payload = {
        "command": "complexity",
        "kind": "factor",
        "word_length": len(w),
        "alphabet_size": len(w.alphabet),
        "counts": [{"n": n, "count": c} for n, c in rows],
    }
    lines = [f"p({n}) = {c}" for n, c in rows]
    _emit(args, payload, lines, [("n", "count")] + rows)
    return EXIT_OK


def cmd_arithmetic(args) -> int:
    w = _resolve_word(args)
    profile = complexity.arithmetic_complexity(w, args.n_max)
    rows = profile.rows()
    payload = {
        "command": "arithmetic",
        "kind": "arithmetic",
        "word_length": len(w),
        "alphabet_size": len(w.alphabet),
        "counts": [{"n": n, "count": c} for n, c in rows],
    }
    lines = [f"a({n}) = {c}" for n, c in rows]
    _emit(args, payload, lines, [("n", "count")] + rows)
    return EXIT_OK


def cmd_sturmian(args) -> int:
    w = _resolve_word(args)
    profile = complexity.factor_complexity(w, args.n_max)
    ok = complexity.is_sturmian_profile(profile)
    payload = {
        "command": "sturmian",
        "word_length": len(w),
        "n_max": args.n_max,
        "sturmian_profile": ok,
    }
    verdict = "matches" if ok else "does not match"
    _emit(args, payload, [f"factor complexity {verdict} n+1 for n = 1..{args.n_max}"])
    return EXIT_OK


def cmd_squarefree(args) -> int:
    if args.test is not None:
        labels = "".join(sorted(set(args.test))) or "a"
        w = words.Word.from_string(args.test, words.Alphabet(labels))
        ok = complexity.is_square_free(w)
        payload = {"command": "squarefree", "word": args.test, "square_free": ok}
        _emit(args, payload, ["square-free" if ok else "contains a square"])
        return EXIT_OK
    if args.list:
        found = complexity.square_free_words(args.alphabet_size, args.n_max)
        names = sorted(str(w) for w in found)
        payload = {
            "command": "squarefree",
            "alphabet_size": args.alphabet_size,
            "words": names,
            "count": len(names),
        }
        _emit(args, payload, names, [("word",)] + [(n,) for n in names])
        return EXIT_OK
    census = complexity.square_free_census(
        args.alphabet_size, args.n_max, workers=args.workers
    )
    rows = list(enumerate(census.counts))
    payload = {
        "command": "squarefree",
        "alphabet_size": census.alphabet_size,
        "counts": [{"n": n, "count": c} for n, c in rows],
        "terminated": census.terminated,
    }
    lines = [f"a({n}) = {c}" for n, c in rows]
    if census.terminated:
        lines.append(f"no square-free words longer than {len(census.counts) - 2} exist")
    _emit(args, payload, lines, [("n", "count")] + rows)
    return EXIT_OK


def cmd_delta(args) -> int:
    if (args.apply is None) == (args.factorize is None):
        raise UsageError("pass exactly one of --apply or --factorize")
    if args.apply is not None:
        w = words.Word.from_string(args.apply, words.ternary_alphabet())
        image = complexity.delta_apply(w)
        payload = {"command": "delta", "direction": "apply",
                   "input": str(w), "output": str(image)}
        _emit(args, payload, [str(image)])
    else:
        v = words.Word.from_string(args.factorize, words.binary_alphabet())
        source = complexity.delta_factorize(v)
        payload = {"command": "delta", "direction": "factorize",
                   "input": str(v), "output": str(source)}
        _emit(args, payload, [str(source)])
    return EXIT_OK


def cmd_palindromes(args) -> int:
    w = _resolve_word(args)
    factors = complexity.palindromic_factor_count(w)
    scattered = complexity.scattered_palindrome_count(w)
    payload = {
        "command": "palindromes",
        "word_length": len(w),
        "palindromic_factors": factors,
        "scattered_palindromes": scattered,
    }
    lines = [
        f"palindromic factors:     {factors}",
        f"scattered palindromes:   {scattered}",
    ]
    if args.by_length:
        by_len = complexity.scattered_palindromes_by_length(w)
        payload["scattered_by_length"] = [
            {"length": t, "count": c} for t, c in enumerate(by_len, start=1)
        ]
        lines += [f"length {t}: {c}" for t, c in enumerate(by_len, start=1)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_frequency(args) -> int:
    w = _resolve_word(args)
    target = _parse_target(args.target) if args.target is not None else None
    report = density.frequency_report(w, args.symbol, window=args.window, target=target)
    payload = {
        "command": "frequency",
        "symbol": report.symbol,
        "word_length": report.word_length,
        "frequency": report.global_frequency,
        "frequency_float": float(report.global_frequency),
    }
    lines = [f"freq({report.symbol}) = {report.global_frequency} "
             f"~ {float(report.global_frequency):.10f}"]
    if report.window is not None:
        payload["window"] = report.window
        payload["window_sup"] = report.window_sup
        lines.append(f"max over windows of {report.window}: {report.window_sup} "
                     f"~ {float(report.window_sup):.10f}")
    if report.target is not None:
        payload["target"] = report.target
        payload["max_deviation"] = report.max_deviation
        payload["tolerance"] = 1e-12
        lines.append(f"deviation from {report.target:.10f}: {report.max_deviation:.3e}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_balance(args) -> int:
    w = _resolve_word(args)
    target = _parse_target(args.target)
    ns = range(args.n_min, args.n_max + 1, args.step)
    report = density.balance_check(w, args.symbol, target, ns)
    payload = {
        "command": "balance",
        "symbol": report.symbol,
        "target": report.target,
        "word_length": len(w),
        "within_bound": report.within_bound(),
        "worst_n": report.worst_n,
        "worst_position": report.worst_position,
        "worst_deviation": report.worst_deviation,
        "tolerance": 1e-12,
    }
    lines = [
        f"checked window lengths {args.n_min}..{args.n_max} (step {args.step})",
        "every deviation within 1/n",
        f"worst: n = {report.worst_n} at position {report.worst_position}, "
        f"deviation {report.worst_deviation:.6e} <= {1.0 / report.worst_n:.6e}",
    ]
    csv_rows = [("n", "max_deviation", "position")] + list(report.rows)
    _emit(args, payload, lines, csv_rows)
    return EXIT_OK


def cmd_golden(args) -> int:
    ratios = density.golden_density(args.n_max)
    rows = []
    for i, r in enumerate(ratios, start=1):
        rows.append((i, r, float(density.golden_deviation(r))))
    payload = {
        "command": "golden",
        "ratios": [{"n": n, "ratio": r, "deviation": dev} for n, r, dev in rows],
        "tolerance": 1e-15,
    }
    lines = [f"F({n})/F({n + 1}) = {r} (off by {dev:.3e})" for n, r, dev in rows]
    certified = density.golden_deviation_below(ratios[-1], Fraction(1, 10 ** 15))
    payload["last_within_1e15"] = certified
    if certified:
        lines.append(f"F({args.n_max})/F({args.n_max + 1}) is within 1e-15 of phi - 1 "
                     "(certified exactly)")
    csv_rows = [("n", "ratio", "deviation")] + [(n, _plain(r), dev) for n, r, dev in rows]
    _emit(args, payload, lines, csv_rows)
    return EXIT_OK


def cmd_perron(args) -> int:
    data = density.perron_eigenvalue(args.m)
    payload = {
        "command": "perron",
        "m": data.m,
        "rho": data.rho,
        "tolerance": data.tolerance,
        "poly_residual": data.poly_residual,
        "frequencies": list(data.frequencies),
        "frequency_sum_error": data.frequency_sum_error,
        "eigen_residual": data.eigen_residual,
        "conjugate_moduli": list(data.conjugate_moduli),
        "pisot": data.pisot,
    }
    lines = [
        f"rho_{data.m} = {data.rho!r}",
        f"|p(rho)| = {data.poly_residual:.2e}",
        "frequencies: " + ", ".join(f"{f:.12f}" for f in data.frequencies),
        f"conjugate moduli: " + ", ".join(f"{c:.6f}" for c in data.conjugate_moduli),
        f"Pisot: {'yes' if data.pisot else 'no'}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_pisano(args) -> int:
    period = modfib.pisano_period(args.modulus)
    payload = {"command": "pisano", "modulus": args.modulus, "period": period}
    _emit(args, payload, [str(period)])
    return EXIT_OK


def cmd_lucaszeros(args) -> int:
    zeros = modfib.lucas_zeros(args.prime)
    period = modfib.pisano_period(args.prime)
    payload = {
        "command": "lucaszeros",
        "prime": args.prime,
        "pisano": period,
        "zeros": list(zeros),
    }
    text = ", ".join(map(str, zeros)) if zeros else "(none)"
    _emit(args, payload, [f"L(i) = 0 mod {args.prime} at i = {text} "
                          f"within one period of {period}"])
    return EXIT_OK


def cmd_density(args) -> int:
    res = modfib.density_formula(args.prime)
    ctx = res.context
    payload = {
        "command": "density",
        "prime": ctx.prime,
        "eps": ctx.eps,
        "e": ctx.e,
        "pisano": ctx.pisano,
        "restricted": ctx.restricted,
        "lucas_zeros": list(ctx.lucas_zero_indices),
        "N": res.n_count,
        "Z": res.z_count,
        "dens": res.density,
        "dens_float": float(res.density),
        "shared_outside_residue": res.shared_outside_residue,
    }
    lines = [
        f"p = {ctx.prime}, eps = {ctx.eps:+d}, e = {ctx.e}",
        f"pisano period {ctx.pisano}, restricted period {ctx.restricted}",
        f"N = {res.n_count}, Z = {res.z_count}",
        f"dens = {res.density} ~ {float(res.density):.10f}",
    ]
    if args.trace is not None:
        trace = modfib.bruteforce_trace(args.prime, args.trace)
        payload["brute_trace"] = trace
        lines += [f"brute lambda={lam}: {d} ~ {float(d):.10f}"
                  for lam, d in enumerate(trace)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_densbrute(args) -> int:
    trace = modfib.bruteforce_trace(args.prime, args.max_level)
    payload = {
        "command": "densbrute",
        "prime": args.prime,
        "levels": [{"lambda": lam, "density": d} for lam, d in enumerate(trace)],
    }
    lines = [f"lambda={lam}: {d} ~ {float(d):.10f}" for lam, d in enumerate(trace)]
    csv_rows = [("lambda", "density")] + [(lam, _plain(d)) for lam, d in enumerate(trace)]
    _emit(args, payload, lines, csv_rows)
    return EXIT_OK


def cmd_fword(args) -> int:
    payload = {"command": "fword", "base": args.base}
    lines = []
    csv_rows = None
    if args.coverage is not None:
        if args.blocks is not None:
            report = factorial_word.coverage_profile(
                args.base, args.coverage, block_budget=args.blocks
            )
            payload["block_budget"] = args.blocks
        else:
            if args.digits is None:
                raise UsageError("--coverage needs --digits or --blocks as the budget")
            report = factorial_word.coverage_profile(
                args.base, args.coverage, args.digits
            )
            payload["digit_budget"] = args.digits
        payload.update({
            "k": report.k,
            "found": report.found,
            "total": report.total,
            "complete": report.complete,
            "missing_sample": list(report.missing_sample),
        })
        lines.append(f"{report.found}/{report.total} length-{report.k} blocks seen")
        if report.missing_sample:
            lines.append("missing (sample): " + ", ".join(report.missing_sample))
    elif args.find is not None:
        if args.digits is None:
            raise UsageError("--find needs --digits as the search budget")
        pos = factorial_word.factor_search(args.base, args.find, args.digits)
        payload.update({"target": args.find, "digit_budget": args.digits,
                        "position": pos})
        if pos is None:
            lines.append(f"{args.find!r} not found in the first {args.digits} digits")
        else:
            lines.append(f"{args.find!r} first occurs at position {pos}")
    else:
        if args.digits is None:
            raise UsageError("give --digits for a prefix, or --find/--coverage")
        prefix = factorial_word.factorial_word_prefix(args.base, args.digits)
        payload.update({"digits": args.digits, "prefix": str(prefix)})
        lines.append(str(prefix))
    _emit(args, payload, lines, csv_rows)
    return EXIT_OK


def cmd_leading(args) -> int:
    n = factorial_word.leading_digits_search(args.base, args.target, args.n_budget)
    payload = {
        "command": "leading",
        "base": args.base,
        "target": args.target,
        "n_budget": args.n_budget,
        "n": n,
    }
    if n is None:
        lines = [f"no n <= {args.n_budget} has n! starting with {args.target!r} "
                 f"in base {args.base}"]
    else:
        lines = [f"{n}! starts with {args.target!r} in base {args.base}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_weyl(args) -> int:
    report = factorial_word.logfactorial_equidistribution(
        args.base, args.n_max, frequency=args.frequency, bins=args.bins
    )
    payload = {
        "command": "weyl",
        "base": args.base,
        "n_max": args.n_max,
        "frequency": args.frequency,
        "bins": args.bins,
        "weyl_magnitude": report.weyl_magnitude,
        "error_bound": report.summation_error_bound,
        "min_bin": min(report.histogram),
        "max_bin": max(report.histogram),
        "histogram": list(report.histogram),
    }
    lines = [
        f"|S_N| / N = {report.weyl_magnitude:.6f} for N = {args.n_max}, "
        f"h = {args.frequency}",
        f"rounding error bound {report.summation_error_bound:.2e}",
        f"histogram of {{log_b n!}} over {args.bins} bins: "
        f"min {min(report.histogram)}, max {max(report.histogram)}",
    ]
    csv_rows = [("bin", "count")] + list(enumerate(report.histogram))
    _emit(args, payload, lines, csv_rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = None
    if args.only:
        names = [n for spec in args.only for n in spec.split(",") if n]
        unknown = [n for n in names if n not in verify.CHECKS]
        if unknown:
            raise UsageError(
                f"unknown checks: {', '.join(unknown)}; "
                f"available: {', '.join(verify.CHECKS)}"
            )
    results = verify.run_checks(names, seed=args.seed)
    all_passed = all(r.passed for r in results)
    payload = {
        "command": "verify",
        "seed": args.seed,
        "passed": all_passed,
        "checks": [
            {"name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3),
             "limit": r.limit, "detail": r.detail}
            for r in results
        ],
    }
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{status}] {r.name:24s} {r.seconds:7.2f}s  {r.detail}")
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    csv_rows = [("name", "passed", "seconds")]
    csv_rows += [(r.name, r.passed, round(r.seconds, 3)) for r in results]
    _emit(args, payload, lines, csv_rows)
    return EXIT_OK if all_passed else EXIT_DOMAIN


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fibword",
        description="Substitution words, complexity profiles, symbol densities, "
                    "Fibonacci residues, and the concatenated-factorials word.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        return sp

    sp = add("generate", cmd_generate, "iterate a morphism and print a fixed-point prefix")
    sp.add_argument("--morphism", required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--seed-symbol")

    sp = add("complexity", cmd_complexity, "factor complexity profile p(n)")
    _add_word_source(sp)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--backend", choices=("auto", "windows", "automaton"), default="auto")

    sp = add("arithmetic", cmd_arithmetic, "arithmetic complexity profile a(n)")
    _add_word_source(sp)
    sp.add_argument("--n-max", type=int, required=True)

    sp = add("sturmian", cmd_sturmian, "test whether p(n) = n + 1 up to n-max")
    _add_word_source(sp)
    sp.add_argument("--n-max", type=int, required=True)

    sp = add("squarefree", cmd_squarefree, "square-free tests, censuses, and listings")
    sp.add_argument("--test", help="single word to test for squares")
    sp.add_argument("--alphabet-size", type=int, default=3)
    sp.add_argument("--n-max", type=int, help="census horizon (omit on <= 2 letters)")
    sp.add_argument("--list", action="store_true", help="list the words themselves")
    sp.add_argument("--workers", type=int, default=1,
                    help="processes for the census fan-out")

    sp = add("delta", cmd_delta, "apply or invert the block code a->abb, b->ab, c->a")
    sp.add_argument("--apply", metavar="WORD")
    sp.add_argument("--factorize", metavar="WORD")

    sp = add("palindromes", cmd_palindromes,
             "count palindromic factors and scattered palindromic subwords")
    _add_word_source(sp)
    sp.add_argument("--by-length", action="store_true")

    sp = add("frequency", cmd_frequency, "symbol frequency, optionally per window")
    _add_word_source(sp)
    sp.add_argument("--symbol", required=True)
    sp.add_argument("--window", type=int)
    sp.add_argument("--target", help="number, fraction, or golden/inv-phi/inv-phi2")

    sp = add("balance", cmd_balance,
             "check |window frequency - target| <= 1/n over a range of n")
    _add_word_source(sp)
    sp.add_argument("--symbol", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--step", type=int, default=1)

    sp = add("golden", cmd_golden, "Fibonacci ratios F(n)/F(n+1) and their distance "
                                   "to phi - 1")
    sp.add_argument("--n-max", type=int, required=True)

    sp = add("perron", cmd_perron, "dominant eigenvalue data of the m-bonacci matrix")
    sp.add_argument("--m", type=int, required=True)

    sp = add("pisano", cmd_pisano, "period of the Fibonacci sequence mod m")
    sp.add_argument("modulus", type=int)

    sp = add("lucaszeros", cmd_lucaszeros, "indices of Lucas zeros mod p in one period")
    sp.add_argument("prime", type=int)

    sp = add("density", cmd_density,
             "exact limiting density of Fibonacci residues mod p^lambda")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--trace", type=int, metavar="LMAX",
                    help="also tabulate brute-force densities for lambda = 0..LMAX")

    sp = add("densbrute", cmd_densbrute,
             "brute-force residue densities by walking full periods")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--max-level", type=int, default=1, metavar="LMAX")

    sp = add("fword", cmd_fword, "digits of the concatenated factorials word")
    sp.add_argument("--base", type=int, default=10)
    sp.add_argument("--digits", type=int, help="prefix length / digit budget")
    sp.add_argument("--find", metavar="DIGITS", help="search for a digit block")
    sp.add_argument("--coverage", type=int, metavar="K",
                    help="audit which length-K blocks appear")
    sp.add_argument("--blocks", type=int, metavar="N",
                    help="coverage budget as a factorial count: scan through n!")

    sp = add("leading", cmd_leading, "smallest n whose n! starts with given digits")
    sp.add_argument("--base", type=int, default=10)
    sp.add_argument("--target", required=True, metavar="DIGITS")
    sp.add_argument("--n-budget", type=int, required=True)

    sp = add("weyl", cmd_weyl, "equidistribution diagnostics for {log_b n!}")
    sp.add_argument("--base", type=int, default=10)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--frequency", type=int, default=1)
    sp.add_argument("--bins", type=int, default=100)

    sp = add("verify", cmd_verify, "run the end-to-end verification checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--only", action="append", metavar="NAME[,NAME...]",
                    help="run a subset of checks (repeatable)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _fail("usage", str(exc))
        return EXIT_DOMAIN
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        _fail("usage", str(exc))
        return EXIT_DOMAIN
    except BudgetError as exc:
        _fail("resource", str(exc))
        return EXIT_BUDGET
    except DomainError as exc:
        _fail("domain", str(exc))
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
