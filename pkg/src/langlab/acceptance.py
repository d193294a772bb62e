"""The acceptance battery: one callable per criterion, each returning a
result with its pass/fail verdict and a one-line detail string.

Randomized criteria draw from a seeded generator; the published default
seed is :data:`DEFAULT_SEED`.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from . import corpus
from .advice import (
    AdviceFunction,
    AdvisedLanguage,
    leq_parallel,
    parallel_member,
    prefix_pair_decode,
    prefix_pair_encode,
    serial_to_parallel_reg,
)
from .grammars import Dfa, cyk_member, dfa_accepts, enumerate_language, parse_grammar, to_cnf
from .refuter import PumpWitness, refute_subset
from .swaplab import Slice, build_slice, choose_params, slice_stats, swap_scan
from .words import Word, scale

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: str
    elapsed_s: float
    budget_s: Optional[float] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} ({self.name}): {self.details} [{self.elapsed_s:.2f}s]"

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "elapsed_s": round(self.elapsed_s, 3),
            "budget_s": self.budget_s,
        }


def _result(number, name, budget_s, started, passed, details) -> CriterionResult:
    return CriterionResult(
        number=number,
        name=name,
        passed=passed,
        details=details,
        elapsed_s=time.perf_counter() - started,
        budget_s=budget_s,
    )


def scaling_example(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Positionwise scaling of 1,2,1,1 by 3 gives exactly 3,6,3,3."""
    t0 = time.perf_counter()
    got = scale(Word.of(1, 2, 1, 1), 3)
    ok = got == Word.of(3, 6, 3, 3)
    return _result(1, "scaling example", None, t0, ok, f"scale(1211, 3) = {got.text()}")


def intersection_identity(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Enumerated intersection of the two covering grammars matches the
    nesting generator exactly at every length up to 8."""
    t0 = time.perf_counter()
    e1 = set(enumerate_language(corpus.grammar_l2_1(), 8))
    e2 = set(enumerate_language(corpus.grammar_l2_2(), 8))
    inter = e1 & e2
    expected_cards = {1: 0, 2: 0, 3: 0, 4: 2, 5: 0, 6: 0, 7: 0, 8: 4}
    cards = {}
    ok = True
    for n in range(1, 9):
        level = {w for w in inter if len(w) == n}
        cards[n] = len(level)
        if level != set(corpus.l2_members(n)) or len(level) != expected_cards[n]:
            ok = False
    return _result(
        2, "two-grammar intersection identity", 10.0, t0, ok,
        f"cardinalities n=1..8: {[cards[n] for n in range(1, 9)]}",
    )


def slice_cardinality(seed: int = DEFAULT_SEED) -> CriterionResult:
    """The nesting slice at n has exactly 2^(n/4) members."""
    t0 = time.perf_counter()
    sizes = {}
    ok = True
    for n in (4, 8, 16, 24, 32):
        got = len(build_slice(corpus.LANGUAGES["L2"], n))
        sizes[n] = got
        ok = ok and got == 2 ** (n // 4)
    return _result(3, "slice cardinality", 5.0, t0, ok, f"sizes: {sizes}")


def binding_bound(seed: int = DEFAULT_SEED) -> CriterionResult:
    """No midsection count on a nesting slice exceeds 2^(n/4 - ceil(j/2)),
    exhaustively over n in {8, 16, 24} and every offset and j <= n/4."""
    t0 = time.perf_counter()
    checked = 0
    ok = True
    worst = ""
    for n in (8, 16, 24):
        s = build_slice(corpus.LANGUAGES["L2"], n)
        for j in range(1, n // 4 + 1):
            stats = slice_stats(s, j)
            bound = 2 ** (n // 4 - (j + 1) // 2)
            checked += len(stats.counts)
            over = [(i, u, c) for (i, u), c in stats.counts.items() if c > bound]
            if over:
                ok = False
                worst = f"; violation at n={n}, j={j}: {over[0]}"
    return _result(4, "midsection binding bound", 60.0, t0, ok, f"{checked} counts checked{worst}")


def no_swap(seed: int = DEFAULT_SEED) -> CriterionResult:
    """The exhaustive swap scan over nesting slices finds no witness for
    any pair, offset, and midsection length up to n/4."""
    t0 = time.perf_counter()
    counts = {}
    ok = True
    for n in (8, 16, 24):
        s = build_slice(corpus.LANGUAGES["L2"], n)
        witnesses = swap_scan(corpus.is_l2, s, (1, n // 4))
        counts[n] = len(witnesses)
        ok = ok and not witnesses
    return _result(5, "no-swap on nesting slices", 300.0, t0, ok, f"witness counts: {counts}")


def _is_even_palindrome(w: Word) -> bool:
    n = len(w)
    return n >= 2 and n % 2 == 0 and all(a in (0, 1) for a in w.letters) and w.letters == w.letters[::-1]


def positive_swap_control(seed: int = DEFAULT_SEED) -> CriterionResult:
    """On the even-binary-palindrome slice at n=4 the scan does find the
    0110/1001 swap whose splices are 0000 and 1111."""
    t0 = time.perf_counter()
    members = [Word(t) for t in itertools.product((0, 1), repeat=4) if _is_even_palindrome(Word(t))]
    s = Slice(4, tuple(members), "even binary palindromes[n=4]")
    witnesses = swap_scan(_is_even_palindrome, s, (1, 4))
    hits = [
        w
        for w in witnesses
        if w.x == Word.of(0, 1, 1, 0)
        and w.y == Word.of(1, 0, 0, 1)
        and (w.i, w.j) == (1, 2)
        and w.swapped_x == Word.of(0, 0, 0, 0)
        and w.swapped_y == Word.of(1, 1, 1, 1)
    ]
    return _result(
        6, "positive swap control", None, t0, len(hits) == 1,
        f"{len(witnesses)} witnesses in total, target swap found {len(hits)} time(s)",
    )


def parameter_chain(seed: int = DEFAULT_SEED) -> CriterionResult:
    """choose_params(1) returns (288, 72, 36); every link is re-evaluated
    with independent big-integer arithmetic, no tolerance anywhere."""
    t0 = time.perf_counter()
    p = choose_params(1)
    checks = {
        "triple": (p.n, p.k, p.j0) == (288, 72, 36),
        "growth holds at 288": 2 ** 72 > (2 * 288 ** 2) ** 4,
        "growth fails at 272": 2 ** 68 <= (2 * 272 ** 2) ** 4,
        "k equals 2 j0": p.k == 2 * p.j0,
        "power bound": 2 ** (p.j0 // 2) == 262144
        and 2 * 1 * 288 ** 2 == 165888
        and 262144 >= 165888,
    }
    ok = all(checks.values())
    failing = [k for k, v in checks.items() if not v]
    return _result(
        7, "parameter chain", None, t0, ok,
        f"n={p.n}, k={p.k}, j0={p.j0}" + (f"; failing: {failing}" if failing else ""),
    )


_PARTITION_POOL = {
    "L2": (4, 8, 12, 16, 20),
    "L2_1": (3, 4, 5, 6, 7, 8),
    "L2_2": (2, 4, 6, 8),
    "L2_prime": (4, 8),
    "L2_dprime": (4, 8, 12, 16),
    "L_eq": (2, 4, 6, 8, 10, 12),
    "L_3eq": (3, 6, 9, 12),
    "Pal_sharp": (1, 3, 5, 7, 9, 11),
}


def partition_identity(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Across 200 seeded random sub-slices of assorted corpus languages,
    the counts at every offset sum to the slice size for every j."""
    t0 = time.perf_counter()
    rng = random.Random(seed)
    failures = 0
    slices = 0
    while slices < 200:
        name = rng.choice(sorted(_PARTITION_POOL))
        n = rng.choice(_PARTITION_POOL[name])
        members = corpus.LANGUAGES[name].generator(n)
        if not members:
            continue
        take = rng.randint(1, min(len(members), 64))
        sub = Slice(n, tuple(rng.sample(members, take)), f"{name}[n={n}] sample")
        slices += 1
        for j in range(1, n + 1):
            stats = slice_stats(sub, j)
            if not stats.partition_ok():
                failures += 1
    return _result(
        8, "partition identity", 30.0, t0, failures == 0,
        f"200 slices, all (i, j) checked, {failures} failures",
    )


def _random_dfa(rng: random.Random) -> Dfa:
    k = rng.randint(2, 4)
    states = [f"q{i}" for i in range(k)]
    alphabet = (0, 1)
    transitions = {(q, a): rng.choice(states) for q in states for a in alphabet}
    accepting = frozenset(q for q in states if rng.random() < 0.5)
    return Dfa(
        states=frozenset(states),
        alphabet=frozenset(alphabet),
        transitions=transitions,
        start="q0",
        accepting=accepting,
    )


def advice_equivalences(seed: int = DEFAULT_SEED) -> CriterionResult:
    """(a) the parallel equal-halves setup decides exactly 0^m 1^m on all
    binary words up to length 10; (b) the serial-to-parallel conversion
    preserves every decision on inputs of lengths 1..8 for 20 seeded
    random automata and advice tables."""
    t0 = time.perf_counter()
    mismatches_a = 0
    leq = leq_parallel()
    for n in range(0, 11):
        for t in itertools.product((0, 1), repeat=n):
            x = Word(t)
            if parallel_member(leq, x) != corpus.is_leq(x):
                mismatches_a += 1
    rng = random.Random(seed)
    mismatches_b = 0
    for _ in range(20):
        m = _random_dfa(rng)
        table = {n: [rng.choice((0, 1)) for _ in range(n)] for n in range(0, 9)}
        g = AdviceFunction(lambda n, tb=table: Word(tb[n]), "random-table")
        h, m2 = serial_to_parallel_reg(m, g)
        converted = AdvisedLanguage("parallel", m2, h)
        for ln in range(1, 9):
            for t in itertools.product((0, 1), repeat=ln):
                x = Word(t)
                serial = dfa_accepts(m, g(ln) + x)
                if parallel_member(converted, x) != serial:
                    mismatches_b += 1
    ok = mismatches_a == 0 and mismatches_b == 0
    return _result(
        9, "advice equivalences", 60.0, t0, ok,
        f"parallel mismatches: {mismatches_a}, conversion mismatches: {mismatches_b}",
    )


def prefix_free_coding(seed: int = DEFAULT_SEED) -> CriterionResult:
    """All pair codewords for binary words up to length 5 are mutually
    prefix-incomparable and decode back exactly."""
    t0 = time.perf_counter()
    words = [Word(t) for k in range(6) for t in itertools.product((0, 1), repeat=k)]
    codes = {}
    bad_roundtrip = 0
    for u in words:
        for v in words:
            code = prefix_pair_encode(u, v)
            codes[code.letters] = (u, v)
            if prefix_pair_decode(code) != (u, v):
                bad_roundtrip += 1
    prefix_hits = 0
    codeset = set(codes)
    for letters in codeset:
        for cut in range(1, len(letters)):
            if letters[:cut] in codeset:
                prefix_hits += 1
    ok = bad_roundtrip == 0 and prefix_hits == 0
    return _result(
        10, "prefix-free pair coding", None, t0, ok,
        f"{len(codeset)} codewords, {prefix_hits} prefix collisions, {bad_roundtrip} bad roundtrips",
    )


def pumping_refutation(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Pumping refutes "the a^m b^m c^t grammar lies inside a^m b^m c^(2m)";
    the witness is replayed through CYK and the predicate."""
    t0 = time.perf_counter()
    g = parse_grammar(
        """
        S -> A C
        A -> 'a' A 'b' | 'a' 'b'
        C -> 'c' C | 'c'
        """
    )
    outcome = refute_subset(g, corpus.is_l2_dprime, 132)
    if not isinstance(outcome, PumpWitness):
        return _result(11, "pumping refutation", 30.0, t0, False, f"inconclusive: {outcome}")
    cnf = to_cnf(g)
    replay_ok = all(cyk_member(cnf, w) for _, w in outcome.pumped)
    exp, bad_word = outcome.violating
    replay_ok = replay_ok and cyk_member(cnf, bad_word) and not corpus.is_l2_dprime(bad_word)
    return _result(
        11, "pumping refutation", 30.0, t0, replay_ok,
        f"z of length {len(outcome.z)}, violating exponent {exp}, replay {'ok' if replay_ok else 'failed'}",
    )


CRITERIA: tuple[Callable[[int], CriterionResult], ...] = (
    scaling_example,
    intersection_identity,
    slice_cardinality,
    binding_bound,
    no_swap,
    positive_swap_control,
    parameter_chain,
    partition_identity,
    advice_equivalences,
    prefix_free_coding,
    pumping_refutation,
)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [criterion(seed) for criterion in CRITERIA]
