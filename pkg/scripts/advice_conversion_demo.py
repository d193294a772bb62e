#!/usr/bin/env python3
"""Exercise the serial-to-parallel advice conversion on random automata.

Draws seeded random binary DFAs and advice tables, converts each serial
setup into a parallel one, and counts decision mismatches over every input
up to the chosen length (expected: none).
"""

import argparse
import itertools
import random

from langlab.advice import AdviceFunction, AdvisedLanguage, parallel_member, serial_to_parallel_reg
from langlab.grammars import Dfa, dfa_accepts
from langlab.words import Word


def random_dfa(rng: random.Random) -> Dfa:
    states = [f"q{i}" for i in range(rng.randint(2, 5))]
    transitions = {(q, a): rng.choice(states) for q in states for a in (0, 1)}
    return Dfa(
        states=frozenset(states),
        alphabet=frozenset({0, 1}),
        transitions=transitions,
        start="q0",
        accepting=frozenset(q for q in states if rng.random() < 0.5),
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1729)
    parser.add_argument("--rounds", type=int, default=20)
    parser.add_argument("--max-len", type=int, default=8)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    total_inputs = 0
    total_mismatches = 0
    for round_no in range(1, args.rounds + 1):
        m = random_dfa(rng)
        table = {n: [rng.choice((0, 1)) for _ in range(n)] for n in range(args.max_len + 1)}
        g = AdviceFunction(lambda n, tb=table: Word(tb[n]), "random-table")
        h, m2 = serial_to_parallel_reg(m, g)
        converted = AdvisedLanguage("parallel", m2, h)
        mismatches = 0
        inputs = 0
        for n in range(1, args.max_len + 1):
            for t in itertools.product((0, 1), repeat=n):
                x = Word(t)
                inputs += 1
                if parallel_member(converted, x) != dfa_accepts(m, g(n) + x):
                    mismatches += 1
        total_inputs += inputs
        total_mismatches += mismatches
        print(f"round {round_no:>2}: {len(m.states)} states, {inputs} inputs, {mismatches} mismatches")
    print(f"total: {total_inputs} inputs, {total_mismatches} mismatches")


if __name__ == "__main__":
    main()
