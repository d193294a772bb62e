#!/usr/bin/env python3
"""Tabulate the exact swap parameter chain for a range of constants m."""

import argparse

from langlab.swaplab import choose_params


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m-max", type=int, default=10)
    args = parser.parse_args()

    print(f"{'m':>4} {'n':>6} {'k':>5} {'j0':>4} {'k - 2 j0':>9} {'2^(j0/2)':>12} {'2 m n^2':>12}")
    for m in range(1, args.m_max + 1):
        p = choose_params(m)
        print(
            f"{p.m:>4} {p.n:>6} {p.k:>5} {p.j0:>4} {p.k - 2 * p.j0:>9} "
            f"{2 ** (p.j0 // 2):>12} {2 * m * p.n * p.n:>12}"
        )


if __name__ == "__main__":
    main()
