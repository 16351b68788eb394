"""Tabulate distributive-lattice counts against the d_n = d_{n-1} + d_{n-3} recurrence.

With d_0 = d_1 = d_2 = 1 the recurrence matches the computed counts only
after shifting the size by one: the single-element pair is the first lattice.
"""
from __future__ import annotations

import argparse

from catpairs.posets import count_distributive


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=12)
    args = ap.parse_args()
    d = [1, 1, 1]
    while len(d) <= args.max_n:
        d.append(d[-1] + d[-3])
    print("n  computed  d_n  d_(n-1)")
    for n in range(args.max_n + 1):
        prev = d[n - 1] if n else "-"
        print(f"{n:<2} {count_distributive(n):<9} {d[n]:<4} {prev}")


if __name__ == "__main__":
    main()
