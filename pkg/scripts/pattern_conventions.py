"""Compare F_{h,k}(n) with pattern-avoidance classes under the symmetries of S_n.

The inversion encoding used here sends F_{h,k} onto the avoiders of the
*inverse* images of the classical pattern sets; this script shows which
symmetry images match as sets and that the counts agree under all of them.
"""
from __future__ import annotations

import argparse
import json

from catpairs.general import convention_report, pattern_set_1k, pattern_set_h1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--max-param", type=int, default=3)
    args = ap.parse_args()
    for h in range(1, args.max_param + 1):
        rep = convention_report(args.n, h, 1, pattern_set_h1(h))
        print(json.dumps(rep))
    for k in range(2, args.max_param + 1):
        rep = convention_report(args.n, 1, k, pattern_set_1k(k))
        print(json.dumps(rep))


if __name__ == "__main__":
    main()
