"""Print every counting sequence the package reproduces, with timings."""
from __future__ import annotations

import argparse
import json
import time

from catpairs.cli import golden_sequences


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", nargs="*", help="sequence names to run (default: all)")
    args = ap.parse_args()
    for name, compute, expected in golden_sequences():
        if args.only and name not in args.only:
            continue
        t0 = time.perf_counter()
        got = compute()
        dt = time.perf_counter() - t0
        print(json.dumps({"sequence": name, "computed": got, "match": got == expected, "seconds": round(dt, 2)}))


if __name__ == "__main__":
    main()
