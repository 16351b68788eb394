"""Run the brute-force oracles and report counts, rejection tallies and timings."""
from __future__ import annotations

import argparse
import json
import time

from catpairs.general import Profile
from catpairs.oracle import oracle_catalan, oracle_generalized, oracle_posets


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--profiles", nargs="*", default=["unrestricted", "grand-dyck", "schroder", "comp-hk:2,1"])
    args = ap.parse_args()
    for n in range(args.max_n + 1):
        t0 = time.perf_counter()
        rep = oracle_catalan(n).to_json_obj()
        rep["seconds"] = round(time.perf_counter() - t0, 2)
        rep["posetClasses"] = len(oracle_posets(n))
        print(json.dumps({"family": "catalan", **rep}))
    for text in args.profiles:
        prof = Profile.parse(text)
        cap = 6 if prof.kind == "comp-hk" else 4
        for n in range(min(cap, args.max_n + 1) + 1):
            print(json.dumps({"family": text, **oracle_generalized(n, prof).to_json_obj()}))


if __name__ == "__main__":
    main()
