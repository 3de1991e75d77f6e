"""Search small random weak-order profiles for RMEC manipulations and print the first few found."""

import argparse
import random

from pscfkit.prefs import format_order, format_profile, sample_profile
from pscfkit.rules import rmec
from pscfkit.verify import strategyproofness_scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--profiles", type=int, default=200)
    ap.add_argument("--show", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    hits = 0
    for _ in range(args.profiles):
        profile = sample_profile(args.n, args.m, rng)
        for i in range(profile.n):
            found = strategyproofness_scan(rmec, profile, i, "all")
            if not found:
                continue
            hits += 1
            if hits <= args.show:
                man = found[0]
                print(format_profile(profile), end="")
                print(f"agent {i + 1} reports {format_order(man.misreport, profile.labels)}: "
                      f"{man.outcome.format(profile.labels)} instead of {man.truthful.format(profile.labels)}\n")
            break
    print(f"{hits}/{args.profiles} profiles admit a manipulation")


if __name__ == "__main__":
    main()
