"""Check RMEC for SD-efficiency on every profile of a given size, up to agent order.

    python3 scripts/exhaustive.py 4 4
"""

import sys
import time

from pscfkit.harness import count_multisets, exhaustive_rmec_efficiency


def main(argv):
    n, m = (int(x) for x in argv[1:3]) if len(argv) >= 3 else (4, 4)
    total = count_multisets(n, m)
    start = time.perf_counter()

    def tick(k):
        if k:
            print(f"  {k:>9}/{total}  {time.perf_counter() - start:6.0f}s", file=sys.stderr, flush=True)

    bad = exhaustive_rmec_efficiency(n, m, progress=tick)
    print(f"n={n} m={m}: {bad} inefficient among {total} profiles ({time.perf_counter() - start:.0f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
