"""Scan periods 1..N up to a height bound and tabulate the Galois classification.

    python scripts/scan_conjecture.py --max-period 6 --height 30 --workers 4
"""

import argparse
import time
from collections import Counter

from quadcycles.galois import conjecture_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-period", type=int, default=6)
    ap.add_argument("--height", type=int, default=20)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print(f"{'N':>2} {'c values':>9} {'rational':>9} {'quadratic':>10} {'CaseI':>6} {'CaseII':>7} {'fields':<30} time")
    for n in range(1, args.max_period + 1):
        t0 = time.perf_counter()
        rep = conjecture_scan(n, args.height, workers=args.workers)
        s = rep.summary()
        fields = Counter(r["disc"] for r in rep.quadratic())
        top = ", ".join(f"{d}:{k}" for d, k in fields.most_common(4))
        print(
            f"{n:>2} {s['c_values']:>9} {s['rational_cycles']:>9} {s['quadratic_cycles']:>10} "
            f"{s['CaseI']:>6} {s['CaseII']:>7} {top:<30} {time.perf_counter() - t0:.1f}s"
        )
        if n >= 3:
            for r in rep.quadratic():
                print(f"   c={r['c']} disc={r['disc']} {r['classification']['case']} trace={r['trace']}")


if __name__ == "__main__":
    main()
