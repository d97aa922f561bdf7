"""Resolve the m-gons and print orbit size, degree and runtime."""
import argparse
import time

from pmresolve import library
from pmresolve.labeling import GoodLabeling
from pmresolve.pipeline import resolve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=12)
    args = ap.parse_args()
    print(f"{'m':>3} {'cubes':>6} {'r':>3} {'2m|r|':>6} {'ms':>7}")
    for m in range(2, args.max_m + 1):
        pm = library.polygon(m)
        t0 = time.perf_counter()
        res = resolve(pm, GoodLabeling(pm, library.polygon_labels(m)))
        ms = 1000 * (time.perf_counter() - t0)
        r = res.degree.degree
        print(f"{m:>3} {len(res.comp):>6} {r:>3} {2 * m * r:>6} {ms:>7.1f}")


if __name__ == "__main__":
    main()
