"""Grow the component of a 3-dimensional input and log its size and the
number of distinct pairing families as exploration proceeds."""
import argparse
import time

from pmresolve import library
from pmresolve.assembly import explore_component
from pmresolve.complex_core import barycentric_subdivision
from pmresolve.errors import CapExceeded
from pmresolve.labeling import labeling_from_coloring
from pmresolve.states import Resolver

INPUTS = {
    "suspended_torus": lambda: library.suspension(library.torus7()),
    "simplex": lambda: library.simplex_boundary(3),
    "cross": lambda: library.cross_polytope(3),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input", choices=sorted(INPUTS), nargs="?", default="suspended_torus")
    ap.add_argument("--caps", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    args = ap.parse_args()
    sub, dims, _ = barycentric_subdivision(INPUTS[args.input]())
    lab = labeling_from_coloring(sub, dims)
    for cap in args.caps:
        R = Resolver(sub, lab)
        t0 = time.perf_counter()
        try:
            comp = explore_component(R, cap=cap)
            status = f"closed with {len(comp)} states"
        except CapExceeded:
            status = "cap reached"
        print(f"cap={cap:>8}: {status}; {R.distinct_families} families, "
              f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
