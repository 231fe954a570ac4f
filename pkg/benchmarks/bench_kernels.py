#!/usr/bin/env python3
"""Benchmark the compiled row-reduction kernel against the pure-Python twin.

Two workload families:
  * synthetic dense integer matrices of increasing size,
  * the actual relation matrices behind graded-dimension computations for the
    larger catalog instances (the dominant cost of betti / brion / hilbert).

Run after an editable install:  python3 benchmarks/bench_kernels.py
"""

import random
import time

from qtk import _bareiss_py
from qtk import exact
from qtk import srbundle as sr
from qtk.catalog import get

try:
    from qtk import _bareiss
except ImportError:
    _bareiss = None


def synthetic(rng, rows, cols, bits):
    hi = 2 ** bits
    return [[rng.randint(-hi, hi) for _ in range(cols)] for _ in range(rows)]


def relation_workload(label):
    inst = get(label)
    ring = inst.ring()
    matrices = []
    for d in range(ring.total_degree + 1):
        _, vectors = sr.relation_vectors(ring, d)
        if vectors:
            matrices.append(exact._int_rows(vectors, len(vectors[0])))
    return matrices


def time_backend(echelon, matrices, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        for m in matrices:
            ncols = len(m[0]) if m else 0
            echelon([row[:] for row in m], ncols)
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return best


def report(name, matrices, repeats=5):
    t_py = time_backend(_bareiss_py.echelon_int, matrices, repeats)
    if _bareiss is None:
        print(f"{name:38s} python {t_py * 1e3:9.2f} ms   (compiled kernel absent)")
        return
    t_c = time_backend(_bareiss.echelon_int, matrices, repeats)
    ratio = t_py / t_c if t_c else float("inf")
    print(f"{name:38s} python {t_py * 1e3:9.2f} ms   cython {t_c * 1e3:9.2f} ms"
          f"   speedup {ratio:5.2f}x")


def main():
    rng = random.Random(67)
    print("synthetic dense integer matrices (best of 5):")
    for size, bits in ((20, 8), (40, 8), (60, 16), (80, 16)):
        mats = [synthetic(rng, size, size, bits) for _ in range(3)]
        report(f"  {size}x{size}, {bits}-bit entries", mats)
    print("relation matrices from catalog instances (best of 5):")
    for label in ("cp3", "cp1-bundle-over-cp2?a=2", "cp1xcp1-bundle"):
        report(f"  {label}", relation_workload(label))


if __name__ == "__main__":
    main()
