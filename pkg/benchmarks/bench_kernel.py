"""Compare the compiled and pure-Python subset-search kernels.

    python benchmarks/bench_kernel.py [--repeat N]

Each case runs one full search level through both backends and checks that
they return the same (status, subset, examined) triple.
"""

import argparse
import time

import numpy as np

from sparkdict import construct, field, kernel

CASES = [
    # (r, t, k): label
    ((1, 1, 3), "GF(4), 3-subsets up to the first dependent one"),
    ((2, 1, 4), "r=2 t=1, all C(80,4) 4-subsets"),
    ((1, 2, 5), "r=1 t=2, all C(48,5) 5-subsets"),
    ((1, 2, 6), "r=1 t=2, 6-subsets up to the first dependent one"),
]


def run_level(vecs, k, backend):
    hit, examined = None, 0
    for i in range(len(vecs) - k + 1):
        status, subset, count = kernel.search_level(vecs, k, i, i + 1, backend)
        examined += count
        if status:
            hit = subset
            break
    return hit, examined


def timed(vecs, k, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = run_level(vecs, k, backend)
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    if kernel.BACKEND != "cython":
        print("compiled kernel not available; only the Python backend will run")
    print(f"{'case':<52} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for (r, t, k), label in CASES:
        D = construct.build_dictionary(field.build_field(r, t))
        vecs = np.ascontiguousarray(D.matrix.T)
        py_out, py_t = timed(vecs, k, "python", args.repeat)
        if kernel.BACKEND == "cython":
            c_out, c_t = timed(vecs, k, "cython", args.repeat)
            assert c_out == py_out, (c_out, py_out)
            print(f"{label:<52} {py_t:9.3f} {c_t:9.4f} {py_t / max(c_t, 1e-9):7.0f}x")
        else:
            print(f"{label:<52} {py_t:9.3f} {'-':>9} {'-':>8}")


if __name__ == "__main__":
    main()
