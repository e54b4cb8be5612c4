#!/usr/bin/env python3
"""Benchmark: compiled int64 kernel vs pure-Python kernel.

The workloads are the hot paths of the library: word canonicalization,
interval construction (subword closure plus covers), and a Bruhat-order
stress mix on an affine ball.  Both kernels are exercised on identical,
deterministic inputs; systems are rebuilt per kernel so that no memo
cache leaks across the comparison.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import time

MATRICES = {
    "B3": [[1, 4, 2], [4, 1, 3], [2, 3, 1]],
    "affineA2": [[1, 3, 3], [3, 1, 3], [3, 3, 1]],
}


def fresh_system(name, kernel_mode):
    os.environ["COXKL_KERNEL"] = kernel_mode
    from coxkl import validate_system

    return validate_system(MATRICES[name])


def bench_canonicalize(kernel_mode):
    sys = fresh_system("B3", kernel_mode)
    rng = random.Random(42)
    words = [
        tuple(rng.randrange(3) for _ in range(20)) for _ in range(4000)
    ]
    t0 = time.perf_counter()
    acc = 0
    for w in words:
        canon, _ = sys.canonicalize(w)
        acc += len(canon)
    return time.perf_counter() - t0, acc


def bench_interval(kernel_mode):
    from coxkl.bruhat import interval

    sys = fresh_system("B3", kernel_mode)
    w0 = max(sys.all_elements(), key=len)
    t0 = time.perf_counter()
    ivl = interval(sys, (), w0)
    return time.perf_counter() - t0, ivl.size + len(ivl.covers)


def bench_affine_order(kernel_mode):
    from coxkl.bruhat import bruhat_leq

    sys = fresh_system("affineA2", kernel_mode)
    t0 = time.perf_counter()
    ball = sys.ball(8)
    rng = random.Random(7)
    acc = 0
    for _ in range(4000):
        u, v = rng.choice(ball), rng.choice(ball)
        acc += bruhat_leq(sys, u, v)
    return time.perf_counter() - t0, acc


BENCHES = [
    ("canonicalize 4000 words (B3, len 20)", bench_canonicalize),
    ("interval [e, w0] in B3", bench_interval),
    ("affine ball(8) + 4000 order queries", bench_affine_order),
]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    from coxkl.kernels import HAVE_COMPILED

    modes = ["pure"] + (["compiled"] if HAVE_COMPILED else [])
    if not HAVE_COMPILED:
        print("note: compiled kernel not built; benchmarking pure only")

    print(f"{'workload':45s} " + " ".join(f"{m:>10s}" for m in modes) + "  speedup")
    for label, fn in BENCHES:
        best = {}
        checks = set()
        for mode in modes:
            times = []
            for _ in range(args.repeat):
                dt, check = fn(mode)
                times.append(dt)
                checks.add(check)
            best[mode] = min(times)
        assert len(checks) == 1, f"kernels disagree on {label}"
        cells = " ".join(f"{best[m] * 1000:9.1f}ms" for m in modes)
        speedup = ""
        if len(modes) == 2:
            speedup = f"  {best['pure'] / best['compiled']:.1f}x"
        print(f"{label:45s} {cells}{speedup}")


if __name__ == "__main__":
    main()
