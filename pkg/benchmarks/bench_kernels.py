#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Generates synthetic workloads shaped like real corpus runs (skewed pair
distributions) and times the three hot kernels on both backends.

    python3 benchmarks/bench_kernels.py [--instances N] [--tables N]
                                        [--scores N] [--repeat K]
"""

import argparse
import random
import time

import numpy as np

from svcminer import _kernels_py

try:
    from svcminer import _kernels
except ImportError:
    _kernels = None


def best_of(repeat, fn, *args):
    timings = []
    for _ in range(repeat):
        started = time.perf_counter()
        fn(*args)
        timings.append(time.perf_counter() - started)
    return min(timings)


def zipf_ids(rng, n, vocab):
    # skewed like lemma frequencies
    raw = np.asarray([min(int(rng.paretovariate(1.2)), vocab)
                      for _ in range(n)], dtype=np.int64)
    return raw - 1


def make_workloads(args):
    rng = random.Random(7)
    a_ids = zipf_ids(rng, args.instances, args.vocab)
    b_ids = zipf_ids(rng, args.instances, args.vocab)
    o11 = np.asarray([rng.randint(1, 10**4) for _ in range(args.tables)],
                     dtype=np.int64)
    r1 = o11 + np.asarray([rng.randint(0, 10**5)
                           for _ in range(args.tables)], dtype=np.int64)
    c1 = o11 + np.asarray([rng.randint(0, 10**5)
                           for _ in range(args.tables)], dtype=np.int64)
    n = int(r1.max() + c1.max())
    scores = np.asarray([rng.uniform(-50, 50) for _ in range(args.scores)])
    return a_ids, b_ids, o11, r1, c1, n, scores


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--instances", type=int, default=500_000,
                        help="pair instances for the counting kernel")
    parser.add_argument("--vocab", type=int, default=20_000)
    parser.add_argument("--tables", type=int, default=200_000,
                        help="tables for the scoring kernel")
    parser.add_argument("--scores", type=int, default=200_000,
                        help="population size for the percentile kernel")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    a_ids, b_ids, o11, r1, c1, n, scores = make_workloads(args)
    py_list = {  # the fallback gets plain lists, as the pipeline feeds it
        "count_pairs": (list(map(int, a_ids)), list(map(int, b_ids))),
        "score_many": (list(map(int, o11)), list(map(int, r1)),
                       list(map(int, c1)), n, _kernels_py.LOCAL_MI),
        "cpr_many": (list(map(float, scores)),),
    }
    c_args = {
        "count_pairs": (a_ids, b_ids),
        "score_many": (o11, r1, c1, n, _kernels_py.LOCAL_MI),
        "cpr_many": (scores,),
    }

    sizes = {"count_pairs": args.instances, "score_many": args.tables,
             "cpr_many": args.scores}
    print(f"{'kernel':<14} {'n':>9} {'python':>10} {'compiled':>10} "
          f"{'speedup':>8}")
    for name in ("count_pairs", "score_many", "cpr_many"):
        py_time = best_of(args.repeat, getattr(_kernels_py, name),
                          *py_list[name])
        if _kernels is None:
            print(f"{name:<14} {sizes[name]:>9} {py_time:>9.3f}s "
                  f"{'n/a':>10} {'n/a':>8}")
            continue
        c_time = best_of(args.repeat, getattr(_kernels, name), *c_args[name])
        print(f"{name:<14} {sizes[name]:>9} {py_time:>9.3f}s "
              f"{c_time:>9.3f}s {py_time / c_time:>7.1f}x")
    if _kernels is None:
        print("\ncompiled kernels not built; showing fallback only")


if __name__ == "__main__":
    main()
