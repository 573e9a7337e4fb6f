"""Compare the compiled and pure-Python kernels on the seeded corpora.

    python benchmarks/bench_kernels.py [--seed N] [--count N] [--degree D] [--repeat R]

Both backends are imported directly, so one run times them side by side and
checks that they return identical results.
"""
from __future__ import annotations

import argparse
import random
import time

from quildeg import _kernels_py
from quildeg.corpus import hilbert_corpus

try:
    from quildeg import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_count(mod, corpus, D):
    return [list(mod.count_standard(I.gens, R.weights, D, 10**7)[0]) for R, I in corpus]


def random_matrices(seed, count, size):
    rng = random.Random(seed)
    return [([[rng.randint(0, 4) for _ in range(size)] for _ in range(size)], rng.choice([2, 3, 5]))
            for _ in range(count)]


def bench_rank(mod, mats, size):
    return [mod.rank_mod_p(rows, size, p) for rows, p in mats]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--degree", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    corpus = hilbert_corpus(args.seed, args.count)
    mats = random_matrices(args.seed, 200, 24)
    print(f"seed {args.seed}, {args.count} quotients to degree {args.degree}, "
          f"200 rank computations on 24x24 matrices")
    rows = [("count_standard", lambda m: bench_count(m, corpus, args.degree)),
            ("rank_mod_p", lambda m: bench_rank(m, mats, 24))]
    for label, fn in rows:
        tp, outp = best_of(lambda: fn(_kernels_py), args.repeat)
        line = f"{label:<16} python {tp * 1000:9.1f} ms"
        if _kernels is not None:
            tc, outc = best_of(lambda: fn(_kernels), args.repeat)
            assert outc == outp, f"{label}: backends disagree"
            line += f"   cython {tc * 1000:8.1f} ms   speedup {tp / tc:6.1f}x"
        else:
            line += "   (compiled kernels not built)"
        print(line)


if __name__ == "__main__":
    main()
