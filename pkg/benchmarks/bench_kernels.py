"""Compare the pure-Python and compiled kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import random
import time

from subsq.core import LatinSquare, Partition
from subsq.kernels import backends
from subsq.oracle import block_prefill

SEARCH_CASES = [(3, 2, 1, 1, 1), (2, 2, 2, 1, 1), (3, 3, 2, 2, 1), (4, 3, 2, 2, 2), (3, 3, 3, 2, 2)]


def _regular_graph(n: int, d: int, seed: int) -> list[list[int]]:
    # union of d disjoint permutation matchings from a shuffled cyclic square
    rng = random.Random(seed)
    grid = LatinSquare.cyclic(n).grid
    rows, cols = list(range(n)), list(range(n))
    rng.shuffle(rows)
    rng.shuffle(cols)
    return [sorted(cols[c] for c in range(n) if grid[rows[r]][c] <= d) for r in range(n)]


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = backends()
    print(f"backends: {', '.join(impls)}")
    print(f"{'workload':<28}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}")

    def row(label, fns):
        times = {name: _time(fn, args.repeat) for name, fn in fns.items()}
        line = f"{label:<28}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in impls)
        if "cython" in times:
            line += f"{times['python'] / times['cython']:>9.1f}x"
        print(line)

    for h in SEARCH_CASES:
        P = Partition(h)
        cells = block_prefill(P)
        nodes = impls["python"].search(P.n, list(cells))[2]
        row(f"search {P} ({nodes} nodes)", {k: (lambda m=m: m.search(P.n, list(cells))) for k, m in impls.items()})

    for n, d in ((64, 8), (64, 32)):
        graphs = [_regular_graph(n, d, s) for s in range(20)]
        row(
            f"matching n={n} d={d} x20",
            {k: (lambda m=m: [m.perfect_matching(n, [list(a) for a in g]) for g in graphs]) for k, m in impls.items()},
        )


if __name__ == "__main__":
    main()
