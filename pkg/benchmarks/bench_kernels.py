"""Compare the compiled and pure-Python independence kernels.

Run with ``python benchmarks/bench_kernels.py``.  Results go to stdout as a
small table; both backends must return sets of the same size.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from treepack import _pykernels
from treepack.space import make_finite_field_space
from treepack.surjectivity import distance_graph

try:
    from treepack import _ckernels
except ImportError:
    _ckernels = None


def random_graph(rng: np.random.Generator, n: int, p: float) -> list[int]:
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def cases(seed: int):
    for q, dim in ((3, 2), (5, 2), (7, 2), (3, 3)):
        space = make_finite_field_space(q, dim)
        for t in space.alphabet:
            yield f"F_{q}^{dim} t={t}", distance_graph(space, t), space.size
    rng = np.random.default_rng(seed)
    for p in (0.1, 0.3, 0.5):
        yield f"G(64,{p})", random_graph(rng, 64, p), 64


def best_of(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation` first")

    print(f"{'graph':<16}{'alpha':>6}{'cython ms':>12}{'python ms':>12}{'speedup':>9}")
    for name, adj, n in cases(args.seed):
        a = _ckernels.max_independent_set(adj, n, 0)
        b = _pykernels.max_independent_set(adj, n, 0)
        assert len(a) == len(b), name
        tc = best_of(lambda: _ckernels.max_independent_set(adj, n, 0), args.repeat)
        tp = best_of(lambda: _pykernels.max_independent_set(adj, n, 0), args.repeat)
        print(f"{name:<16}{len(a):>6}{tc * 1e3:>12.3f}{tp * 1e3:>12.3f}{tp / tc:>8.1f}x")

    space = make_finite_field_space(7, 2)
    adj = distance_graph(space, 1)
    n = space.size
    orders = np.random.default_rng(args.seed).random((args.trials, n)).argsort(axis=1, kind="stable")
    assert _ckernels.greedy_independent_sets(adj, n, 0, orders) == _pykernels.greedy_independent_sets(
        adj, n, 0, orders
    )
    tc = best_of(lambda: _ckernels.greedy_independent_sets(adj, n, 0, orders), args.repeat)
    tp = best_of(lambda: _pykernels.greedy_independent_sets(adj, n, 0, orders), args.repeat)
    print(f"\ngreedy estimate, F_7^2 t=1, {args.trials} orders: "
          f"cython {tc * 1e3:.2f} ms, python {tp * 1e3:.2f} ms, {tp / tc:.1f}x")


if __name__ == "__main__":
    main()
