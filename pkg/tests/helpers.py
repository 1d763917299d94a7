"""Independent brute-force oracles used by the tests.

Nothing here calls the code under test beyond reading space distances.
"""

from itertools import combinations

import numpy as np

from treepack import make_table_space


def subsets(n):
    for mask in range(1 << n):
        yield [i for i in range(n) if mask >> i & 1]


def realised(m, pts, diagonal=False):
    out = {int(m[a][b]) for a, b in combinations(pts, 2)}
    if diagonal:
        out |= {int(m[a][a]) for a in pts}
    return out


def brute_alpha(m, t, diagonal=False):
    """Largest subset realising no distinct pair at distance t."""
    n = len(m)
    best = 0
    for pts in subsets(n):
        if t not in realised(m, pts, diagonal):
            best = max(best, len(pts))
    return best


def brute_k(m, alphabet, diagonal=False):
    """Smallest K with every K-subset realising every distance in alphabet."""
    n = len(m)
    need = set(alphabet)
    worst = 0
    for pts in subsets(n):
        if not need <= realised(m, pts, diagonal):
            worst = max(worst, len(pts))
    return worst + 1


def brute_max_pairs(m, E, t):
    """Maximum number of disjoint pairs at distance t (exhaustive)."""
    edges = [(a, b) for a, b in combinations(E, 2) if m[a][b] == t]
    best = 0

    def go(i, used, count):
        nonlocal best
        best = max(best, count)
        for j in range(i, len(edges)):
            a, b = edges[j]
            if a not in used and b not in used:
                go(j + 1, used | {a, b}, count + 1)

    go(0, frozenset(), 0)
    return best


def random_table(rng, n, n_dist, diag_zero=True):
    a = rng.integers(0, n_dist, size=(n, n))
    m = np.triu(a, 1)
    m = m + m.T
    if not diag_zero:
        np.fill_diagonal(m, rng.integers(0, n_dist, size=n))
    return make_table_space(m.tolist())


def all_t(n, t=1):
    return make_table_space([[0 if i == j else t for j in range(n)] for i in range(n)])


PETERSEN_EDGES = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)
