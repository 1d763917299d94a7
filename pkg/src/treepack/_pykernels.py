"""Pure-Python kernels.  Graphs are lists of neighbour bitmasks.

The compiled module ``_ckernels`` implements the same functions with the
same tie-breaking; results must be identical.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

BACKEND = "python"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def max_independent_set(adj: Sequence[int], n: int, excluded: int = 0) -> list[int]:
    """Maximum independent set of the graph, avoiding ``excluded`` vertices.

    Branch and bound for a maximum clique of the complement, with greedy
    colouring as the upper bound.
    """
    full = (1 << n) - 1
    cadj = [~adj[v] & full & ~(1 << v) for v in range(n)]
    best = [0, 0]

    def expand(r_mask: int, r_size: int, p: int) -> None:
        order = []
        colors = []
        u = p
        k = 0
        while u:
            k += 1
            q = u
            while q:
                low = q & -q
                v = low.bit_length() - 1
                u &= ~low
                q &= ~low & ~cadj[v]
                order.append(v)
                colors.append(k)
        for i in range(len(order) - 1, -1, -1):
            if r_size + colors[i] <= best[0]:
                return
            v = order[i]
            np_ = p & cadj[v]
            if np_:
                expand(r_mask | (1 << v), r_size + 1, np_)
            elif r_size + 1 > best[0]:
                best[0] = r_size + 1
                best[1] = r_mask | (1 << v)
            p &= ~(1 << v)

    allowed = full & ~excluded
    if allowed:
        expand(0, 0, allowed)
    return _bits(best[1])


def greedy_independent_sets(adj: Sequence[int], n: int, excluded: int, orders: np.ndarray) -> list[int]:
    """Best independent set over randomized min-degree greedy runs.

    Row ``i`` of ``orders`` is a permutation of the vertices for trial
    ``i``; among the candidates of least remaining degree the one appearing
    first in the permutation is taken.
    """
    full = (1 << n) - 1
    allowed = full & ~excluded
    best_size, best_mask = 0, 0
    for row in orders:
        pos = [0] * n
        for i, v in enumerate(row.tolist()):
            pos[v] = i
        cand = allowed
        s_mask, s_size = 0, 0
        while cand:
            pick, pick_key = -1, None
            c = cand
            while c:
                low = c & -c
                v = low.bit_length() - 1
                c ^= low
                key = ((adj[v] & cand).bit_count(), pos[v])
                if pick_key is None or key < pick_key:
                    pick, pick_key = v, key
            s_mask |= 1 << pick
            s_size += 1
            cand &= ~(adj[pick] | (1 << pick))
        if s_size > best_size:
            best_size, best_mask = s_size, s_mask
    return _bits(best_mask)
