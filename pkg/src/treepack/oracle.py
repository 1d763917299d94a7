"""Exhaustive ground truth for tiny instances.

Budgets are hard limits: exceeding one raises, it never truncates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .engine import Embedding, _dist, _points, check_weights
from .space import DistanceSpace, Point
from .tree import WeightedTree


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_points: int = 12
    max_tree_edges: int = 4
    node_limit: int = 2_000_000

    def __post_init__(self):
        if min(self.max_points, self.max_tree_edges, self.node_limit) < 1:
            raise ValueError("oracle budget fields must be positive")


def _check(budget: OracleBudget, pts: list[int], tree: WeightedTree) -> None:
    if len(pts) > budget.max_points:
        raise OracleBudgetExceeded(f"{len(pts)} points exceeds oracle budget of {budget.max_points}")
    if tree.edge_count > budget.max_tree_edges:
        raise OracleBudgetExceeded(f"{tree.edge_count} tree edges exceeds oracle budget of {budget.max_tree_edges}")


def _bfs(tree: WeightedTree) -> list[tuple[int, int | None, int | None]]:
    """``(vertex, parent, weight to parent)`` in BFS order from vertex 0."""
    adj = tree.adjacency()
    order = [(0, None, None)]
    seen = {0}
    dq = deque([0])
    while dq:
        x = dq.popleft()
        for y, w in adj[x]:
            if y not in seen:
                seen.add(y)
                order.append((y, x, w))
                dq.append(y)
    return order


def enumerate_embeddings(
    space: DistanceSpace,
    E: Iterable[int | Point] | None,
    tree: WeightedTree,
    budget: OracleBudget = OracleBudget(),
) -> list[Embedding]:
    """Every embedding of ``tree`` into ``E``, in lexicographic order of assignment."""
    pts = _points(space, E)
    _check(budget, pts, tree)
    check_weights(space, tree)
    d = _dist(space)
    order = _bfs(tree)
    assign = [None] * tree.vertex_count
    used: set[int] = set()
    found: list[tuple[int, ...]] = []
    nodes = 0

    def extend(i: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget.node_limit:
            raise OracleBudgetExceeded(f"embedding search exceeded {budget.node_limit} nodes")
        if i == len(order):
            found.append(tuple(assign))
            return
        v, parent, w = order[i]
        for p in pts:
            if p in used or (parent is not None and d(assign[parent], p) != w):
                continue
            assign[v] = p
            used.add(p)
            extend(i + 1)
            used.discard(p)
        assign[v] = None

    extend(0)
    return [Embedding(a) for a in sorted(found)]


def max_disjoint_packing(
    space: DistanceSpace,
    E: Iterable[int | Point] | None,
    tree: WeightedTree,
    budget: OracleBudget = OracleBudget(),
) -> tuple[int, list[Embedding]]:
    """Largest number of embeddings with pairwise disjoint images.

    Search is over images (each represented by its lexicographically first
    embedding), memoised on the set of still-available points.
    """
    pts = _points(space, E)
    embs = enumerate_embeddings(space, pts, tree, budget)
    index = {p: i for i, p in enumerate(pts)}
    rep: dict[int, Embedding] = {}
    for e in embs:
        mask = 0
        for p in e.assignment:
            mask |= 1 << index[p]
        rep.setdefault(mask, e)
    by_low: dict[int, list[int]] = {}
    for mask in sorted(rep, key=lambda m: rep[m]):
        low = (mask & -mask).bit_length() - 1
        by_low.setdefault(low, []).append(mask)
    states = 0

    @lru_cache(maxsize=None)
    def best(avail: int) -> tuple[int, tuple[int, ...]]:
        nonlocal states
        states += 1
        if states > budget.node_limit:
            raise OracleBudgetExceeded(f"packing search exceeded {budget.node_limit} states")
        if not avail:
            return 0, ()
        low = avail & -avail
        i = low.bit_length() - 1
        size, chosen = best(avail & ~low)
        for mask in by_low.get(i, ()):
            if mask & avail == mask:
                s, c = best(avail & ~mask)
                if s + 1 > size:
                    size, chosen = s + 1, (mask,) + c
        return size, chosen

    size, chosen = best((1 << len(pts)) - 1)
    best.cache_clear()
    return size, sorted(rep[m] for m in chosen)
