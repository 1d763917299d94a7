"""Edge-weighted trees, stringiness and the leaf-peeling decomposition."""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

DEFAULT_ENUM_CAP = 9


class TreeError(ValueError):
    pass


class CycleError(TreeError):
    pass


class DisconnectedError(TreeError):
    pass


class SelfLoopError(TreeError):
    pass


class DuplicateEdgeError(TreeError):
    pass


@dataclass(frozen=True)
class WeightedTree:
    """A tree on vertices ``0..vertex_count-1`` with integer edge weights."""

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(self.vertex_count)}
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def leaves(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d == 1]

    def weights(self) -> set[int]:
        return {w for _, _, w in self.edges}

    def is_star(self) -> bool:
        return star_center(self) is not None

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


def _check_graph(vertex_count: int, edges: Sequence[tuple[int, int]]) -> None:
    if not isinstance(vertex_count, int) or vertex_count < 1:
        raise TreeError(f"vertex count must be a positive integer, got {vertex_count!r}")
    seen = set()
    for u, v in edges:
        for x in (u, v):
            if not isinstance(x, int) or not 0 <= x < vertex_count:
                raise TreeError(f"edge endpoint {x!r} is not a vertex in 0..{vertex_count - 1}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)


def _components(vertex_count: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = vertex_count
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


def make_tree(vertex_count: int, edges: Iterable[Sequence[int]]) -> WeightedTree:
    """Validate and build a weighted tree.

    Each edge is ``(u, v, weight)``; a missing weight defaults to 0.
    """
    triples = []
    for e in edges:
        if len(e) == 2:
            u, v, w = e[0], e[1], 0
        elif len(e) == 3:
            u, v, w = e
        else:
            raise TreeError(f"edge {e!r} must be (u, v) or (u, v, weight)")
        if isinstance(w, bool) or not isinstance(w, int) or w < 0:
            raise TreeError(f"edge weight {w!r} must be a non-negative integer")
        triples.append((u, v, w))
    _check_graph(vertex_count, [(u, v) for u, v, _ in triples])
    comps = _components(vertex_count, [(u, v) for u, v, _ in triples])
    # a forest has exactly |V| - components edges
    if len(triples) > vertex_count - comps:
        raise CycleError("edges contain a cycle")
    if comps != 1:
        raise DisconnectedError(f"graph has {comps} connected components")
    return WeightedTree(vertex_count, tuple(triples))


def stringiness(vertex_count: int, edges: Iterable[Sequence[int]]) -> int:
    """``(d_1 + 1) * d_2 * ... * d_n`` over the descending degree sequence.

    Accepts any finite connected graph; weights, if present, are ignored.
    """
    pairs = [(e[0], e[1]) for e in edges]
    _check_graph(vertex_count, pairs)
    if _components(vertex_count, pairs) != 1:
        raise DisconnectedError("stringiness is defined for connected graphs only")
    if vertex_count == 1:
        return 1
    deg = [0] * vertex_count
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    deg.sort(reverse=True)
    return (deg[0] + 1) * math.prod(deg[1:])


def tree_stringiness(tree: WeightedTree) -> int:
    return stringiness(tree.vertex_count, tree.edges)


# ---------------------------------------------------------------- stars


@dataclass(frozen=True)
class StarSpec:
    """Edge-weight multiset of a star: ``((t, m), ...)`` sorted by ``t``."""

    weight_multiset: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ts = [t for t, _ in self.weight_multiset]
        if len(set(ts)) != len(ts):
            raise TreeError("star weight classes must be distinct")
        if any(m < 1 for _, m in self.weight_multiset):
            raise TreeError("star weight multiplicities must be positive")

    @property
    def total_leaves(self) -> int:
        return sum(m for _, m in self.weight_multiset)

    @classmethod
    def from_weights(cls, weights: Iterable[int]) -> "StarSpec":
        counts: dict[int, int] = defaultdict(int)
        for w in weights:
            counts[w] += 1
        return cls(tuple(sorted(counts.items())))

    def to_json(self) -> list:
        return [[t, m] for t, m in self.weight_multiset]


def star_center(tree: WeightedTree) -> int | None:
    """Center of a star tree (lowest label for a single edge), else ``None``."""
    if tree.edge_count == 0:
        return None
    deg = tree.degrees()
    hubs = [v for v, d in enumerate(deg) if d == tree.edge_count]
    return hubs[0] if hubs else None


def star_spec_of(tree: WeightedTree) -> StarSpec:
    c = star_center(tree)
    if c is None:
        raise TreeError("tree is not a star")
    return StarSpec.from_weights(w for _, w in tree.adjacency()[c])


# ---------------------------------------------------------------- peeling


@dataclass(frozen=True)
class PeelStep:
    """One leaf-peeling step: ``tree = remainder + leaves hung on w``.

    ``remainder_labels[i]`` is the original label of remainder vertex ``i``.
    """

    w: int
    peeled_leaves: tuple[tuple[int, int], ...]
    remainder: WeightedTree
    remainder_labels: tuple[int, ...]

    @property
    def y(self) -> int:
        return len(self.peeled_leaves)

    def to_json(self) -> dict:
        return {
            "w": self.w,
            "y": self.y,
            "peeled_leaves": [list(p) for p in self.peeled_leaves],
            "remainder": self.remainder.to_json(),
            "remainder_labels": list(self.remainder_labels),
        }


@dataclass(frozen=True)
class StarIndicator:
    """Returned by :func:`leaf_peel` when the tree is already a star."""

    center: int
    spec: StarSpec


def induced_subtree(tree: WeightedTree, drop: Iterable[int]) -> tuple[WeightedTree, tuple[int, ...]]:
    """Delete vertices, relabel the rest in increasing order."""
    drop = set(drop)
    keep = tuple(v for v in range(tree.vertex_count) if v not in drop)
    new = {v: i for i, v in enumerate(keep)}
    edges = [(new[u], new[v], w) for u, v, w in tree.edges if u in new and v in new]
    return make_tree(len(keep), edges), keep


def peel_candidates(tree: WeightedTree) -> list[int]:
    """All vertices meeting the three peeling conditions, ascending."""
    deg = tree.degrees()
    adj = tree.adjacency()
    out = []
    for w in range(tree.vertex_count):
        if deg[w] < 2:
            continue
        if sum(1 for v, _ in adj[w] if deg[v] != 1) != 1:
            continue
        if not any(deg[v] >= deg[w] for v in range(tree.vertex_count) if v != w):
            continue
        out.append(w)
    return out


def leaf_peel(tree: WeightedTree) -> PeelStep | StarIndicator:
    if tree.edge_count == 0:
        raise TreeError("cannot peel an edgeless tree")
    c = star_center(tree)
    if c is not None:
        return StarIndicator(c, star_spec_of(tree))
    cands = peel_candidates(tree)
    # a non-star tree always has a candidate
    assert cands, "no peelable vertex in a non-star tree"
    w = cands[0]
    deg = tree.degrees()
    leaves = tuple((v, wt) for v, wt in tree.adjacency()[w] if deg[v] == 1)
    rem, labels = induced_subtree(tree, [v for v, _ in leaves])
    return PeelStep(w, leaves, rem, labels)


# ---------------------------------------------------------------- canonical forms


def _rooted_code(adj: dict[int, list], root: int, parent: int | None) -> str:
    kids = sorted(_rooted_code(adj, c, root) for c, *_ in adj[root] if c != parent)
    return "(" + "".join(kids) + ")"


def tree_centers(vertex_count: int, adj: dict[int, list]) -> list[int]:
    if vertex_count <= 2:
        return list(range(vertex_count))
    deg = {v: len(adj[v]) for v in adj}
    layer = [v for v in adj if deg[v] <= 1]
    remaining = vertex_count
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u, *_ in adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def canonical_form(tree: WeightedTree) -> str:
    """AHU encoding rooted at the center(s); equal iff isomorphic (unweighted)."""
    adj = tree.adjacency()
    return min(_rooted_code(adj, c, None) for c in tree_centers(tree.vertex_count, adj))


def tree_from_prufer(seq: Sequence[int], weights: Sequence[int] | None = None) -> WeightedTree:
    """Labelled tree on ``len(seq) + 2`` vertices decoded from a Prüfer sequence."""
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [v for v in range(n) if degree[v] == 1]
    edges.append((u, v))
    if weights is None:
        weights = [0] * len(edges)
    return make_tree(n, [(a, b, w) for (a, b), w in zip(edges, weights)])


def _from_code_tree(tree: WeightedTree) -> WeightedTree:
    """Relabel a tree in BFS order from its canonical root, all weights 0."""
    adj = tree.adjacency()
    root = min(tree_centers(tree.vertex_count, adj), key=lambda c: (_rooted_code(adj, c, None), c))
    order, parent = [root], {root: None}
    dq = deque([root])
    while dq:
        x = dq.popleft()
        kids = sorted((c for c, _ in adj[x] if c != parent[x]), key=lambda c: _rooted_code(adj, c, x))
        for c in kids:
            parent[c] = x
            order.append(c)
            dq.append(c)
    lab = {v: i for i, v in enumerate(order)}
    edges = sorted((min(lab[u], lab[v]), max(lab[u], lab[v]), 0) for u, v, _ in tree.edges)
    return make_tree(tree.vertex_count, edges)


def enumerate_trees(edge_count: int, cap: int = DEFAULT_ENUM_CAP) -> list[WeightedTree]:
    """One representative per isomorphism class of trees with ``edge_count`` edges.

    Trees are grown leaf by leaf from the classes one size smaller and
    deduplicated by canonical form.  Representatives are labelled in BFS
    order from their center and carry weight 0 on every edge.
    """
    if not isinstance(edge_count, int) or edge_count < 0:
        raise TreeError(f"edge count must be a non-negative integer, got {edge_count!r}")
    if edge_count > cap:
        raise TreeError(f"edge count {edge_count} exceeds enumeration cap {cap}")
    level = {canonical_form(t): t for t in [make_tree(1, [])]}
    for n in range(1, edge_count + 1):
        nxt: dict[str, WeightedTree] = {}
        for t in level.values():
            for v in range(t.vertex_count):
                grown = make_tree(n + 1, list(t.edges) + [(v, n, 0)])
                key = canonical_form(grown)
                if key not in nxt:
                    nxt[key] = grown
        level = nxt
    return [_from_code_tree(level[k]) for k in sorted(level)]


def enumerate_trees_prufer(edge_count: int) -> list[WeightedTree]:
    """Brute-force variant: decode every Prüfer sequence, keep canonical representatives.

    Cost is ``(n+1)^(n-1)``; intended for small ``n`` as a cross-check.
    """
    if edge_count == 0:
        return [make_tree(1, [])]
    if edge_count == 1:
        return [make_tree(2, [(0, 1, 0)])]
    n = edge_count + 1
    seen: dict[str, WeightedTree] = {}
    for seq in product(range(n), repeat=n - 2):
        t = tree_from_prufer(seq)
        seen.setdefault(canonical_form(t), t)
    return [_from_code_tree(seen[k]) for k in sorted(seen)]


def with_weights(tree: WeightedTree, weights: Sequence[int]) -> WeightedTree:
    if len(weights) != tree.edge_count:
        raise TreeError("one weight per edge required")
    return WeightedTree(tree.vertex_count, tuple((u, v, w) for (u, v, _), w in zip(tree.edges, weights)))


def tree_from_json(obj: dict) -> WeightedTree:
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise TreeError("tree JSON needs 'vertices' and 'edges'")
    return make_tree(obj["vertices"], [tuple(e) for e in obj["edges"]])


def tree_to_dot(tree: WeightedTree, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(tree.vertex_count):
        lines.append(f"  {v};")
    for u, v, w in tree.edges:
        lines.append(f'  {u} -- {v} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
