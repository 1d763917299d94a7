"""Greedy disjoint packings of weighted trees into a distance space.

Every packing here is inclusion-maximal and built by a deterministic scan
in ascending point-id order.  Tree embeddings are assembled inductively:
embed a smaller tree, collect the images of one attachment vertex, pack
stars (or pairs) among those images and graft the peeled leaves on.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .space import DistanceSpace, Point, SpaceError
from .tree import (
    StarSpec,
    TreeError,
    WeightedTree,
    induced_subtree,
    leaf_peel,
    make_tree,
    star_center,
    star_spec_of,
    tree_stringiness,
)

STAR_PEEL = "star_peel"
EDGE_PEEL = "edge_peel"
STRATEGIES = (STAR_PEEL, EDGE_PEEL)


@dataclass(frozen=True, order=True)
class Embedding:
    """Injective map from tree vertices to point ids; ``assignment[v]`` is the image of ``v``."""

    assignment: tuple[int, ...]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.assignment)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def to_json(self) -> dict:
        return {str(v): p for v, p in enumerate(self.assignment)}


@dataclass(frozen=True)
class BoundReport:
    k: int
    r: Fraction
    guarantee: Fraction
    met: bool
    advisory: bool = False

    def to_json(self) -> dict:
        out = {"K": self.k, "r": _frac(self.r), "guarantee": _frac(self.guarantee), "met": self.met}
        if self.advisory:
            out["advisory"] = True
        return out


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class PackingResult:
    embeddings: list[Embedding]
    consumed: list[int]
    residual: list[int]
    bound: BoundReport | None = None

    @property
    def count(self) -> int:
        return len(self.embeddings)

    def to_json(self) -> dict:
        out = {
            "embeddings": [e.to_json() for e in self.embeddings],
            "residual": list(self.residual),
        }
        if self.bound is not None:
            out["bound"] = self.bound.to_json()
        return out


def _result(E: Sequence[int], maps: list[tuple[int, ...]]) -> PackingResult:
    used = set()
    for a in maps:
        used.update(a)
    return PackingResult(
        [Embedding(tuple(a)) for a in maps],
        sorted(used),
        [p for p in E if p not in used],
    )


def _points(space: DistanceSpace, E: Iterable[int | Point] | None) -> list[int]:
    if E is None:
        return list(range(space.size))
    return sorted({space.resolve(p) for p in E})


def _dist(space: DistanceSpace):
    if space._dense is not None:
        rows = space.distance_matrix().tolist()
        return lambda a, b: rows[a][b]
    return space.d


# ---------------------------------------------------------------- stars and pairs


def _greedy_stars(space: DistanceSpace, E: Sequence[int], spec: StarSpec) -> list[tuple[int, list[list[int]]]]:
    """Maximal disjoint star packing: ``(root, leaves per weight class)``.

    Roots are scanned ascending; each weight class takes its lowest-id
    unused points.  A point has a single distance to the root, so the
    classes never compete for a leaf.
    """
    d = _dist(space)
    avail = dict.fromkeys(E)
    out = []
    for root in E:
        if root not in avail:
            continue
        picks = []
        for t, m in spec.weight_multiset:
            got = []
            for p in avail:
                if p != root and d(root, p) == t:
                    got.append(p)
                    if len(got) == m:
                        break
            if len(got) < m:
                break
            picks.append(got)
        else:
            out.append((root, picks))
            del avail[root]
            for got in picks:
                for p in got:
                    del avail[p]
    return out


def star_tree(spec: StarSpec) -> WeightedTree:
    """Star with center 0 and leaves ``1..n`` in weight-class order."""
    edges = []
    leaf = 1
    for t, m in spec.weight_multiset:
        for _ in range(m):
            edges.append((0, leaf, t))
            leaf += 1
    return make_tree(leaf, edges)


def pack_stars(space: DistanceSpace, E: Iterable[int | Point] | None, star: StarSpec) -> PackingResult:
    """Greedy maximal disjoint packing of the star ``star`` inside ``E``.

    Embeddings are maps of :func:`star_tree` ``(star)``.
    """
    pts = _points(space, E)
    maps = []
    for root, picks in _greedy_stars(space, pts, star):
        maps.append((root, *[p for got in picks for p in got]))
    return _result(pts, maps)


def pack_pairs(space: DistanceSpace, E: Iterable[int | Point] | None, t: int) -> PackingResult:
    """Greedy maximal set of disjoint pairs at distance ``t``.

    Each embedding maps the edge ``0 -- 1`` with ``0`` the lower id.
    """
    return pack_stars(space, E, StarSpec(((t, 1),)))


def filter_rich_points(
    space: DistanceSpace, E: Iterable[int | Point] | None, t: int, s: int
) -> tuple[list[int], list[int]]:
    """Split ``E`` into points with at least ``s`` others at distance ``t`` and the rest."""
    if s < 1:
        raise ValueError("s must be a positive integer")
    pts = _points(space, E)
    d = _dist(space)
    rich, poor = [], []
    for e in pts:
        c = 0
        for p in pts:
            if p != e and d(e, p) == t:
                c += 1
                if c >= s:
                    break
        (rich if c >= s else poor).append(e)
    return rich, poor


# ---------------------------------------------------------------- trees


def _slots(leaves: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = defaultdict(list)
    for v, t in sorted(leaves):
        out[t].append(v)
    return out


def _graft(base: dict[int, int], spec: StarSpec, slots: dict[int, list[int]], picks: list[list[int]]) -> None:
    for (t, _), got in zip(spec.weight_multiset, picks):
        for v, p in zip(slots[t], got):
            base[v] = p


def _as_tuple(tree: WeightedTree, a: dict[int, int]) -> tuple[int, ...]:
    return tuple(a[v] for v in range(tree.vertex_count))


def _lift(sub: list[tuple[int, ...]], labels: Sequence[int]) -> list[dict[int, int]]:
    return [{labels[i]: p for i, p in enumerate(a)} for a in sub]


def _star_peel(space: DistanceSpace, E: list[int], tree: WeightedTree) -> list[tuple[int, ...]]:
    if tree.edge_count == 0:
        return [(p,) for p in E]
    c = star_center(tree)
    if c is not None:
        spec = star_spec_of(tree)
        slots = _slots(tree.adjacency()[c])
        out = []
        for root, picks in _greedy_stars(space, E, spec):
            g = {c: root}
            _graft(g, spec, slots, picks)
            out.append(_as_tuple(tree, g))
        return out
    step = leaf_peel(tree)
    lifted = _lift(_star_peel(space, E, step.remainder), step.remainder_labels)
    by_w = {f[step.w]: f for f in lifted}
    spec = StarSpec.from_weights(t for _, t in step.peeled_leaves)
    slots = _slots(step.peeled_leaves)
    out = []
    for root, picks in _greedy_stars(space, sorted(by_w), spec):
        g = dict(by_w[root])
        _graft(g, spec, slots, picks)
        out.append(_as_tuple(tree, g))
    return out


def _edge_peel(space: DistanceSpace, E: list[int], tree: WeightedTree) -> list[tuple[int, ...]]:
    if tree.edge_count == 0:
        return [(p,) for p in E]
    v = tree.leaves()[0]
    (w, t), = tree.adjacency()[v]
    rest, labels = induced_subtree(tree, [v])
    lifted = _lift(_edge_peel(space, E, rest), labels)
    by_w = {f[w]: f for f in lifted}
    out = []
    for root, ((q,),) in _greedy_stars(space, sorted(by_w), StarSpec(((t, 1),))):
        g = dict(by_w[root])
        g[v] = q
        out.append(_as_tuple(tree, g))
    return out


def check_weights(space: DistanceSpace, tree: WeightedTree) -> None:
    bad = sorted(tree.weights() - set(space.alphabet))
    if bad:
        raise TreeError(f"tree edge weights {bad} are not in the space's distance alphabet")


def embed_tree(
    space: DistanceSpace,
    E: Iterable[int | Point] | None,
    tree: WeightedTree,
    strategy: str = STAR_PEEL,
    k: int | None = None,
    advisory: bool = False,
) -> PackingResult:
    """Disjoint embeddings of ``tree`` into ``E`` by inductive peeling.

    ``star_peel`` strips all leaves at one vertex per step and packs stars;
    ``edge_peel`` strips one leaf per step and packs pairs.  When ``k`` is
    given, the result carries the strategy's guaranteed count for it.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    check_weights(space, tree)
    pts = _points(space, E)
    run = _star_peel if strategy == STAR_PEEL else _edge_peel
    res = _result(pts, run(space, pts, tree))
    if k is not None:
        res.bound = bound_report(k, len(pts), res.count, guarantee(k, len(pts), tree, strategy), advisory)
    return res


# ---------------------------------------------------------------- bounds


def _ratio(k: int, e_size: int) -> Fraction:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"K must be a positive integer, got {k!r}")
    return Fraction(e_size, k)


def guarantee(k: int, e_size: int, tree: WeightedTree, strategy: str = STAR_PEEL) -> Fraction:
    """Guaranteed number of disjoint embeddings when ``d`` is ``k``-surjective.

    ``star_peel``: ``(r / stringiness - 1) K``; ``edge_peel``:
    ``((r + 1) / 2^n - 1) K`` with ``r = |E| / K``.  May be negative.
    """
    r = _ratio(k, e_size)
    if strategy == STAR_PEEL:
        return (r / tree_stringiness(tree) - 1) * k
    if strategy == EDGE_PEEL:
        return ((r + 1) / 2**tree.edge_count - 1) * k
    raise ValueError(f"unknown strategy {strategy!r}")


def pair_guarantee(k: int, e_size: int) -> Fraction:
    return (_ratio(k, e_size) - 1) / 2 * k


def star_guarantee(k: int, e_size: int, n: int) -> Fraction:
    return (_ratio(k, e_size) - n) / (n + 1) * k


def poor_limit(k: int, s: int) -> int:
    return s * k


def bound_report(k: int, e_size: int, count: int, g: Fraction, advisory: bool = False) -> BoundReport:
    return BoundReport(k, _ratio(k, e_size), g, count >= max(0, math.ceil(g)), advisory)


# ---------------------------------------------------------------- verification


@dataclass
class Verification:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_embedding(space: DistanceSpace, tree: WeightedTree, embedding: Embedding | Sequence[int]) -> Verification:
    """Check injectivity and every edge distance; never raises."""
    issues = []
    try:
        a = embedding.assignment if isinstance(embedding, Embedding) else tuple(embedding)
        if len(a) != tree.vertex_count:
            return Verification(False, [f"assignment has {len(a)} entries for {tree.vertex_count} vertices"])
        for v, p in enumerate(a):
            try:
                space.resolve(p)
            except SpaceError:
                issues.append(f"vertex {v} maps to {p!r}, not a point of the space")
        if issues:
            return Verification(False, issues)
        seen: dict[int, int] = {}
        for v, p in enumerate(a):
            if p in seen:
                issues.append(f"injectivity: vertices {seen[p]} and {v} both map to point {p}")
            else:
                seen[p] = v
        for u, v, t in tree.edges:
            got = space.d(a[u], a[v])
            if got != t:
                issues.append(f"edge ({u},{v}) has weight {t} but d({a[u]},{a[v]}) = {got}")
    except Exception as exc:  # verification reports, it does not throw
        issues.append(f"malformed embedding: {exc}")
    return Verification(not issues, issues)


def packing_to_dot(space: DistanceSpace, tree: WeightedTree, result: PackingResult) -> str:
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4"]
    lines = ["graph packing {"]
    for i, e in enumerate(result.embeddings):
        color = palette[i % len(palette)]
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="embedding {i}"; color={color};')
        for v, p in enumerate(e.assignment):
            lines.append(f'    p{p} [label="{p} (v{v})", color={color}];')
        for u, v, t in tree.edges:
            lines.append(f'    p{e[u]} -- p{e[v]} [label="{t}", color={color}];')
        lines.append("  }")
    for p in result.residual:
        lines.append(f'  p{p} [label="{p}", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
