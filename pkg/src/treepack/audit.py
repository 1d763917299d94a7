"""Randomized audit of the packing guarantees against an exact threshold."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .engine import (
    EDGE_PEEL,
    STAR_PEEL,
    embed_tree,
    filter_rich_points,
    guarantee,
    pack_pairs,
    pack_stars,
    pair_guarantee,
    poor_limit,
    star_guarantee,
    verify_embedding,
)
from .space import DistanceSpace
from .surjectivity import DEFAULT_EXACT_CAP, DISTINCT, exact_k
from .tree import StarSpec, WeightedTree, make_tree, tree_from_prufer, tree_stringiness


def random_tree(rng: random.Random, edge_count: int, alphabet: Sequence[int]) -> WeightedTree:
    """Uniform labelled tree (random Prüfer code) with random weights."""
    weights = [rng.choice(alphabet) for _ in range(edge_count)]
    if edge_count == 0:
        return make_tree(1, [])
    if edge_count == 1:
        return make_tree(2, [(0, 1, weights[0])])
    seq = [rng.randrange(edge_count + 1) for _ in range(edge_count - 1)]
    return tree_from_prufer(seq, weights)


def random_star(rng: random.Random, alphabet: Sequence[int], max_leaves: int) -> StarSpec:
    n = rng.randint(1, max_leaves)
    return StarSpec.from_weights(rng.choice(alphabet) for _ in range(n))


def random_subset(rng: random.Random, pool: Sequence[int]) -> list[int]:
    size = rng.randint(1, len(pool))
    return sorted(rng.sample(list(pool), size))


@dataclass
class AuditReport:
    instances: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    binding: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    def record(self, name: str, count, bound, ok: bool, detail: dict) -> None:
        self.checks[name] = self.checks.get(name, 0) + 1
        if bound > 0:
            self.binding[name] = self.binding.get(name, 0) + 1
        if not ok:
            self.violations.append({"check": name, "count": str(count), "bound": str(bound), **detail})

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "instances": self.instances,
            "checks": dict(sorted(self.checks.items())),
            "binding": dict(sorted(self.binding.items())),
            "violations": self.violations,
        }


class KCache:
    """Exact thresholds per required sub-alphabet (``None`` = whole alphabet)."""

    def __init__(self, space: DistanceSpace, cap: int = DEFAULT_EXACT_CAP, convention: str = DISTINCT):
        self.space, self.cap, self.convention = space, cap, convention
        self._memo: dict = {}

    def __call__(self, weights=None) -> int:
        key = None if weights is None else frozenset(weights)
        if key not in self._memo:
            self._memo[key] = exact_k(self.space, self.cap, self.convention, alphabet=key).exact_k
        return self._memo[key]


def audit_bounds(
    space: DistanceSpace,
    instances: int,
    seed: int = 0,
    max_edges: int = 3,
    pool: Sequence[int] | None = None,
    k: int | None = None,
    weight_k: bool = False,
    max_star_leaves: int = 3,
    cap: int = DEFAULT_EXACT_CAP,
) -> AuditReport:
    """Check every guarantee on random instances.

    ``k`` fixes the threshold; otherwise it is computed exactly, over the
    whole alphabet or, with ``weight_k``, over the distances each instance
    actually uses.
    """
    rng = random.Random(seed)
    pool = list(range(space.size)) if pool is None else sorted(pool)
    alphabet = list(space.alphabet)
    kc = KCache(space, cap)
    rep = AuditReport()

    def k_for(weights) -> int:
        if k is not None:
            return k
        return kc(weights if weight_k else None)

    for i in range(instances):
        rep.instances += 1
        E = random_subset(rng, pool)
        t = rng.choice(alphabet)
        s = rng.randint(1, 3)
        star = random_star(rng, alphabet, max_star_leaves)
        tree = random_tree(rng, rng.randint(1, max_edges), alphabet)
        base = {"instance": i, "E": E}

        kt = k_for({t})
        res = pack_pairs(space, E, t)
        g = pair_guarantee(kt, len(E))
        rep.record("pairs", res.count, g, res.count >= g, {**base, "t": t, "K": kt})

        _, poor = filter_rich_points(space, E, t, s)
        lim = poor_limit(kt, s)
        rep.record("poor", len(poor), lim, len(poor) <= lim, {**base, "t": t, "s": s, "K": kt})

        ks = k_for({w for w, _ in star.weight_multiset})
        res = pack_stars(space, E, star)
        g = star_guarantee(ks, len(E), star.total_leaves)
        rep.record("stars", res.count, g, res.count >= g, {**base, "star": star.to_json(), "K": ks})

        kt = k_for(tree.weights())
        for strategy, name in ((STAR_PEEL, "star_peel"), (EDGE_PEEL, "edge_peel")):
            res = embed_tree(space, E, tree, strategy)
            valid = all(verify_embedding(space, tree, e) for e in res.embeddings)
            images = [e.image for e in res.embeddings]
            disjoint = sum(map(len, images)) == len(frozenset().union(*images)) if images else True
            g = guarantee(kt, len(E), tree, strategy)
            ok = valid and disjoint and res.count >= max(0, math.ceil(g))
            rep.record(name, res.count, g, ok, {**base, "tree": tree.to_json(), "K": kt})
            if strategy == STAR_PEEL and len(E) >= 2 * tree_stringiness(tree) * kt:
                rep.record("existence", res.count, 1, res.count >= 1, {**base, "tree": tree.to_json(), "K": kt})
    return rep
