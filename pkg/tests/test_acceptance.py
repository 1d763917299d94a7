"""Acceptance criteria, one PASS/FAIL line per test, repeated in the pytest summary."""

import io
import math
import random
import time
from fractions import Fraction

import numpy as np

from treepack import (
    EDGE_PEEL,
    STAR_PEEL,
    OracleBudget,
    embed_tree,
    enumerate_embeddings,
    enumerate_trees,
    exact_k,
    filter_rich_points,
    leaf_peel,
    make_finite_field_space,
    make_table_space,
    make_tree,
    max_disjoint_packing,
    pack_pairs,
    pack_stars,
    stringiness,
    tree_stringiness,
    verify_embedding,
)
from treepack.audit import random_star, random_subset, random_tree
from treepack.cli import main
from treepack.surjectivity import threshold_csv, threshold_rows
from treepack.tree import PeelStep, StarIndicator

from helpers import PETERSEN_EDGES, random_table, realised


def _path(n):
    return make_tree(n + 1, [(i, i + 1, 0) for i in range(n)])


def _star(n):
    return make_tree(n + 1, [(0, i + 1, 0) for i in range(n)])


def _disjoint_valid(space, tree, res):
    images = [e.image for e in res.embeddings]
    ok = all(verify_embedding(space, tree, e) for e in res.embeddings)
    return ok and sum(map(len, images)) == len(frozenset().union(*images) if images else ())


class Ks:
    """Whole-alphabet and per-weight exact thresholds of a space."""

    def __init__(self, space):
        self.space = space
        self.full = exact_k(space).exact_k
        self._memo = {}

    def weights(self, ws):
        key = frozenset(ws)
        if key not in self._memo:
            self._memo[key] = exact_k(self.space, alphabet=key).exact_k
        return self._memo[key]

    def both(self, ws):
        return sorted({self.full, self.weights(ws)})


SPACES = {"F_3^2": make_finite_field_space(3, 2), "F_5^2": make_finite_field_space(5, 2)}


# ---------------------------------------------------------------- 1


def test_criterion_1_stringiness_exact(criterion):
    start = time.perf_counter()
    bad = []
    if stringiness(10, PETERSEN_EDGES) != 78732:
        bad.append("petersen")
    for n in range(2, 10):
        if tree_stringiness(_star(n)) != n + 1:
            bad.append(f"star {n}")
        if tree_stringiness(_path(n)) != 3 * 2 ** (n - 2):
            bad.append(f"path {n}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    criterion(1, ok, f"Petersen=78732, stars n+1, paths 3*2^(n-2) for n=2..9; {elapsed:.3f}s; failures={bad}")
    assert ok


# ---------------------------------------------------------------- 2


def test_criterion_2_stringiness_bounds_exhaustive(criterion):
    start = time.perf_counter()
    violations, total = [], 0
    for n in range(1, 10):
        trees = enumerate_trees(n)
        sig = [tree_stringiness(t) for t in trees]
        total += len(trees)
        violations += [(n, s) for s in sig if not n + 1 <= s <= 2**n]
        if min(sig) != n + 1 or tree_stringiness(_star(n)) != n + 1:
            violations.append((n, "star does not attain n+1"))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 60
    criterion(2, ok, f"{total} tree classes, n=1..9, n+1 <= sigma <= 2^n; {elapsed:.2f}s; violations={violations}")
    assert ok


# ---------------------------------------------------------------- 3


def test_criterion_3_peel_factorization(criterion):
    checked, violations = 0, []
    for n in range(1, 10):
        for t in enumerate_trees(n):
            step = leaf_peel(t)
            if t.is_star():
                if not isinstance(step, StarIndicator):
                    violations.append(t)
                continue
            checked += 1
            deg = t.degrees()
            w = step.w
            conds = (
                isinstance(step, PeelStep)
                and deg[w] >= 2
                and sum(1 for v, _ in t.adjacency()[w] if deg[v] != 1) == 1
                and any(deg[v] >= deg[w] for v in range(t.vertex_count) if v != w)
                and step.y == deg[w] - 1
                and tree_stringiness(t) == (step.y + 1) * tree_stringiness(step.remainder)
            )
            if not conds:
                violations.append(t)
    ok = not violations
    criterion(3, ok, f"{checked} non-star trees with <= 9 edges; violations={len(violations)}")
    assert ok


# ---------------------------------------------------------------- 4


def test_criterion_4_exact_k_soundness(criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    violations, spaces = [], 0
    while spaces < 60:
        n = int(rng.integers(2, 13))
        s = random_table(rng, n, int(rng.integers(1, 5)))
        spaces += 1
        K = exact_k(s).exact_k
        need = set(s.alphabet)
        every_k_ok, some_k1_misses = True, False
        for mask in range(1 << n):
            size = bin(mask).count("1")
            if size not in (K, K - 1):
                continue
            pts = [i for i in range(n) if mask >> i & 1]
            full = need <= realised(s.matrix, pts)
            if size == K and not full:
                every_k_ok = False
            if size == K - 1 and not full:
                some_k1_misses = True
        if not (every_k_ok and some_k1_misses):
            violations.append((n, K))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 120
    criterion(4, ok, f"{spaces} random table spaces (<= 12 points) vs all subsets; {elapsed:.2f}s; violations={violations}")
    assert ok


# ---------------------------------------------------------------- 5


def test_criterion_5_pair_star_poor_bounds(criterion):
    start = time.perf_counter()
    rng = random.Random(55)
    violations, instances, binding = [], 0, 0
    for name, s in SPACES.items():
        ks = Ks(s)
        alphabet = list(s.alphabet)
        for _ in range(1000):
            instances += 1
            E = random_subset(rng, range(len(s)))
            t = rng.choice(alphabet)
            sz = rng.randint(1, 4)
            star = random_star(rng, alphabet, 3)
            pairs = pack_pairs(s, E, t).count
            _, poor = filter_rich_points(s, E, t, sz)
            stars = pack_stars(s, E, star).count
            n = star.total_leaves
            for K in ks.both({t}):
                r = Fraction(len(E), K)
                g = (r - 1) / 2 * K
                binding += g > 0
                if pairs < g:
                    violations.append((name, "pairs", E, t, K))
                if len(poor) > sz * K:
                    violations.append((name, "poor", E, t, sz, K))
            for K in ks.both({w for w, _ in star.weight_multiset}):
                g = (Fraction(len(E), K) - n) / (n + 1) * K
                binding += g > 0
                if stars < g:
                    violations.append((name, "stars", E, star, K))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 300
    criterion(
        5,
        ok,
        f"{instances} (E,t,s,star) instances on F_3^2/F_5^2 with exact K "
        f"(whole alphabet and per weight), {binding} positive bounds; {elapsed:.1f}s; violations={len(violations)}",
    )
    assert ok, violations[:5]


# ---------------------------------------------------------------- 6


def test_criterion_6_tree_strategy_bounds(criterion):
    start = time.perf_counter()
    rng = random.Random(66)
    violations, trees, binding, existence = [], 0, 0, 0
    for name, s in SPACES.items():
        ks = Ks(s)
        alphabet = list(s.alphabet)
        for _ in range(500):
            trees += 1
            tree = random_tree(rng, rng.randint(1, 4), alphabet)
            E = random_subset(rng, range(len(s)))
            sigma, n = tree_stringiness(tree), tree.edge_count
            got = {}
            for strategy in (STAR_PEEL, EDGE_PEEL):
                res = embed_tree(s, E, tree, strategy)
                if not _disjoint_valid(s, tree, res):
                    violations.append((name, strategy, "invalid", tree))
                got[strategy] = res.count
            for K in ks.both(tree.weights()):
                r = Fraction(len(E), K)
                for strategy, g in ((STAR_PEEL, (r / sigma - 1) * K), (EDGE_PEEL, ((r + 1) / 2**n - 1) * K)):
                    if g > 0:
                        binding += 1
                        if got[strategy] < math.ceil(g):
                            violations.append((name, strategy, E, tree, K))
                if len(E) >= 2 * sigma * K:
                    existence += 1
                    if got[STAR_PEEL] < 1:
                        violations.append((name, "existence", E, tree, K))
    elapsed = time.perf_counter() - start
    ok = not violations
    criterion(
        6,
        ok,
        f"{trees} random weighted trees (<= 4 edges) on F_3^2/F_5^2, {binding} positive guarantees, "
        f"{existence} existence cases; {elapsed:.1f}s; violations={len(violations)}",
    )
    assert ok, violations[:5]


# ---------------------------------------------------------------- 7


def _induced(space, E):
    m = space.distance_matrix()
    return make_table_space([[int(m[a, b]) for b in E] for a in E])


def test_criterion_7_oracle_agreement(criterion):
    start = time.perf_counter()
    rng = random.Random(77)
    budget = OracleBudget()
    nprng = np.random.default_rng(7)
    pool = [make_finite_field_space(3, 2), make_finite_field_space(5, 2)] + [
        random_table(nprng, 12, 3) for _ in range(4)
    ]
    ks = {id(s): Ks(s) for s in pool}
    violations, instances, floor_checks = [], 0, 0
    while instances < 240:
        s = rng.choice(pool)
        E = sorted(rng.sample(range(len(s)), rng.randint(1, min(budget.max_points, len(s)))))
        tree = random_tree(rng, rng.randint(0, budget.max_tree_edges), list(s.alphabet))
        instances += 1
        oracle = {e.assignment for e in enumerate_embeddings(s, E, tree, budget)}
        best, witness = max_disjoint_packing(s, E, tree, budget)
        sub = _induced(s, E)
        sub_k = exact_k(sub, alphabet=tree.weights()).exact_k if tree.weights() else 1
        Ks_here = set(ks[id(s)].both(tree.weights())) | {sub_k}
        for strategy in (STAR_PEEL, EDGE_PEEL):
            res = embed_tree(s, E, tree, strategy)
            if any(e.assignment not in oracle for e in res.embeddings):
                violations.append(("membership", strategy, E, tree))
            if res.count > best:
                violations.append(("greedy > oracle", strategy, E, tree))
            for K in Ks_here:
                g = guarantee_value(K, len(E), tree, strategy)
                if g > 0:
                    floor_checks += 1
                    if best < math.ceil(g) or res.count < math.ceil(g):
                        violations.append(("floor", strategy, E, tree, K))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 600
    criterion(
        7,
        ok,
        f"{instances} oracle instances (<= 12 points, <= 4 edges), {floor_checks} positive-guarantee floors "
        f"(K of X and of the induced subspace E); {elapsed:.1f}s; violations={len(violations)}",
    )
    assert ok, violations[:5]


def guarantee_value(K, e_size, tree, strategy):
    r = Fraction(e_size, K)
    if strategy == STAR_PEEL:
        return (r / tree_stringiness(tree) - 1) * K
    return ((r + 1) / 2**tree.edge_count - 1) * K


# ---------------------------------------------------------------- 8


def test_criterion_8_threshold_table(criterion):
    pairs = [(3, 2), (5, 2), (7, 2), (3, 3)]
    a = threshold_csv(threshold_rows(pairs))
    b = threshold_csv(threshold_rows(pairs))
    rows = a.strip().splitlines()[1:]
    ok = a == b and len(rows) == 4 and all(r.method == "exact" for r in threshold_rows(pairs))
    criterion(8, ok, "exact K for F_3^2, F_5^2, F_7^2, F_3^3, byte-identical reruns: " + " | ".join(rows))
    assert ok


# ---------------------------------------------------------------- 9

F52 = '{"kind":"field","q":5,"dim":2}'
TREE = '{"vertices":5,"edges":[[0,1,1],[1,2,2],[1,3,1],[3,4,4]]}'
SMALL = "[0,1,2,3,5,6,7,8,10,11,12,13]"
COMMANDS = [
    ["stringiness", "--graph", TREE],
    ["peel", "--tree", TREE],
    ["pack-pairs", "--space", F52, "--t", "1"],
    ["pack-stars", "--space", F52, "--star", "[[1,2],[4,1]]"],
    ["embed", "--space", F52, "--tree", TREE, "--exact-k"],
    ["embed", "--space", F52, "--tree", TREE, "--strategy", "edge_peel", "--format", "dot"],
    ["exact-k", "--space", F52],
    ["estimate-k", "--space", F52, "--trials", "500", "--seed", "9"],
    ["ir-table", "--pairs", "3x2,5x2,7x2,3x3"],
    ["oracle", "--space", F52, "--tree", TREE, "--subset", SMALL],
    ["verify-bounds", "--space", '{"kind":"field","q":3,"dim":2}', "--instances", "100", "--seed", "5"],
    ["enumerate-trees", "--edges", "6"],
]


def _run(argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_criterion_9_cli_determinism(criterion):
    diffs, codes = [], []
    for argv in COMMANDS:
        first, second = _run(argv), _run(argv)
        codes.append(first[0])
        if first != second:
            diffs.append(argv[0])
    ok = not diffs and all(c == 0 for c in codes)
    criterion(9, ok, f"{len(COMMANDS)} CLI invocations run twice, byte-identical; differing={diffs}; exit codes={codes}")
    assert ok
