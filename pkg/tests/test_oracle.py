import itertools
import random

import pytest

from treepack import (
    EDGE_PEEL,
    STAR_PEEL,
    OracleBudget,
    OracleBudgetExceeded,
    embed_tree,
    enumerate_embeddings,
    make_finite_field_space,
    make_tree,
    max_disjoint_packing,
    verify_embedding,
)
from treepack.audit import random_subset, random_tree

from helpers import all_t, brute_max_pairs


def naive_embeddings(space, E, tree):
    """All injective maps checked edge by edge."""
    out = []
    for combo in itertools.permutations(E, tree.vertex_count):
        if all(space.d(combo[u], combo[v]) == w for u, v, w in tree.edges):
            out.append(combo)
    return sorted(out)


def test_single_edge_all_t():
    s = all_t(3, 1)
    embs = enumerate_embeddings(s, None, make_tree(2, [(0, 1, 1)]))
    assert len(embs) == 6


def test_absent_weight():
    s = make_finite_field_space(3, 2)
    assert enumerate_embeddings(s, None, make_tree(2, [(0, 1, 0)])) == []
    assert max_disjoint_packing(s, None, make_tree(2, [(0, 1, 0)])) == (0, [])


def test_single_vertex():
    s = make_finite_field_space(5, 1)
    assert len(enumerate_embeddings(s, [0, 2, 4], make_tree(1, []))) == 3
    assert max_disjoint_packing(s, [0, 2, 4], make_tree(1, []))[0] == 3


def test_packing_examples():
    assert max_disjoint_packing(all_t(4, 1), None, make_tree(2, [(0, 1, 1)]))[0] == 2
    size, wit = max_disjoint_packing(all_t(3, 1), None, make_tree(3, [(0, 1, 1), (1, 2, 1)]))
    assert size == 1 and len(wit) == 1


@pytest.mark.parametrize("seed", range(25))
def test_enumeration_matches_naive(seed):
    rng = random.Random(seed)
    s = make_finite_field_space(rng.choice([3, 5]), 2)
    E = sorted(rng.sample(range(len(s)), rng.randint(1, 8)))
    tree = random_tree(rng, rng.randint(0, 3), list(s.alphabet))
    got = [e.assignment for e in enumerate_embeddings(s, E, tree)]
    assert got == naive_embeddings(s, E, tree)


@pytest.mark.parametrize("seed", range(20))
def test_pair_packing_matches_matching_brute_force(seed):
    rng = random.Random(seed)
    s = make_finite_field_space(5, 2)
    E = sorted(rng.sample(range(25), rng.randint(2, 12)))
    t = rng.randrange(5)
    size, wit = max_disjoint_packing(s, E, make_tree(2, [(0, 1, t)]))
    assert size == brute_max_pairs(s.distance_matrix().tolist(), E, t)
    imgs = [e.image for e in wit]
    assert len(set().union(*imgs)) == 2 * size if imgs else size == 0


def test_witness_valid():
    s = make_finite_field_space(5, 2)
    tree = make_tree(4, [(0, 1, 1), (1, 2, 2), (1, 3, 4)])
    E = list(range(12))
    size, wit = max_disjoint_packing(s, E, tree)
    assert len(wit) == size
    assert all(verify_embedding(s, tree, e) for e in wit)


def test_reversal_symmetry():
    s = make_finite_field_space(5, 2)
    rng = random.Random(4)
    for _ in range(20):
        E = sorted(rng.sample(range(25), 10))
        t = rng.randrange(5)
        a = max_disjoint_packing(s, E, make_tree(2, [(0, 1, t)]))[0]
        b = max_disjoint_packing(s, E, make_tree(2, [(1, 0, t)]))[0]
        assert a == b


def test_greedy_contained_in_oracle():
    rng = random.Random(8)
    s = make_finite_field_space(5, 2)
    for _ in range(40):
        E = random_subset(rng, range(12))
        tree = random_tree(rng, rng.randint(1, 3), list(range(5)))
        oracle = {e.assignment for e in enumerate_embeddings(s, E, tree)}
        best = max_disjoint_packing(s, E, tree)[0]
        for strategy in (STAR_PEEL, EDGE_PEEL):
            res = embed_tree(s, E, tree, strategy)
            assert all(e.assignment in oracle for e in res.embeddings)
            assert res.count <= best


def test_budget_is_loud():
    s = make_finite_field_space(5, 2)
    tree = make_tree(2, [(0, 1, 1)])
    with pytest.raises(OracleBudgetExceeded, match="points"):
        enumerate_embeddings(s, None, tree)
    with pytest.raises(OracleBudgetExceeded, match="edges"):
        enumerate_embeddings(s, range(5), make_tree(6, [(i, i + 1, 1) for i in range(5)]))
    with pytest.raises(OracleBudgetExceeded, match="nodes"):
        enumerate_embeddings(s, range(12), make_tree(3, [(0, 1, 1), (1, 2, 1)]), OracleBudget(node_limit=5))
    with pytest.raises(ValueError):
        OracleBudget(max_points=0)
