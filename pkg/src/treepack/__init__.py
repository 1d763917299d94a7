"""Disjoint embeddings of weighted trees into finite distance spaces."""

from ._kernels import BACKEND
from .engine import (
    EDGE_PEEL,
    STAR_PEEL,
    BoundReport,
    Embedding,
    PackingResult,
    embed_tree,
    filter_rich_points,
    guarantee,
    pack_pairs,
    pack_stars,
    verify_embedding,
)
from .oracle import OracleBudget, OracleBudgetExceeded, enumerate_embeddings, max_disjoint_packing
from .space import (
    DistanceSpace,
    Point,
    SpaceError,
    distance,
    make_finite_field_space,
    make_table_space,
    neighbors_at,
)
from .surjectivity import (
    SurjectivityReport,
    estimate_k,
    exact_k,
    ir_threshold_table,
    max_distance_avoiding_set,
)
from .tree import (
    PeelStep,
    StarIndicator,
    StarSpec,
    TreeError,
    WeightedTree,
    enumerate_trees,
    leaf_peel,
    make_tree,
    star_spec_of,
    stringiness,
    tree_stringiness,
)

__version__ = "0.1.0"
