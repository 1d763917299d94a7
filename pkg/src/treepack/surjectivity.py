"""Exact and estimated surjectivity thresholds.

A set ``E`` misses distance ``t`` exactly when it is independent in the
distance-``t`` graph ``G_t``, so the smallest ``K`` for which every
``K``-set realises every distance is ``1 + max_t alpha(G_t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .space import DistanceSpace, SpaceError, make_finite_field_space

DEFAULT_EXACT_CAP = 64
DISTINCT = "distinct"
DIAGONAL = "diagonal"


class CapExceeded(SpaceError):
    pass


@dataclass
class SurjectivityReport:
    method: str
    convention: str
    per_distance: dict[int, tuple[int, list[int]]] = field(default_factory=dict)
    exact_k: int | None = None
    lower_bound_k: int | None = None

    @property
    def k(self) -> int:
        return self.exact_k if self.exact_k is not None else self.lower_bound_k

    @property
    def advisory(self) -> bool:
        return self.method != "exact"

    def witness(self) -> tuple[int | None, list[int]]:
        """Distance missed by the largest avoiding set, and that set."""
        if not self.per_distance:
            return None, []
        t = max(self.per_distance, key=lambda t: (self.per_distance[t][0], -t))
        return t, self.per_distance[t][1]

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "convention": self.convention,
            "exact_k": self.exact_k,
            "lower_bound_k": self.lower_bound_k,
            "per_distance": {
                str(t): {"alpha": a, "witness": list(w)} for t, (a, w) in sorted(self.per_distance.items())
            },
        }


def _check_convention(convention: str) -> None:
    if convention not in (DISTINCT, DIAGONAL):
        raise ValueError(f"unknown convention {convention!r}")


def distance_graph(space: DistanceSpace, t: int) -> list[int]:
    """Neighbour bitmasks of ``G_t`` over all points of ``space``."""
    n = space.size
    if space._dense is not None:
        hit = space.distance_matrix() == t
        np.fill_diagonal(hit, False)
        adj = []
        for row in hit:
            mask = 0
            for j in np.flatnonzero(row).tolist():
                mask |= 1 << j
            adj.append(mask)
        return adj
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if space.d(i, j) == t:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _self_hits(space: DistanceSpace, t: int, convention: str) -> int:
    """Points that realise ``t`` on their own under the diagonal reading."""
    if convention != DIAGONAL:
        return 0
    mask = 0
    for i in range(space.size):
        if space.d(i, i) == t:
            mask |= 1 << i
    return mask


def _alphabet(space: DistanceSpace, alphabet: Iterable[int] | None) -> list[int]:
    if alphabet is None:
        return list(space.alphabet)
    return sorted(set(alphabet))


def max_distance_avoiding_set(
    space: DistanceSpace, t: int, cap: int = DEFAULT_EXACT_CAP, convention: str = DISTINCT
) -> list[int]:
    """A largest point set with no distinct pair at distance ``t``."""
    _check_convention(convention)
    if space.size > cap:
        raise CapExceeded(f"space has {space.size} points, above the exact cap {cap}; use estimate_k")
    return _kernels.max_independent_set(distance_graph(space, t), space.size, _self_hits(space, t, convention))


def exact_k(
    space: DistanceSpace,
    cap: int = DEFAULT_EXACT_CAP,
    convention: str = DISTINCT,
    alphabet: Iterable[int] | None = None,
) -> SurjectivityReport:
    """Smallest ``K`` such that every ``K``-subset realises every distance.

    ``alphabet`` restricts the distances that must be realised; the result
    is then the threshold relative to that sub-alphabet.
    """
    _check_convention(convention)
    if space.size > cap:
        raise CapExceeded(f"space has {space.size} points, above the exact cap {cap}; use estimate_k")
    rep = SurjectivityReport("exact", convention)
    for t in _alphabet(space, alphabet):
        w = max_distance_avoiding_set(space, t, cap, convention)
        rep.per_distance[t] = (len(w), w)
    rep.exact_k = 1 + max((a for a, _ in rep.per_distance.values()), default=0)
    return rep


def estimate_k(
    space: DistanceSpace,
    trials: int,
    seed: int = 0,
    convention: str = DISTINCT,
    alphabet: Iterable[int] | None = None,
) -> SurjectivityReport:
    """Randomized lower bound on the threshold (advisory only).

    Each trial builds a maximal avoiding set by min-degree greedy selection
    with random tie-breaking; ``trials`` restarts are run per distance.
    """
    _check_convention(convention)
    rep = SurjectivityReport("randomized", convention)
    if trials <= 0:
        rep.lower_bound_k = 1
        return rep
    rng = np.random.default_rng(seed)
    n = space.size
    for t in _alphabet(space, alphabet):
        orders = rng.random((trials, n)).argsort(axis=1, kind="stable")
        w = _kernels.greedy_independent_sets(distance_graph(space, t), n, _self_hits(space, t, convention), orders)
        rep.per_distance[t] = (len(w), w)
    rep.lower_bound_k = 1 + max((a for a, _ in rep.per_distance.values()), default=0)
    return rep


@dataclass(frozen=True)
class ThresholdRow:
    q: int
    dim: int
    k: int
    method: str

    @property
    def q_pow(self) -> float:
        return self.q ** ((self.dim + 1) / 2)

    @property
    def ratio(self) -> float:
        return self.k / self.q_pow

    def csv(self) -> str:
        return f"{self.q},{self.dim},{self.k},{self.q_pow:.6f},{self.ratio:.6f}"


def threshold_rows(
    pairs: Iterable[tuple[int, int]],
    cap: int = DEFAULT_EXACT_CAP,
    trials: int = 1000,
    seed: int = 0,
    point_cap: int = 4096,
    convention: str = DISTINCT,
) -> list[ThresholdRow]:
    """``K`` for each ``F_q^dim`` in ``pairs``.

    Exact when ``q^dim <= cap``, estimated up to ``point_cap``, skipped above.
    """
    rows = []
    for q, dim in pairs:
        size = q**dim
        if size > point_cap:
            continue
        space = make_finite_field_space(q, dim)
        if size <= cap:
            rows.append(ThresholdRow(q, dim, exact_k(space, cap, convention).exact_k, "exact"))
        else:
            rep = estimate_k(space, trials, seed, convention)
            rows.append(ThresholdRow(q, dim, rep.lower_bound_k, "estimated"))
    return rows


def ir_threshold_table(q_list: Sequence[int], dim_list: Sequence[int], **kwargs) -> list[ThresholdRow]:
    """Rows for every ``(q, dim)`` in ``q_list x dim_list``; see :func:`threshold_rows`."""
    return threshold_rows([(q, d) for q in q_list for d in dim_list], **kwargs)


CSV_HEADER = "q,dim,K,q_pow,ratio"


def threshold_csv(rows: Iterable[ThresholdRow]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv() for r in rows]) + "\n"

