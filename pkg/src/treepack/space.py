"""Finite point sets with a symmetric distance function.

Two kinds of space are supported: the Euclidean-style quadratic distance on
``F_q^dim`` for prime ``q``, and arbitrary spaces backed by a symmetric
integer matrix.  Points are addressed by integer id everywhere downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

DEFAULT_POINT_CAP = 10**6
# spaces up to this size keep a dense distance matrix
_DENSE_LIMIT = 4096


class SpaceError(ValueError):
    """Raised for invalid space construction or foreign points."""


class Point(NamedTuple):
    id: int
    coords: tuple[int, ...] | None = None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, eq=False)
class DistanceSpace:
    """An immutable finite space ``(X, D, d)``.

    ``kind`` is ``"field"`` or ``"table"``.  For field spaces ``q`` and
    ``dim`` are set; for table spaces ``matrix`` holds the distance table.
    """

    kind: str
    size: int
    alphabet: tuple[int, ...]
    q: int | None = None
    dim: int | None = None
    matrix: tuple[tuple[int, ...], ...] | None = None
    _dense: np.ndarray | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.size

    @property
    def points(self) -> list[Point]:
        return [self.point(i) for i in range(self.size)]

    def point(self, pid: int) -> Point:
        self._check_id(pid)
        if self.kind == "field":
            return Point(pid, self.coords(pid))
        return Point(pid)

    def coords(self, pid: int) -> tuple[int, ...]:
        if self.kind != "field":
            raise SpaceError("table spaces have no coordinates")
        self._check_id(pid)
        out = []
        for _ in range(self.dim):
            pid, c = divmod(pid, self.q)
            out.append(c)
        return tuple(reversed(out))

    def point_id(self, coords: Sequence[int]) -> int:
        """Id of the point with the given coordinates (field spaces)."""
        if self.kind != "field":
            raise SpaceError("table spaces have no coordinates")
        if len(coords) != self.dim or any(not 0 <= c < self.q for c in coords):
            raise SpaceError(f"coordinates {tuple(coords)} are not a point of F_{self.q}^{self.dim}")
        pid = 0
        for c in coords:
            pid = pid * self.q + c
        return pid

    def _check_id(self, pid: int) -> None:
        if not isinstance(pid, (int, np.integer)) or not 0 <= pid < self.size:
            raise SpaceError(f"point {pid!r} does not belong to this space")

    def resolve(self, p: int | Point) -> int:
        """Normalise a point id or :class:`Point` to a validated id."""
        if isinstance(p, Point):
            self._check_id(p.id)
            if p.coords is not None and (self.kind != "field" or self.coords(p.id) != tuple(p.coords)):
                raise SpaceError(f"point {p!r} does not belong to this space")
            return int(p.id)
        self._check_id(p)
        return int(p)

    def d(self, a: int, b: int) -> int:
        """Unchecked distance lookup by id."""
        if self._dense is not None:
            return int(self._dense[a, b])
        if self.kind == "table":
            return self.matrix[a][b]
        ca, cb = self.coords(a), self.coords(b)
        return sum((x - y) * (x - y) for x, y in zip(ca, cb)) % self.q

    def distance_matrix(self) -> np.ndarray:
        """Dense ``|X| x |X|`` distance matrix (small spaces only)."""
        if self._dense is None:
            raise SpaceError(f"space with {self.size} points is too large for a dense matrix")
        return self._dense

    def to_json(self) -> dict:
        if self.kind == "field":
            return {"kind": "field", "q": self.q, "dim": self.dim}
        return {"kind": "table", "matrix": [list(r) for r in self.matrix]}

    def describe(self) -> str:
        if self.kind == "field":
            return f"F_{self.q}^{self.dim}"
        return f"table space on {self.size} points"


def _field_matrix(q: int, dim: int) -> np.ndarray:
    grid = np.array(list(itertools.product(range(q), repeat=dim)), dtype=np.int64).reshape(-1, dim)
    diff = grid[:, None, :] - grid[None, :, :]
    return (diff * diff).sum(axis=2) % q


def make_finite_field_space(q: int, dim: int, cap: int = DEFAULT_POINT_CAP) -> DistanceSpace:
    """``F_q^dim`` with ``d(x, y) = sum (x_i - y_i)^2 mod q``.

    Points are ordered lexicographically by coordinates, so point id ``i``
    is the base-``q`` expansion of ``i``.
    """
    if not isinstance(q, int) or not is_prime(q):
        raise SpaceError(f"q={q!r} is not prime; only prime fields are supported")
    if not isinstance(dim, int) or dim < 1:
        raise SpaceError(f"dim={dim!r} must be a positive integer")
    size = q**dim
    if size > cap:
        raise SpaceError(f"q^dim = {size} exceeds the point cap {cap}")
    dense = _field_matrix(q, dim) if size <= _DENSE_LIMIT else None
    if dense is not None:
        dense.setflags(write=False)
    return DistanceSpace("field", size, tuple(range(q)), q=q, dim=dim, _dense=dense)


def make_table_space(matrix: Sequence[Sequence[int]]) -> DistanceSpace:
    """Space whose distance function is a symmetric integer matrix."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0:
        raise SpaceError("distance matrix is empty")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise SpaceError(f"distance matrix is not square (row {i} has {len(r)} entries, expected {n})")
        for v in r:
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 0:
                raise SpaceError(f"distance entries must be non-negative integers, got {v!r}")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise SpaceError(
                    f"distance function must be symmetric: d({i},{j})={rows[i][j]} but d({j},{i})={rows[j][i]}"
                )
    alphabet = sorted({int(rows[i][j]) for i in range(n) for j in range(n) if i != j})
    frozen = tuple(tuple(int(v) for v in r) for r in rows)
    dense = np.array(frozen, dtype=np.int64).reshape(n, n) if n <= _DENSE_LIMIT else None
    if dense is not None:
        dense.setflags(write=False)
    return DistanceSpace("table", n, tuple(alphabet), matrix=frozen, _dense=dense)


def space_from_json(obj: dict, cap: int = DEFAULT_POINT_CAP) -> DistanceSpace:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "field":
        return make_finite_field_space(obj.get("q"), obj.get("dim"), cap=cap)
    if kind == "table":
        if "matrix" not in obj:
            raise SpaceError("table space JSON needs a 'matrix' entry")
        return make_table_space(obj["matrix"])
    raise SpaceError(f"unknown space kind {kind!r}; expected 'field' or 'table'")


def distance(space: DistanceSpace, a: int | Point, b: int | Point) -> int:
    return space.d(space.resolve(a), space.resolve(b))


def neighbors_at(
    space: DistanceSpace, candidates: Iterable[int | Point], center: int | Point, t: int
) -> list[int]:
    """Ids in ``candidates`` other than ``center`` at distance ``t``, ascending."""
    c = space.resolve(center)
    ids = sorted({space.resolve(p) for p in candidates})
    if space._dense is not None:
        row = space._dense[c]
        return [p for p in ids if p != c and row[p] == t]
    return [p for p in ids if p != c and space.d(c, p) == t]


def resolve_points(space: DistanceSpace, points: Iterable) -> list[int]:
    """Parse a point-set description (ids or coordinate tuples) into sorted ids."""
    out = set()
    for p in points:
        if isinstance(p, Point):
            out.add(space.resolve(p))
        elif isinstance(p, (list, tuple)):
            out.add(space.point_id([int(c) for c in p]))
        else:
            out.add(space.resolve(p))
    return sorted(out)
