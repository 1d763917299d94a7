"""Kernel selection: compiled extension if importable, else pure Python.

Set ``TREEPACK_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_compiled = None
if not os.environ.get("TREEPACK_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _pykernels.BACKEND


def _use_compiled(n: int) -> bool:
    return _compiled is not None and n <= _compiled.MAX_VERTICES


def max_independent_set(adj: list[int], n: int, excluded: int = 0) -> list[int]:
    if _use_compiled(n):
        return _compiled.max_independent_set(adj, n, excluded)
    return _pykernels.max_independent_set(adj, n, excluded)


def greedy_independent_sets(adj: list[int], n: int, excluded: int, orders: np.ndarray) -> list[int]:
    if _use_compiled(n):
        return _compiled.greedy_independent_sets(adj, n, excluded, orders)
    return _pykernels.greedy_independent_sets(adj, n, excluded, orders)
