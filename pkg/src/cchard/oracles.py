"""Slow, obviously-correct reference computations used to check the solvers.

None of these share code with the search routines: they enumerate subsets
and protocol splits directly over the original matrix indices.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .graphs import Graph
from .matrix import CommMatrix


def brute_vertex_cover(g: Graph) -> int:
    for k in range(g.n + 1):
        for c in itertools.combinations(g.vertices, k):
            cs = set(c)
            if all(i in cs or j in cs for i, j in g.edges):
                return k
    raise AssertionError("unreachable")


def _is_one_rectangle(m: CommMatrix, block: frozenset) -> bool:
    rows = {r for r, _ in block}
    cols = {c for _, c in block}
    return len(block) == len(rows) * len(cols) and all(m[r, c] for r, c in block)


def brute_chi1(m: CommMatrix) -> int:
    """Minimum over all set partitions of the 1-cells into 1-rectangles.

    The block holding the first remaining cell is any subset of the remaining
    cells that contains it; blocks that are not full rectangles are discarded.
    """
    cells = tuple(m.ones())
    if len(cells) > 14:
        raise ValueError("brute force limited to 14 ones")

    @lru_cache(maxsize=None)
    def best(remaining: frozenset) -> int:
        if not remaining:
            return 0
        first = min(remaining)
        others = sorted(remaining - {first})
        out = len(remaining)
        for k in range(len(others) + 1):
            for extra in itertools.combinations(others, k):
                block = frozenset((first, *extra))
                if _is_one_rectangle(m, block):
                    out = min(out, 1 + best(remaining - block))
        return out

    return best(frozenset(cells))


def _split_pairs(items: tuple):
    """All ordered-irrelevant splits of items into two non-empty parts."""
    first, rest = items[0], items[1:]
    for k in range(len(rest) + 1):
        for sub in itertools.combinations(rest, k):
            a = (first, *sub)
            if len(a) < len(items):
                b = tuple(x for x in items if x not in a)
                yield a, b


def _constant(m: CommMatrix, rows: tuple, cols: tuple) -> bool:
    vals = {m[r, c] for r in rows for c in cols}
    return len(vals) <= 1


def brute_cc(m: CommMatrix) -> int:
    @lru_cache(maxsize=None)
    def cc(rows: tuple, cols: tuple) -> int:
        if _constant(m, rows, cols):
            return 0
        best = len(rows) + len(cols)
        for a, b in _split_pairs(rows):
            best = min(best, 1 + max(cc(a, cols), cc(b, cols)))
        for a, b in _split_pairs(cols):
            best = min(best, 1 + max(cc(rows, a), cc(rows, b)))
        return best

    return cc(tuple(range(m.n_rows)), tuple(range(m.n_cols)))


def brute_leaves(m: CommMatrix) -> int:
    @lru_cache(maxsize=None)
    def leaves(rows: tuple, cols: tuple) -> int:
        if _constant(m, rows, cols):
            return 1
        best = len(rows) * len(cols) + 1
        for a, b in _split_pairs(rows):
            best = min(best, leaves(a, cols) + leaves(b, cols))
        for a, b in _split_pairs(cols):
            best = min(best, leaves(rows, a) + leaves(rows, b))
        return best

    return leaves(tuple(range(m.n_rows)), tuple(range(m.n_cols)))
