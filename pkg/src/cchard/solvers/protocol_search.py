"""Exact deterministic communication complexity and minimum leaf count.

Both searches run over submatrices in a reduced form: duplicate rows and
duplicate columns are merged (players can treat identical inputs alike, so
neither depth nor leaf count changes) and rows are sorted. A reduced
submatrix is a tuple of row bitsets plus its width.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from ..matrix import CommMatrix
from .partition import SolverTimeout, _PartitionSearch

Key = tuple[int, tuple[int, ...]]  # (width, sorted distinct rows)


def reduce_rows(rows, width: int) -> Key:
    cols = []
    seen = set()
    for c in range(width):
        v = 0
        for i, r in enumerate(rows):
            if r >> c & 1:
                v |= 1 << i
        if v not in seen:
            seen.add(v)
            cols.append(c)
    new = set()
    for r in rows:
        x = 0
        for k, c in enumerate(cols):
            if r >> c & 1:
                x |= 1 << k
        new.add(x)
    return len(cols), tuple(sorted(new))


def is_monochromatic(key: Key) -> bool:
    w, rows = key
    # after reduction a constant matrix is a single row over a single column
    return len(rows) == 1 and w <= 1


def _fooling(rows, width: int) -> int:
    if not any(rows):
        return 0
    s = _PartitionSearch(len(rows), width, None)
    U = 0
    for i, r in enumerate(rows):
        U |= r << (i * width)
    return s.fooling_bound(s.row_masks(U), U)


def _transpose(rows, width: int) -> tuple[int, ...]:
    return tuple(sum(1 << i for i, r in enumerate(rows) if r >> c & 1) for c in range(width))


def _splits(n: int):
    """Unordered 2-part splits of range(n); the part holding index 0 comes first."""
    rest = n - 1
    for mask in range(1 << rest):
        part = (mask << 1) | 1
        if part != (1 << n) - 1:
            yield part


def _children(key: Key):
    """Reduced children of every Alice split, then every Bob split."""
    w, rows = key
    n = len(rows)
    for part in _splits(n):
        a = [rows[i] for i in range(n) if part >> i & 1]
        b = [rows[i] for i in range(n) if not part >> i & 1]
        yield reduce_rows(a, w), reduce_rows(b, w)
    for part in _splits(w):
        a = [r & part for r in rows]
        b = [r & ~part for r in rows]
        yield _compact(a, part, w), _compact(b, ~part & ((1 << w) - 1), w)


def _compact(rows, colmask: int, w: int) -> Key:
    cols = [c for c in range(w) if colmask >> c & 1]
    out = []
    for r in rows:
        x = 0
        for k, c in enumerate(cols):
            if r >> c & 1:
                x |= 1 << k
        out.append(x)
    return reduce_rows(out, len(cols))


def _bounds(key: Key) -> tuple[int, int]:
    """Fooling-set lower bounds on (chi1, chi0) of a reduced submatrix."""
    w, rows = key
    full = (1 << w) - 1
    return _fooling(rows, w), _fooling([full ^ r for r in rows], w)


def _log2ceil(x: int) -> int:
    return 0 if x <= 1 else (x - 1).bit_length()


@dataclass
class CCResult:
    """Result of an exact CC search.

    status is "exact", "above" (CC > max_depth, certified) or "timeout";
    ``value`` is set only for "exact".
    """

    status: str
    value: int | None
    lower: int
    upper: int
    nodes: int = 0


class _DepthSearch:
    CHECK_EVERY = 512

    def __init__(self, deadline: float | None):
        self.deadline = deadline
        self.lb: dict[Key, int] = {}
        self.ub: dict[Key, int] = {}
        self.nodes = 0

    def depth_lower_bound(self, key: Key) -> int:
        f1, f0 = _bounds(key)
        lemma = max(_log2ceil(f1), _log2ceil(f0)) + 1
        return max(lemma, _log2ceil(f1 + f0))

    def fits(self, key: Key, depth: int) -> bool:
        """Is there a protocol of depth <= ``depth`` for this submatrix?"""
        if is_monochromatic(key):
            return True
        if depth <= 0:
            return False
        if self.ub.get(key, math.inf) <= depth:
            return True
        lb = self.lb.get(key)
        if lb is None:
            lb = self.depth_lower_bound(key)
            self.lb[key] = lb
        if lb > depth:
            return False
        self.nodes += 1
        if self.deadline is not None and self.nodes % self.CHECK_EVERY == 0 \
                and time.monotonic() > self.deadline:
            raise SolverTimeout
        for a, b in _children(key):
            if self.fits(a, depth - 1) and self.fits(b, depth - 1):
                self.ub[key] = depth
                return True
        self.lb[key] = depth + 1
        return False


def matrix_key(m: CommMatrix) -> Key:
    return reduce_rows(list(m.bits), m.n_cols)


def cc_exact(m: CommMatrix, max_depth: int | None = None, budget: float | None = None) -> CCResult:
    """Smallest depth of a binary protocol tree computing m.

    Iterative deepening on the depth. Stops early with status "above" once
    ``max_depth`` is ruled out, or "timeout" after ``budget`` seconds.
    """
    if m.n_rows == 0 or m.n_cols == 0:
        return CCResult("exact", 0, 0, 0)
    key = matrix_key(m)
    w, rows = key
    trivial = min(_log2ceil(len(rows)), _log2ceil(w)) + 1
    if is_monochromatic(key):
        return CCResult("exact", 0, 0, 0)
    s = _DepthSearch(None if budget is None else time.monotonic() + budget)
    depth = s.depth_lower_bound(key)
    cap = trivial if max_depth is None else min(trivial, max_depth)
    try:
        while depth <= cap:
            if s.fits(key, depth):
                return CCResult("exact", depth, depth, depth, s.nodes)
            depth += 1
    except SolverTimeout:
        return CCResult("timeout", None, depth, trivial, s.nodes)
    if depth > trivial:
        raise AssertionError("trivial protocol depth was ruled out")
    return CCResult("above", None, depth, trivial, s.nodes)


class _LeafSearch:
    CHECK_EVERY = 512

    def __init__(self, deadline: float | None):
        self.deadline = deadline
        self.exact: dict[Key, int] = {}
        self.lb: dict[Key, int] = {}
        self.nodes = 0

    def lower(self, key: Key) -> int:
        if key in self.exact:
            return self.exact[key]
        lb = self.lb.get(key)
        if lb is None:
            if is_monochromatic(key):
                lb = 1
            else:
                f1, f0 = _bounds(key)
                lb = max(2, f1 + f0)
            self.lb[key] = lb
        return lb

    def solve(self, key: Key, limit: float) -> float:
        """Exact L if it is at most ``limit``, else a proven lower bound above it."""
        if is_monochromatic(key):
            return 1
        if key in self.exact:
            return self.exact[key]
        lb = self.lower(key)
        if lb > limit:
            return lb
        self.nodes += 1
        if self.deadline is not None and self.nodes % self.CHECK_EVERY == 0 \
                and time.monotonic() > self.deadline:
            raise SolverTimeout
        best = math.inf
        fail = math.inf
        for a, b in _children(key):
            cap = min(limit, best - 1)
            la, lb_ = self.lower(a), self.lower(b)
            if la + lb_ > cap:
                fail = min(fail, la + lb_)
                continue
            va = self.solve(a, cap - lb_)
            if va > cap - lb_:
                fail = min(fail, va + lb_)
                continue
            vb = self.solve(b, cap - va)
            if vb > cap - va:
                fail = min(fail, va + vb)
                continue
            best = va + vb
            if best == lb:
                break
        if best <= limit:
            self.exact[key] = best
            return best
        self.lb[key] = max(lb, fail)
        return self.lb[key]


def l_exact(m: CommMatrix, budget: float | None = None) -> CCResult:
    """Minimum number of leaves over all protocols for m (value in ``CCResult.value``)."""
    if m.n_rows == 0 or m.n_cols == 0:
        return CCResult("exact", 1, 1, 1)
    key = matrix_key(m)
    w, rows = key
    s = _LeafSearch(None if budget is None else time.monotonic() + budget)
    trivial = len(rows) * w
    try:
        v = s.solve(key, trivial)
    except SolverTimeout:
        return CCResult("timeout", None, s.lower(key), trivial, s.nodes)
    return CCResult("exact", int(v), int(v), int(v), s.nodes)
