"""Exact 1-partition number, fooling sets and block decomposition.

Cells of an R x W matrix are packed into one int, cell (r, c) at bit r*W + c,
so a set of uncovered cells is a single int and rectangles are masks.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from ..matrix import CommMatrix, Rectangle


class SolverTimeout(Exception):
    pass


def verify_partition(m: CommMatrix, rects: Sequence[Rectangle]) -> bool:
    seen: set[tuple[int, int]] = set()
    for rect in rects:
        for r in rect.rows:
            if not 0 <= r < m.n_rows:
                raise IndexError(f"row index {r} out of range")
        for c in rect.cols:
            if not 0 <= c < m.n_cols:
                raise IndexError(f"column index {c} out of range")
    for rect in rects:
        for cell in rect.cells():
            if not m[cell] or cell in seen:
                return False
            seen.add(cell)
    return len(seen) == m.count_ones()


def is_fooling_set(m: CommMatrix, cells: Sequence[tuple[int, int]]) -> bool:
    if len(set(cells)) != len(cells):
        raise ValueError("fooling set cells must be distinct")
    if not all(m[c] for c in cells):
        return False
    for a in range(len(cells)):
        r, c = cells[a]
        for b in range(a + 1, len(cells)):
            r2, c2 = cells[b]
            if m[r, c2] and m[r2, c]:
                return False
    return True


@dataclass
class Block:
    """One connected block of a matrix, with its row/column indices in the parent."""

    rows: list[int]
    cols: list[int]
    matrix: CommMatrix


@dataclass
class Decomposition:
    blocks: list[Block]
    zero_rows: list[int]
    zero_cols: list[int]

    @property
    def matrices(self) -> list[CommMatrix]:
        return [b.matrix for b in self.blocks]


def block_decompose(m: CommMatrix) -> Decomposition:
    """Connected components of the bipartite row/column graph whose edges are 1-cells.

    Rows and columns without any 1 go to the all-zero remainder. Blocks are
    ordered by their smallest row index.
    """
    col_rows: list[list[int]] = [[] for _ in range(m.n_cols)]
    for r, b in enumerate(m.bits):
        for c in _bits(b):
            col_rows[c].append(r)
    seen_r = [False] * m.n_rows
    blocks = []
    for start in range(m.n_rows):
        if seen_r[start] or not m.bits[start]:
            continue
        rows, colmask, stack = [], 0, [start]
        seen_r[start] = True
        while stack:
            r = stack.pop()
            rows.append(r)
            new = m.bits[r] & ~colmask
            colmask |= new
            for c in _bits(new):
                for r2 in col_rows[c]:
                    if not seen_r[r2]:
                        seen_r[r2] = True
                        stack.append(r2)
        rows.sort()
        cols = list(_bits(colmask))
        blocks.append(Block(rows, cols, m.submatrix(rows, cols)))
    used_cols = 0
    for b in m.bits:
        used_cols |= b
    zero_rows = [r for r in range(m.n_rows) if not m.bits[r]]
    zero_cols = [c for c in range(m.n_cols) if not used_cols >> c & 1]
    return Decomposition(blocks, zero_rows, zero_cols)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass
class Chi1Result:
    """Outcome of a 1-partition search.

    ``exact`` is False only when the time budget ran out; then ``value`` is
    None and [lower, upper] brackets the true value, with ``partition`` a
    valid partition of size ``upper``.
    """

    value: int | None
    lower: int
    upper: int
    partition: list[Rectangle] = field(default_factory=list)
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.value is not None


class _PartitionSearch:
    """Pivot-branching search with per-component memoisation.

    ``solve(U, limit)`` returns chi1 of cell set U exactly when it is at most
    ``limit``; otherwise it returns a proven lower bound larger than ``limit``.
    """

    CHECK_EVERY = 256
    # components with at most this many cells skip the LP bound
    LP_MIN_CELLS = 16

    def __init__(self, n_rows: int, n_cols: int, deadline: float | None, use_lp: bool = True):
        self.R, self.W = n_rows, n_cols
        self.full = (1 << n_cols) - 1
        self.deadline = deadline
        self.use_lp = use_lp
        self.exact: dict[int, int] = {}
        self.lower: dict[int, int] = {}
        self.lp_done: set[int] = set()
        self.choice: dict[int, int] = {}
        self.all_rects: list[int] | None = None
        self.nodes = 0

    # -- helpers on cell sets --

    def row_masks(self, U: int) -> list[tuple[int, int]]:
        W, full = self.W, self.full
        out = []
        r = 0
        while U:
            rm = U & full
            if rm:
                out.append((r, rm))
            U >>= W
            r += 1
        return out

    def components(self, rows: list[tuple[int, int]]) -> list[int]:
        W = self.W
        pending = rows
        comps = []
        while pending:
            cols = pending[0][1]
            cells = 0
            changed = True
            rest = pending
            while changed:
                changed = False
                keep = []
                for r, rm in rest:
                    if rm & cols:
                        if rm & ~cols:
                            changed = True
                        cols |= rm
                        cells |= rm << (r * W)
                    else:
                        keep.append((r, rm))
                rest = keep
            comps.append(cells)
            pending = rest
        return comps

    def fooling_bound(self, rows: list[tuple[int, int]], U: int) -> int:
        """Greedy fooling set on U, taking cells in the order of fewest compatible cells."""
        W = self.W
        compat = {}
        for r, rm in rows:
            for c in _bits(rm):
                mask = 0
                for r2, rm2 in rows:
                    if rm2 >> c & 1:
                        mask |= (rm & rm2) << (r2 * W)
                compat[r * W + c] = mask
        order = sorted(compat, key=lambda p: (bin(compat[p]).count("1"), p))
        cand = U
        size = 0
        for p in order:
            if cand >> p & 1:
                size += 1
                cand &= ~compat[p]
        return size

    # dense blocks above this many rectangles are searched without the LP bound
    MAX_LP_RECTS = 50_000

    def enumerate_rectangles(self, U: int) -> list[int] | None:
        """Every 1-rectangle inside U as cell masks, or None past MAX_LP_RECTS."""
        W = self.W
        rows = self.row_masks(U)
        out = []

        def grow(k, rowset, common):
            if len(out) > self.MAX_LP_RECTS:
                return
            if rowset:
                sub = common
                while sub:
                    mask = 0
                    for r in rowset:
                        mask |= sub << (r * W)
                    out.append(mask)
                    sub = (sub - 1) & common
            for idx in range(k, len(rows)):
                r, rm = rows[idx]
                nxt = common & rm if rowset else rm
                if nxt:
                    rowset.append(r)
                    grow(idx + 1, rowset, nxt)
                    rowset.pop()

        grow(0, [], 0)
        return out if len(out) <= self.MAX_LP_RECTS else None

    def lp_bound(self, U: int) -> int:
        """Ceiling of the fractional partition number of U (set-partitioning LP)."""
        rects = [q for q in self.all_rects if not q & ~U]
        cells = {p: i for i, p in enumerate(_bits(U))}
        ri, ci = [], []
        for j, q in enumerate(rects):
            for p in _bits(q):
                ri.append(cells[p])
                ci.append(j)
        A = csr_matrix((np.ones(len(ri)), (ri, ci)), shape=(len(cells), len(rects)))
        res = linprog(np.ones(len(rects)), A_eq=A, b_eq=np.ones(len(cells)),
                      bounds=(0, None), method="highs")
        if res.status != 0:
            return 0
        return math.ceil(res.fun - 1e-6)

    def candidates(self, rows: list[tuple[int, int]], U: int) -> list[int]:
        """All 1-rectangles inside U containing the lowest uncovered cell, largest first."""
        W = self.W
        r0, rm0 = rows[0]
        low = rm0 & -rm0
        c0 = low.bit_length() - 1
        others = [(r, rm) for r, rm in rows[1:] if rm & low]
        out: list[tuple[int, int, int]] = []
        seq = 0

        def emit(rowset: list[int], common: int):
            nonlocal seq
            free = common & ~low
            sub = free
            nr = len(rowset)
            while True:
                cols = sub | low
                mask = 0
                for r in rowset:
                    mask |= cols << (r * W)
                out.append((-nr * bin(cols).count("1"), seq, mask))
                seq += 1
                if sub == 0:
                    break
                sub = (sub - 1) & free

        def grow(k: int, rowset: list[int], common: int):
            emit(rowset, common)
            for idx in range(k, len(others)):
                r, rm = others[idx]
                rowset.append(r)
                grow(idx + 1, rowset, common & rm)
                rowset.pop()

        grow(0, [r0], rm0)
        out.sort()
        return [mask for _, _, mask in out]

    def tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % self.CHECK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise SolverTimeout

    # -- search --

    def bound(self, U: int, rows, limit: int | None = None) -> int:
        """Best lower bound for U; the LP is only consulted when it could prune."""
        lb = self.lower.get(U)
        if lb is None:
            lb = self.fooling_bound(rows, U)
            self.lower[U] = lb
        if (self.use_lp and limit is not None and lb <= limit and U not in self.lp_done
                and U.bit_count() > self.LP_MIN_CELLS):
            self.lp_done.add(U)
            if self.all_rects is None:
                self.use_lp = False
                return lb
            lb = max(lb, self.lp_bound(U))
            self.lower[U] = lb
        return lb

    def solve(self, U: int, limit: int) -> int:
        if not U:
            return 0
        hit = self.exact.get(U)
        if hit is not None:
            return hit
        rows = self.row_masks(U)
        comps = self.components(rows)
        if len(comps) > 1:
            return self._solve_split(comps, limit)
        return self._solve_connected(U, rows, limit)

    def _solve_split(self, comps: list[int], limit: int) -> int:
        lbs = [self.exact.get(c) or self.bound(c, self.row_masks(c)) for c in comps]
        total = sum(lbs)
        if total > limit:
            return total
        # hardest (largest lower bound) component first so failures surface early
        for idx in sorted(range(len(comps)), key=lambda i: -lbs[i]):
            slack = limit - (total - lbs[idx])
            v = self.solve(comps[idx], slack)
            total += v - lbs[idx]
            lbs[idx] = v
            if v > slack:
                return total
        return total

    def _solve_connected(self, U: int, rows, limit: int) -> int:
        self.tick()
        lb = self.bound(U, rows, limit)
        if lb > limit:
            return lb
        cands = self.candidates(rows, U)
        if cands[0] == U:
            self.exact[U] = 1
            self.choice[U] = U
            return 1
        best = None
        fail_lb = None
        for rect in cands:
            cap = (best - 1 if best is not None else limit) - 1
            if cap < lb - 1:
                break
            v = self.solve(U & ~rect, cap)
            if v <= cap:
                best = v + 1
                self.choice[U] = rect
                if best == lb:
                    break
            else:
                fail_lb = v + 1 if fail_lb is None else min(fail_lb, v + 1)
        if best is not None:
            self.exact[U] = best
            return best
        # every branch exceeded the limit; the least of their bounds is proven
        proven = max(lb, fail_lb if fail_lb is not None else limit + 1)
        self.lower[U] = proven
        return proven

    def witness(self, U: int) -> list[int]:
        """Rectangles (as cell masks) of an optimal partition for a solved U."""
        out = []
        stack = [U]
        while stack:
            U = stack.pop()
            if not U:
                continue
            comps = self.components(self.row_masks(U))
            if len(comps) > 1:
                stack.extend(reversed(comps))
                continue
            rect = self.choice[U]
            out.append(rect)
            stack.append(U & ~rect)
        return out

    def greedy(self, U: int) -> list[int]:
        out = []
        while U:
            rect = self.candidates(self.row_masks(U), U)[0]
            out.append(rect)
            U &= ~rect
        return out

    def to_rectangle(self, mask: int, rows_map: Sequence[int], cols_map: Sequence[int]) -> Rectangle:
        rs, cs = set(), 0
        for r, rm in self.row_masks(mask):
            rs.add(rows_map[r])
            cs |= rm
        return Rectangle(rs, {cols_map[c] for c in _bits(cs)})


def _cells_mask(m: CommMatrix) -> int:
    W = m.n_cols
    U = 0
    for r, b in enumerate(m.bits):
        U |= b << (r * W)
    return U


# Solved blocks keyed by (shape, bits); reused across calls such as padded
# matrices that share the same f_G block.
_BLOCK_CACHE: dict[tuple, tuple[int, list]] = {}


def clear_block_cache():
    _BLOCK_CACHE.clear()


def _solve_block(block: Block, deadline: float | None) -> tuple[int, int, int, list[Rectangle], int]:
    m = block.matrix
    key = (m.n_rows, m.n_cols, m.bits)
    cached = _BLOCK_CACHE.get(key)
    if cached is not None:
        value, local = cached
        return value, value, value, [Rectangle({block.rows[r] for r in rs}, {block.cols[c] for c in cs})
                                     for rs, cs in local], 0
    s = _PartitionSearch(m.n_rows, m.n_cols, deadline)
    U = _cells_mask(m)
    s.all_rects = s.enumerate_rectangles(U)
    ident = range(max(m.n_rows, m.n_cols))
    greedy = s.greedy(U)
    upper = len(greedy)
    limit = s.bound(U, s.row_masks(U), upper - 1)
    try:
        while limit < upper:
            v = s.solve(U, limit)
            if v <= limit:
                upper = v
                break
            limit = v
        value = upper
        masks = s.witness(U) if value < len(greedy) else greedy
    except SolverTimeout:
        local = [s.to_rectangle(x, ident, ident) for x in greedy]
        return -1, limit, upper, [Rectangle({block.rows[r] for r in q.rows}, {block.cols[c] for c in q.cols})
                                  for q in local], s.nodes
    local = [s.to_rectangle(x, ident, ident) for x in masks]
    _BLOCK_CACHE[key] = (value, [(q.rows, q.cols) for q in local])
    rects = [Rectangle({block.rows[r] for r in q.rows}, {block.cols[c] for c in q.cols}) for q in local]
    return value, value, value, rects, s.nodes


def chi1(m: CommMatrix, budget: float | None = None) -> Chi1Result:
    """Exact 1-partition number of ``m`` with a witness partition.

    The matrix is first split into connected blocks, each solved by iterative
    deepening on the partition size. ``budget`` is a wall-clock limit in
    seconds; when it runs out the result carries bounds instead of a value.
    """
    if m.count_ones() == 0:
        raise ValueError("chi1 needs a matrix with at least one 1")
    deadline = None if budget is None else time.monotonic() + budget
    lower = upper = nodes = 0
    exact = True
    rects: list[Rectangle] = []
    for block in block_decompose(m).blocks:
        value, lo, hi, part, n = _solve_block(block, deadline)
        exact &= value >= 0
        lower += lo
        upper += hi
        nodes += n
        rects += part
    rects.sort(key=lambda q: (min(q.rows), min(q.cols), sorted(q.rows), sorted(q.cols)))
    return Chi1Result(upper if exact else None, lower, upper, rects, nodes)


def chi0(m: CommMatrix, budget: float | None = None) -> Chi1Result:
    """1-partition number of the complement, i.e. the fewest 0-rectangles."""
    if m.count_ones() == m.n_rows * m.n_cols:
        raise ValueError("chi0 needs a matrix with at least one 0")
    return chi1(m.complement(), budget)


def fooling_lower_bound(m: CommMatrix) -> int:
    """Size of a greedily built fooling set of 1-cells (a lower bound on chi1)."""
    s = _PartitionSearch(m.n_rows, m.n_cols, None)
    U = _cells_mask(m)
    return s.fooling_bound(s.row_masks(U), U) if U else 0
