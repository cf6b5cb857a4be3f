"""Exact test of CC(m) <= D in the tight case chi1(m) = 2^(D-1).

When chi1 is exactly 2^(D-1), a depth-D protocol has no slack: its 1-leaves
form an optimal 1-partition P, no node ever splits a rectangle of P, every
node at depth t holds exactly 2^(D-1-t) rectangles of P, and each node at
depth D-1 is finished by a single bit (its rows are all equal, or its
columns are). Identical inputs can also be kept together without loss.

So it suffices to enumerate the optimal partitions and, for each, search
splits over groups of rows (or columns) glued by shared rectangles and
equal patterns. Rows of an identity block are interchangeable, so only how
many of them go each way matters. This is far smaller than the general
depth search, which branches on every subset of rows.

Usage:  python scripts/tight_depth.py P3 1      (graph name, threshold k)
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from functools import lru_cache

from cchard.graphs import complete_graph, cycle_graph, min_vertex_cover, path_graph
from cchard.matrix import CommMatrix
from cchard.reduction import build_padded
from cchard.solvers import block_decompose, chi1
from cchard.solvers.partition import _PartitionSearch, _bits, _cells_mask


def block_optimal_partitions(block):
    """Every optimal 1-partition of one connected block, as (rows, cols) pairs."""
    m = block.matrix
    s = _PartitionSearch(m.n_rows, m.n_cols, None)
    U = _cells_mask(m)
    s.all_rects = s.enumerate_rectangles(U)

    def exact(V):
        return s.solve(V, V.bit_count())

    def rect_of(mask):
        rows, cols = set(), 0
        for r, rm in s.row_masks(mask):
            rows.add(block.rows[r])
            cols |= rm
        return frozenset(rows), frozenset(block.cols[c] for c in _bits(cols))

    def enum(V):
        if not V:
            yield []
            return
        rows = s.row_masks(V)
        comps = s.components(rows)
        if len(comps) > 1:
            for combo in itertools.product(*[list(enum(c)) for c in comps]):
                yield [q for part in combo for q in part]
            return
        target = exact(V)
        for rect in s.candidates(rows, V):
            if 1 + exact(V & ~rect) == target:
                for rest in enum(V & ~rect):
                    yield [rect] + rest

    for part in enum(U):
        yield [rect_of(q) for q in part]


def optimal_partitions(m: CommMatrix):
    per_block = [list(block_optimal_partitions(b)) for b in block_decompose(m).blocks]
    for combo in itertools.product(*per_block):
        yield [q for part in combo for q in part]


class TightSearch:
    def __init__(self, m: CommMatrix, part, depth: int):
        self.m = m
        self.rects = part
        self.depth = depth
        self.nodes = 0
        # isolated 1-cells (an identity block) are interchangeable: permuting
        # them together with their columns fixes m and every optimal partition
        row_ones = [[c for c in range(m.n_cols) if m[r, c]] for r in range(m.n_rows)]
        col_ones = [[r for r in range(m.n_rows) if m[r, c]] for c in range(m.n_cols)]
        self.unit_row = {r: ones[0] for r, ones in enumerate(row_ones)
                         if len(ones) == 1 and col_ones[ones[0]] == [r]}
        self.unit_col = {c: r for r, c in self.unit_row.items()}

    def row_pattern(self, r, cols):
        return tuple(self.m[r, c] for c in cols)

    def col_pattern(self, c, rows):
        return tuple(self.m[r, c] for r in rows)

    def groups(self, items, other, inside, alice):
        """Items glued together by shared rectangles or equal patterns."""
        parent = {x: x for x in items}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            a, b = find(a), find(b)
            if a != b:
                parent[max(a, b)] = min(a, b)

        for q in inside:
            side = sorted(self.rects[q][0] if alice else self.rects[q][1])
            for x in side[1:]:
                union(side[0], x)
        by_pat = {}
        for x in items:
            pat = self.row_pattern(x, other) if alice else self.col_pattern(x, other)
            if pat in by_pat:
                union(by_pat[pat], x)
            else:
                by_pat[pat] = x
        out = {}
        for x in items:
            out.setdefault(find(x), []).append(x)
        return sorted(out.values())

    def fits(self, rows: frozenset, cols: frozenset, t: int) -> bool:
        return self._fits(rows, cols, t)

    @lru_cache(maxsize=None)
    def _fits(self, rows, cols, t):
        self.nodes += 1
        inside = [q for q, (rs, cs) in enumerate(self.rects) if rs <= rows and cs <= cols]
        need = 1 << (self.depth - 1 - t)
        if len(inside) != need:
            return False
        srows, scols = sorted(rows), sorted(cols)
        if need == 1:
            first_r = self.row_pattern(srows[0], scols)
            if all(self.row_pattern(r, scols) == first_r for r in srows):
                return True
            first_c = self.col_pattern(scols[0], srows)
            return all(self.col_pattern(c, srows) == first_c for c in scols)
        half = need // 2
        for alice in (True, False):
            items, other = (srows, scols) if alice else (scols, srows)
            grps = self.groups(items, other, inside, alice)
            weight = []
            for grp in grps:
                gs = set(grp)
                weight.append(sum(1 for q in inside
                                  if (self.rects[q][0] if alice else self.rects[q][1]) <= gs))
            partner, other_set = (self.unit_row, cols) if alice else (self.unit_col, rows)
            units = [grp[0] for grp in grps if len(grp) == 1 and partner.get(grp[0]) in other_set]
            unit_set = set(units)
            rest = [(grp, w) for grp, w in zip(grps, weight) if grp[0] not in unit_set or len(grp) > 1]
            n = len(rest)
            for pick in range(1 << n):
                w = sum(rest[i][1] for i in range(n) if pick >> i & 1)
                j = half - w
                if not 0 <= j <= len(units):
                    continue
                a = frozenset(x for i in range(n) if pick >> i & 1 for x in rest[i][0]) | set(units[:j])
                b = frozenset(items) - a
                if not a or not b:
                    continue
                if alice:
                    ok = self._fits(a, cols, t + 1) and self._fits(b, cols, t + 1)
                else:
                    ok = self._fits(rows, a, t + 1) and self._fits(rows, b, t + 1)
                if ok:
                    return True
        return False


def tight_depth_possible(m: CommMatrix, depth: int, limit: int | None = None):
    """(answer, partitions tried). Requires chi1(m) == 2^(depth-1)."""
    v = chi1(m).value
    if v != 1 << (depth - 1):
        raise ValueError(f"not tight: chi1={v}, depth={depth}")
    tried = 0
    for part in optimal_partitions(m):
        tried += 1
        s = TightSearch(m, part, depth)
        if s.fits(frozenset(range(m.n_rows)), frozenset(range(m.n_cols)), 0):
            return True, tried
        if limit is not None and tried >= limit:
            return None, tried
    return False, tried


GRAPHS = {"K2": lambda: complete_graph(2), "P3": lambda: path_graph(3),
          "K3": lambda: complete_graph(3), "C4": lambda: cycle_graph(4)}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("graph", choices=sorted(GRAPHS))
    ap.add_argument("k", type=int)
    args = ap.parse_args(argv)
    g = GRAPHS[args.graph]()
    kappa = min_vertex_cover(g).size
    m, p = build_padded(g, args.k)
    t = time.perf_counter()
    ok, tried = tight_depth_possible(m, p.ell + 2)
    print(f"{args.graph} k={args.k} kappa={kappa} ell={p.ell} shape={m.shape} "
          f"depth {p.ell + 2} possible={ok} partitions_tried={tried} "
          f"time={time.perf_counter() - t:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
