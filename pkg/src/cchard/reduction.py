"""Vertex cover to communication matrix reduction.

``build_fg`` attaches an 8x5 gadget to every edge; ``build_padded`` appends
an identity block so that the explicit protocol's message counts line up
with powers of two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graphs import Edge, Graph, is_vertex_cover
from .matrix import (CommMatrix, EdgeCol, EdgeRow, NodeCol, NodeRow, Rectangle,
                     block_diag, identity)

# Gadget rows in order (i,0), (i,1), (j,0), (j,1), (e,1), (e,2), (e,3), (e,4)
# against columns (e,1)..(e,5), for an edge e = (i, j) with i < j.
GADGET = (
    (1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (1, 0, 1, 0, 1),
    (1, 0, 0, 1, 1),
    (0, 1, 1, 0, 1),
    (0, 1, 0, 1, 1),
)


def gadget_rows(e: Edge) -> list:
    i, j = e
    return [NodeRow(i, 0), NodeRow(i, 1), NodeRow(j, 0), NodeRow(j, 1)] + \
        [EdgeRow(e, r) for r in range(1, 5)]


def gadget_cols(e: Edge) -> list:
    return [EdgeCol(e, c) for c in range(1, 6)]


def row_labels(g: Graph) -> list:
    return [NodeRow(v, b) for v in g.vertices for b in (0, 1)] + \
        [EdgeRow(e, r) for e in g.edges for r in range(1, 5)]


def col_labels(g: Graph) -> list:
    return [NodeCol(v) for v in g.vertices] + [EdgeCol(e, c) for e in g.edges for c in range(1, 6)]


def build_fg(g: Graph) -> CommMatrix:
    rows, cols = row_labels(g), col_labels(g)
    ri = {l: k for k, l in enumerate(rows)}
    ci = {l: k for k, l in enumerate(cols)}
    bits = [0] * len(rows)
    for v in g.vertices:
        for b in (0, 1):
            bits[ri[NodeRow(v, b)]] |= 1 << ci[NodeCol(v)]
    for e in g.edges:
        for rl, pattern in zip(gadget_rows(e), GADGET):
            for cl, x in zip(gadget_cols(e), pattern):
                if x:
                    bits[ri[rl]] |= 1 << ci[cl]
    return CommMatrix(tuple(rows), tuple(cols), tuple(bits))


@dataclass(frozen=True)
class ReductionParams:
    k: int
    ell: int
    d0: int
    d1: int
    n: int
    m: int

    @property
    def d(self) -> int:
        return self.d0 + self.d1


def reduction_params(g: Graph, k: int) -> ReductionParams:
    """Least ell with n + 2|E| + k <= 2**ell, and the pad sizes d0, d1."""
    if k < 0:
        raise ValueError("threshold k must be non-negative")
    total = g.n + 2 * g.m + k
    ell = 0
    while (1 << ell) < total:
        ell += 1
    return ReductionParams(k=k, ell=ell, d0=(1 << ell) - total, d1=(1 << ell) - 2 * g.m,
                           n=g.n, m=g.m)


def build_padded(g: Graph, k: int) -> tuple[CommMatrix, ReductionParams]:
    params = reduction_params(g, k)
    return block_diag(build_fg(g), identity(params.d)), params


def fooling_cells(m: CommMatrix, e: Edge) -> list[tuple[int, int]]:
    """The five pairwise-incompatible 1-cells of edge e's gadget, as (row, col) indices."""
    i, j = e
    pairs = [(NodeRow(i, 0), EdgeCol(e, 1)), (NodeRow(i, 1), EdgeCol(e, 2)),
             (NodeRow(j, 0), EdgeCol(e, 3)), (NodeRow(j, 1), EdgeCol(e, 4)),
             (EdgeRow(e, 1), EdgeCol(e, 5))]
    return [(m.row_index(r), m.col_index(c)) for r, c in pairs]


def cover_partition(g: Graph, cover: Iterable[int], m: CommMatrix | None = None) -> list[Rectangle]:
    """1-partition of f_G with n + 4|E| + |cover| rectangles.

    Node rows of a cover vertex are taken as two whole-row rectangles; the
    other vertices get one column rectangle on their node column. Each edge
    gadget is then finished with four rectangles; the endpoint not handled
    by the cover contributes its node-row cells to them.
    """
    cover = set(cover)
    if not is_vertex_cover(g, cover):
        raise ValueError(f"{sorted(cover)} is not a vertex cover of {g}")
    if m is None:
        m = build_fg(g)
    R, C = m.row_index, m.col_index
    rects: list[Rectangle] = []
    for v in g.vertices:
        if v in cover:
            for b in (0, 1):
                r = R(NodeRow(v, b))
                rects.append(Rectangle({r}, {c for c in range(m.n_cols) if m[r, c]}))
        else:
            rects.append(Rectangle({R(NodeRow(v, 0)), R(NodeRow(v, 1))}, {C(NodeCol(v))}))
    for e in g.edges:
        i, j = e
        er = [R(EdgeRow(e, r)) for r in range(1, 5)]
        ec = [C(EdgeCol(e, c)) for c in range(1, 6)]
        if i in cover:
            # (e,1),(e,2) share c1,c5; (e,3),(e,4) share c2,c5; c3, c4 finish with j's rows
            extra0 = [R(NodeRow(j, 0))] if j not in cover else []
            extra1 = [R(NodeRow(j, 1))] if j not in cover else []
            rects += [Rectangle({er[0], er[1]}, {ec[0], ec[4]}),
                      Rectangle({er[2], er[3]}, {ec[1], ec[4]}),
                      Rectangle({*extra0, er[0], er[2]}, {ec[2]}),
                      Rectangle({*extra1, er[1], er[3]}, {ec[3]})]
        else:
            rects += [Rectangle({er[0], er[2]}, {ec[2], ec[4]}),
                      Rectangle({er[1], er[3]}, {ec[3], ec[4]}),
                      Rectangle({R(NodeRow(i, 0)), er[0], er[1]}, {ec[0]}),
                      Rectangle({R(NodeRow(i, 1)), er[2], er[3]}, {ec[1]})]
    return rects
