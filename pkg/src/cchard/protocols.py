"""Protocol trees: data model, evaluation, metrics, binarisation, text format,
and the explicit cover-based protocol for the reduction matrices.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Union

from .graphs import Graph, is_vertex_cover
from .matrix import (CommMatrix, EdgeCol, EdgeRow, NodeRow, PadCol, PadRow,
                     parse_col_label, parse_row_label)
from .reduction import ReductionParams, build_fg, build_padded
from .solvers.partition import SolverTimeout
from .solvers.protocol_search import _DepthSearch, cc_exact, reduce_rows

ALICE, BOB = "A", "B"


@dataclass
class Leaf:
    value: int


@dataclass
class Node:
    """Internal node. ``assignment`` maps each of the speaker's labels that can
    reach this node to a child index (rows for Alice, columns for Bob)."""

    speaker: str
    children: list
    assignment: dict = field(default_factory=dict)


Tree = Union[Leaf, Node]


@dataclass
class Protocol:
    rows: tuple
    cols: tuple
    root: Tree


@dataclass(frozen=True)
class ProtocolMetrics:
    depth: int
    binary_depth: int
    leaf_count: int
    useful_leaf_count: int
    unused_leaf_count: int
    one_leaf_count: int = 0


def make_node(speaker: str, children: list, assignment: dict) -> Tree:
    """Build a node, collapsing it when the message would carry zero bits."""
    if len(children) == 1:
        return children[0]
    return Node(speaker, children, assignment)


# -- evaluation ----------------------------------------------------------------


def evaluate(p: Protocol, row, col) -> int:
    if row not in set(p.rows):
        raise KeyError(f"row label {row} not in protocol universe")
    if col not in set(p.cols):
        raise KeyError(f"column label {col} not in protocol universe")
    t = p.root
    while isinstance(t, Node):
        label = row if t.speaker == ALICE else col
        t = t.children[t.assignment[label]]
    return t.value


def leaf_rectangles(p: Protocol):
    """Yield (leaf, rows, cols) for every leaf with the inputs that reach it.

    Raises ValueError if some node's assignment is not total on its inputs.
    """
    stack = [(p.root, tuple(p.rows), tuple(p.cols))]
    while stack:
        t, rows, cols = stack.pop()
        if isinstance(t, Leaf):
            yield t, rows, cols
            continue
        own = rows if t.speaker == ALICE else cols
        parts: list[list] = [[] for _ in t.children]
        for label in own:
            idx = t.assignment.get(label)
            if idx is None or not 0 <= idx < len(t.children):
                raise ValueError(f"node does not route {label}")
            parts[idx].append(label)
        for child, part in reversed(list(zip(t.children, parts))):
            if t.speaker == ALICE:
                stack.append((child, tuple(part), cols))
            else:
                stack.append((child, rows, tuple(part)))


def verify_protocol(p: Protocol, m: CommMatrix) -> bool:
    """True iff the protocol computes m on every input."""
    if set(p.rows) != set(m.rows) or set(p.cols) != set(m.cols):
        raise ValueError("protocol universe does not match the matrix labels")
    try:
        for leaf, rows, cols in leaf_rectangles(p):
            for r in rows:
                ri = m.row_index(r)
                for c in cols:
                    if m[ri, m.col_index(c)] != leaf.value:
                        return False
    except ValueError:
        return False
    return True


def metrics(p: Protocol) -> ProtocolMetrics:
    depth = bdepth = leaves = useful = ones = 0
    stack = [(p.root, 0, 0)]
    while stack:
        t, d, bd = stack.pop()
        if isinstance(t, Leaf):
            depth, bdepth, leaves = max(depth, d), max(bdepth, bd), leaves + 1
            continue
        bits = math.ceil(math.log2(len(t.children)))
        for child in t.children:
            stack.append((child, d + 1, bd + bits))
    for leaf, rows, cols in leaf_rectangles(p):
        if rows and cols:
            useful += 1
            ones += leaf.value
    return ProtocolMetrics(depth, bdepth, leaves, useful, leaves - useful, ones)


def subtree(p: Protocol, child: int) -> Protocol:
    """The protocol rooted at one child of the root, on the inputs reaching it."""
    t = p.root
    if not isinstance(t, Node):
        raise ValueError("root is a leaf")
    if t.speaker == ALICE:
        rows = tuple(r for r in p.rows if t.assignment[r] == child)
        return Protocol(rows, p.cols, t.children[child])
    cols = tuple(c for c in p.cols if t.assignment[c] == child)
    return Protocol(p.rows, cols, t.children[child])


# -- binarisation --------------------------------------------------------------


def _binarize(t: Tree) -> Tree:
    if isinstance(t, Leaf):
        return Leaf(t.value)
    k = len(t.children)
    if k == 1:
        return _binarize(t.children[0])
    kids = [_binarize(c) for c in t.children]
    width = 1 << math.ceil(math.log2(k))

    def encode(lo: int, hi: int) -> Tree:
        if lo >= k:
            return Leaf(0)  # codeword never sent
        if hi - lo == 1:
            return kids[lo]
        mid = (lo + hi) // 2
        assign = {lab: int(i >= mid) for lab, i in t.assignment.items() if lo <= i < hi}
        return Node(t.speaker, [encode(lo, mid), encode(mid, hi)], assign)

    return encode(0, width)


def binarize(p: Protocol) -> Protocol:
    """Send each message as ceil(log2 #children) bits; dangling codewords become 0-leaves."""
    return Protocol(p.rows, p.cols, _binarize(p.root))


def is_binary(p: Protocol) -> bool:
    stack = [p.root]
    while stack:
        t = stack.pop()
        if isinstance(t, Node):
            if len(t.children) != 2:
                return False
            stack.extend(t.children)
    return True


# -- simple protocols ----------------------------------------------------------


def _reply(m: CommMatrix, speaker: str, labels: Iterable, fixed: list) -> Tree:
    """Final message: the speaker announces f, given the other side lies in ``fixed``.

    ``fixed`` must be a set of the other player's inputs that agree on every
    one of the speaker's labels.
    """
    assign = {}
    for lab in labels:
        if speaker == ALICE:
            vals = {m.at(lab, c) for c in fixed}
        else:
            vals = {m.at(r, lab) for r in fixed}
        if len(vals) != 1:
            raise ValueError(f"value not determined for {lab} against {[str(x) for x in fixed]}")
        assign[lab] = vals.pop()
    return make_node(speaker, [Leaf(0), Leaf(1)], assign) if len(set(assign.values())) > 1 \
        else Leaf(next(iter(assign.values()), 0))


def trivial_protocol(m: CommMatrix) -> Protocol:
    """Alice names her row, Bob answers."""
    kids = [_reply(m, BOB, m.cols, [r]) for r in m.rows]
    root = make_node(ALICE, kids, {r: i for i, r in enumerate(m.rows)})
    return Protocol(m.rows, m.cols, root)


# -- explicit protocol for f_G and f'_G ------------------------------------------


def nfcv_set(g: Graph, cover: Iterable[int]) -> set[EdgeCol]:
    """Edge columns owned by the endpoint that is not the first cover vertex."""
    cover = set(cover)
    if not is_vertex_cover(g, cover):
        raise ValueError(f"{sorted(cover)} is not a vertex cover of {g}")
    out = set()
    for e in g.edges:
        i, _ = e
        cs = (3, 4) if i in cover else (1, 2)
        out |= {EdgeCol(e, c) for c in cs}
    return out


def alice_messages(g: Graph, cover: Iterable[int], params: ReductionParams | None = None):
    """Alice's message groups in the left branch as (case, rows) pairs.

    Cases 1-5 follow the cover-based protocol. Case 6 exists only for padded
    matrices: the last d1 pad rows are zero on every column of the left
    branch and share one message.
    """
    cover = set(cover)
    out = []
    for i in sorted(cover):
        for r in (0, 1):
            out.append((1, [NodeRow(i, r)]))
    for i in g.vertices:
        if i not in cover:
            out.append((2, [NodeRow(i, 0), NodeRow(i, 1)]))
    for e in g.edges:
        rs = (1, 2) if e[0] in cover else (1, 3)
        out.append((3, [EdgeRow(e, r) for r in rs]))
    for e in g.edges:
        rs = (3, 4) if e[0] in cover else (2, 4)
        out.append((4, [EdgeRow(e, r) for r in rs]))
    if params is not None:
        out += [(5, [PadRow(t)]) for t in range(1, params.d0 + 1)]
        if params.d1:
            out.append((6, [PadRow(t) for t in range(params.d0 + 1, params.d + 1)]))
    return out


def build_explicit_protocol(g: Graph, cover: Iterable[int],
                            params: ReductionParams | None = None) -> Protocol:
    """Multiway protocol for f_G (or f'_G when ``params`` is given).

    Bob first says whether his column is in NFCV (or is one of the last d1
    pad columns). If so he names it and Alice answers; otherwise Alice names
    her message group and Bob answers.
    """
    cover = set(cover)
    nf = nfcv_set(g, cover)
    m = build_fg(g) if params is None else build_padded(g, params.k)[0]
    d0 = params.d0 if params is not None else 0
    right = [c for c in m.cols if c in nf or (isinstance(c, PadCol) and c.t > d0)]
    rset = set(right)
    left = [c for c in m.cols if c not in rset]

    named = [_reply(m, ALICE, m.rows, [c]) for c in right]
    right_tree = make_node(BOB, named, {c: i for i, c in enumerate(right)}) if right else None

    left_tree = None
    if left:
        groups = alice_messages(g, cover, params)
        kids, assign = [], {}
        for idx, (_, rows) in enumerate(groups):
            kids.append(_reply(m, BOB, left, rows))
            for r in rows:
                assign[r] = idx
        left_tree = make_node(ALICE, kids, assign)

    if left_tree is None or right_tree is None:
        root = left_tree if right_tree is None else right_tree
    else:
        root = Node(BOB, [left_tree, right_tree], {c: int(c in rset) for c in m.cols})
    return Protocol(m.rows, m.cols, root)


def explicit_protocol_target(g: Graph, params: ReductionParams | None = None) -> CommMatrix:
    return build_fg(g) if params is None else build_padded(g, params.k)[0]


# -- text format -----------------------------------------------------------------


def _fmt_tree(t: Tree, rows_order: dict, cols_order: dict, indent: int, out: list):
    pad = "  " * indent
    if isinstance(t, Leaf):
        out.append(f"{pad}(={t.value})")
        return
    order = rows_order if t.speaker == ALICE else cols_order
    out.append(f"{pad}({t.speaker}")
    for i in range(len(t.children)):
        labs = sorted((l for l, j in t.assignment.items() if j == i), key=order.__getitem__)
        out.append(f"{pad}  (branch {i}" + "".join(f" {l}" for l in labs) + ")")
    for child in t.children:
        _fmt_tree(child, rows_order, cols_order, indent + 1, out)
    out[-1] += ")"


def format_protocol(p: Protocol) -> str:
    out = ["(protocol",
           "  (rows" + "".join(f" {r}" for r in p.rows) + ")",
           "  (cols" + "".join(f" {c}" for c in p.cols) + ")"]
    _fmt_tree(p.root, {r: i for i, r in enumerate(p.rows)},
              {c: i for i, c in enumerate(p.cols)}, 1, out)
    out[-1] += ")"
    return "\n".join(out) + "\n"


def _tokens(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list[str], pos: int):
    if tokens[pos] != "(":
        return tokens[pos], pos + 1
    items, pos = [], pos + 1
    while tokens[pos] != ")":
        item, pos = _read(tokens, pos)
        items.append(item)
    return items, pos + 1


def _build(sx) -> Tree:
    if len(sx) == 1 and isinstance(sx[0], str) and sx[0].startswith("="):
        return Leaf(int(sx[0][1:]))
    speaker = sx[0]
    if speaker not in (ALICE, BOB):
        raise ValueError(f"bad node head {speaker!r}")
    parse = parse_row_label if speaker == ALICE else parse_col_label
    assign, children = {}, []
    for item in sx[1:]:
        if isinstance(item, list) and item and item[0] == "branch":
            idx = int(item[1])
            for lab in item[2:]:
                assign[parse(lab)] = idx
        else:
            children.append(_build(item))
    return Node(speaker, children, assign)


def parse_protocol(text: str) -> Protocol:
    tokens = _tokens(text)
    sx, pos = _read(tokens, 0)
    if pos != len(tokens) or sx[0] != "protocol":
        raise ValueError("expected a single (protocol ...) form")
    _, rows, cols, tree = sx
    if rows[0] != "rows" or cols[0] != "cols":
        raise ValueError("protocol header must list rows then cols")
    return Protocol(tuple(parse_row_label(x) for x in rows[1:]),
                    tuple(parse_col_label(x) for x in cols[1:]), _build(tree))


# -- protocols recovered from the exact depth search ---------------------------------


def _classes(patterns: list) -> list[list[int]]:
    """Group positions with equal patterns, in order of first appearance."""
    seen: dict = {}
    for i, p in enumerate(patterns):
        seen.setdefault(p, []).append(i)
    return list(seen.values())


def search_protocol(m: CommMatrix, max_depth: int | None = None,
                    budget: float | None = None) -> Protocol | None:
    """A minimum-depth binary protocol for m, read off the exact depth search.

    Returns None if no protocol of depth <= ``max_depth`` exists or the
    budget runs out first.
    """
    res = cc_exact(m, max_depth=max_depth, budget=budget)
    if res.status != "exact":
        return None
    s = _DepthSearch(None if budget is None else time.monotonic() + budget)

    def key(rows, cols):
        sub = [sum(1 << k for k, c in enumerate(cols) if m[r, c]) for r in rows]
        return reduce_rows(sub, len(cols))

    def build(rows: list[int], cols: list[int], depth: int) -> Tree:
        vals = {m[r, c] for r in rows for c in cols}
        if len(vals) <= 1:
            return Leaf(vals.pop() if vals else 0)
        rcls = _classes([tuple(m[r, c] for c in cols) for r in rows])
        ccls = _classes([tuple(m[r, c] for r in rows) for c in cols])
        for speaker, groups, side in ((ALICE, rcls, rows), (BOB, ccls, cols)):
            n = len(groups)
            for mask in range(1 << (n - 1)):
                part = mask << 1 | 1
                if part == (1 << n) - 1:
                    continue
                a = sorted(side[i] for g, grp in enumerate(groups) if part >> g & 1 for i in grp)
                b = sorted(side[i] for g, grp in enumerate(groups) if not part >> g & 1 for i in grp)
                ka, kb = (key(a, cols), key(b, cols)) if speaker == ALICE else (key(rows, a), key(rows, b))
                if s.fits(ka, depth - 1) and s.fits(kb, depth - 1):
                    if speaker == ALICE:
                        kids = [build(a, cols, depth - 1), build(b, cols, depth - 1)]
                        labels = m.rows
                    else:
                        kids = [build(rows, a, depth - 1), build(rows, b, depth - 1)]
                        labels = m.cols
                    assign = {labels[i]: 0 for i in a} | {labels[i]: 1 for i in b}
                    return Node(speaker, kids, assign)
        raise AssertionError("depth search reported a protocol that cannot be rebuilt")

    try:
        root = build(list(range(m.n_rows)), list(range(m.n_cols)), res.value)
    except SolverTimeout:
        return None
    return Protocol(m.rows, m.cols, root)
