"""Labelled boolean communication matrices, rectangles and the text file format.

Rows are Alice's inputs and columns are Bob's. Each row is stored as an int
bitset over column indices (bit c set means entry 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

# -- labels ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class NodeRow:
    v: int
    b: int

    def __str__(self):
        return f"v:{self.v}:{self.b}"


@dataclass(frozen=True, order=True)
class EdgeRow:
    e: tuple[int, int]
    r: int

    def __str__(self):
        return f"e:{self.e[0]}-{self.e[1]}:{self.r}"


@dataclass(frozen=True, order=True)
class PadRow:
    t: int

    def __str__(self):
        return f"pad:{self.t}"


@dataclass(frozen=True, order=True)
class NodeCol:
    v: int

    def __str__(self):
        return f"v:{self.v}"


@dataclass(frozen=True, order=True)
class EdgeCol:
    e: tuple[int, int]
    c: int

    def __str__(self):
        return f"e:{self.e[0]}-{self.e[1]}:{self.c}"


@dataclass(frozen=True, order=True)
class PadCol:
    t: int

    def __str__(self):
        return f"pad:{self.t}"


@dataclass(frozen=True, order=True)
class IndexLabel:
    """Plain positional label for matrices that do not come from a graph."""

    i: int

    def __str__(self):
        return f"x:{self.i}"


RowLabel = Union[NodeRow, EdgeRow, PadRow, IndexLabel]
ColLabel = Union[NodeCol, EdgeCol, PadCol, IndexLabel]

_ROW_RE = [
    (re.compile(r"v:(\d+):([01])$"), lambda g: NodeRow(int(g[1]), int(g[2]))),
    (re.compile(r"e:(\d+)-(\d+):(\d+)$"), lambda g: EdgeRow((int(g[1]), int(g[2])), int(g[3]))),
    (re.compile(r"pad:(\d+)$"), lambda g: PadRow(int(g[1]))),
    (re.compile(r"x:(\d+)$"), lambda g: IndexLabel(int(g[1]))),
]
_COL_RE = [
    (re.compile(r"v:(\d+)$"), lambda g: NodeCol(int(g[1]))),
    (re.compile(r"e:(\d+)-(\d+):(\d+)$"), lambda g: EdgeCol((int(g[1]), int(g[2])), int(g[3]))),
    (re.compile(r"pad:(\d+)$"), lambda g: PadCol(int(g[1]))),
    (re.compile(r"x:(\d+)$"), lambda g: IndexLabel(int(g[1]))),
]


def _parse_label(text: str, table) -> RowLabel | ColLabel:
    for rx, make in table:
        mt = rx.match(text)
        if mt:
            return make(mt)
    raise ValueError(f"unrecognised label {text!r}")


def parse_row_label(text: str) -> RowLabel:
    return _parse_label(text, _ROW_RE)


def parse_col_label(text: str) -> ColLabel:
    return _parse_label(text, _COL_RE)


# -- matrix ------------------------------------------------------------------


@dataclass(frozen=True)
class CommMatrix:
    rows: tuple
    cols: tuple
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != len(self.rows):
            raise ValueError("one bitset per row required")
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise ValueError("labels must be unique")
        full = (1 << len(self.cols)) - 1
        if any(b & ~full for b in self.bits):
            raise ValueError("bitset wider than column count")
        object.__setattr__(self, "_row_index", {l: i for i, l in enumerate(self.rows)})
        object.__setattr__(self, "_col_index", {l: i for i, l in enumerate(self.cols)})

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], rows=None, cols=None) -> "CommMatrix":
        nr = len(data)
        nc = len(data[0]) if nr else (len(cols) if cols is not None else 0)
        if any(len(r) != nc for r in data):
            raise ValueError("ragged matrix")
        bits = tuple(sum(1 << c for c, x in enumerate(r) if x) for r in data)
        rows = tuple(rows) if rows is not None else tuple(IndexLabel(i) for i in range(nr))
        cols = tuple(cols) if cols is not None else tuple(IndexLabel(j) for j in range(nc))
        return cls(rows, cols, bits)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.cols)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.bits[r] >> c & 1

    def at(self, row: RowLabel, col: ColLabel) -> int:
        return self[self.row_index(row), self.col_index(col)]

    def row_index(self, label) -> int:
        try:
            return self._row_index[label]
        except KeyError:
            raise KeyError(f"unknown row label {label}") from None

    def col_index(self, label) -> int:
        try:
            return self._col_index[label]
        except KeyError:
            raise KeyError(f"unknown column label {label}") from None

    def to_lists(self) -> list[list[int]]:
        return [[b >> c & 1 for c in range(self.n_cols)] for b in self.bits]

    def ones(self) -> list[tuple[int, int]]:
        return [(r, c) for r, b in enumerate(self.bits) for c in range(self.n_cols) if b >> c & 1]

    def count_ones(self) -> int:
        return sum(bin(b).count("1") for b in self.bits)

    def is_constant(self) -> bool:
        full = (1 << self.n_cols) - 1
        return all(b == 0 for b in self.bits) or all(b == full for b in self.bits)

    def complement(self) -> "CommMatrix":
        full = (1 << self.n_cols) - 1
        return CommMatrix(self.rows, self.cols, tuple(full ^ b for b in self.bits))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "CommMatrix":
        rows, cols = list(rows), list(cols)
        bits = tuple(sum(1 << k for k, c in enumerate(cols) if self.bits[r] >> c & 1) for r in rows)
        return CommMatrix(tuple(self.rows[r] for r in rows), tuple(self.cols[c] for c in cols), bits)

    def delete_row(self, r: int) -> "CommMatrix":
        return self.submatrix([i for i in range(self.n_rows) if i != r], range(self.n_cols))

    def __str__(self):
        return "\n".join("".join(str(x) for x in row) for row in self.to_lists())


def identity(d: int) -> CommMatrix:
    return CommMatrix(tuple(PadRow(t) for t in range(1, d + 1)),
                      tuple(PadCol(t) for t in range(1, d + 1)),
                      tuple(1 << i for i in range(d)))


def all_ones(r: int, c: int) -> CommMatrix:
    return CommMatrix.from_rows([[1] * c for _ in range(r)])


def block_diag(a: CommMatrix, b: CommMatrix) -> CommMatrix:
    """Block-diagonal [[a, 0], [0, b]]; b's labels are renumbered if they collide."""
    brows, bcols = b.rows, b.cols
    if set(a.rows) & set(brows):
        brows = tuple(IndexLabel(a.n_rows + i) for i in range(b.n_rows))
        if set(a.rows) & set(brows):
            raise ValueError("cannot make row labels disjoint")
    if set(a.cols) & set(bcols):
        bcols = tuple(IndexLabel(a.n_cols + j) for j in range(b.n_cols))
        if set(a.cols) & set(bcols):
            raise ValueError("cannot make column labels disjoint")
    bits = a.bits + tuple(x << a.n_cols for x in b.bits)
    return CommMatrix(a.rows + brows, a.cols + bcols, bits)


# -- rectangles --------------------------------------------------------------


@dataclass(frozen=True)
class Rectangle:
    rows: frozenset[int]
    cols: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "rows", frozenset(self.rows))
        object.__setattr__(self, "cols", frozenset(self.cols))
        if not self.rows or not self.cols:
            raise ValueError("rectangle must be non-empty on both sides")

    def cells(self) -> set[tuple[int, int]]:
        return {(r, c) for r in self.rows for c in self.cols}

    @property
    def size(self) -> int:
        return len(self.rows) * len(self.cols)

    def __repr__(self):
        return f"Rectangle(rows={sorted(self.rows)}, cols={sorted(self.cols)})"


OnePartition = list  # list[Rectangle]


# -- file format -------------------------------------------------------------


def format_matrix(m: CommMatrix) -> str:
    out = [f"{m.n_rows} {m.n_cols}"]
    out += ["".join(str(x) for x in row) for row in m.to_lists()]
    out += [f"#row {i} {l}" for i, l in enumerate(m.rows)]
    out += [f"#col {j} {l}" for j, l in enumerate(m.cols)]
    return "\n".join(out) + "\n"


def parse_matrix(text: str) -> CommMatrix:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty matrix file")
    try:
        nr, nc = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError("line 1: expected 'R C' header") from None
    data = []
    rows: dict[int, RowLabel] = {}
    cols: dict[int, ColLabel] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("#row ") or line.startswith("#col "):
            kind, idx, lab = line.split()
            if kind == "#row":
                rows[int(idx)] = parse_row_label(lab)
            else:
                cols[int(idx)] = parse_col_label(lab)
        elif line.startswith("#") or not line.strip():
            continue
        else:
            if len(line) != nc or set(line) - {"0", "1"}:
                raise ValueError(f"line {lineno}: expected {nc} characters from {{0,1}}")
            data.append([int(ch) for ch in line])
    if len(data) != nr:
        raise ValueError(f"expected {nr} matrix rows, found {len(data)}")
    row_labels = [rows.get(i, IndexLabel(i)) for i in range(nr)]
    col_labels = [cols.get(j, IndexLabel(j)) for j in range(nc)]
    if set(rows) - set(range(nr)) or set(cols) - set(range(nc)):
        raise ValueError("label index out of range")
    return CommMatrix.from_rows(data, row_labels, col_labels)
