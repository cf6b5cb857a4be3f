"""Undirected simple graphs and an exact minimum vertex cover solver."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Edge = tuple[int, int]


class GraphParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    """Graph on vertices 1..n; edges are stored as sorted (i, j) pairs with i < j."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = set()
        for e in self.edges:
            i, j = sorted(e)
            if i == j:
                raise ValueError(f"self-loop at {i}")
            if not (1 <= i and j <= self.n):
                raise ValueError(f"edge {e} out of range 1..{self.n}")
            if (i, j) in norm:
                raise ValueError(f"duplicate edge {(i, j)}")
            norm.add((i, j))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def __str__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def parse_graph(text: str) -> Graph:
    header = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphParseError(lineno, f"non-integer token in {line!r}") from None
        if len(nums) != 2:
            raise GraphParseError(lineno, f"expected two integers, got {len(nums)}")
        if header is None:
            n, m = nums
            if n < 0 or m < 0:
                raise GraphParseError(lineno, "negative count in header")
            header = (n, m)
            continue
        n = header[0]
        i, j = nums
        for v in (i, j):
            if not 1 <= v <= n:
                raise GraphParseError(lineno, f"vertex {v} out of range 1..{n}")
        if i == j:
            raise GraphParseError(lineno, f"self-loop at vertex {i}")
        e = (min(i, j), max(i, j))
        if e in seen:
            raise GraphParseError(lineno, f"duplicate edge {e[0]} {e[1]}")
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphParseError(1, "missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphParseError(lineno + 1 if text else 1,
                              f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], tuple(edges))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{i} {j}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


# -- named families ----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(1, n)) + ((1, n),))


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled simple graph on n vertices, in a fixed order."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(p for b, p in enumerate(pairs) if mask >> b & 1))


# -- vertex cover ------------------------------------------------------------

@dataclass(frozen=True)
class VertexCoverResult:
    size: int
    witness: frozenset[int] = field(default_factory=frozenset)


def is_vertex_cover(g: Graph, c: Iterable[int]) -> bool:
    c = set(c)
    bad = [v for v in c if not 1 <= v <= g.n]
    if bad:
        raise ValueError(f"vertices {sorted(bad)} out of range 1..{g.n}")
    return all(i in c or j in c for i, j in g.edges)


def _matching_lower_bound(edges: list[Edge]) -> int:
    used: set[int] = set()
    size = 0
    for i, j in edges:
        if i not in used and j not in used:
            used.update((i, j))
            size += 1
    return size


def min_vertex_cover(g: Graph) -> VertexCoverResult:
    """Exact minimum vertex cover by branch and bound.

    Branches on a maximum-degree vertex v (lowest index on ties): either v is
    in the cover, or all of its neighbours are. A greedy maximal matching gives
    the lower bound. The first optimum met in this order is returned, so the
    witness is deterministic.
    """
    best: list = [g.n + 1, frozenset(g.vertices)]

    def rec(edges: list[Edge], chosen: frozenset[int]):
        if not edges:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), chosen
            return
        if len(chosen) + _matching_lower_bound(edges) >= best[0]:
            return
        deg: dict[int, int] = {}
        for i, j in edges:
            deg[i] = deg.get(i, 0) + 1
            deg[j] = deg.get(j, 0) + 1
        v = min(deg, key=lambda u: (-deg[u], u))
        rec([e for e in edges if v not in e], chosen | {v})
        nbrs = {j if i == v else i for i, j in edges if v in (i, j)}
        rec([e for e in edges if not (e[0] in nbrs or e[1] in nbrs)], chosen | nbrs)

    rec(list(g.edges), frozenset())
    return VertexCoverResult(best[0], best[1])
