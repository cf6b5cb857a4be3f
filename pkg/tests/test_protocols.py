import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cchard.graphs import Graph, complete_graph, min_vertex_cover, path_graph
from cchard.matrix import EdgeCol, EdgeRow, NodeCol, NodeRow, PadCol, PadRow
from cchard.protocols import (ALICE, BOB, Leaf, Node, Protocol, binarize, build_explicit_protocol,
                              evaluate, format_protocol, is_binary, leaf_rectangles, metrics,
                              nfcv_set, parse_protocol, subtree, trivial_protocol, verify_protocol)
from cchard.reduction import build_fg, build_padded, reduction_params

from conftest import SUITE_GRAPHS, graphs, matrices


def all_covers(g):
    for mask in range(1 << g.n):
        c = {v for v in g.vertices if mask >> (v - 1) & 1}
        if all(i in c or j in c for i, j in g.edges):
            yield c


def test_nfcv_examples():
    e = (1, 2)
    assert nfcv_set(complete_graph(2), {1}) == {EdgeCol(e, 3), EdgeCol(e, 4)}
    assert nfcv_set(complete_graph(2), {2}) == {EdgeCol(e, 1), EdgeCol(e, 2)}
    assert nfcv_set(path_graph(3), {2}) == {EdgeCol((1, 2), 1), EdgeCol((1, 2), 2),
                                            EdgeCol((2, 3), 3), EdgeCol((2, 3), 4)}
    with pytest.raises(ValueError):
        nfcv_set(path_graph(3), {1})


def test_metrics_small_trees():
    leaf = Protocol(("r",), ("c",), Leaf(1))
    m = metrics(leaf)
    assert (m.depth, m.binary_depth, m.leaf_count) == (0, 0, 1)
    three = Node(ALICE, [Leaf(0), Leaf(1), Leaf(0)], {"a": 0, "b": 1, "c": 2})
    m = metrics(Protocol(("a", "b", "c"), ("x",), three))
    assert (m.depth, m.binary_depth, m.leaf_count) == (1, 2, 3)


def test_binarize_three_way_node():
    three = Node(ALICE, [Leaf(0), Leaf(1), Leaf(0)], {"a": 0, "b": 1, "c": 2})
    p = Protocol(("a", "b", "c"), ("x",), three)
    b = binarize(p)
    m = metrics(b)
    assert is_binary(b) and m.depth == 2 and m.leaf_count == 4 and m.unused_leaf_count == 1
    for r in p.rows:
        assert evaluate(b, r, "x") == evaluate(p, r, "x")


def test_binarize_binary_is_identity():
    t = Node(BOB, [Leaf(0), Node(ALICE, [Leaf(1), Leaf(0)], {"a": 0, "b": 1})], {"x": 0, "y": 1})
    p = Protocol(("a", "b"), ("x", "y"), t)
    assert binarize(p) == p


def test_evaluate_explicit_k2():
    g = complete_graph(2)
    p = build_explicit_protocol(g, {1})
    e = (1, 2)
    assert evaluate(p, NodeRow(1, 0), NodeCol(1)) == 1
    assert evaluate(p, NodeRow(1, 0), NodeCol(2)) == 0
    assert evaluate(p, EdgeRow(e, 1), EdgeCol(e, 5)) == 1
    with pytest.raises(KeyError):
        evaluate(p, PadRow(1), NodeCol(1))


def test_verify_flipped_leaf_fails():
    g = complete_graph(2)
    m = build_fg(g)
    p = build_explicit_protocol(g, {1})
    assert verify_protocol(p, m)
    leaf, _, _ = next((lf, r, c) for lf, r, c in leaf_rectangles(p) if r and c)
    leaf.value ^= 1
    assert not verify_protocol(p, m)


def test_verify_universe_mismatch():
    g = complete_graph(2)
    p = build_explicit_protocol(g, {1})
    with pytest.raises(ValueError):
        verify_protocol(p, build_fg(path_graph(3)))


@given(matrices(5, 5))
@settings(max_examples=50, deadline=None)
def test_trivial_protocol_correct(m):
    p = trivial_protocol(m)
    assert verify_protocol(p, m)
    assert metrics(binarize(p)).depth <= math.ceil(math.log2(max(m.n_rows, 1))) + 1


def _branch_counts(p):
    left, right = subtree(p, 0), subtree(p, 1)
    return metrics(left), metrics(right)


@pytest.mark.parametrize("name", sorted(SUITE_GRAPHS))
def test_explicit_unpadded_leaf_counts(name):
    g = SUITE_GRAPHS[name]
    m = build_fg(g)
    for cover in all_covers(g):
        p = build_explicit_protocol(g, cover)
        assert verify_protocol(p, m)
        met = metrics(p)
        assert met.binary_depth <= math.ceil(math.log2(g.n + 2 * g.m + len(cover))) + 2
        b = binarize(p)
        assert verify_protocol(b, m) and metrics(b).depth == met.binary_depth
        if g.m == 0:
            continue
        lm, rm = _branch_counts(p)
        assert lm.useful_leaf_count == 2 * g.n + 4 * g.m + 2 * len(cover)
        assert rm.useful_leaf_count == 4 * g.m
        assert 2 * met.one_leaf_count == met.useful_leaf_count


@pytest.mark.parametrize("name", ["K2", "P3", "K3", "E2", "K2+v"])
def test_explicit_padded(name):
    g = SUITE_GRAPHS[name]
    kappa = min_vertex_cover(g)
    for k in range(g.n + 1):
        params = reduction_params(g, k)
        m, _ = build_padded(g, k)
        p = build_explicit_protocol(g, kappa.witness, params)
        assert verify_protocol(p, m)
        b = binarize(p)
        assert verify_protocol(b, m)
        depth = metrics(b).depth
        assert depth == metrics(p).binary_depth
        # the zero pad rows need their own message in the left branch, so
        # ell+2 is reached only with room to spare (kappa < k)
        assert depth == (params.ell + 2 if kappa.size < k else params.ell + 3)
        lm, rm = _branch_counts(p)
        zero_group = int(params.d1 > 0)
        assert lm.useful_leaf_count == 2 * g.n + 4 * g.m + 2 * kappa.size + 2 * params.d0 + zero_group
        assert rm.useful_leaf_count == 4 * g.m + 2 * params.d1
        met = metrics(p)
        assert met.useful_leaf_count - 2 * met.one_leaf_count == zero_group


def test_padded_k2_depths():
    g = complete_graph(2)
    params = reduction_params(g, 1)
    p = binarize(build_explicit_protocol(g, {1}, params))
    assert build_padded(g, 1)[0].shape == (17, 16)
    assert metrics(p).depth == 6
    params = reduction_params(g, 2)
    assert metrics(binarize(build_explicit_protocol(g, {1}, params))).depth == params.ell + 2


def test_padded_k3_depths():
    g = complete_graph(3)
    params = reduction_params(g, 2)
    assert params.ell == 4 and params.d0 == 5
    p = binarize(build_explicit_protocol(g, {1, 2}, params))
    assert verify_protocol(p, build_padded(g, 2)[0])
    assert metrics(p).depth == 7


def test_protocol_text_round_trip():
    g = path_graph(3)
    params = reduction_params(g, 2)
    p = build_explicit_protocol(g, {2}, params)
    text = format_protocol(p)
    q = parse_protocol(text)
    assert format_protocol(q) == text
    assert verify_protocol(q, build_padded(g, 2)[0])
    b = binarize(p)
    assert format_protocol(parse_protocol(format_protocol(b))) == format_protocol(b)


def test_parse_protocol_rejects_garbage():
    with pytest.raises(ValueError):
        parse_protocol("(protocol (rows x:0) (cols x:0) (C (=0)))")


@given(graphs(max_n=4), st.data())
@settings(max_examples=40, deadline=None)
def test_every_cover_gives_a_correct_protocol(g, data):
    covers = list(all_covers(g))
    cover = data.draw(st.sampled_from(covers))
    k = data.draw(st.integers(0, g.n))
    params = reduction_params(g, k)
    m, _ = build_padded(g, k)
    p = build_explicit_protocol(g, cover, params)
    assert verify_protocol(p, m)
    for leaf, rows, cols in leaf_rectangles(binarize(p)):
        vals = {m.at(r, c) for r in rows for c in cols}
        assert vals <= {leaf.value}


def test_empty_graph_padded():
    g = Graph(0, ())
    m, params = build_padded(g, 0)
    p = binarize(build_explicit_protocol(g, set(), params))
    # both left-branch replies are constant, so the extra message is free
    assert verify_protocol(p, m) and metrics(p).depth == params.ell + 2


@pytest.mark.parametrize("name", sorted(SUITE_GRAPHS))
def test_binarized_subtrees_are_balanced(name):
    g = SUITE_GRAPHS[name]
    cover = min_vertex_cover(g).witness
    for k in [None] + list(range(g.n + 1)):
        params = None if k is None else reduction_params(g, k)
        p = binarize(build_explicit_protocol(g, cover, params))
        if not isinstance(p.root, Node):
            continue
        for child in (0, 1):
            mt = metrics(subtree(p, child))
            assert mt.depth == math.ceil(math.log2(mt.leaf_count))
