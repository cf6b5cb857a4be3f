import pytest
from hypothesis import given

from cchard.graphs import complete_graph, path_graph
from cchard.matrix import (CommMatrix, EdgeCol, EdgeRow, IndexLabel, NodeCol, NodeRow, PadCol,
                           PadRow, Rectangle, all_ones, block_diag, format_matrix, identity,
                           parse_col_label, parse_matrix, parse_row_label)
from cchard.reduction import build_padded

from conftest import matrices


@pytest.mark.parametrize("label, text", [
    (NodeRow(3, 1), "v:3:1"),
    (EdgeRow((1, 4), 2), "e:1-4:2"),
    (PadRow(7), "pad:7"),
    (IndexLabel(0), "x:0"),
])
def test_row_label_text(label, text):
    assert str(label) == text
    assert parse_row_label(text) == label


@pytest.mark.parametrize("label, text", [
    (NodeCol(2), "v:2"),
    (EdgeCol((2, 3), 5), "e:2-3:5"),
    (PadCol(1), "pad:1"),
])
def test_col_label_text(label, text):
    assert str(label) == text
    assert parse_col_label(text) == label


def test_bad_label():
    with pytest.raises(ValueError):
        parse_row_label("v:1")
    with pytest.raises(ValueError):
        parse_col_label("nope")


def test_padded_matrix_roundtrip_is_bit_exact():
    m, _ = build_padded(path_graph(3), 1)
    text = format_matrix(m)
    back = parse_matrix(text)
    assert back == m
    assert format_matrix(back) == text


@given(matrices(5, 5))
def test_generic_roundtrip(m):
    text = format_matrix(m)
    assert parse_matrix(text) == m
    assert format_matrix(parse_matrix(text)) == text


def test_format_layout():
    text = format_matrix(identity(2))
    assert text == "2 2\n10\n01\n#row 0 pad:1\n#row 1 pad:2\n#col 0 pad:1\n#col 1 pad:2\n"


def test_parse_rejects_bad_rows():
    with pytest.raises(ValueError):
        parse_matrix("2 2\n10\n0\n")
    with pytest.raises(ValueError):
        parse_matrix("1 2\n12\n")
    with pytest.raises(ValueError):
        parse_matrix("2 2\n10\n")


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        CommMatrix((PadRow(1), PadRow(1)), (PadCol(1),), (1, 1))


def test_block_diag_and_helpers():
    m = block_diag(identity(2), all_ones(1, 2))
    assert m.to_lists() == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]
    assert m.count_ones() == 4
    assert not m.is_constant()
    assert all_ones(2, 3).is_constant()
    assert m.complement().count_ones() == 12 - 4


def test_rectangle_must_be_nonempty():
    with pytest.raises(ValueError):
        Rectangle(set(), {1})
    assert Rectangle({0, 1}, {2}).cells() == {(0, 2), (1, 2)}
