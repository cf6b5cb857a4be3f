import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cchard.graphs import complete_graph, empty_graph, min_vertex_cover, path_graph
from cchard.pipeline import DecideConfig, SuiteConfig, decide_vc_via_cc, property_suite
from cchard.protocols import metrics, verify_protocol
from cchard.reduction import build_padded

from conftest import graphs


def test_decide_k2_threshold_one():
    v = decide_vc_via_cc(complete_graph(2), 1)
    assert (v.ell, v.chi1, v.cc_lower, v.cc_upper) == (3, 16, 5, 5)
    assert v.verdict == "kappa<=k"
    # the explicit protocol needs one more bit here; the searched left branch closes the gap
    assert v.upper_source == "searched"
    m, _ = build_padded(complete_graph(2), 1)
    assert verify_protocol(v.protocol, m) and metrics(v.protocol).depth == 5


def test_decide_k2_threshold_zero():
    v = decide_vc_via_cc(complete_graph(2), 0)
    assert (v.ell, v.chi1, v.cc_lower) == (2, 9, 5)
    assert v.verdict == "kappa>k"


def test_decide_k3_threshold_two_is_not_certified():
    # chi1 = 32 gives lower bound 6 = ell+2, but no verified protocol of
    # depth 6 is found: the explicit one has depth 7 and the left branch
    # alone already needs depth 6 (certified by exhaustive search)
    v = decide_vc_via_cc(complete_graph(3), 2, DecideConfig(search_budget=30))
    assert (v.ell, v.chi1, v.cc_lower, v.cc_upper) == (4, 32, 6, 7)
    assert v.verdict == "inconclusive"


def test_decide_slack_threshold():
    v = decide_vc_via_cc(complete_graph(3), 3)
    assert v.verdict == "kappa<=k" and v.cc_upper == v.cc_lower == v.ell + 2
    assert v.upper_source == "explicit"


def test_decide_rejects_negative_k():
    with pytest.raises(ValueError):
        decide_vc_via_cc(complete_graph(2), -1)


@given(graphs(max_n=4), st.data())
@settings(max_examples=25, deadline=None)
def test_decide_never_contradicts_vertex_cover(g, data):
    k = data.draw(st.integers(0, g.n))
    v = decide_vc_via_cc(g, k, DecideConfig(search_budget=0.5))
    kappa = min_vertex_cover(g).size
    assert v.kappa == kappa
    assert v.cc_lower <= v.cc_upper
    if kappa != k:
        # away from the boundary the sandwich always closes
        assert v.verdict == ("kappa<=k" if kappa < k else "kappa>k")
    if kappa > k:
        assert v.cc_lower == v.ell + 3


def test_decide_empty_graph():
    v = decide_vc_via_cc(empty_graph(0), 0)
    assert v.verdict == "kappa<=k" and v.cc_upper == 2


def test_property_suite_seed_one():
    lines, ok = property_suite(SuiteConfig(seed=1, count=200))
    assert ok
    assert all(l.startswith("PROPERTY ") for l in lines[1:])
    again, _ = property_suite(SuiteConfig(seed=1, count=200))
    assert "\n".join(lines) == "\n".join(again)


def test_property_suite_constant_matrices():
    lines, ok = property_suite(SuiteConfig(seed=2, count=80, include_constant=True))
    assert ok
    const = next(l for l in lines if l.startswith("PROPERTY constant_cc"))
    lemma = next(l for l in lines if l.startswith("PROPERTY lemma"))
    assert "checked=0" not in const
    assert "skipped=0" not in lemma
