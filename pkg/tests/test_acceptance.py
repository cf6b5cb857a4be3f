"""Acceptance criteria, one test each, at the stated tolerances.

Every test prints a single line "CRITERION <n> PASS|FAIL <details>" even
when output capture is on, then asserts.
"""

import itertools
import math
import random
import time

import pytest

from cchard.graphs import all_graphs, complete_graph, is_vertex_cover, min_vertex_cover, path_graph
from cchard.matrix import CommMatrix
from cchard.oracles import brute_cc, brute_chi1, brute_leaves
from cchard.pipeline import DecideConfig, decide_vc_via_cc
from cchard.protocols import binarize, build_explicit_protocol, metrics, subtree, verify_protocol
from cchard.reduction import build_fg, build_padded, cover_partition, fooling_cells
from cchard.solvers import cc_exact, chi1, is_fooling_set, l_exact, verify_partition
from cchard.solvers.partition import clear_block_cache

from conftest import SUITE_GRAPHS


@pytest.fixture
def report(capsys):
    def emit(n, ok, details):
        with capsys.disabled():
            print(f"\nCRITERION {n} {'PASS' if ok else 'FAIL'} {details}")
        return ok
    return emit


def log2ceil(x):
    return math.ceil(math.log2(x)) if x > 1 else 0


def test_criterion_1_reduction_identity(report):
    parts, ok = [], True
    for name, g in (("K2", complete_graph(2)), ("P3", path_graph(3))):
        clear_block_cache()
        t = time.perf_counter()
        r = chi1(build_fg(g), budget=60)
        dt = time.perf_counter() - t
        want = g.n + 4 * g.m + min_vertex_cover(g).size
        good = r.exact and r.value == want and dt < 60
        ok &= good
        parts.append(f"{name}={r.value}/{want} {dt:.2f}s")
    # stretch target, reported only
    clear_block_cache()
    t = time.perf_counter()
    r = chi1(build_fg(complete_graph(3)), budget=600)
    dt = time.perf_counter() - t
    parts.append(f"K3={r.value}/17 {dt:.2f}s (stretch, "
                 f"{'met' if r.value == 17 and dt < 600 else 'missed'})")
    assert report(1, ok, " ".join(parts))


def test_criterion_2_padding_identity(report):
    parts, ok = [], True
    cases = [(complete_graph(2), "K2", k) for k in (0, 1, 2)] + \
            [(complete_graph(3), "K3", k) for k in (1, 2, 3)]
    for g, name, k in cases:
        clear_block_cache()
        m, p = build_padded(g, k)
        t = time.perf_counter()
        r = chi1(m, budget=60)
        dt = time.perf_counter() - t
        want = 2 ** (p.ell + 1) + min_vertex_cover(g).size - k
        good = r.exact and r.value == want and dt < 60
        ok &= good
        parts.append(f"{name},k={k}:{r.value}/{want},{dt:.2f}s")
    assert report(2, ok, " ".join(parts))


def test_criterion_3_decide_depths(report):
    t = time.perf_counter()
    cfg = DecideConfig(budget=60, search_budget=2.0)
    total = wrong = unsure = value_miss = 0
    misses = []
    for n in range(5):
        for g in all_graphs(n):
            kappa = min_vertex_cover(g).size
            for k in range(n + 1):
                total += 1
                v = decide_vc_via_cc(g, k, cfg)
                if not v.conclusive:
                    unsure += 1
                elif v.verdict != ("kappa<=k" if kappa <= k else "kappa>k"):
                    wrong += 1
                if kappa <= k:
                    good = v.cc_upper == v.cc_lower == v.ell + 2
                else:
                    good = v.cc_lower == v.ell + 3
                if not good:
                    value_miss += 1
                    if len(misses) < 3:
                        misses.append(f"{g.edges}/k={k}:[{v.cc_lower},{v.cc_upper}]")
    dt = time.perf_counter() - t
    ok = wrong == 0 and unsure == 0 and value_miss == 0 and dt < 600
    assert report(3, ok, f"instances={total} wrong_verdict={wrong} inconclusive={unsure} "
                         f"bound_mismatch={value_miss} time={dt:.1f}s "
                         f"first={' '.join(misses) or '-'}")


def _useful(p, child):
    return metrics(subtree(p, child)).useful_leaf_count


def test_criterion_4_explicit_protocol(report):
    parts, ok = [], True
    for name, g, cover in (("K2", complete_graph(2), {1}), ("K3", complete_graph(3), {1, 2})):
        m = build_fg(g)
        p = build_explicit_protocol(g, cover)
        b = binarize(p)
        left, right = _useful(p, 0), _useful(p, 1)
        bound = log2ceil(g.n + 2 * g.m + min_vertex_cover(g).size) + 2
        bd, depth = metrics(p).binary_depth, metrics(b).depth
        good = (verify_protocol(p, m) and verify_protocol(b, m)
                and left == 2 * g.n + 4 * g.m + 2 * len(cover) and right == 4 * g.m
                and depth == bd and depth <= bound)
        ok &= good
        parts.append(f"{name}:left={left} right={right} depth={depth} bound={bound}")
    assert report(4, ok, " ".join(parts))


def test_criterion_5_lemma(report):
    rng = random.Random(20240517)
    t = time.perf_counter()
    checked = violations = 0
    while checked < 200:
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        dens = rng.choice((0.3, 0.5, 0.7))
        m = CommMatrix.from_rows([[int(rng.random() < dens) for _ in range(c)] for _ in range(r)])
        if m.is_constant():
            continue
        checked += 1
        res = cc_exact(m)
        if res.status != "exact" or res.value < log2ceil(chi1(m).value) + 1:
            violations += 1
    dt = time.perf_counter() - t
    ok = violations == 0 and dt < 600
    assert report(5, ok, f"matrices={checked} violations={violations} time={dt:.1f}s")


def test_criterion_6_oracle_equivalence(report):
    rng = random.Random(6)
    suite = []
    while len(suite) < 50:
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = CommMatrix.from_rows([[int(rng.random() < 0.5) for _ in range(c)] for _ in range(r)])
        if 0 < m.count_ones() <= 12:
            suite.append(m)
    chi_bad = sum(chi1(m).value != brute_chi1(m) for m in suite)
    small = cc_bad = l_bad = 0
    for r in range(1, 4):
        for c in range(1, 4):
            for bits in itertools.product((0, 1), repeat=r * c):
                m = CommMatrix.from_rows([bits[i * c:(i + 1) * c] for i in range(r)])
                small += 1
                cc_bad += cc_exact(m).value != brute_cc(m)
                l_bad += l_exact(m).value != brute_leaves(m)
    ok = chi_bad == cc_bad == l_bad == 0
    assert report(6, ok, f"chi1_suite=50 chi1_mismatch={chi_bad} small_matrices={small} "
                         f"cc_mismatch={cc_bad} leaves_mismatch={l_bad}")


def _optimal_covers(g):
    kappa = min_vertex_cover(g).size
    for c in itertools.combinations(g.vertices, kappa):
        if is_vertex_cover(g, c):
            yield set(c)


def test_criterion_7_gadget_certification(report):
    gadgets = fooled = pairs = good_parts = 0
    for g in SUITE_GRAPHS.values():
        m = build_fg(g)
        for e in g.edges:
            gadgets += 1
            fooled += is_fooling_set(m, fooling_cells(m, e))
        want = g.n + 4 * g.m + min_vertex_cover(g).size
        for cover in _optimal_covers(g):
            pairs += 1
            rects = cover_partition(g, cover, m)
            good_parts += verify_partition(m, rects) and len(rects) == want
    ok = fooled == gadgets and good_parts == pairs
    assert report(7, ok, f"gadgets={fooled}/{gadgets} cover_partitions={good_parts}/{pairs}")
