"""End-to-end decision of vertex cover through the padded matrix, and the
seeded property suite behind the ``selftest`` command.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graphs import Graph, min_vertex_cover
from .matrix import CommMatrix, block_diag, identity
from .oracles import brute_chi1
from .protocols import (BOB, Node, Protocol, binarize, build_explicit_protocol, metrics,
                        search_protocol, subtree, verify_protocol)
from .reduction import build_padded
from .solvers import cc_exact, chi0, chi1, l_exact


def log2ceil(x: int) -> int:
    return 0 if x <= 1 else (x - 1).bit_length()


@dataclass
class DecideConfig:
    budget: float | None = 60.0
    # try a searched left branch when the explicit protocol is one bit too deep
    search_left: bool = True
    search_budget: float = 10.0


@dataclass
class Verdict:
    n: int
    m: int
    k: int
    ell: int
    chi1: int | None
    chi1_bounds: tuple[int, int]
    cc_lower: int
    cc_upper: int
    verdict: str            # "kappa<=k", "kappa>k" or "inconclusive"
    kappa: int
    upper_source: str       # "explicit" or "searched"
    protocol: Protocol | None = field(default=None, repr=False)

    @property
    def conclusive(self) -> bool:
        return self.verdict != "inconclusive"

    def lines(self) -> list[str]:
        lo, hi = self.chi1_bounds
        chi = str(self.chi1) if self.chi1 is not None else f"[{lo},{hi}]"
        return [f"n={self.n} m={self.m} k={self.k}",
                f"ell={self.ell}",
                f"chi1={chi}",
                f"cc_lower={self.cc_lower}",
                f"cc_upper={self.cc_upper} ({self.upper_source})",
                f"verdict={self.verdict}",
                f"kappa={self.kappa}"]


def _searched_protocol(g: Graph, cover, k: int, depth: int, budget: float) -> Protocol | None:
    """Explicit protocol with its left branch replaced by an optimal searched one.

    Keeps Bob's first bit and the right branch; the left branch is the
    exact depth search on the rows times the left columns, capped so the
    whole tree stays within ``depth``.
    """
    m, params = build_padded(g, k)
    p = build_explicit_protocol(g, cover, params)
    if not isinstance(p.root, Node) or p.root.speaker != BOB:
        return None
    right = binarize(subtree(p, 1))
    if metrics(right).depth > depth - 1:
        return None
    left_cols = subtree(p, 0).cols
    ml = m.submatrix(range(m.n_rows), [m.col_index(c) for c in left_cols])
    left = search_protocol(ml, max_depth=depth - 1, budget=budget)
    if left is None:
        return None
    root = Node(BOB, [left.root, right.root], dict(p.root.assignment))
    return Protocol(m.rows, m.cols, root)


def decide_vc_via_cc(g: Graph, k: int, cfg: DecideConfig | None = None) -> Verdict:
    """Decide kappa(G) <= k from certified bounds on CC of the padded matrix.

    Lower bound: ceil(log chi1) + 1 with chi1 computed exactly. Upper bound:
    depth of a verified protocol built from a minimum cover. The verdict is
    "kappa<=k" when both equal ell+2, "kappa>k" when the lower bound reaches
    ell+3, and "inconclusive" otherwise. A conclusive verdict that disagrees
    with the vertex cover solver raises AssertionError.
    """
    cfg = cfg or DecideConfig()
    if k < 0:
        raise ValueError("k must be non-negative")
    m, params = build_padded(g, k)
    vc = min_vertex_cover(g)
    c1 = chi1(m, budget=cfg.budget)
    lower = log2ceil(c1.lower) + 1
    p = binarize(build_explicit_protocol(g, vc.witness, params))
    if not verify_protocol(p, m):
        raise AssertionError("explicit protocol is wrong")
    upper, source = metrics(p).depth, "explicit"
    target = params.ell + 2
    if cfg.search_left and upper > lower == target:
        q = _searched_protocol(g, vc.witness, k, target, cfg.search_budget)
        if q is not None:
            if not verify_protocol(q, m):
                raise AssertionError("searched protocol is wrong")
            d = metrics(q).depth
            if d < upper:
                p, upper, source = q, d, "searched"
    if lower >= target + 1:
        verdict = "kappa>k"
    elif upper == lower == target:
        verdict = "kappa<=k"
    else:
        verdict = "inconclusive"
    if verdict != "inconclusive" and (verdict == "kappa<=k") != (vc.size <= k):
        raise AssertionError(f"verdict {verdict} contradicts kappa={vc.size}, k={k}")
    return Verdict(g.n, g.m, k, params.ell, c1.value, (c1.lower, c1.upper), lower, upper,
                   verdict, vc.size, source, p)


# -- property suite ------------------------------------------------------------


@dataclass
class SuiteConfig:
    seed: int = 1
    count: int = 200
    max_rows: int = 5
    max_cols: int = 5
    include_constant: bool = False
    max_pad: int = 8
    brute_max_ones: int = 12


@dataclass
class PropertyTally:
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    first_failure: str = ""

    def record(self, ok: bool, what: str):
        self.checked += 1
        if not ok:
            self.failed += 1
            if not self.first_failure:
                self.first_failure = what


PROPERTIES = ("lemma", "base_case", "trivial_upper", "leaves", "row_deletion",
              "blockdiag_identity", "chi1_brute_force", "constant_cc")


def _matrix_text(m: CommMatrix) -> str:
    return "/".join("".join(map(str, row)) for row in m.to_lists())


def _random_matrix(rng: random.Random, cfg: SuiteConfig) -> CommMatrix:
    r, c = rng.randint(1, cfg.max_rows), rng.randint(1, cfg.max_cols)
    if cfg.include_constant and rng.random() < 0.1:
        v = rng.randint(0, 1)
        return CommMatrix.from_rows([[v] * c for _ in range(r)])
    dens = rng.choice((0.3, 0.5, 0.7))
    return CommMatrix.from_rows([[int(rng.random() < dens) for _ in range(c)] for _ in range(r)])


def property_suite(cfg: SuiteConfig | None = None) -> tuple[list[str], bool]:
    """Run the solver invariants on seeded random matrices.

    Returns the report lines and whether every property held. The report
    contains no timings, so reruns with the same config are byte-identical.
    """
    cfg = cfg or SuiteConfig()
    rng = random.Random(cfg.seed)
    tallies = {name: PropertyTally() for name in PROPERTIES}
    produced = 0
    while produced < cfg.count:
        m = _random_matrix(rng, cfg)
        if m.is_constant() and not cfg.include_constant:
            continue
        produced += 1
        tag = _matrix_text(m)
        cc = cc_exact(m).value
        if m.is_constant():
            # the lemma needs a non-constant matrix: only the CC = 0 branch applies
            tallies["constant_cc"].record(cc == 0, tag)
            for name in ("lemma", "base_case", "leaves"):
                tallies[name].skipped += 1
        else:
            c1 = chi1(m).value if m.count_ones() else 0
            tallies["lemma"].record(cc >= log2ceil(c1) + 1, tag)
            if cc == 1:
                tallies["base_case"].record(c1 == 1, tag)
            tallies["leaves"].record(l_exact(m).value >= c1 + chi0(m).value, tag)
        tallies["trivial_upper"].record(cc <= log2ceil(m.n_rows) + 1, tag)
        if m.n_rows > 1:
            r = rng.randrange(m.n_rows)
            tallies["row_deletion"].record(cc_exact(m.delete_row(r)).value <= cc, f"{tag} row {r}")
        if m.count_ones():
            d = rng.randint(1, cfg.max_pad)
            c1 = chi1(m).value
            tallies["blockdiag_identity"].record(
                chi1(block_diag(m, identity(d))).value == c1 + d, f"{tag} d={d}")
            if m.count_ones() <= cfg.brute_max_ones:
                tallies["chi1_brute_force"].record(brute_chi1(m) == c1, tag)
    lines = [f"# property suite seed={cfg.seed} count={cfg.count} "
             f"max={cfg.max_rows}x{cfg.max_cols} constant={int(cfg.include_constant)}"]
    ok = True
    for name in PROPERTIES:
        t = tallies[name]
        status = "PASS" if t.failed == 0 else "FAIL"
        ok &= t.failed == 0
        detail = f"checked={t.checked} failed={t.failed} skipped={t.skipped}"
        if t.first_failure:
            detail += f" first={t.first_failure}"
        lines.append(f"PROPERTY {name} {status} {detail}")
    return lines, ok
