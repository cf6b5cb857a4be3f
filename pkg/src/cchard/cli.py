"""Command line entry point.

Exit codes: 0 ok, 1 property failure, 2 bad input, 3 timeout or
inconclusive result.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .graphs import is_vertex_cover, min_vertex_cover, parse_graph
from .matrix import format_matrix, parse_col_label, parse_matrix, parse_row_label
from .pipeline import DecideConfig, SuiteConfig, decide_vc_via_cc, property_suite
from .protocols import (binarize, build_explicit_protocol, evaluate, format_protocol, metrics,
                        parse_protocol, verify_protocol)
from .reduction import build_fg, build_padded, reduction_params
from .solvers import cc_exact, chi1, l_exact

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_TIMEOUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _load(parser, path: str):
    try:
        return parser(_read(path))
    except (ValueError, KeyError, IndexError) as e:
        raise InputError(f"{path}: {e}") from None


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_cover(text: str) -> set[int]:
    try:
        return {int(x) for x in text.split(",") if x.strip()}
    except ValueError:
        raise InputError(f"bad cover {text!r}: expected comma separated vertices") from None


# -- subcommands -----------------------------------------------------------------


def cmd_reduce(args) -> int:
    g = _load(parse_graph, args.graph)
    if args.k is not None and args.k < 0:
        raise InputError("k must be non-negative")
    if args.k is None:
        _emit(args, format_matrix(build_fg(g)))
    else:
        m, _ = build_padded(g, args.k)
        _emit(args, format_matrix(m))
    return EXIT_OK


def cmd_vc(args) -> int:
    g = _load(parse_graph, args.graph)
    r = min_vertex_cover(g)
    _emit(args, f"kappa={r.size}\ncover={','.join(map(str, sorted(r.witness)))}")
    return EXIT_OK


def cmd_chi1(args) -> int:
    m = _load(parse_matrix, args.matrix)
    if m.count_ones() == 0:
        raise InputError("matrix has no ones")
    r = chi1(m, budget=args.budget_seconds)
    lines = []
    if r.exact:
        lines.append(f"chi1={r.value}")
    else:
        lines.append(f"chi1=timeout lower={r.lower} upper={r.upper}")
    if args.witness:
        for q in r.partition:
            lines.append("rect rows=" + ",".join(map(str, sorted(q.rows)))
                         + " cols=" + ",".join(map(str, sorted(q.cols))))
    _emit(args, "\n".join(lines))
    return EXIT_OK if r.exact else EXIT_TIMEOUT


def cmd_cc(args) -> int:
    m = _load(parse_matrix, args.matrix)
    r = cc_exact(m, max_depth=args.max_depth, budget=args.budget_seconds)
    if r.status == "exact":
        _emit(args, f"cc={r.value}")
        return EXIT_OK
    if r.status == "above":
        _emit(args, f"cc>{args.max_depth} lower={r.lower} upper={r.upper}")
        return EXIT_OK
    _emit(args, f"cc=timeout lower={r.lower} upper={r.upper}")
    return EXIT_TIMEOUT


def cmd_leaves(args) -> int:
    m = _load(parse_matrix, args.matrix)
    r = l_exact(m, budget=args.budget_seconds)
    if r.status == "exact":
        _emit(args, f"leaves={r.value}")
        return EXIT_OK
    _emit(args, f"leaves=timeout lower={r.lower} upper={r.upper}")
    return EXIT_TIMEOUT


def cmd_protocol(args) -> int:
    action = args.action
    if action == "build":
        g = _load(parse_graph, args.graph)
        cover = _parse_cover(args.cover) if args.cover else set(min_vertex_cover(g).witness)
        if not is_vertex_cover(g, cover):
            raise InputError(f"{sorted(cover)} is not a vertex cover")
        if args.k is not None and args.k < 0:
            raise InputError("k must be non-negative")
        params = reduction_params(g, args.k) if args.k is not None else None
        p = build_explicit_protocol(g, cover, params)
        if args.binary:
            p = binarize(p)
        _emit(args, format_protocol(p))
        return EXIT_OK
    p = _load(parse_protocol, args.protocol)
    if action == "binarize":
        _emit(args, format_protocol(binarize(p)))
        return EXIT_OK
    if action == "metrics":
        mt = metrics(p)
        _emit(args, "\n".join(f"{k}={getattr(mt, k)}" for k in mt.__dataclass_fields__))
        return EXIT_OK
    if action == "eval":
        try:
            row, col = parse_row_label(args.row), parse_col_label(args.col)
            _emit(args, str(evaluate(p, row, col)))
        except (ValueError, KeyError) as e:
            raise InputError(str(e)) from None
        return EXIT_OK
    if action == "verify":
        m = _load(parse_matrix, args.matrix)
        try:
            ok = verify_protocol(p, m)
        except ValueError as e:
            raise InputError(str(e)) from None
        _emit(args, f"PROPERTY protocol_correct {'PASS' if ok else 'FAIL'} inputs={m.n_rows * m.n_cols}")
        return EXIT_OK if ok else EXIT_FAIL
    raise InputError(f"unknown protocol action {action}")


def cmd_decide(args) -> int:
    g = _load(parse_graph, args.graph)
    if args.k < 0:
        raise InputError("k must be non-negative")
    budget = args.budget_seconds
    cfg = DecideConfig(budget=budget, search_budget=args.search_seconds)
    try:
        v = decide_vc_via_cc(g, args.k, cfg)
    except AssertionError as e:
        _emit(args, f"PROPERTY verdict_matches_vertex_cover FAIL {e}")
        return EXIT_FAIL
    _emit(args, "\n".join(v.lines()))
    return EXIT_OK if v.conclusive else EXIT_TIMEOUT


def cmd_selftest(args) -> int:
    cfg = SuiteConfig(seed=args.seed, count=args.count, max_rows=args.max_size,
                      max_cols=args.max_size, include_constant=args.include_constant)
    lines, ok = property_suite(cfg)
    _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-seconds", type=float, default=None,
                        help="wall-clock limit for the exact solvers")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--out", default=None, help="write the result here instead of stdout")

    ap = argparse.ArgumentParser(prog="cchard", description="Vertex cover to communication complexity toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="graph file to reduction matrix")
    p.add_argument("graph")
    p.add_argument("--k", type=int, default=None, help="pad for threshold k")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("vc", parents=[common], help="minimum vertex cover")
    p.add_argument("graph")
    p.set_defaults(func=cmd_vc)

    p = sub.add_parser("chi1", parents=[common], help="exact 1-partition number")
    p.add_argument("matrix")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_chi1)

    p = sub.add_parser("cc", parents=[common], help="exact communication complexity")
    p.add_argument("matrix")
    p.add_argument("--max-depth", type=int, default=None)
    p.set_defaults(func=cmd_cc)

    p = sub.add_parser("leaves", parents=[common], help="minimum protocol leaf count")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_leaves)

    p = sub.add_parser("protocol", help="protocol trees")
    psub = p.add_subparsers(dest="action", required=True)
    q = psub.add_parser("build", parents=[common])
    q.add_argument("graph")
    q.add_argument("--cover", default=None, help="comma separated cover, default a minimum one")
    q.add_argument("--k", type=int, default=None, help="build for the padded matrix")
    q.add_argument("--binary", action="store_true", help="binarize before writing")
    q = psub.add_parser("eval", parents=[common])
    q.add_argument("protocol")
    q.add_argument("row")
    q.add_argument("col")
    q = psub.add_parser("verify", parents=[common])
    q.add_argument("protocol")
    q.add_argument("matrix")
    for name in ("binarize", "metrics"):
        q = psub.add_parser(name, parents=[common])
        q.add_argument("protocol")
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("decide", parents=[common], help="decide kappa(G) <= k through CC bounds")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    p.add_argument("--search-seconds", type=float, default=10.0,
                   help="budget for searching a shallower left branch")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("selftest", parents=[common], help="seeded property suite")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--include-constant", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
