"""Settle CC(f'_G) at the boundary k = kappa(G) for every small graph.

At k = kappa the padded matrix has chi1 = 2^(ell+1), so the lower bound is
ell+2, while the explicit protocol needs ell+3 as soon as the zero pad rows
cost a message. This script runs the tight-depth test from tight_depth.py
on each graph and reports which value CC actually takes.

Usage:  python scripts/boundary_sweep.py --max-n 3 --seconds 120
"""

import argparse
import signal
import time

from cchard.graphs import all_graphs, min_vertex_cover
from cchard.reduction import build_padded

from tight_depth import tight_depth_possible


class _Alarm(Exception):
    pass


def _raise(*_):
    raise _Alarm


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--seconds", type=int, default=120, help="per graph")
    args = ap.parse_args(argv)
    signal.signal(signal.SIGALRM, _raise)
    tally = {}
    for n in range(args.max_n + 1):
        for g in all_graphs(n):
            k = min_vertex_cover(g).size
            m, p = build_padded(g, k)
            t = time.perf_counter()
            signal.alarm(args.seconds)
            try:
                ok, tried = tight_depth_possible(m, p.ell + 2)
                cc = f"{p.ell + 2}" if ok else f"{p.ell + 3}"
                label = "ell+2" if ok else "ell+3"
            except _Alarm:
                cc, label, tried = "?", "timeout", "-"
            finally:
                signal.alarm(0)
            tally[label] = tally.get(label, 0) + 1
            print(f"n={n} edges={list(g.edges)} k=kappa={k} ell={p.ell} CC={cc} ({label}) "
                  f"partitions={tried} {time.perf_counter() - t:.1f}s", flush=True)
    print(" ".join(f"{k}={v}" for k, v in sorted(tally.items())))


if __name__ == "__main__":
    main()
