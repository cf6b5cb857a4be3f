"""Run the vertex cover decision through CC bounds on every small graph.

Prints one line per (graph, k) with the certified bounds and the verdict,
then a summary grouped by how kappa compares with k.

Usage:  python scripts/decide_table.py --max-n 4 --search-seconds 2
"""

import argparse
import time
from collections import Counter

from cchard.graphs import all_graphs
from cchard.pipeline import DecideConfig, decide_vc_via_cc


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--search-seconds", type=float, default=2.0)
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args(argv)
    cfg = DecideConfig(budget=60, search_budget=args.search_seconds)
    summary = Counter()
    t0 = time.perf_counter()
    for n in range(args.max_n + 1):
        for g in all_graphs(n):
            for k in range(n + 1):
                v = decide_vc_via_cc(g, k, cfg)
                rel = "kappa<k" if v.kappa < k else ("kappa=k" if v.kappa == k else "kappa>k")
                summary[(rel, v.verdict)] += 1
                if not args.quiet:
                    print(f"n={n} edges={list(g.edges)} k={k} kappa={v.kappa} ell={v.ell} "
                          f"chi1={v.chi1} cc in [{v.cc_lower},{v.cc_upper}] "
                          f"{v.upper_source} -> {v.verdict}")
    for (rel, verdict), count in sorted(summary.items()):
        print(f"{rel:8s} {verdict:13s} {count}")
    print(f"time={time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
