"""Random search for matrices with L(f) < 2 chi1(f).

Exploratory only. For each seeded random matrix we compute the exact
minimum leaf count and chi1 and keep the smallest ratio L / chi1 seen.
Imbalanced matrices (few ones in a sea of zeros, or the reverse) are the
natural place to look, so the density is drawn from a wide range.

Usage:  python scripts/leaf_ratio_search.py --count 2000 --max-size 5 --seed 3
"""

import argparse
import random
import time

from cchard.matrix import CommMatrix
from cchard.solvers import chi1, l_exact


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--max-size", type=int, default=5)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--budget-seconds", type=float, default=5.0, help="per matrix")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    best = None
    found = 0
    t0 = time.perf_counter()
    for _ in range(args.count):
        r, c = rng.randint(2, args.max_size), rng.randint(2, args.max_size)
        dens = rng.choice((0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.9))
        m = CommMatrix.from_rows([[int(rng.random() < dens) for _ in range(c)] for _ in range(r)])
        if m.is_constant():
            continue
        L = l_exact(m, budget=args.budget_seconds)
        if L.status != "exact":
            continue
        c1 = chi1(m).value
        ratio = L.value / c1
        if L.value < 2 * c1:
            found += 1
            print(f"L={L.value} chi1={c1} matrix={m.to_lists()}")
        if best is None or ratio < best[0]:
            best = (ratio, L.value, c1, m.to_lists())
    print(f"searched={args.count} below_2chi1={found} time={time.perf_counter() - t0:.1f}s")
    if best:
        print(f"smallest L/chi1={best[0]:.3f} (L={best[1]}, chi1={best[2]}) at {best[3]}")


if __name__ == "__main__":
    main()
