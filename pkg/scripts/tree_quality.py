"""Edge counts of the exact-tree and ratio constructions against ln N * ln ln N."""

import argparse
import math
import random

from sylab import treesmith
from sylab.cfrac import tree_quality


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=12)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"{'N':>22} {'edges':>6} {'lnN lnlnN':>10} {'ratio':>7}")
    for e in range(2, 2 + args.samples):
        N = rng.randint(10 ** e, 10 ** (e + 1))
        tc = treesmith.exact_tree_graph(N)
        scale = math.log(N) * math.log(math.log(N))
        print(f"{N:>22} {tc.edges:>6} {scale:>10.1f} {tree_quality(N, tc.edges):>7.3f}")

    print()
    print(f"{'A/B':>26} {'edges':>6} {'ratio':>7}")
    for e in range(2, 2 + args.samples):
        B = rng.randint(2, 10 ** e)
        A = rng.randint(B + 1, 10 ** (e + 1))
        rc = treesmith.ratio_graph(A, B)
        q = tree_quality(max(A, B), rc.graph.m)
        print(f"{f'{A}/{B}':>26} {rc.graph.m:>6} {q if q is None else round(q, 3):>7}")


if __name__ == "__main__":
    main()
