"""Engine against the brute-force oracle on seeded random nets, per policy.

    python3 scripts/oracle_sweep.py --count 500 --seed 0
"""
import argparse
import time
from collections import Counter

from inet.config import PRECLUSION_POLICIES, Resolver
from inet.engine import Engine
from inet.net import NEG, POS
from inet.oracle import enumerate_paths, naive_is_valid, random_diagrams, seed_from_env


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--max-nodes", type=int, default=8)
    ap.add_argument("--density", type=float, default=0.25)
    ap.add_argument("--seed", type=int, default=None)
    args = ap.parse_args()
    seed = seed_from_env() if args.seed is None else args.seed

    nets = list(random_diagrams(args.count, seed, max_nodes=args.max_nodes, density=args.density))
    for base in PRECLUSION_POLICIES:
        for resolver in Resolver:
            cfg = base.replace(resolver=resolver)
            start = time.perf_counter()
            paths = bad = 0
            verdicts = Counter()
            for g in nets:
                e = Engine(g, cfg)
                for x, y in g.pairs():
                    verdicts[e.verdict(x, y)] += 1
                    for p in enumerate_paths(g, x, y):
                        paths += 1
                        bad += e.is_valid(p) != naive_is_valid(g, p, cfg)
            print(f"{str(cfg):40s} paths {paths:6d}  mismatches {bad}  "
                  f"pos/neg/none {verdicts[POS]}/{verdicts[NEG]}/{verdicts[None]}  "
                  f"{time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
