"""Classify every submodule of each shape in a sweep and tabulate K/B/FPP agreement.

    python scripts/theorem_sweep.py --max-order 128 --primes 2 3
"""

import argparse
import time
from dataclasses import dataclass

from sympy.utilities.iterables import partitions

from regsub.module import ModuleShape
from regsub.regularity import check_B, check_FPP, check_K
from regsub.submodule import enumerate_submodules


@dataclass(frozen=True)
class SweepConfig:
    primes: tuple[int, ...] = (2, 3)
    max_order: int = 81
    max_rank: int = 4


def shapes(cfg):
    for p in cfg.primes:
        n = 1
        while p**n <= cfg.max_order:
            for part in partitions(n):
                yield ModuleShape(p, tuple(k for k, m in part.items() for _ in range(m)))
            n += 1


def sweep(cfg):
    rows = []
    for S in shapes(cfg):
        if S.rank > cfg.max_rank:
            continue
        t0 = time.perf_counter()
        subs = enumerate_submodules(S)
        regular = disagree = 0
        for W in subs:
            v = {check_K(W).verdict, check_B(W).verdict, check_FPP(W).verdict}
            disagree += len(v) > 1
            regular += v == {True}
        rows.append((S, len(subs), regular, disagree, time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(SweepConfig.primes))
    ap.add_argument("--max-order", type=int, default=SweepConfig.max_order)
    ap.add_argument("--max-rank", type=int, default=SweepConfig.max_rank)
    a = ap.parse_args()
    cfg = SweepConfig(tuple(a.primes), a.max_order, a.max_rank)
    print(f"{'p':>2} {'shape':<14} {'subs':>6} {'regular':>8} {'disagree':>9} {'secs':>7}")
    total = 0
    for S, n, reg, bad, dt in sweep(cfg):
        total += bad
        print(f"{S.prime:>2} {str(S.exponents):<14} {n:>6} {reg:>8} {bad:>9} {dt:>7.2f}")
    print(f"total disagreements: {total}")
    return 1 if total else 0


if __name__ == "__main__":
    raise SystemExit(main())
