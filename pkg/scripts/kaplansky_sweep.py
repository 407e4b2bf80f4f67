"""Check that a simultaneous basis of (W, M) exists exactly when W passes K.

    python scripts/kaplansky_sweep.py --max-order 64 --primes 2 3 5 7
"""

import argparse
from dataclasses import dataclass

from regsub.module import ModuleShape
from regsub.regularity import check_K, find_simultaneous_basis, verify_simultaneous_basis
from regsub.submodule import enumerate_submodules
from theorem_sweep import SweepConfig, shapes


@dataclass(frozen=True)
class KaplanskyConfig(SweepConfig):
    primes: tuple[int, ...] = (2, 3, 5, 7)
    max_order: int = 64


def run(cfg):
    bad = 0
    for S in shapes(cfg):
        if S.rank > cfg.max_rank:
            continue
        subs = enumerate_submodules(S)
        found = mismatched = 0
        for W in subs:
            b = find_simultaneous_basis(W)
            ok = (b is not None) == check_K(W).verdict and (b is None or verify_simultaneous_basis(W, b))
            found += b is not None
            mismatched += not ok
        bad += mismatched
        print(f"{S.prime:>2} {str(S.exponents):<14} {len(subs):>6} bases={found:<6} mismatches={mismatched}")
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(KaplanskyConfig.primes))
    ap.add_argument("--max-order", type=int, default=KaplanskyConfig.max_order)
    a = ap.parse_args()
    bad = run(KaplanskyConfig(primes=tuple(a.primes), max_order=a.max_order))
    print(f"total mismatches: {bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
