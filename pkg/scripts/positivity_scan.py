#!/usr/bin/env python3
"""Scan the coefficient floors of (h + pi)/2 and (h - pi)/2 per block.

Both halves are integral (mod-2 congruence of the tables) and, on every
block computed so far, have nonnegative coefficients.  The nonnegativity
is an observation, not a verified invariant, so this scan exists to
throw larger batteries at it.  Exit status 1 if a negative coefficient
ever shows up.

    python3 scripts/positivity_scan.py A3 B3 H3 D4
    python3 scripts/positivity_scan.py "I2(9)" "I2(10)"
"""

import argparse
import sys

from ivhecke.coxeter import parse_system
from ivhecke.hecke import HeckeAlgebra
from ivhecke.ivmodules import TwistedModule
from ivhecke.twisted import TwistedBlock, involutive_automorphisms


def block_floors(h_table, block) -> tuple[int, int]:
    """Minimum coefficient of (h + pi)/2 and (h - pi)/2 over block pairs."""
    pi_table = TwistedModule(block, "pi").canonical_table()
    hidx = {w: i for i, w in enumerate(h_table.elements)}
    lo_plus = lo_minus = 0
    n = len(block)
    for j in range(n):
        for i in range(n):
            a = h_table.entry(hidx[block.elements[i]], hidx[block.elements[j]])
            b = pi_table.entry(i, j)
            if not a and not b:
                continue
            da, db = dict(a.terms()), dict(b.terms())
            for e in set(da) | set(db):
                ca, cb = da.get(e, 0), db.get(e, 0)
                if (ca + cb) % 2:
                    raise AssertionError(
                        f"odd coefficient at pair ({block.elements[i]}, {block.elements[j]})"
                    )
                lo_plus = min(lo_plus, (ca + cb) // 2)
                lo_minus = min(lo_minus, (ca - cb) // 2)
    return lo_plus, lo_minus


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("systems", nargs="+", help='e.g. A3 B3 H3 D4 "I2(9)"')
    ap.add_argument("--max-elements", type=int, default=None)
    args = ap.parse_args()

    bad = False
    for name in args.systems:
        kwargs = {"max_elements": args.max_elements} if args.max_elements else {}
        W = parse_system(name, **kwargs)
        h = HeckeAlgebra(W).kl_table()
        for theta in involutive_automorphisms(W):
            block = TwistedBlock(W, theta)
            lo_plus, lo_minus = block_floors(h, block)
            ok = lo_plus >= 0 and lo_minus >= 0
            bad = bad or not ok
            print(
                f"{name:8s} theta={','.join(map(str, theta)):10s} block={len(block):4d}"
                f"  floor(h+pi)/2={lo_plus:3d}  floor(h-pi)/2={lo_minus:3d}"
                f"  {'ok' if ok else 'NEGATIVE'}"
            )
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
