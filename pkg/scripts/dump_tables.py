#!/usr/bin/env python3
"""Dump canonical tables for one system, one twist, several bases.

    python3 scripts/dump_tables.py B3
    python3 scripts/dump_tables.py A3 --theta 2,1,0 --bases pi,iota --format csv
    python3 scripts/dump_tables.py "I2(5)" --out tables/
"""

import argparse
import pathlib

from ivhecke.coxeter import parse_system
from ivhecke.ivmodules import TABLE_LABELS, canonical_table
from ivhecke.twisted import TwistedBlock, parse_theta

EXT = {"text": "txt", "csv": "csv", "json": "json"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("system", help='e.g. A3, B3, H3, D4, "I2(7)"')
    ap.add_argument("--theta", default="id", help='"id" or a permutation like 2,1,0')
    ap.add_argument("--bases", default=",".join(TABLE_LABELS))
    ap.add_argument("--format", choices=tuple(EXT), default="text")
    ap.add_argument("--out", default=None, help="directory; default prints to stdout")
    args = ap.parse_args()

    W = parse_system(args.system)
    theta = parse_theta(W, args.theta)
    block = TwistedBlock(W, theta)
    outdir = pathlib.Path(args.out) if args.out else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)

    for label in (b.strip() for b in args.bases.split(",") if b.strip()):
        table = canonical_table(W, theta, label, block=None if label == "h" else block)
        body = {"text": table.to_text, "csv": table.to_csv, "json": table.to_json}[args.format]()
        if outdir is None:
            print(f"# {args.system}  theta={','.join(map(str, theta))}  basis={label}")
            print(body)
        else:
            stem = f"{args.system.replace('(', '').replace(')', '')}_t{''.join(map(str, theta))}_{label}"
            path = outdir / f"{stem}.{EXT[args.format]}"
            path.write_text(body if body.endswith("\n") else body + "\n")
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
