#!/usr/bin/env python3
"""Reproduce the generic-structure classification counts.

Runs the three classification modes (hw: group blocks, hi: one-parameter
twisted blocks, h2i: squared-parameter twisted blocks) over a battery of
systems and prints the survivor/class summary.  With --scans it also runs
the two raw representation scans (144-candidate and 8-candidate grids).

    python3 scripts/run_classification.py
    python3 scripts/run_classification.py --modes h2i --systems "I2(3),I2(4)"
    python3 scripts/run_classification.py --scans --out reports/
"""

import argparse
import pathlib
import time

from ivhecke.classify import (
    DEFAULT_SYSTEMS,
    classification_run,
    enumerate_candidates,
    representation_scan,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--modes", default="hw,hi,h2i", help="comma-separated subset of hw,hi,h2i")
    ap.add_argument("--systems", default=",".join(DEFAULT_SYSTEMS))
    ap.add_argument(
        "--scans", action="store_true", help="also run the 144/8 candidate-grid scans"
    )
    ap.add_argument("--out", default=None, help="directory for full JSON reports")
    args = ap.parse_args()

    systems = tuple(s.strip() for s in args.systems.split(",") if s.strip())
    outdir = pathlib.Path(args.out) if args.out else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)

    def save(stem: str, report) -> None:
        if outdir is None:
            return
        path = outdir / f"{stem}.json"
        path.write_text(report.to_json() + "\n")
        print(f"  wrote {path}")

    print(f"battery: {', '.join(systems)}")

    if args.scans:
        for case in ("both_zero", "left_nonzero"):
            t0 = time.perf_counter()
            rep = representation_scan(enumerate_candidates(case), systems)
            dt = time.perf_counter() - t0
            print(
                f"scan {case:12s}: {len(rep.candidates):3d} candidates,"
                f" {rep.survivor_count} satisfy the relations ({dt:.1f}s)"
            )
            save(f"scan_{case}", rep)

    for mode in (m.strip() for m in args.modes.split(",") if m.strip()):
        t0 = time.perf_counter()
        rep = classification_run(mode, systems)
        dt = time.perf_counter() - t0
        print(
            f"mode {mode:4s}: {rep.survivor_count:2d} survivors"
            f" in {len(rep.classes)} equivalence classes ({dt:.1f}s)"
        )
        for k, cls in enumerate(rep.classes):
            print(f"  class {k}: {', '.join(cls)}")
        save(f"classify_{mode}", rep)


if __name__ == "__main__":
    main()
