#!/usr/bin/env python3
"""Reproduce the speed/accuracy table: every (density, tolerance, model) cell
on a one-period bound-spanning loop, timed over repeated runs and scored
against the classical model at the tightest tolerance.

Example:
    python3 scripts/speed_accuracy_table.py --repeats 20 --out results/table.csv
"""

import argparse
import sys

from preisach.bench import DEFAULT_TOLS, speed_accuracy_sweep


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=20, help="timed runs per cell")
    ap.add_argument("--rate", type=float, default=1000.0, help="samples per loop")
    ap.add_argument("--tols", type=float, nargs="+", default=list(DEFAULT_TOLS))
    ap.add_argument("--parallel-cells", type=int, default=1, metavar="N",
                    help="worker threads (keep 1 for trustworthy timings)")
    ap.add_argument("--out", default=None, help="write CSV here instead of stdout")
    args = ap.parse_args(argv)

    result = speed_accuracy_sweep(tols=tuple(args.tols), rate=args.rate,
                                  repeats=args.repeats, max_workers=args.parallel_cells)
    csv = result.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)

    by_cell = {(r.pdf, r.tol, r.model): r for r in result.reports}
    pdfs = sorted({r.pdf for r in result.reports})
    tight = min(args.tols)
    print(f"\nwall time {result.wall_s:.1f} s; at tol {tight:g}:", file=sys.stderr)
    for pdf in pdfs:
        ratio = by_cell[(pdf, tight, "cspm")].tau_mean_ms / by_cell[(pdf, tight, "sspm")].tau_mean_ms
        e = by_cell[(pdf, tight, "sspm")].e_max_pct
        print(f"  {pdf:8s} speedup {ratio:7.1f}x   max error {e:.5f}%", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
