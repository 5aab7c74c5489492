#!/usr/bin/env python3
"""Convergence order of the incremental update: on a nested-loop drive the
per-step midpoint error is second order, so doubling the sample rate should
cut the worst deviation from the classical model by about four.

Example:
    python3 scripts/convergence_study.py --pdf exp --rate-hi 100
"""

import argparse

import numpy as np

from preisach.bench import default_densities, rate_doubling_study
from preisach.density import QuadratureConfig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pdf", choices=("uniform", "exp", "gauss"), default="exp")
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--rate-hi", type=float, default=100.0)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3, 4])
    args = ap.parse_args(argv)

    rows = rate_doubling_study(default_densities()[args.pdf],
                               q=QuadratureConfig(args.tol),
                               rate_hi=args.rate_hi, seeds=tuple(args.seeds))
    print("seed,dev_lo_pct,dev_hi_pct,ratio")
    for r in rows:
        print(f"{r.seed},{r.dev_lo_pct:.6g},{r.dev_hi_pct:.6g},{r.ratio:.3f}")
    gmean = float(np.exp(np.mean(np.log([r.ratio for r in rows]))))
    print(f"# geometric mean ratio: {gmean:.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
