"""Command-line front end.

Subcommands:

* ``run``            simulate one input sequence, write a trajectory CSV
* ``bench``          speed/accuracy sweep over densities x tolerances x models
* ``sampling-study`` decimation study of the incremental model's rate sensitivity
* ``oracle-check``   three-way agreement check against the relay-grid oracle

Exit codes: 0 success, 1 usage or configuration error, 2 check failure
(an ``oracle-check`` disagreement above threshold).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from .bench import sampling_rate_study, speed_accuracy_sweep
from .config import Config, ConfigError, load_config
from .cspm import CspmModel
from .metrics import relative_error_series
from .oracle import HysteronGrid
from .sspm import SspmModel

log = logging.getLogger(__name__)

ENV_CONFIG = "PREISACH_CONFIG"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; route through our own codes
    def error(self, message: str) -> None:
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="preisach", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: _Parser) -> None:
        p.add_argument("--config", default=None,
                       help=f"config file (key = value lines); default ${ENV_CONFIG}")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="override one config key")
        p.add_argument("-v", "--verbose", action="store_true", help="log progress")

    p_run = sub.add_parser("run", help="simulate one input sequence")
    common(p_run)
    p_run.add_argument("--dump-memory", metavar="PATH", default=None,
                       help="write the final staircase memory as CSV")

    p_bench = sub.add_parser("bench", help="speed/accuracy sweep")
    common(p_bench)
    timing = p_bench.add_mutually_exclusive_group()
    timing.add_argument("--serial-timing", dest="workers", action="store_const",
                        const=1, default=1,
                        help="time cells one at a time (default; reliable wall clocks)")
    timing.add_argument("--parallel-cells", dest="workers", type=int, metavar="N",
                        help="time cells on N threads (faster, noisier timings)")

    p_study = sub.add_parser("sampling-study", help="sample-rate sensitivity study")
    common(p_study)

    p_oracle = sub.add_parser("oracle-check", help="cross-check models against the relay grid")
    common(p_oracle)

    return parser


def _open_output(cfg: Config):
    path = cfg.raw("output.path")
    if path:
        return open(path, "w"), path
    return sys.stdout, None


def _write_out(cfg: Config, text: str) -> None:
    out, path = _open_output(cfg)
    try:
        out.write(text)
    finally:
        if path:
            out.close()
            log.info("wrote %s", path)


def cmd_run(args: argparse.Namespace, cfg: Config) -> int:
    which = cfg.get_choice("model", ("sspm", "cspm", "both"))
    bounds = cfg.bounds()
    pdf = cfg.pdf()
    q = cfg.quadrature()
    s = cfg.sampling()
    mem0 = cfg.initial_memory(bounds)
    seq = cfg.signal()
    columns: dict[str, np.ndarray] = {"t": seq.t, "x": seq.x}
    final_memory = None
    if which in ("sspm", "both"):
        model = SspmModel(pdf, bounds, q, s, mem0,
                          reanchor=cfg.get_bool("sspm.reanchor"),
                          unscaled=cfg.get_bool("sspm.unscaled"))
        columns["y_sspm"] = model.run(seq.x)
        final_memory = model.memory
    if which in ("cspm", "both"):
        model = CspmModel(pdf, bounds, q, mem0)
        columns["y_cspm"] = model.run(seq.x)
        final_memory = model.memory
    if which == "both":
        columns["e_rel_pct"] = relative_error_series(columns["y_sspm"], columns["y_cspm"])
    header = ",".join(columns)
    rows = np.column_stack(list(columns.values()))
    lines = [header] + [",".join(f"{v:.17g}" for v in row) for row in rows]
    _write_out(cfg, "\n".join(lines) + "\n")
    if args.dump_memory:
        final_memory.to_csv(args.dump_memory)
        log.info("final memory (%d corners) written to %s", len(final_memory), args.dump_memory)
    return 0


def cmd_bench(args: argparse.Namespace, cfg: Config) -> int:
    result = speed_accuracy_sweep(
        bounds=cfg.bounds(),
        tols=cfg.get_floats("bench.tols"),
        rate=cfg.get_float("sampling.rate"),
        repeats=cfg.get_int("bench.repeats"),
        max_workers=args.workers,
        max_depth=cfg.get_int("quadrature.max_depth"),
    )
    _write_out(cfg, result.to_csv())
    log.info("sweep wall time: %.1f s", result.wall_s)
    return 0


def cmd_sampling_study(args: argparse.Namespace, cfg: Config) -> int:
    result = sampling_rate_study(
        cfg.pdf(), cfg.bounds(), cfg.quadrature(),
        band=(cfg.get_float("signal.band_lo"), cfg.get_float("signal.band_hi")),
        tones=cfg.get_int("signal.tones"),
        peak=cfg.get_float("signal.peak"),
        bias=cfg.get_float("signal.bias"),
        duration=cfg.get_float("signal.duration"),
        master_rate=cfg.get_float("study.master_rate"),
        factors=cfg.get_ints("study.factors"),
        seed=cfg.get_int("signal.seed"),
    )
    _write_out(cfg, result.to_csv())
    return 0


def cmd_oracle_check(args: argparse.Namespace, cfg: Config) -> int:
    bounds = cfg.bounds()
    pdf = cfg.pdf()
    q = cfg.quadrature()
    seq = cfg.signal()
    threshold = cfg.get_float("oracle.threshold_pct")
    ys = {
        "cspm": CspmModel(pdf, bounds, q).run(seq.x),
        "sspm": SspmModel(pdf, bounds, q, cfg.sampling()).run(seq.x),
        "oracle": HysteronGrid(pdf, bounds, cfg.get_int("oracle.n"),
                               cfg.get_choice("oracle.init", ("negative", "demag"))).run(seq.x),
    }
    worst = 0.0
    lines = ["pair,e_max_pct"]
    for a, b in (("cspm", "sspm"), ("cspm", "oracle"), ("sspm", "oracle")):
        e = float(relative_error_series(ys[b], ys[a]).max())
        worst = max(worst, e)
        lines.append(f"{a}-{b},{e:.6g}")
        log.info("%s vs %s: max %.4f%% (threshold %g%%)", a, b, e, threshold)
    _write_out(cfg, "\n".join(lines) + "\n")
    if worst > threshold:
        print(f"FAIL: worst pairwise error {worst:.4g}% exceeds {threshold:g}%",
              file=sys.stderr)
        return 2
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        cfg = load_config(args.config or os.environ.get(ENV_CONFIG) or None, args.overrides)
        handler = {
            "run": cmd_run,
            "bench": cmd_bench,
            "sampling-study": cmd_sampling_study,
            "oracle-check": cmd_oracle_check,
        }[args.command]
        return handler(args, cfg)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
