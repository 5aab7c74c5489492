"""Accuracy and timing metrics for model comparisons.

Accuracy is reported as a percentage of the reference output range, so
figures are comparable across densities with different saturation levels.
Timing summarizes repeated wall-clock runs of the same work item; population
statistics are used throughout (a benchmark's repeats are the whole
population of interest, not a sample from a larger one).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, fields
from typing import Callable

import numpy as np

__all__ = ["relative_error_series", "error_metrics", "timing_metrics",
           "time_repeated", "MetricsReport"]


def relative_error_series(ys: np.ndarray, ys_ref: np.ndarray) -> np.ndarray:
    """Pointwise ``|ys - ys_ref|`` as a percentage of the reference range."""
    ys = np.asarray(ys, dtype=float)
    ys_ref = np.asarray(ys_ref, dtype=float)
    if ys.shape != ys_ref.shape:
        raise ValueError(f"shape mismatch: {ys.shape} vs {ys_ref.shape}")
    rng = float(ys_ref.max() - ys_ref.min())
    if rng <= 0.0:
        raise ValueError("reference output range is zero")
    return np.abs(ys - ys_ref) / rng * 100.0


def error_metrics(errors: np.ndarray) -> tuple[float, float, float]:
    """(max, mean, population std) of an error series."""
    errors = np.asarray(errors, dtype=float)
    if errors.size == 0:
        raise ValueError("empty error series")
    return float(errors.max()), float(errors.mean()), float(errors.std())


def timing_metrics(durations_s) -> tuple[float, float, float]:
    """(max, mean, population std) of wall-clock durations, in milliseconds."""
    d = np.asarray(durations_s, dtype=float) * 1e3
    if d.size == 0:
        raise ValueError("no durations")
    if np.any(d < 0.0):
        raise ValueError("durations must be non-negative")
    return float(d.max()), float(d.mean()), float(d.std())


def time_repeated(work: Callable[[], object], repeats: int = 20) -> list[float]:
    """Wall-clock durations of ``repeats`` calls, after one discarded warmup.

    The warmup call absorbs one-off costs (JIT compilation, caches) so the
    measured repeats reflect steady-state behaviour.
    """
    if repeats < 1:
        raise ValueError(f"repeats must be at least 1, got {repeats}")
    work()
    durations = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        work()
        durations.append(time.perf_counter() - t0)
    return durations


@dataclass(frozen=True)
class MetricsReport:
    """One benchmark cell: a (density, tolerance, model) combination."""

    pdf: str
    tol: float
    model: str
    tau_max_ms: float
    tau_mean_ms: float
    tau_std_ms: float
    e_max_pct: float
    e_mean_pct: float
    e_std_pct: float

    def __post_init__(self) -> None:
        for f in ("tau_max_ms", "tau_mean_ms", "tau_std_ms",
                  "e_max_pct", "e_mean_pct", "e_std_pct"):
            v = getattr(self, f)
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"{f} must be finite and non-negative, got {v}")

    @classmethod
    def csv_header(cls) -> str:
        return ",".join(f.name for f in fields(cls))

    def csv_row(self) -> str:
        return (f"{self.pdf},{self.tol:g},{self.model},"
                f"{self.tau_max_ms:.6g},{self.tau_mean_ms:.6g},{self.tau_std_ms:.6g},"
                f"{self.e_max_pct:.6g},{self.e_mean_pct:.6g},{self.e_std_pct:.6g}")
