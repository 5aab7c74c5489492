"""Scalar Preisach hysteresis models.

Two interchangeable formulations of the same operator plus a brute-force
cross-check:

* :mod:`preisach.cspm` — classical form, one region quadrature per sample,
* :mod:`preisach.sspm` — state-space form, one segment quadrature per sample,
* :mod:`preisach.oracle` — explicit relay grid, no quadrature at all.

Supporting pieces: density families and plane integrals
(:mod:`preisach.density`), staircase memory (:mod:`preisach.memory`), input
generators (:mod:`preisach.signals`), accuracy/timing metrics
(:mod:`preisach.metrics`) and benchmark harnesses (:mod:`preisach.bench`).
"""

from .bench import (default_densities, rate_doubling_study, sampling_rate_study,
                    speed_accuracy_sweep)
from .cspm import CspmModel, cspm_output, cspm_step
from .density import (Density, ExponentialDecay, GaussComponent, GaussianMixture,
                      PlaneBounds, QuadratureConfig, QuadratureWarning, Uniform,
                      density_grid, eval_density, region_integral,
                      segment_integral_alpha, segment_integral_beta, total_mass)
from .memory import (MemoryVector, Vertex, apply_input, ground_state, last_extremum,
                     saturation_state, update_decrease, update_increase)
from .metrics import (MetricsReport, error_metrics, relative_error_series,
                      time_repeated, timing_metrics)
from .oracle import HysteronGrid, oracle_run, oracle_step
from .signals import (InputSequence, decaying_sine, load_csv,
                      major_loop_sine, multisine, save_csv)
from .sspm import (SamplingConfig, SspmModel, SspmState, initial_state, run_sequence,
                   sspm_step)

__version__ = "0.1.0"

__all__ = [
    "CspmModel", "cspm_output", "cspm_step",
    "SspmModel", "SspmState", "SamplingConfig", "initial_state", "sspm_step",
    "run_sequence",
    "HysteronGrid", "oracle_run", "oracle_step",
    "Density", "Uniform", "ExponentialDecay", "GaussianMixture", "GaussComponent",
    "PlaneBounds", "QuadratureConfig", "QuadratureWarning",
    "eval_density", "density_grid", "segment_integral_alpha", "segment_integral_beta",
    "region_integral", "total_mass",
    "MemoryVector", "Vertex", "saturation_state", "ground_state",
    "update_increase", "update_decrease", "apply_input", "last_extremum",
    "InputSequence", "major_loop_sine", "multisine", "decaying_sine",
    "load_csv", "save_csv",
    "MetricsReport", "relative_error_series", "error_metrics", "timing_metrics",
    "time_repeated",
    "default_densities", "speed_accuracy_sweep", "sampling_rate_study",
    "rate_doubling_study",
    "__version__",
]
