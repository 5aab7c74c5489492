"""State-space scalar Preisach model: one segment quadrature per sample.

Instead of re-integrating the whole switched region, each sample updates the
previous output with the mass swept by the staircase front.  For a move from
the operative level ``op`` to ``x`` the swept sliver is a triangle-capped
rectangle along the front; evaluating one line integral at the midpoint level
``op + dx/2`` and scaling by the move width gives an increment that is exact
for constant densities and second-order accurate in the step size otherwise.
The cost per sample is one 1-D adaptive quadrature, independent of how much
history the memory carries.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .cspm import _run_capacity, cspm_output
from .density import Density, PlaneBounds, QuadratureConfig, QuadratureWarning, total_mass
from .memory import REL_EPS, MemoryVector, saturation_state

__all__ = ["SamplingConfig", "SspmState", "initial_state", "sspm_step",
           "run_sequence", "SspmModel"]


@dataclass(frozen=True)
class SamplingConfig:
    """Sample rate of the input sequence plus the optional substep limit.

    ``substep`` caps the input move handled by a single increment; larger
    moves are split into equal internal increments, trading extra segment
    integrals for smaller midpoint-rule error on coarsely sampled inputs.
    """

    rate: float = 1000.0
    substep: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rate) and self.rate > 0.0):
            raise ValueError(f"rate must be positive, got {self.rate}")
        if self.substep is not None and not self.substep > 0.0:
            raise ValueError(f"substep must be positive, got {self.substep}")

    @property
    def dt(self) -> float:
        return 1.0 / self.rate


@dataclass(frozen=True)
class SspmState:
    """Model state: the running output and the staircase memory."""

    y: float
    memory: MemoryVector


def initial_state(pdf: Density, mem: MemoryVector,
                  q: QuadratureConfig = QuadratureConfig()) -> SspmState:
    """State whose output is anchored to the double-integral map of ``mem``,
    so both model forms start from identical ground."""
    return SspmState(cspm_output(pdf, mem, mem.bounds, q), mem)


def sspm_step(pdf: Density, state: SspmState, x_new: float,
              q: QuadratureConfig = QuadratureConfig(),
              s: SamplingConfig | None = None, *, unscaled: bool = False) -> SspmState:
    """One incremental update; returns the new state.

    ``unscaled`` drops the move-width factor from the increment (sign only),
    a deliberately degraded variant kept for step-size experiments.
    """
    kind, params = pdf.pack()
    bounds = state.memory.bounds
    start = state.memory.to_array()
    buf = np.empty((start.shape[0] + 4, 2))
    buf[: start.shape[0]] = start
    substep = s.substep if s is not None and s.substep is not None else 0.0
    n, y, flags = _kernels.sspm_step_kernel(
        kind, params, buf, start.shape[0], state.y, float(x_new), q.tol, q.max_depth,
        REL_EPS * bounds.span, bounds.x_min, bounds.x_max, substep, unscaled,
    )
    if flags:
        warnings.warn("segment quadrature missed tolerance", QuadratureWarning, stacklevel=2)
    return SspmState(y, MemoryVector.from_array(buf[:n]))


def run_sequence(pdf: Density, state: SspmState, xs: np.ndarray,
                 q: QuadratureConfig = QuadratureConfig(),
                 s: SamplingConfig | None = None, *,
                 reanchor: bool = False, unscaled: bool = False,
                 ) -> tuple[np.ndarray, SspmState]:
    """Outputs for a whole input sequence plus the final state.

    ``reanchor`` resets the accumulator to the exact saturation output
    whenever the memory collapses to two corners, which stops incremental
    drift from surviving across major-loop excursions.
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    kind, params = pdf.pack()
    bounds = state.memory.bounds
    start = state.memory.to_array()
    buf = np.empty((_run_capacity(start.shape[0], xs), 2))
    buf[: start.shape[0]] = start
    substep = s.substep if s is not None and s.substep is not None else 0.0
    mass = total_mass(pdf, bounds, q) if reanchor else 0.0
    ys, n, flags = _kernels.run_sspm(
        kind, params, buf, start.shape[0], state.y, xs, q.tol, q.max_depth,
        REL_EPS * bounds.span, bounds.x_min, bounds.x_max,
        substep, unscaled, reanchor, mass,
    )
    if flags:
        warnings.warn(f"{flags} segment quadrature(s) missed tolerance",
                      QuadratureWarning, stacklevel=2)
    return ys, SspmState(ys[-1] if len(ys) else state.y, MemoryVector.from_array(buf[:n]))


@dataclass
class SspmModel:
    """Stateful wrapper mirroring :class:`preisach.cspm.CspmModel`."""

    pdf: Density
    bounds: PlaneBounds = field(default_factory=PlaneBounds)
    q: QuadratureConfig = field(default_factory=QuadratureConfig)
    s: SamplingConfig = field(default_factory=SamplingConfig)
    memory: MemoryVector | None = None
    reanchor: bool = False
    unscaled: bool = False

    def __post_init__(self) -> None:
        if self.memory is None:
            self.memory = saturation_state(self.bounds, -1)
        elif self.memory.bounds != self.bounds:
            raise ValueError(f"memory bounds {self.memory.bounds} do not match {self.bounds}")
        self._kind, self._params = self.pdf.pack()
        self._mass = total_mass(self.pdf, self.bounds, self.q)
        self._eps = REL_EPS * self.bounds.span
        self.y = cspm_output(self.pdf, self.memory, self.bounds, self.q)

    def reset(self, memory: MemoryVector | None = None) -> None:
        """Restore the given memory (negative saturation by default) and
        re-anchor the output to its double-integral value."""
        if memory is None:
            self.memory = saturation_state(self.bounds, -1)
            self.y = -self._mass
            return
        if memory.bounds != self.bounds:
            raise ValueError(f"memory bounds {memory.bounds} do not match {self.bounds}")
        self.memory = memory
        self.y = cspm_output(self.pdf, self.memory, self.bounds, self.q)

    @property
    def state(self) -> SspmState:
        return SspmState(self.y, self.memory)

    def step(self, x: float) -> float:
        st = sspm_step(self.pdf, self.state, x, self.q, self.s, unscaled=self.unscaled)
        self.y, self.memory = st.y, st.memory
        return self.y

    def run(self, xs: np.ndarray) -> np.ndarray:
        """Outputs for a whole input sequence (loop stays in compiled code)."""
        xs = np.ascontiguousarray(xs, dtype=np.float64)
        start = self.memory.to_array()
        buf = np.empty((_run_capacity(start.shape[0], xs), 2))
        buf[: start.shape[0]] = start
        substep = self.s.substep if self.s.substep is not None else 0.0
        ys, n, flags = _kernels.run_sspm(
            self._kind, self._params, buf, start.shape[0], self.y, xs,
            self.q.tol, self.q.max_depth, self._eps,
            self.bounds.x_min, self.bounds.x_max,
            substep, self.unscaled, self.reanchor, self._mass,
        )
        self.memory = MemoryVector.from_array(buf[:n])
        if len(ys):
            self.y = float(ys[-1])
        if flags:
            warnings.warn(f"{flags} segment quadrature(s) missed tolerance",
                          QuadratureWarning, stacklevel=2)
        return ys
