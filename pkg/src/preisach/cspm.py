"""Classical scalar Preisach model: output by double integration.

The output is ``y = 2 * (mass over the switched-up region) - (total mass)``;
every sample pays one full region quadrature over the staircase memory, which
is exact up to quadrature tolerance but costs two nested adaptive passes per
strip.  This is the accuracy reference the faster state-space form is
measured against.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .density import (Density, PlaneBounds, QuadratureConfig, QuadratureWarning,
                      region_integral, total_mass)
from .memory import REL_EPS, MemoryVector, apply_input, saturation_state

__all__ = ["cspm_output", "cspm_step", "CspmModel"]


def cspm_output(pdf: Density, mem: MemoryVector, bounds: PlaneBounds,
                q: QuadratureConfig = QuadratureConfig()) -> float:
    """Output of the memory state ``mem`` under density ``pdf``."""
    return 2.0 * region_integral(pdf, mem, bounds, q) - total_mass(pdf, bounds, q)


def cspm_step(pdf: Density, mem: MemoryVector, x: float,
              q: QuadratureConfig = QuadratureConfig()) -> tuple[float, MemoryVector]:
    """Advance the memory to input ``x`` and return ``(output, new memory)``."""
    mem = apply_input(mem, x)
    return cspm_output(pdf, mem, mem.bounds, q), mem


def _run_capacity(n0: int, xs: np.ndarray) -> int:
    # corner count grows only at direction reversals (monotone stretches wipe
    # as much as they append); two extra corners per reversal is an upper bound
    d = np.diff(xs)
    d = d[d != 0.0]
    reversals = int(np.count_nonzero(np.diff(np.sign(d)) != 0.0)) if d.size > 1 else 0
    return n0 + 2 * reversals + 8


@dataclass
class CspmModel:
    """Stateful wrapper holding the density, bounds, tolerance and memory."""

    pdf: Density
    bounds: PlaneBounds = field(default_factory=PlaneBounds)
    q: QuadratureConfig = field(default_factory=QuadratureConfig)
    memory: MemoryVector | None = None

    def __post_init__(self) -> None:
        if self.memory is None:
            self.memory = saturation_state(self.bounds, -1)
        elif self.memory.bounds != self.bounds:
            raise ValueError(f"memory bounds {self.memory.bounds} do not match {self.bounds}")
        self._kind, self._params = self.pdf.pack()
        self._mass = total_mass(self.pdf, self.bounds, self.q)
        self._eps = REL_EPS * self.bounds.span

    def reset(self, memory: MemoryVector | None = None) -> None:
        """Restore the given memory (negative saturation by default)."""
        if memory is None:
            memory = saturation_state(self.bounds, -1)
        elif memory.bounds != self.bounds:
            raise ValueError(f"memory bounds {memory.bounds} do not match {self.bounds}")
        self.memory = memory

    @property
    def output(self) -> float:
        """Output of the current memory without advancing it."""
        return cspm_output(self.pdf, self.memory, self.bounds, self.q)

    def step(self, x: float) -> float:
        y, self.memory = cspm_step(self.pdf, self.memory, x, self.q)
        return y

    def run(self, xs: np.ndarray) -> np.ndarray:
        """Outputs for a whole input sequence (loop stays in compiled code)."""
        xs = np.ascontiguousarray(xs, dtype=np.float64)
        start = self.memory.to_array()
        buf = np.empty((_run_capacity(start.shape[0], xs), 2))
        buf[: start.shape[0]] = start
        ys, n, flags = _kernels.run_cspm(
            self._kind, self._params, buf, start.shape[0], xs,
            self.q.tol, self.q.max_depth, self._mass, self._eps,
            self.bounds.x_min, self.bounds.x_max,
        )
        self.memory = MemoryVector.from_array(buf[:n])
        if flags:
            warnings.warn(f"{flags} quadrature call(s) missed tolerance during run",
                          QuadratureWarning, stacklevel=2)
        return ys
