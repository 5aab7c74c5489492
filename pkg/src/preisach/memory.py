"""Staircase memory of a scalar Preisach operator.

The interface between switched-up and switched-down relays is a staircase on
the half-plane triangle, encoded as the ordered corner list of its L-shaped
path: the margin vertex ``(x_max, x_min)`` first, then interior corners with
non-increasing ``alpha`` and non-decreasing ``beta``, ending at the operative
vertex ``(x, x)`` that tracks the current input.  Local input maxima live in
the ``alpha`` coordinates, minima in the ``beta`` coordinates; a monotone
input wipes every corner it sweeps past, which is what gives the operator its
return-point memory.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .density import PlaneBounds

__all__ = [
    "Vertex",
    "MemoryVector",
    "saturation_state",
    "ground_state",
    "update_increase",
    "update_decrease",
    "apply_input",
    "last_extremum",
]

# Moves smaller than this fraction of the input span are treated as no-ops.
REL_EPS = 1e-12


@dataclass(frozen=True)
class Vertex:
    """One staircase corner: (switch-up level alpha, switch-down level beta)."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError(f"vertex must be finite, got ({self.alpha}, {self.beta})")


@dataclass(frozen=True)
class MemoryVector:
    """Ordered corner list, margin vertex first, operative vertex last."""

    corners: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        c = self.corners
        if len(c) < 2:
            raise ValueError("memory needs at least the margin and operative vertices")
        margin, op = c[0], c[-1]
        if not margin.beta < margin.alpha:
            raise ValueError(f"margin vertex must satisfy beta < alpha, got {margin}")
        if op.alpha != op.beta:
            raise ValueError(f"operative vertex must sit on the diagonal, got {op}")
        for i, v in enumerate(c[1:], start=1):
            if not (margin.beta <= v.beta <= v.alpha <= margin.alpha):
                raise ValueError(f"corner {i} {v} leaves the switching triangle")
            if v.alpha > c[i - 1].alpha:
                raise ValueError(f"alpha must be non-increasing, corner {i} {v} rises")
            if v.beta < c[i - 1].beta:
                raise ValueError(f"beta must be non-decreasing, corner {i} {v} falls")

    @property
    def bounds(self) -> PlaneBounds:
        return PlaneBounds(self.corners[0].beta, self.corners[0].alpha)

    @property
    def op_level(self) -> float:
        """Current input level (diagonal coordinate of the operative vertex)."""
        return self.corners[-1].alpha

    def __len__(self) -> int:
        return len(self.corners)

    def to_array(self) -> np.ndarray:
        """(n, 2) float64 array of (alpha, beta) rows for the kernels."""
        return np.array([(v.alpha, v.beta) for v in self.corners])

    @classmethod
    def from_array(cls, arr: np.ndarray) -> MemoryVector:
        return cls(tuple(Vertex(float(a), float(b)) for a, b in arr))

    def to_csv(self, path_or_buf) -> None:
        """Write corners as ``alpha,beta`` rows with a header."""
        def _write(buf) -> None:
            buf.write("alpha,beta\n")
            for v in self.corners:
                buf.write(f"{v.alpha:.17g},{v.beta:.17g}\n")

        if isinstance(path_or_buf, (str, bytes)) or hasattr(path_or_buf, "__fspath__"):
            with open(path_or_buf, "w") as fh:
                _write(fh)
        else:
            _write(path_or_buf)

    @classmethod
    def from_csv(cls, path_or_buf) -> MemoryVector:
        if isinstance(path_or_buf, (str, bytes)) or hasattr(path_or_buf, "__fspath__"):
            with open(path_or_buf) as fh:
                text = fh.read()
        else:
            text = path_or_buf.read()
        lines = [ln.strip() for ln in io.StringIO(text) if ln.strip()]
        if not lines or lines[0].replace(" ", "") != "alpha,beta":
            raise ValueError("expected header 'alpha,beta'")
        corners = []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 2:
                raise ValueError(f"line {i}: expected two comma-separated values, got {ln!r}")
            corners.append(Vertex(float(parts[0]), float(parts[1])))
        return cls(tuple(corners))


def saturation_state(bounds: PlaneBounds, sign: int) -> MemoryVector:
    """Fully switched memory: every relay up (sign > 0) or down (sign < 0)."""
    if sign == 0:
        raise ValueError("sign must be positive or negative")
    margin = Vertex(bounds.x_max, bounds.x_min)
    level = bounds.x_max if sign > 0 else bounds.x_min
    return MemoryVector((margin, Vertex(level, level)))


def ground_state(bounds: PlaneBounds, k: int = 64) -> MemoryVector:
    """Demagnetized-like staircase from ``k`` shrinking input oscillations.

    Alternating excursions to ``x_max*(k-j)/k`` and ``x_min*(k-j)/k`` leave a
    comb of ``k - 1`` interior steps whose maxima and minima shrink toward the
    origin in matched proportion, finishing at the operative vertex (0, 0).
    Requires the origin strictly inside the bounds.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not bounds.x_min < 0.0 < bounds.x_max:
        raise ValueError(f"ground state needs 0 inside bounds, got {bounds}")
    corners = [Vertex(bounds.x_max, bounds.x_min)]
    for j in range(1, k):
        peak = bounds.x_max * (k - j) / k
        trough = bounds.x_min * (k - j) / k
        next_peak = bounds.x_max * (k - j - 1) / k
        corners.append(Vertex(peak, trough))
        corners.append(Vertex(next_peak, trough))
    corners.append(Vertex(0.0, 0.0))
    return MemoryVector(tuple(corners))


def _validated_move(mem: MemoryVector, x_new: float, increase: bool) -> float:
    if not math.isfinite(x_new):
        raise ValueError(f"input must be finite, got {x_new}")
    x = mem.bounds.clamp(float(x_new))
    op = mem.op_level
    if increase and x <= op:
        raise ValueError(f"increase needs input above the operative level {op}, got {x}")
    if not increase and x >= op:
        raise ValueError(f"decrease needs input below the operative level {op}, got {x}")
    return x


def update_increase(mem: MemoryVector, x_new: float) -> MemoryVector:
    """Raise the input to ``x_new`` (> operative level after clamping).

    Wipes every corner whose alpha the input reaches, attaches a new corner
    at ``(x_new, beta of the last survivor)`` unless that duplicates the
    survivor (which happens only at the upper bound), then appends the new
    operative vertex.
    """
    x = _validated_move(mem, x_new, increase=True)
    kept = list(mem.corners)
    while len(kept) > 1 and kept[-1].alpha <= x:
        kept.pop()
    if kept[-1].alpha != x:
        kept.append(Vertex(x, kept[-1].beta))
    kept.append(Vertex(x, x))
    return MemoryVector(tuple(kept))


def update_decrease(mem: MemoryVector, x_new: float) -> MemoryVector:
    """Lower the input to ``x_new`` (< operative level after clamping); mirror
    of :func:`update_increase` acting on the beta coordinates."""
    x = _validated_move(mem, x_new, increase=False)
    kept = list(mem.corners)
    while len(kept) > 1 and kept[-1].beta >= x:
        kept.pop()
    if kept[-1].beta != x:
        kept.append(Vertex(kept[-1].alpha, x))
    kept.append(Vertex(x, x))
    return MemoryVector(tuple(kept))


def apply_input(mem: MemoryVector, x_new: float) -> MemoryVector:
    """Dispatch to increase/decrease; moves below the no-op threshold return
    the memory unchanged."""
    if not math.isfinite(x_new):
        raise ValueError(f"input must be finite, got {x_new}")
    x = mem.bounds.clamp(float(x_new))
    if abs(x - mem.op_level) <= REL_EPS * mem.bounds.span:
        return mem
    if x > mem.op_level:
        return update_increase(mem, x)
    return update_decrease(mem, x)


def last_extremum(mem: MemoryVector) -> Vertex:
    """Corner adjacent to the operative vertex: the most recent surviving
    reversal (the margin vertex when the memory is saturated)."""
    return mem.corners[-2]
