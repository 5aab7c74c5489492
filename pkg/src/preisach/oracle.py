"""Brute-force oracle: an explicit n-by-n grid of relay hysterons.

Each grid cell centre ``(alpha_i, beta_j)`` with ``alpha_i >= beta_j`` hosts a
relay weighted by ``rho(centre) * cell_area`` (half weight on the diagonal,
whose cells straddle the triangle edge).  Stepping the input flips whole rows
(all relays with switch-up level at or below the input go up) and whole
columns (switch-down level at or above the input go down).  The output is the
signed weighted sum of relay states — no quadrature, no staircase, just the
defining relay sum, which is what makes it a trustworthy cross-check for both
integral formulations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .density import Density, PlaneBounds, density_grid

__all__ = ["HysteronGrid", "oracle_step", "oracle_run"]


@dataclass
class HysteronGrid:
    """Relay grid with incremental stepping.

    After any step both flip rules have been applied at the current input, so
    every relay with ``alpha_c <= x`` is up and every relay with
    ``beta_c >= x`` is down; a later move therefore only needs to flip the
    band of rows or columns the input sweeps across.  (Cells whose centre
    coincides exactly with a previous input are the one measure-zero
    exception; their weight is one half-cell and is ignored.)
    """

    pdf: Density
    bounds: PlaneBounds = field(default_factory=PlaneBounds)
    n: int = 500
    init: str = "negative"

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"grid needs at least 2 cells per side, got {self.n}")
        if self.init not in ("negative", "demag"):
            raise ValueError(f"init must be 'negative' or 'demag', got {self.init!r}")
        delta = self.bounds.span / self.n
        centres = self.bounds.x_min + (np.arange(self.n) + 0.5) * delta
        self.alpha_c = centres            # row i: switch-up level
        self.beta_c = centres             # column j: switch-down level
        a = centres[:, None]
        b = centres[None, :]
        self.weights = np.tril(density_grid(self.pdf, a, b)) * (delta * delta)
        np.fill_diagonal(self.weights, 0.5 * np.diag(self.weights))
        if self.init == "negative":
            self.states = np.full((self.n, self.n), -1.0)
        else:
            # alternating shrinking excursions leave relays with
            # alpha_c + beta_c < 0 up: the demagnetized split
            self.states = np.where(a + b < 0.0, 1.0, -1.0)
        self.states = np.ascontiguousarray(np.tril(self.states))
        self.y = float(np.sum(self.weights * self.states))
        self._x = None

    def output(self) -> float:
        """Full weighted relay sum, recomputed from scratch."""
        return float(np.sum(self.weights * self.states))

    def step(self, x: float) -> float:
        x = self.bounds.clamp(float(x))
        if self._x is None:
            # first input: apply both flip rules over the whole grid
            up = self.alpha_c[:, None] <= x
            down = self.beta_c[None, :] >= x
            flip_up = up & ~down & (self.states < 0.0)
            flip_dn = down & (self.states > 0.0)
            tri = np.tril(np.ones((self.n, self.n), dtype=bool))
            self._flip(flip_up & tri, +1.0)
            self._flip(flip_dn & tri, -1.0)
        elif x > self._x:
            lo = np.searchsorted(self.alpha_c, self._x, side="right")
            hi = np.searchsorted(self.alpha_c, x, side="right")
            if hi > lo:
                band = self.states[lo:hi, :]
                mask = band < 0.0
                self.y += 2.0 * float(np.sum(self.weights[lo:hi, :][mask]))
                band[mask] = 1.0
        elif x < self._x:
            lo = np.searchsorted(self.beta_c, x, side="left")
            hi = np.searchsorted(self.beta_c, self._x, side="left")
            if hi > lo:
                band = self.states[:, lo:hi]
                mask = band > 0.0
                self.y -= 2.0 * float(np.sum(self.weights[:, lo:hi][mask]))
                band[mask] = -1.0
        self._x = x
        return self.y

    def _flip(self, mask: np.ndarray, to: float) -> None:
        self.y += 2.0 * to * float(np.sum(self.weights[mask]))
        self.states[mask] = to

    def run(self, xs: np.ndarray) -> np.ndarray:
        ys = np.empty(len(xs))
        for i, x in enumerate(xs):
            ys[i] = self.step(x)
        return ys


def oracle_step(grid: HysteronGrid, x: float) -> float:
    return grid.step(x)


def oracle_run(pdf: Density, bounds: PlaneBounds, n: int, xs: np.ndarray,
               init: str = "negative") -> np.ndarray:
    grid = HysteronGrid(pdf, bounds, n, init)
    return grid.run(xs)
