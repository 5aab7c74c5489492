"""Hysteron density functions on the switching plane and their integrals.

A density ``rho(alpha, beta)`` weights the relay with switch-up threshold
``alpha`` and switch-down threshold ``beta``.  Only the triangle
``x_min <= beta <= alpha <= x_max`` ever matters; densities here are defined
on the whole plane and simply evaluated where asked.

Three families are provided: a constant density, an isotropic exponential
decay with a floor, and a mixture of up to three bivariate Gaussians.  Each
is a frozen dataclass (hashable, so integral caches can key on it) exposing
``pack()`` for the compiled kernels.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

__all__ = [
    "PlaneBounds",
    "QuadratureConfig",
    "QuadratureWarning",
    "Uniform",
    "ExponentialDecay",
    "GaussianMixture",
    "Density",
    "eval_density",
    "density_grid",
    "segment_integral_beta",
    "segment_integral_alpha",
    "region_integral",
    "total_mass",
]


class QuadratureWarning(RuntimeWarning):
    """The adaptive rule hit its depth cap or an interval collapsed."""


@dataclass(frozen=True)
class PlaneBounds:
    """Input saturation limits; the switching triangle spans [x_min, x_max]."""

    x_min: float = -1.0
    x_max: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("bounds must be finite")
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min must be below x_max, got [{self.x_min}, {self.x_max}]")

    @property
    def span(self) -> float:
        return self.x_max - self.x_min

    def clamp(self, x: float) -> float:
        return min(max(x, self.x_min), self.x_max)


@dataclass(frozen=True)
class QuadratureConfig:
    """Absolute tolerance and refinement depth cap for the adaptive rule."""

    tol: float = 1e-5
    max_depth: int = 50

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be at least 1, got {self.max_depth}")


@dataclass(frozen=True)
class Uniform:
    """Constant density: rho = v everywhere."""

    v: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.v) and self.v > 0.0):
            raise ValueError(f"v must be positive, got {self.v}")

    def pack(self) -> tuple[int, np.ndarray]:
        return 0, np.array([self.v])

    def __call__(self, alpha: float, beta: float) -> float:
        return self.v


@dataclass(frozen=True)
class ExponentialDecay:
    """Radial exponential decay with a floor: A*exp(-B*hypot(alpha, beta)) + C.

    The gradient is discontinuous at the origin, which makes this the
    stress case for any scheme that assumes a smooth integrand.
    """

    A: float = 1.0
    B: float = 2.0
    C: float = 0.1

    def __post_init__(self) -> None:
        for name in ("A", "B", "C"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise ValueError(f"{name} must be finite, got {val}")
        if self.A < 0.0 or self.C < 0.0 or self.A + self.C <= 0.0:
            raise ValueError("density must be positive: need A, C >= 0 and A + C > 0")
        if self.B < 0.0:
            raise ValueError(f"B must be non-negative, got {self.B}")

    def pack(self) -> tuple[int, np.ndarray]:
        return 1, np.array([self.A, self.B, self.C])

    def __call__(self, alpha: float, beta: float) -> float:
        return self.A * math.exp(-self.B * math.hypot(alpha, beta)) + self.C


@dataclass(frozen=True)
class GaussComponent:
    """One weighted bivariate Gaussian: weight, mean, covariance (row tuples)."""

    weight: float
    mean: tuple[float, float]
    cov: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self) -> None:
        if not (math.isfinite(self.weight) and self.weight > 0.0):
            raise ValueError(f"weight must be positive, got {self.weight}")
        (saa, sab), (sba, sbb) = self.cov
        if sab != sba:
            raise ValueError("covariance must be symmetric")
        det = saa * sbb - sab * sab
        if saa <= 0.0 or det <= 0.0:
            raise ValueError("covariance must be positive definite")


def _default_components() -> tuple[GaussComponent, ...]:
    return (
        GaussComponent(0.5, (0.45, -0.45), ((0.12, 0.0), (0.0, 0.12))),
        GaussComponent(0.25, (0.6, 0.0), ((0.10, 0.02), (0.02, 0.08))),
        GaussComponent(0.25, (0.0, -0.6), ((0.08, 0.02), (0.02, 0.10))),
    )


@dataclass(frozen=True)
class GaussianMixture:
    """Weighted sum of bivariate Gaussian bumps on the switching plane."""

    components: tuple[GaussComponent, ...] = field(default_factory=_default_components)

    def __post_init__(self) -> None:
        if not 1 <= len(self.components) <= 3:
            raise ValueError(f"need 1 to 3 components, got {len(self.components)}")

    def pack(self) -> tuple[int, np.ndarray]:
        params = []
        for comp in self.components:
            cov = np.array(comp.cov)
            inv = np.linalg.inv(cov)
            norm = comp.weight / (2.0 * math.pi * math.sqrt(np.linalg.det(cov)))
            params += [norm, comp.mean[0], comp.mean[1], inv[0, 0], inv[0, 1], inv[1, 1]]
        return 2, np.array(params)

    def __call__(self, alpha: float, beta: float) -> float:
        kind, params = self.pack()
        return _kernels.density_kernel(kind, params, alpha, beta)


Density = Uniform | ExponentialDecay | GaussianMixture


def eval_density(pdf: Density, alpha: float, beta: float) -> float:
    """Point value of the density (all families are also directly callable)."""
    return pdf(alpha, beta)


def density_grid(pdf: Density, alpha, beta) -> np.ndarray:
    """Vectorized point evaluation on broadcast numpy arrays."""
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    shape = np.broadcast_shapes(a.shape, b.shape)
    if isinstance(pdf, Uniform):
        return np.full(shape, pdf.v)
    if isinstance(pdf, ExponentialDecay):
        return pdf.A * np.exp(-pdf.B * np.hypot(a, b)) + pdf.C
    _, params = pdf.pack()
    out = np.zeros(shape)
    for o in range(0, len(params), 6):
        da = a - params[o + 1]
        db = b - params[o + 2]
        quad = params[o + 3] * da * da + 2.0 * params[o + 4] * da * db + params[o + 5] * db * db
        out += params[o] * np.exp(-0.5 * quad)
    return out


def _warn_if(flagged: int | bool, what: str) -> None:
    if flagged:
        warnings.warn(f"{what}: requested tolerance not certified", QuadratureWarning, stacklevel=3)


def segment_integral_beta(pdf: Density, alpha_fixed: float, beta_lo: float, beta_hi: float,
                          q: QuadratureConfig = QuadratureConfig()) -> float:
    """``integral of rho(alpha_fixed, beta) d(beta)`` over [beta_lo, beta_hi]."""
    if beta_hi < beta_lo:
        raise ValueError(f"empty segment: beta_hi {beta_hi} < beta_lo {beta_lo}")
    kind, params = pdf.pack()
    val, flagged = _kernels.line_integral(kind, params, 0, alpha_fixed, beta_lo, beta_hi,
                                          q.tol, q.max_depth, 0)
    _warn_if(flagged, "segment integral over beta")
    return val


def segment_integral_alpha(pdf: Density, beta_fixed: float, alpha_lo: float, alpha_hi: float,
                           q: QuadratureConfig = QuadratureConfig()) -> float:
    """``integral of rho(alpha, beta_fixed) d(alpha)`` over [alpha_lo, alpha_hi]."""
    if alpha_hi < alpha_lo:
        raise ValueError(f"empty segment: alpha_hi {alpha_hi} < alpha_lo {alpha_lo}")
    kind, params = pdf.pack()
    val, flagged = _kernels.line_integral(kind, params, 1, beta_fixed, alpha_lo, alpha_hi,
                                          q.tol, q.max_depth, 0)
    _warn_if(flagged, "segment integral over alpha")
    return val


def region_integral(pdf: Density, mem, bounds: PlaneBounds,
                    q: QuadratureConfig = QuadratureConfig()) -> float:
    """Density mass over the switched-up region below the staircase ``mem``.

    The region is swept strip by strip between consecutive corners; the
    tolerance is an absolute budget for the whole region.
    """
    if mem.bounds != bounds:
        raise ValueError(f"memory bounds {mem.bounds} do not match {bounds}")
    kind, params = pdf.pack()
    corners = mem.to_array()
    val, flags = _kernels.region_kernel(kind, params, corners, corners.shape[0], q.tol, q.max_depth)
    _warn_if(flags, "region integral")
    return val


@functools.lru_cache(maxsize=64)
def _total_mass_cached(pdf: Density, bounds: PlaneBounds, q: QuadratureConfig) -> float:
    kind, params = pdf.pack()
    val, flagged = _kernels.strip_integral(
        kind, params, bounds.x_min, bounds.x_max, bounds.x_max,
        0.5 * q.tol, q.tol / (2.0 * bounds.span), q.max_depth, _kernels.OUTER_MIN_DEPTH,
    )
    _warn_if(flagged, "total mass")
    return val


def total_mass(pdf: Density, bounds: PlaneBounds, q: QuadratureConfig = QuadratureConfig()) -> float:
    """Density mass of the whole switching triangle (cached per arguments)."""
    return _total_mass_cached(pdf, bounds, q)
