"""Density families and plane quadrature against independent references.

Frozen reference values were computed with Richardson-extrapolated trapezoid
rules (1e6-point segments, 3000^2-point strips) rather than the package's own
quadrature, so these tests would catch a systematically wrong adaptive rule.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preisach.density import (ExponentialDecay, GaussComponent, GaussianMixture,
                              PlaneBounds, QuadratureConfig, QuadratureWarning,
                              Uniform, density_grid, eval_density, region_integral,
                              segment_integral_alpha, segment_integral_beta,
                              total_mass)
from preisach.memory import MemoryVector

B = PlaneBounds()
Q = QuadratureConfig(1e-5)
EXP = ExponentialDecay()
GAUSS = GaussianMixture()
MEM = MemoryVector.from_array([(1, -1), (0.5, -0.4), (0.2, -0.4), (0.2, 0.2)])


def test_uniform_eval_is_constant():
    assert eval_density(Uniform(2.5), 0.3, -0.2) == 2.5
    assert Uniform(2.5)(0.9, 0.9) == 2.5


def test_exponential_eval_frozen_points():
    assert EXP(0.0, 0.0) == pytest.approx(1.1)            # A + C at the origin
    assert EXP(0.3, -0.4) == pytest.approx(math.exp(-1.0) + 0.1)


def test_gaussian_single_component_peak():
    # unit-weight standard Gaussian peaks at 1/(2*pi)
    pdf = GaussianMixture((GaussComponent(1.0, (0.0, 0.0), ((1.0, 0.0), (0.0, 1.0))),))
    assert pdf(0.0, 0.0) == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-12)


def test_density_grid_matches_pointwise_eval():
    a = np.linspace(-1, 1, 7)[:, None]
    b = np.linspace(-1, 1, 5)[None, :]
    for pdf in (Uniform(1.5), EXP, GAUSS):
        grid = density_grid(pdf, a, b)
        for i in range(7):
            for j in range(5):
                assert grid[i, j] == pytest.approx(pdf(a[i, 0], b[0, j]), rel=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan])
def test_uniform_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        Uniform(bad)


def test_exponential_rejects_bad_params():
    with pytest.raises(ValueError):
        ExponentialDecay(A=-1.0)
    with pytest.raises(ValueError):
        ExponentialDecay(B=-0.5)
    with pytest.raises(ValueError):
        ExponentialDecay(A=0.0, C=0.0)


def test_gauss_component_rejects_bad_cov():
    with pytest.raises(ValueError):
        GaussComponent(1.0, (0, 0), ((1.0, 0.5), (0.4, 1.0)))    # asymmetric
    with pytest.raises(ValueError):
        GaussComponent(1.0, (0, 0), ((1.0, 2.0), (2.0, 1.0)))    # not positive definite
    with pytest.raises(ValueError):
        GaussComponent(0.0, (0, 0), ((1.0, 0.0), (0.0, 1.0)))    # zero weight


def test_gaussian_mixture_component_count():
    comp = GaussComponent(1.0, (0, 0), ((1.0, 0.0), (0.0, 1.0)))
    with pytest.raises(ValueError):
        GaussianMixture(())
    with pytest.raises(ValueError):
        GaussianMixture((comp,) * 4)


def test_plane_bounds_validation_and_clamp():
    with pytest.raises(ValueError):
        PlaneBounds(1.0, 1.0)
    with pytest.raises(ValueError):
        PlaneBounds(0.0, math.inf)
    assert B.clamp(3.0) == 1.0
    assert B.clamp(-3.0) == -1.0
    assert B.span == 2.0


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(tol=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_depth=0)


def test_densities_are_hashable():
    assert len({Uniform(1.0), Uniform(1.0), EXP, GAUSS}) == 3


# --- segments ---


def test_segment_uniform_is_width_times_value():
    assert segment_integral_beta(Uniform(2.0), 0.5, -0.25, 0.75, Q) == pytest.approx(2.0)
    assert segment_integral_alpha(Uniform(2.0), -0.5, 0.0, 1.0, Q) == pytest.approx(2.0)


def test_segment_exponential_analytic_along_axis():
    # along alpha = 0 the radial profile is 1-D: integral has a closed form
    want = 1.0 * (1.0 - math.exp(-2.0 * 0.7)) / 2.0 + 0.1 * 0.7
    got = segment_integral_beta(EXP, 0.0, 0.0, 0.7, QuadratureConfig(1e-9))
    assert got == pytest.approx(want, abs=2e-9)


@pytest.mark.parametrize("tol", [1e-5, 1e-9])
def test_segment_frozen_references(tol):
    q = QuadratureConfig(tol)
    slack = tol + 1e-9  # quadrature budget plus reference accuracy
    assert segment_integral_beta(EXP, 0.5, -0.3, 0.4, q) == pytest.approx(
        0.30822536619716207, abs=slack)
    assert segment_integral_alpha(EXP, -0.25, 0.1, 0.9, q) == pytest.approx(
        0.35548658320452287, abs=slack)
    assert segment_integral_beta(GAUSS, 0.3, -0.8, 0.3, q) == pytest.approx(
        0.7783312843287752, abs=slack)
    assert segment_integral_alpha(GAUSS, -0.5, -0.5, 1.0, q) == pytest.approx(
        0.8977543354292498, abs=slack)


def test_segment_empty_and_reversed():
    assert segment_integral_beta(EXP, 0.5, 0.3, 0.3, Q) == 0.0
    with pytest.raises(ValueError):
        segment_integral_beta(EXP, 0.5, 0.4, 0.3, Q)
    with pytest.raises(ValueError):
        segment_integral_alpha(EXP, 0.5, 0.4, 0.3, Q)


@settings(deadline=None, max_examples=40)
@given(
    pdf=st.sampled_from([Uniform(1.0), EXP, GAUSS]),
    c=st.floats(-1.0, 1.0),
    lo=st.floats(-1.0, 0.99),
    width=st.floats(0.01, 1.0),
)
def test_segment_matches_dense_trapezoid(pdf, c, lo, width):
    hi = min(lo + width, 1.0)
    got = segment_integral_beta(pdf, c, lo, hi, QuadratureConfig(1e-7))
    xs = np.linspace(lo, hi, 20001)
    ref = float(np.trapezoid(density_grid(pdf, np.full_like(xs, c), xs), xs))
    assert got == pytest.approx(ref, abs=1e-7 + 1e-8)


# --- regions and total mass ---


def test_region_uniform_staircase_frozen():
    # strips: [-1,-0.4]xlevel0.5 -> 0.72, [-0.4,0.2]xlevel0.2 -> 0.18
    assert region_integral(Uniform(1.0), MEM, B, Q) == pytest.approx(0.9, abs=1.5e-5)


@pytest.mark.parametrize("pdf,want", [(EXP, 0.3534191069680959),
                                      (GAUSS, 0.3863681581121543)])
def test_region_frozen_references(pdf, want):
    assert region_integral(pdf, MEM, B, Q) == pytest.approx(want, abs=1.5e-5)
    tight = region_integral(pdf, MEM, B, QuadratureConfig(1e-9))
    assert tight == pytest.approx(want, abs=1e-9 + 1e-10)


def test_region_saturated_memories():
    neg = MemoryVector.from_array([(1, -1), (-1, -1)])
    pos = MemoryVector.from_array([(1, -1), (1, 1)])
    assert region_integral(EXP, neg, B, Q) == 0.0
    assert region_integral(EXP, pos, B, Q) == pytest.approx(total_mass(EXP, B, Q), abs=1e-12)


def test_region_bounds_mismatch_rejected():
    with pytest.raises(ValueError):
        region_integral(EXP, MEM, PlaneBounds(-2.0, 2.0), Q)


@pytest.mark.parametrize("pdf,want", [(Uniform(1.0), 2.0),
                                      (EXP, 0.7124902661093214),
                                      (GAUSS, 0.8500837395997562)])
def test_total_mass_frozen(pdf, want):
    assert total_mass(pdf, B, Q) == pytest.approx(want, abs=1.5e-5)


def test_total_mass_cached_and_keyed():
    a = total_mass(EXP, B, Q)
    assert total_mass(EXP, B, Q) == a                     # cache hit, same value
    assert total_mass(EXP, B, QuadratureConfig(1e-3)) == pytest.approx(a, abs=2e-3)
    assert total_mass(Uniform(0.5), B, Q) == pytest.approx(1.0)


def test_depth_cap_warns_but_returns():
    q = QuadratureConfig(1e-14, max_depth=1)
    with pytest.warns(QuadratureWarning):
        val = segment_integral_beta(EXP, 0.0, -1.0, 1.0, q)
    assert val == pytest.approx(segment_integral_beta(EXP, 0.0, -1.0, 1.0, Q), abs=1e-3)
