"""Classical double-integral model: frozen branches, closure, congruency."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preisach.cspm import CspmModel, cspm_output, cspm_step
from preisach.density import (ExponentialDecay, GaussianMixture, PlaneBounds,
                              QuadratureConfig, QuadratureWarning, Uniform, total_mass)
from preisach.memory import MemoryVector, ground_state, saturation_state

B = PlaneBounds()
Q = QuadratureConfig(1e-5)
U = Uniform()


def test_saturation_outputs():
    assert cspm_output(U, saturation_state(B, -1), B, Q) == pytest.approx(-2.0, abs=1e-12)
    assert cspm_output(U, saturation_state(B, +1), B, Q) == pytest.approx(2.0, abs=1e-12)


def test_staircase_output_frozen():
    mem = MemoryVector.from_array([(1, -1), (0.5, -0.4), (0.2, -0.4), (0.2, 0.2)])
    assert cspm_output(U, mem, B, Q) == pytest.approx(-0.2, abs=3e-5)


def test_ground_state_output_scales_inversely_with_k():
    # uniform density: mass under the comb is 1 - 1/(2k), so y = -1/k
    for k in (1, 16, 64):
        assert cspm_output(U, ground_state(B, k), B, Q) == pytest.approx(-1.0 / k, abs=3e-5)


@pytest.mark.parametrize("x", [-0.5, 0.0, 0.7, 1.0])
def test_rising_major_branch_is_quadratic_for_uniform(x):
    # ascending from negative saturation: y = (x+1)^2 - 2
    y, _ = cspm_step(U, saturation_state(B, -1), x, Q)
    assert y == pytest.approx((x + 1.0) ** 2 - 2.0, abs=3e-5)


@pytest.mark.parametrize("x", [0.5, 0.0, -0.7, -1.0])
def test_falling_major_branch_is_quadratic_for_uniform(x):
    y, _ = cspm_step(U, saturation_state(B, +1), x, Q)
    assert y == pytest.approx(2.0 - (1.0 - x) ** 2, abs=3e-5)


def test_step_clamps_out_of_range_inputs():
    y_in, m_in = cspm_step(U, saturation_state(B, -1), 1.0, Q)
    y_out, m_out = cspm_step(U, saturation_state(B, -1), 42.0, Q)
    assert y_out == y_in and m_out == m_in


def test_model_run_matches_stepwise_exactly():
    xs = np.array([-1.0, 0.3, -0.2, 0.8, 0.1, -0.6, 0.4])
    model = CspmModel(ExponentialDecay(), B, Q)
    ys_run = model.run(xs)
    mem = saturation_state(B, -1)
    for i, x in enumerate(xs):
        y, mem = cspm_step(ExponentialDecay(), mem, x, Q)
        assert y == ys_run[i]            # same kernels, bit-identical
    assert model.memory == mem


def test_model_reset_and_initial_memory():
    model = CspmModel(U, B, Q, memory=ground_state(B, 64))
    assert model.output == pytest.approx(-1.0 / 64.0, abs=3e-5)
    model.reset()
    assert model.memory == saturation_state(B, -1)
    with pytest.raises(ValueError):
        CspmModel(U, B, Q, memory=saturation_state(PlaneBounds(-2, 2), -1))
    with pytest.raises(ValueError):
        model.reset(saturation_state(PlaneBounds(-2, 2), -1))


def test_minor_loop_outputs_repeat_exactly():
    # identical memory states give bit-identical outputs, cycle after cycle
    xs = np.array([-1.0, 0.8, -0.3, 0.5, -0.3, 0.5, -0.3, 0.5])
    ys = CspmModel(GaussianMixture(), B, Q).run(xs)
    assert ys[3] == ys[5] == ys[7]
    assert ys[2] == ys[4] == ys[6]


def test_congruent_minor_loops_have_equal_increments():
    # same cycling band, different surrounding history: the loop increment
    # agrees within the quadrature budget (4 * tol)
    lo, hi = -0.3, 0.4
    h1 = np.array([-1.0, 0.9, lo, hi, lo, hi])      # enters the band from above
    h2 = np.array([-1.0, hi, lo, hi, lo, hi])       # enters from below
    for pdf in (U, ExponentialDecay(), GaussianMixture()):
        y1 = CspmModel(pdf, B, Q).run(h1)
        y2 = CspmModel(pdf, B, Q).run(h2)
        d1 = y1[-1] - y1[-2]
        d2 = y2[-1] - y2[-2]
        assert abs(d1 - d2) <= 4.0 * Q.tol


def test_resampling_a_monotone_move_changes_nothing():
    direct = np.array([-1.0, 0.7, -0.5])
    refined = np.array([-1.0, -0.2, 0.3, 0.7, 0.2, -0.5])
    ys_d = CspmModel(ExponentialDecay(), B, Q).run(direct)
    ys_r = CspmModel(ExponentialDecay(), B, Q).run(refined)
    assert ys_r[3] == ys_d[1] and ys_r[5] == ys_d[2]    # bit-equal shared instants


@settings(deadline=None, max_examples=25)
@given(st.lists(st.floats(-1.0, 1.0), min_size=1, max_size=8))
def test_output_stays_inside_saturation_envelope(seq):
    mass = total_mass(U, B, Q)
    ys = CspmModel(U, B, Q).run(np.array(seq))
    assert np.all(ys >= -mass - 1e-9) and np.all(ys <= mass + 1e-9)


def test_depth_cap_warns_during_run():
    model = CspmModel(ExponentialDecay(), B, QuadratureConfig(1e-10, max_depth=1))
    with pytest.warns(QuadratureWarning):
        model.run(np.array([-1.0, 0.5]))
