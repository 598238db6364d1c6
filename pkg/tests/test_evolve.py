import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groverlab import (
    DegenerateSpectrum,
    GGAParams,
    ReducedState,
    SymmetricDistribution,
    ZeroPhaseGap,
    amplitude_at_step,
    argmax_steps,
    decompose,
    initial_state,
    iterate_trajectory,
    optimal_steps,
    plan_steps,
    probability_at_step,
    spectral_trajectory,
)
from groverlab.evolve import iterate_states

from tests import oracles

EFFICIENT_N = [4, 8, 16, 100, 1000]
T_GRID = [t for t in 2 * np.pi * np.arange(64) / 64 if abs(t - np.pi) > 1e-6]


@pytest.mark.parametrize(
    "N, c0, cp",
    [(4, 0.5, math.sqrt(3) / 2), (2, 1 / math.sqrt(2), 1 / math.sqrt(2))],
)
def test_initial_state(N, c0, cp):
    s = initial_state(GGAParams(N))
    assert s.c0 == pytest.approx(c0, abs=1e-15)
    assert s.cp == pytest.approx(cp, abs=1e-15)


def test_initial_state_uniform_mass():
    assert abs(initial_state(GGAParams(1000)).c0) ** 2 == pytest.approx(0.001, abs=1e-15)


def test_reduced_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        ReducedState(1.0, 1.0)


def test_one_step_search_n4():
    traj = iterate_trajectory(GGAParams(4, 0, 0), 1)
    np.testing.assert_allclose(traj.p0, [0.25, 1.0], atol=1e-12)


def test_identity_kernel_trajectory_constant():
    traj = iterate_trajectory(GGAParams(16, math.pi, math.pi), 5)
    np.testing.assert_allclose(traj.p0, 1 / 16, atol=1e-12)


def test_non_efficient_trajectory_not_monotone():
    p0 = iterate_trajectory(GGAParams.with_offset(100, 1, 5 * math.pi / 6), 30).p0
    d = np.diff(p0)
    assert (d > 0).any() and (d < 0).any()


def test_iterate_matches_matrix_power_oracle():
    params = GGAParams(37, 0.9, 4.1)
    np.testing.assert_allclose(
        iterate_trajectory(params, 40).p0, oracles.marked_probabilities(37, 0.9, 4.1, 40), atol=1e-12
    )


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 1000), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_norm_preserved_along_trajectory(N, t, g):
    for s in iterate_states(GGAParams(N, t, g), 60):
        assert abs(s.norm_sq - 1) <= 1e-10


def test_amplitude_at_step_examples():
    _, spec, d = decompose(GGAParams(4, 0, 0))
    assert amplitude_at_step(d, spec, 0) == pytest.approx(0.5, abs=1e-12)
    assert abs(amplitude_at_step(d, spec, 1)) == pytest.approx(1.0, abs=1e-12)
    assert probability_at_step(d, spec, 0) == pytest.approx(0.25, abs=1e-12)
    assert probability_at_step(d, spec, 1) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 1000), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_spectral_amplitude_matches_iteration(N, t, g):
    params = GGAParams(N, t, g)
    try:
        _, spec, d = decompose(params)
    except DegenerateSpectrum:
        return
    states = iterate_states(params, 50)
    for m in range(51):
        amp = amplitude_at_step(d, spec, m)
        assert abs(amp - states[m].c0) <= 1e-10
        assert abs(probability_at_step(d, spec, m) - abs(amp) ** 2) <= 1e-12


def test_spectral_trajectory_falls_back_on_degeneracy():
    traj = spectral_trajectory(GGAParams(16, math.pi, math.pi), 3)
    np.testing.assert_allclose(traj.p0, 1 / 16, atol=1e-12)


def test_optimal_steps_one_step_case():
    plan = plan_steps(GGAParams(4, 0, 0))
    assert plan.M == 1
    assert plan.p_at_M == pytest.approx(1.0, abs=1e-12)


def test_optimal_steps_n1000():
    # -delta_a/delta_omega = 24.33 from the exact eigensystem; the argmax
    # oracle agrees, while the large-N estimate pi*sqrt(N)/4 = 24.84 rounds to 25
    plan = plan_steps(GGAParams(1000, 0, 0))
    assert plan.ratio == pytest.approx(24.3323, abs=1e-4)
    assert plan.M == 24
    assert argmax_steps(GGAParams(1000, 0, 0)) == (24, pytest.approx(plan.p_at_M, abs=1e-12))


def test_zero_phase_gap_for_identity_kernel():
    with pytest.raises(ZeroPhaseGap):
        plan_steps(GGAParams(16, math.pi, math.pi))
    assert issubclass(ZeroPhaseGap, DegenerateSpectrum)


def test_plan_p_at_m_consistent():
    _, spec, d = decompose(GGAParams.efficient(100, 0.7))
    plan = optimal_steps(d, spec)
    assert plan.p_at_M == pytest.approx(probability_at_step(d, spec, plan.M), abs=1e-12)


def test_negative_ratio_gets_one_more_turn():
    # off the efficient manifold delta_a and delta_omega can share a sign
    for t in np.linspace(0, 2 * np.pi, 40, endpoint=False):
        params = GGAParams.with_offset(16, t, 2.0)
        _, spec, d = decompose(params)
        plan = optimal_steps(d, spec)
        assert plan.M >= 0
        if -d.delta_a / spec.delta_omega < 0:
            assert plan.ratio == pytest.approx(
                (-d.delta_a + math.copysign(2 * math.pi, spec.delta_omega)) / spec.delta_omega
            )


@pytest.mark.parametrize("N", [16, 100])
def test_argmax_within_twice_m(N):
    params = GGAParams.efficient(N, 1.1)
    plan = plan_steps(params)
    p0 = oracles.marked_probabilities(N, params.t, params.g, 2 * plan.M)
    assert int(np.argmax(p0)) == plan.M


def test_argmax_examples():
    assert argmax_steps(GGAParams(4, 0, 0)) == (1, pytest.approx(1.0, abs=1e-12))
    params = GGAParams.efficient(16, math.pi / 2)
    assert argmax_steps(params)[0] == plan_steps(params).M
    assert argmax_steps(GGAParams(16, math.pi, math.pi), horizon=10) == (
        0, pytest.approx(1 / 16, abs=1e-15)
    )
    with pytest.raises(ValueError):
        argmax_steps(GGAParams(16, math.pi, math.pi))


@pytest.mark.parametrize("N", EFFICIENT_N)
def test_efficient_run_up_and_step_agreement(N):
    for t in T_GRID:
        params = GGAParams.efficient(N, t)
        plan = plan_steps(params)
        p0 = iterate_trajectory(params, plan.M).p0
        assert np.all(np.diff(p0) > 0)
        if plan.M >= 1:
            assert argmax_steps(params)[0] == plan.M


def test_periodicity_when_period_is_integral():
    # N=4, t=0: delta_omega = -2*pi/3, so three steps return to the start
    _, spec, d = decompose(GGAParams(4, 0, 0))
    period = 2 * math.pi / abs(spec.delta_omega)
    assert abs(period - round(period)) < 1e-9
    for m in range(10):
        assert probability_at_step(d, spec, m) == pytest.approx(
            probability_at_step(d, spec, m + round(period)), abs=1e-12
        )


def test_symmetric_distribution_validation():
    d = SymmetricDistribution(0.1, 4)
    assert d.q == pytest.approx(0.3)
    with pytest.raises(ValueError):
        SymmetricDistribution(1.5, 4)
    assert SymmetricDistribution(1 + 1e-14, 4).p0 == 1.0
