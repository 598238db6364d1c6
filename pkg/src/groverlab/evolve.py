"""Step-by-step evolution of the reduced register and the optimal step count."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import DegenerateSpectrum, ZeroPhaseGap
from .kernel import (
    TWO_PI,
    AmplitudeDecomposition,
    GGAParams,
    SpectralData,
    decompose,
    make_kernel,
)

ZERO_GAP_TOL = 1e-13
_NORM_TOL = 1e-10
_PROB_TOL = 1e-12


@dataclass(frozen=True)
class ReducedState:
    c0: complex
    cp: complex

    def __post_init__(self):
        if abs(self.norm_sq - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |c|^2 = {self.norm_sq!r}")

    @property
    def norm_sq(self) -> float:
        return abs(self.c0) ** 2 + abs(self.cp) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.cp], dtype=complex)


@dataclass(frozen=True)
class SymmetricDistribution:
    """Outcome distribution with mass ``p0`` on the marked element.

    The remaining ``1 - p0`` is shared equally by the ``N - 1`` unmarked elements.
    """

    p0: float
    N: int

    def __post_init__(self):
        p0 = float(self.p0)
        if not -_PROB_TOL <= p0 <= 1 + _PROB_TOL:
            raise ValueError(f"p0 must lie in [0, 1], got {p0!r}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        object.__setattr__(self, "p0", min(max(p0, 0.0), 1.0))

    @property
    def q(self) -> float:
        """Probability of each unmarked element."""
        return (1.0 - self.p0) / (self.N - 1)


@dataclass(frozen=True)
class Trajectory:
    params: GGAParams
    steps: tuple[SymmetricDistribution, ...]

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a trajectory needs at least the initial step")
        if abs(self.steps[0].p0 - 1.0 / self.params.N) > 1e-12:
            raise ValueError("step 0 must be the uniform superposition")

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, m: int) -> SymmetricDistribution:
        return self.steps[m]

    def __iter__(self) -> Iterator[tuple[int, SymmetricDistribution]]:
        return iter(enumerate(self.steps))

    @property
    def m_max(self) -> int:
        return len(self.steps) - 1

    @property
    def p0(self) -> np.ndarray:
        return np.array([d.p0 for d in self.steps])


@dataclass(frozen=True)
class StepPlan:
    M: int
    p_at_M: float
    delta_a: float
    delta_omega: float
    ratio: float


def initial_state(params: GGAParams) -> ReducedState:
    N = params.N
    return ReducedState(complex(1.0 / math.sqrt(N)), complex(math.sqrt((N - 1) / N)))


def iterate_states(params: GGAParams, m_max: int) -> list[ReducedState]:
    """States ``K^m |x_in>`` for ``m = 0..m_max`` by repeated matrix-vector products."""
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    matrix = make_kernel(params).matrix
    vec = initial_state(params).as_array()
    states = [ReducedState(vec[0], vec[1])]
    for _ in range(m_max):
        vec = matrix @ vec
        states.append(ReducedState(complex(vec[0]), complex(vec[1])))
    return states


def iterate_trajectory(params: GGAParams, m_max: int) -> Trajectory:
    """Brute-force trajectory; valid for degenerate kernels too."""
    states = iterate_states(params, m_max)
    dists = tuple(SymmetricDistribution(abs(s.c0) ** 2, params.N) for s in states)
    return Trajectory(params, dists)


def amplitude_at_step(decomp: AmplitudeDecomposition, spectral: SpectralData, m: int) -> complex:
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return decomp.a1 * cmath.exp(1j * m * spectral.omega1) + decomp.a2 * cmath.exp(
        1j * m * spectral.omega2
    )


def probability_at_step(decomp: AmplitudeDecomposition, spectral: SpectralData, m: int) -> float:
    """``| |a1| + |a2| e^{i(m*dw + delta_a)} |^2``."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    phase = m * spectral.delta_omega + decomp.delta_a
    return abs(abs(decomp.a1) + abs(decomp.a2) * cmath.exp(1j * phase)) ** 2


def spectral_trajectory(params: GGAParams, m_max: int) -> Trajectory:
    """Closed-form trajectory, falling back to iteration when the spectrum is degenerate."""
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    try:
        _, spectral, decomp = decompose(params)
    except DegenerateSpectrum:
        return iterate_trajectory(params, m_max)
    dists = [SymmetricDistribution(1.0 / params.N, params.N)]
    dists += [
        SymmetricDistribution(probability_at_step(decomp, spectral, m), params.N)
        for m in range(1, m_max + 1)
    ]
    return Trajectory(params, tuple(dists))


def _round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def optimal_steps(decomp: AmplitudeDecomposition, spectral: SpectralData) -> StepPlan:
    """Step count ``M`` closest to perfect alignment of the two amplitude components.

    If ``-delta_a / delta_omega`` is negative the target phase lies behind the
    rotation, so one full turn is added before rounding.

    Raises
    ------
    ZeroPhaseGap
        If ``|delta_omega| < 1e-13``.
    """
    dw, da = spectral.delta_omega, decomp.delta_a
    if abs(dw) < ZERO_GAP_TOL:
        raise ZeroPhaseGap(f"phase gap {dw!r} is zero; the search never progresses")
    ratio = -da / dw
    if ratio < 0:
        ratio = (-da + math.copysign(TWO_PI, dw)) / dw
    M = _round_half_away(ratio)
    return StepPlan(M, probability_at_step(decomp, spectral, M), da, dw, ratio)


def plan_steps(params: GGAParams) -> StepPlan:
    """Run the exact pipeline for ``params``; degenerate kernels raise ``ZeroPhaseGap``."""
    try:
        _, spectral, decomp = decompose(params)
    except DegenerateSpectrum as exc:
        if isinstance(exc, ZeroPhaseGap):
            raise
        raise ZeroPhaseGap(str(exc)) from exc
    return optimal_steps(decomp, spectral)


def default_horizon(spectral: SpectralData) -> int:
    """Half a rotation period plus one step.

    ``|delta_a| <= pi`` puts the first alignment inside this window, while the
    next revisit of the aligned phase (a full period later) stays outside it.
    """
    return math.ceil(math.pi / abs(spectral.delta_omega)) + 1


def argmax_steps(params: GGAParams, horizon: Optional[int] = None) -> tuple[int, float]:
    """First step index maximizing ``p0`` over ``0..horizon`` (iterative oracle)."""
    if horizon is None:
        try:
            _, spectral, _ = decompose(params)
        except DegenerateSpectrum as exc:
            raise ValueError("degenerate kernel: pass an explicit horizon") from exc
        horizon = default_horizon(spectral)
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    p0 = iterate_trajectory(params, horizon).p0
    # revisits of the same phase differ only by rounding; keep the earliest
    m_star = int(np.flatnonzero(p0 >= p0.max() - _PROB_TOL)[0])
    return m_star, float(p0[m_star])
