"""Large-N approximations of the phase gap and step count, and exact-alignment search."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import optimize

from .errors import DegenerateSpectrum, DivergentSteps, NoRoot
from .evolve import _round_half_away, probability_at_step
from .kernel import GGAParams, decompose, principal_phase

#: half-width of the excluded band around the degenerate endpoint t = pi
GUARD_BAND = 0.5
ALIGNMENT_TOL = 1e-9


@dataclass(frozen=True)
class ApproxReport:
    t: float
    N: int
    exact_dw: float
    approx_dw: float
    abs_err: float
    rel_err_percent: float


@dataclass(frozen=True)
class AlignmentSolution:
    t: float
    M: int
    ratio: float
    p_success: float


def approx_delta_omega(t: float, N: int) -> float:
    return 2.0 * math.atan(2.0 * math.cos(t / 2.0) / math.sqrt(N))


def approx_delta_a(t: float, N: int) -> float:
    return approx_delta_omega(t, N) - math.pi


def small_angle_delta_omega(t: float, N: int) -> float:
    return 4.0 * math.cos(t / 2.0) / math.sqrt(N)


def small_angle_delta_a(t: float, N: int) -> float:
    return small_angle_delta_omega(t, N) - math.pi


def approx_steps(t: float, N: int) -> int:
    """Nearest integer to ``pi sqrt(N) / (4 cos(t/2))`` with ``t`` taken in (-pi, pi]."""
    c = math.cos(principal_phase(t) / 2.0)
    if abs(c) <= 1e-9:
        raise DivergentSteps(f"cos(t/2) = {c!r}: step estimate diverges at beta = delta = -1")
    return _round_half_away(math.pi * math.sqrt(N) / (4.0 * c))


def exact_delta_omega(t: float, N: int) -> float:
    """Exact gap on the efficient manifold, oriented like the large-N formula.

    The eigenvalue labels are only fixed up to a swap; on the branch cut of the
    square root (e.g. ``t = 0`` exactly) the principal labels come out swapped
    relative to neighbouring ``t``.  Swapping flips the sign of the gap, so the
    sign is matched to ``cos(t/2)``.
    """
    _, spectral, _ = decompose(GGAParams.efficient(N, t))
    dw = spectral.delta_omega
    reference = math.cos(t / 2.0)
    if reference != 0 and math.copysign(1.0, dw) != math.copysign(1.0, reference):
        dw = -dw
    return dw


def guarded_grid(points: int) -> np.ndarray:
    """``points`` angles spread over (-pi, pi) minus the guard band around +-pi."""
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    edge = math.pi - GUARD_BAND
    return np.linspace(-edge, edge, points)


def approximation_error_sweep(N: int, t_grid: Iterable[float]) -> list[ApproxReport]:
    reports = []
    for t in t_grid:
        t = float(t)
        if abs(principal_phase(t - math.pi)) < GUARD_BAND:
            raise ValueError(f"t={t!r} lies inside the guard band around pi")
        exact = exact_delta_omega(t, N)
        approx = approx_delta_omega(t, N)
        rel = (approx - exact) / exact * 100.0 if abs(exact) > 1e-13 else math.nan
        reports.append(ApproxReport(t, N, exact, approx, abs(approx - exact), rel))
    return reports


def alignment_ratio(t: float, N: int) -> float:
    """``-delta_a / delta_omega`` on the efficient manifold ``g = t``."""
    _, spectral, decomp = decompose(GGAParams.efficient(N, t))
    return -decomp.delta_a / spectral.delta_omega


def _solution(t: float, N: int, M: int) -> AlignmentSolution:
    _, spectral, decomp = decompose(GGAParams.efficient(N, t))
    ratio = -decomp.delta_a / spectral.delta_omega
    return AlignmentSolution(t, M, ratio, probability_at_step(decomp, spectral, M))


def find_exact_alignment(N: int, M_target: int, t_bracket: tuple[float, float]) -> AlignmentSolution:
    """Find ``t`` on the efficient manifold where ``-delta_a/delta_omega == M_target``.

    A sign change of the residual on the bracket is solved by Brent's method.
    Without one, the residual may still touch zero (the ratio has a minimum of
    exactly 1 at ``t = 0`` for ``N = 4``), so its smallest magnitude on the
    bracket is located and accepted if within tolerance.

    Raises
    ------
    NoRoot
        If the residual stays away from zero on the bracket.
    """
    lo, hi = sorted(map(float, t_bracket))

    def residual(t: float) -> float:
        try:
            return alignment_ratio(t, N) - M_target
        except DegenerateSpectrum:
            return math.inf

    f_lo, f_hi = residual(lo), residual(hi)
    for t, f in ((lo, f_lo), (hi, f_hi)):
        if abs(f) <= ALIGNMENT_TOL:
            return _solution(t, N, M_target)
    if math.isfinite(f_lo) and math.isfinite(f_hi) and f_lo * f_hi < 0:
        t_star = optimize.brentq(residual, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    else:
        best = optimize.minimize_scalar(
            lambda t: abs(residual(t)), bounds=(lo, hi), method="bounded",
            options={"xatol": 1e-12},
        )
        t_star = float(best.x)
    if not abs(residual(t_star)) <= ALIGNMENT_TOL:
        raise NoRoot(
            f"-delta_a/delta_omega never reaches {M_target} on [{lo}, {hi}] for N={N}"
        )
    return _solution(t_star, N, M_target)
