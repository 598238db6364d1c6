"""Majorization order on probability vectors and its two-level specialization.

``p`` is majorized by ``q`` (``p < q``) when every prefix sum of ``q`` sorted in
decreasing order dominates the matching prefix sum of ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, LengthMismatch, RangeError
from .evolve import SymmetricDistribution, Trajectory

#: slack on cumulant inequalities; ties count as majorizing
MAJORIZATION_TOL = 1e-12
_SUM_TOL = 1e-10


@dataclass(frozen=True)
class SortedDistribution:
    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-D sequence")
        if np.any(probs < 0):
            raise ValueError("probabilities must be non-negative")
        if np.any(np.diff(probs) > 0):
            raise ValueError("probabilities must be sorted in non-increasing order")
        if abs(probs.sum() - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, expected 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_unsorted(cls, probs: Sequence[float]) -> "SortedDistribution":
        return cls(np.sort(np.asarray(probs, dtype=float))[::-1])

    def __len__(self) -> int:
        return self.probs.size


@dataclass(frozen=True)
class LorenzCurve:
    """Cumulants ``C_1..C_N`` of the sorted distribution at step ``m``."""

    m: int
    cumulants: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class MajorizationReport:
    holds_overall: bool
    per_step: tuple[tuple[int, bool], ...]
    first_violation: Optional[int]
    checked_range: tuple[int, int]
    # cumulants (earlier step, later step) at the first violation
    violation_cumulants: Optional[tuple[np.ndarray, np.ndarray]] = field(default=None, repr=False)


def expand(dist: SymmetricDistribution) -> SortedDistribution:
    """Materialize the full length-N sorted vector of a two-level distribution."""
    N, p0, q = dist.N, dist.p0, dist.q
    probs = np.full(N, q)
    if p0 >= q:
        probs[0] = p0
    else:
        probs[-1] = p0
    return SortedDistribution(probs)


def cumulants(dist: SortedDistribution) -> LorenzCurve:
    return LorenzCurve(m=0, cumulants=np.cumsum(dist.probs))


def majorizes(q: SortedDistribution, p: SortedDistribution) -> bool:
    """True iff ``q`` majorizes ``p``."""
    if len(q) != len(p):
        raise LengthMismatch(f"distributions have lengths {len(q)} and {len(p)}")
    return bool(np.all(np.cumsum(p.probs) <= np.cumsum(q.probs) + MAJORIZATION_TOL))


def _kink_cumulants(dist: SymmetricDistribution) -> tuple[float, float]:
    # cumulants of a two-level vector are linear between k=1 and k=N-1, and C_N=1
    N, p0, q = dist.N, dist.p0, dist.q
    if p0 >= q:
        return p0, p0 + (N - 2) * q
    return q, (N - 1) * q


def symmetric_majorizes(q: SymmetricDistribution, p: SymmetricDistribution) -> bool:
    """``majorizes(expand(q), expand(p))`` without building length-N vectors."""
    if q.N != p.N:
        raise DimensionMismatch(f"distributions have N = {q.N} and {p.N}")
    uniform = 1.0 / q.N
    if q.p0 >= uniform and p.p0 >= uniform:
        return q.p0 >= p.p0 - MAJORIZATION_TOL
    cq, cp = _kink_cumulants(q), _kink_cumulants(p)
    return all(b <= a + MAJORIZATION_TOL for a, b in zip(cq, cp))


def step_by_step_check(traj: Trajectory, m_end: int) -> MajorizationReport:
    """Check that step ``m + 1`` majorizes step ``m`` for every ``m < m_end``."""
    if not 0 <= m_end <= traj.m_max:
        raise RangeError(f"m_end={m_end} outside trajectory range 0..{traj.m_max}")
    per_step = tuple(
        (m, symmetric_majorizes(traj[m + 1], traj[m])) for m in range(m_end)
    )
    first = next((m for m, ok in per_step if not ok), None)
    evidence = None
    if first is not None:
        evidence = (
            cumulants(expand(traj[first])).cumulants,
            cumulants(expand(traj[first + 1])).cumulants,
        )
    return MajorizationReport(
        holds_overall=first is None,
        per_step=per_step,
        first_violation=first,
        checked_range=(0, m_end),
        violation_cumulants=evidence,
    )


def lorenz_series(traj: Trajectory, stride: int) -> list[LorenzCurve]:
    """Lorenz curves at steps ``0, stride, 2*stride, ...`` of the trajectory."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    return [
        LorenzCurve(m=m, cumulants=cumulants(expand(traj[m])).cumulants)
        for m in range(0, traj.m_max + 1, stride)
    ]
