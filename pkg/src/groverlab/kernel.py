"""Two-parameter Grover kernel, its exact eigensystem and amplitude components.

Everything lives in the reduced basis ``{|x0>, |x_perp>}`` where ``|x0>`` is the
marked element and ``|x_perp>`` the normalized uniform superposition of the
``N - 1`` unmarked elements.  Vectors are length-2 complex numpy arrays.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSpectrum

TWO_PI = 2.0 * math.pi

#: |xi1 - xi2| below this declares the spectrum degenerate.
DEGENERACY_TOL = 1e-12


def principal_phase(theta: float) -> float:
    """Wrap ``theta`` into the half-open interval (-pi, pi]."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    wrapped = theta - TWO_PI * math.ceil((theta - math.pi) / TWO_PI)
    # ceil() can land exactly on -pi after rounding
    if wrapped <= -math.pi:
        wrapped += TWO_PI
    return wrapped


def _principal_sqrt(z: complex) -> complex:
    # +0.0 clears a negative zero so points on the cut take the +i branch
    return cmath.sqrt(complex(z.real + 0.0, z.imag + 0.0))


def _arg(z: complex) -> float:
    return principal_phase(cmath.phase(z)) if z != 0 else 0.0


@dataclass(frozen=True)
class GGAParams:
    """Dimension ``N`` and the phase angles of ``beta = e^{it}``, ``delta = e^{ig}``."""

    N: int
    t: float = 0.0
    g: float = 0.0

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N:
            raise ValueError(f"N must be an integer, got {self.N!r}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        for name in ("t", "g"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            wrapped = value % TWO_PI
            object.__setattr__(self, name, 0.0 if wrapped >= TWO_PI else wrapped)
        object.__setattr__(self, "N", int(self.N))

    @classmethod
    def efficient(cls, N: int, t: float) -> "GGAParams":
        """The efficient family ``beta = delta = e^{it}``."""
        return cls(N, t, t)

    @classmethod
    def with_offset(cls, N: int, t: float, offset: float) -> "GGAParams":
        """The family ``g = t + offset``."""
        return cls(N, t, t + offset)

    @property
    def beta(self) -> complex:
        return cmath.exp(1j * self.t)

    @property
    def delta(self) -> complex:
        return cmath.exp(1j * self.g)

    @property
    def is_efficient(self) -> bool:
        return _same_angle(self.t, self.g) and not _same_angle(self.t, math.pi)


def _same_angle(a: float, b: float, tol: float = 1e-12) -> bool:
    return abs(principal_phase(a - b)) <= tol


@dataclass(frozen=True)
class Kernel:
    """2x2 unitary Grover kernel; ``matrix`` is indexed ``[row, col]`` in the reduced basis."""

    params: GGAParams
    matrix: np.ndarray = field(repr=False)

    @property
    def k00(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def k01(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def k10(self) -> complex:
        return complex(self.matrix[1, 0])

    @property
    def k11(self) -> complex:
        return complex(self.matrix[1, 1])

    @property
    def trace(self) -> complex:
        return self.k00 + self.k11

    @property
    def det(self) -> complex:
        return self.k00 * self.k11 - self.k01 * self.k10

    def unitarity_defect(self) -> float:
        """Max-entry deviation of ``K^dagger K`` from the identity."""
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(2))))


@dataclass(frozen=True)
class SpectralData:
    omega1: float
    omega2: float
    kappa1: np.ndarray = field(repr=False)
    kappa2: np.ndarray = field(repr=False)
    A: complex
    delta_omega: float

    @property
    def xi1(self) -> complex:
        return cmath.exp(1j * self.omega1)

    @property
    def xi2(self) -> complex:
        return cmath.exp(1j * self.omega2)


@dataclass(frozen=True)
class AmplitudeDecomposition:
    a1: complex
    a2: complex
    delta_a: float

    @property
    def sum_abs(self) -> float:
        return abs(self.a1) + abs(self.a2)


def make_kernel(params: GGAParams) -> Kernel:
    N = params.N
    beta, delta = params.beta, params.delta
    r = math.sqrt(N - 1)
    matrix = np.array(
        [
            [1 + delta * (1 - N), -beta * (1 + delta) * r],
            [(1 + delta) * r, beta * (1 + delta - N)],
        ],
        dtype=complex,
    ) / N
    return Kernel(params, matrix)


def _eigvec(kernel: Kernel, A: complex, root: complex, sign: int) -> np.ndarray:
    """Eigenvector for ``xi = Tr/2 + sign*root``.

    The closed form ``(A + sign*2N*root, 2(1+delta)sqrt(N-1))`` comes from the
    second kernel row.  When ``1 + delta`` vanishes (``delta = -1``) it collapses,
    so the first-row form is used whenever it is better conditioned.
    """
    N = kernel.params.N
    twice_root = 2 * N * root
    from_row2 = np.array([A + sign * twice_root, 2 * N * kernel.k10], dtype=complex)
    from_row1 = np.array([2 * N * kernel.k01, -A + sign * twice_root], dtype=complex)
    n2, n1 = np.linalg.norm(from_row2), np.linalg.norm(from_row1)
    vec, norm = (from_row2, n2) if n2 >= n1 else (from_row1, n1)
    return vec / norm


def eigensystem(kernel: Kernel) -> SpectralData:
    """Exact eigenphases and normalized eigenvectors of the kernel.

    ``xi_{1,2} = Tr/2 -/+ sqrt(Tr^2/4 - Det)`` with the principal square root, and
    every phase is reported in (-pi, pi].

    Raises
    ------
    DegenerateSpectrum
        If ``|xi1 - xi2| < 1e-12`` (e.g. the identity kernel at beta = delta = -1).
    """
    params = kernel.params
    beta, delta = params.beta, params.delta
    tr = kernel.trace
    # det K = beta*delta identically; using it keeps real cases exactly real
    root = _principal_sqrt(tr * tr / 4 - beta * delta)
    xi1, xi2 = tr / 2 - root, tr / 2 + root
    if abs(xi1 - xi2) < DEGENERACY_TOL:
        raise DegenerateSpectrum(
            f"kernel eigenvalues coincide (|xi1 - xi2| = {abs(xi1 - xi2):.3e}) for {params}"
        )
    A = (beta - delta) * params.N + (1 - beta) * (1 + delta)
    omega1, omega2 = _arg(xi1), _arg(xi2)
    return SpectralData(
        omega1=omega1,
        omega2=omega2,
        kappa1=_eigvec(kernel, A, root, -1),
        kappa2=_eigvec(kernel, A, root, +1),
        A=A,
        delta_omega=principal_phase(omega2 - omega1),
    )


def component(N: int, kappa: np.ndarray) -> complex:
    """Amplitude component contributed by one normalized eigenvector."""
    overlap_marked = kappa[0]
    overlap_perp = np.conj(kappa[1])
    value = abs(overlap_marked) ** 2 + math.sqrt(N - 1) * overlap_marked * overlap_perp
    return complex(value) / math.sqrt(N)


def amplitude_components(kernel: Kernel, spectral: SpectralData) -> AmplitudeDecomposition:
    N = kernel.params.N
    a1 = component(N, spectral.kappa1)
    a2 = component(N, spectral.kappa2)
    return AmplitudeDecomposition(a1, a2, principal_phase(_arg(a2) - _arg(a1)))


def decompose(params: GGAParams) -> tuple[Kernel, SpectralData, AmplitudeDecomposition]:
    """Kernel, eigensystem and amplitude components in one call."""
    kernel = make_kernel(params)
    spectral = eigensystem(kernel)
    return kernel, spectral, amplitude_components(kernel, spectral)
