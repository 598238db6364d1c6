"""Numerical laboratory for generalized Grover search and step-by-step majorization."""
from .asym import (
    AlignmentSolution,
    ApproxReport,
    approx_delta_a,
    approx_delta_omega,
    approx_steps,
    approximation_error_sweep,
    find_exact_alignment,
    small_angle_delta_a,
    small_angle_delta_omega,
)
from .errors import (
    DegenerateSpectrum,
    DimensionMismatch,
    DivergentSteps,
    LengthMismatch,
    NoRoot,
    RangeError,
    ZeroPhaseGap,
)
from .evolve import (
    ReducedState,
    StepPlan,
    SymmetricDistribution,
    Trajectory,
    amplitude_at_step,
    argmax_steps,
    initial_state,
    iterate_trajectory,
    optimal_steps,
    plan_steps,
    probability_at_step,
    spectral_trajectory,
)
from .kernel import (
    AmplitudeDecomposition,
    GGAParams,
    Kernel,
    SpectralData,
    amplitude_components,
    decompose,
    eigensystem,
    make_kernel,
    principal_phase,
)
from .major import (
    LorenzCurve,
    MajorizationReport,
    SortedDistribution,
    cumulants,
    expand,
    lorenz_series,
    majorizes,
    step_by_step_check,
    symmetric_majorizes,
)

__version__ = "0.1.0"
