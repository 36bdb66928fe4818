"""Pseudospectral splitting, exponential and resonance-based integrators for
periodic dispersive equations, with a convergence-order harness."""

__version__ = "0.1.0"

from .spectral import (
    Field,
    FourierGrid,
    apply_multiplier,
    free_flow,
    phi1,
    phi2,
    pointwise_power,
    project,
    sobolev_norm,
    to_physical,
    to_spectral,
)
from .problems import EvolutionProblem, evaluate_nonlinearity, make_problem
from .schemes import (
    BlowUpError,
    SchemeKind,
    Stepper,
    StepperConfig,
    evolve,
    exp1_step,
    filtered_lie_step,
    general_res1_step,
    lie_step,
    res1_step,
    res2_step,
    strang_step,
    symmetry_defect,
)
from .data import RoughDataSpec, plane_wave_exact, rough_field, smooth_preset
from .harness import (
    ConvergenceConfig,
    ConvergenceReport,
    DiagnosticsSeries,
    emit_csv,
    fit_slope,
    reference_solution,
    run_convergence,
    run_diagnostics,
)
