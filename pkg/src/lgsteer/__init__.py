"""Steady-state quantum correlations of a Laguerre-Gaussian cavity.

A linearized model of an optical cavity whose two spiral-phase mirrors
rotate under radiation torque, with an intracavity optical parametric
amplifier.  The package computes the steady-state covariance matrix of
the three Gaussian modes (two mirror rotational modes, one cavity
mode), then bipartite/tripartite entanglement and directional Gaussian
steering, over 1-D and 2-D parameter grids with figure presets and a
CSV/JSON command-line surface.
"""

from ._version import __version__
from .constants import CLIGHT, HBAR, KBOLTZ
from .errors import (
    BadUnit,
    EigenFailure,
    InvalidSpec,
    LgsteerError,
    MissingRequired,
    MonogamyViolation,
    NonPhysicalInput,
    NonPositiveDeterminant,
    NonPositiveParameter,
    NoStableRegion,
    SingularSystem,
    SolveFailure,
    StepOverflow,
    UnknownKey,
    UnknownMode,
    UnknownPreset,
    UnstableSystem,
)
from .eigen import eigenvalues, hessenberg, real_schur
from .model import (
    DerivedParams,
    LinearModel,
    SteadyState,
    SystemParams,
    build_diffusion,
    build_drift,
    build_model,
    derive,
    stability_margin,
    steady_state,
    thermal_occupation,
    with_updates,
)
from .gaussian import (
    MODE_ORDER,
    CovarianceMatrix,
    lyapunov_residual,
    min_pt_symplectic,
    partial_transpose,
    reduce,
    solve_lyapunov,
    steady_covariance,
    symplectic_eigenvalues,
    symplectic_form,
)
from .measures import (
    CorrelationReport,
    SteeringClass,
    classify,
    full_report,
    log_negativity,
    one_vs_two_log_negativity,
    renyi2_entropy,
    residual_contangle_min,
    steering,
    steering_asymmetry,
)
from .validation import (
    CheckResult,
    ReferenceState,
    integrate_covariance,
    lyapunov_oracle,
    random_stable_system,
    reference,
    run_checks,
)
from .sweep import (
    PRESET_NAMES,
    Axis,
    OptimumDetuning,
    SweepResult,
    SweepRow,
    SweepSpec,
    optimum_detuning,
    preset,
    preset_variants,
    run_sweep,
    table_defaults,
)
from .config import (
    AxisConfig,
    OutputSection,
    RunConfig,
    RunSection,
    parse_config,
    serialize_config,
    system_to_display,
    to_sweep_spec,
    to_system_params,
)
from .io import (
    MEASURE_COLUMNS,
    format_report_table,
    parse_result_csv,
    report_to_json,
    serialize_csv,
    serialize_json,
    write_result,
)

__all__ = [
    "__version__",
    "HBAR",
    "KBOLTZ",
    "CLIGHT",
    "LgsteerError",
    "NonPositiveParameter",
    "UnknownKey",
    "BadUnit",
    "MissingRequired",
    "InvalidSpec",
    "UnknownPreset",
    "UnknownMode",
    "EigenFailure",
    "UnstableSystem",
    "SolveFailure",
    "SingularSystem",
    "StepOverflow",
    "NonPhysicalInput",
    "NonPositiveDeterminant",
    "MonogamyViolation",
    "NoStableRegion",
    "eigenvalues",
    "hessenberg",
    "real_schur",
    "SystemParams",
    "DerivedParams",
    "SteadyState",
    "LinearModel",
    "thermal_occupation",
    "derive",
    "steady_state",
    "build_drift",
    "build_diffusion",
    "build_model",
    "stability_margin",
    "with_updates",
    "MODE_ORDER",
    "CovarianceMatrix",
    "symplectic_form",
    "reduce",
    "partial_transpose",
    "symplectic_eigenvalues",
    "min_pt_symplectic",
    "steady_covariance",
    "solve_lyapunov",
    "lyapunov_residual",
    "SteeringClass",
    "CorrelationReport",
    "log_negativity",
    "one_vs_two_log_negativity",
    "residual_contangle_min",
    "renyi2_entropy",
    "steering",
    "steering_asymmetry",
    "classify",
    "full_report",
    "ReferenceState",
    "CheckResult",
    "lyapunov_oracle",
    "integrate_covariance",
    "reference",
    "random_stable_system",
    "run_checks",
    "Axis",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "OptimumDetuning",
    "run_sweep",
    "optimum_detuning",
    "preset",
    "preset_variants",
    "table_defaults",
    "PRESET_NAMES",
    "RunConfig",
    "RunSection",
    "OutputSection",
    "AxisConfig",
    "parse_config",
    "serialize_config",
    "to_system_params",
    "to_sweep_spec",
    "system_to_display",
    "MEASURE_COLUMNS",
    "serialize_csv",
    "serialize_json",
    "parse_result_csv",
    "write_result",
    "format_report_table",
    "report_to_json",
]
