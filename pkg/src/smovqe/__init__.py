"""Classical lab for sequential minimal optimization of VQEs under shot noise.

Spin-chain Hamiltonians and a layered ansatz provide exactly sinusoidal
single-parameter energy slices; the optimizer sweeps coordinates with a
three-point trigonometric fit, and the measurement model exposes the reuse
bias that motivates the corrected and regularized strategy variants.
"""

from .ansatz import AnsatzSpec, apply_ansatz, random_parameters, reduce_angles
from .errors import (
    ConfigError,
    DimensionError,
    InvalidSpecError,
    MeasurementModeError,
    ResourceCapError,
    RunComplete,
    ShotBudgetError,
    SmoVqeError,
)
from .hamiltonians import (
    GroundTruth,
    Hamiltonian,
    PauliTerm,
    build_hamiltonian,
    exact_expectation,
    fidelity_to_gs,
    ground_truth,
)
from .harness import (
    AggregateRow,
    ExperimentConfig,
    ExperimentResult,
    MetricsRow,
    aggregate,
    load_config,
    read_rows_csv,
    run_experiment,
    write_aggregate_csv,
    write_rows_csv,
)
from .measurement import (
    EnergyMeasurement,
    ShotBudgetLedger,
    analytic_energy_variance,
    measure_energy,
    measure_energy_gaussian,
    measure_energy_infinite,
    pooled_subspace_variance,
)
from .optimizer import (
    IterationRecord,
    OptimizerState,
    Strategy,
    StrategyConfig,
    initial_state,
    regularization_strength,
    run_optimization,
    smo_step,
)
from .trigfit import (
    BiasEstimate,
    GeneralTrigFit,
    SnrRegime,
    TrigFit,
    bias_estimate,
    bias_estimate_general,
    evaluate,
    evaluate_general,
    fit_trig,
    fit_trig_general,
    minimizer,
    propagate_offset,
    shift_center_value,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzSpec",
    "apply_ansatz",
    "random_parameters",
    "reduce_angles",
    "ConfigError",
    "DimensionError",
    "InvalidSpecError",
    "MeasurementModeError",
    "ResourceCapError",
    "RunComplete",
    "ShotBudgetError",
    "SmoVqeError",
    "GroundTruth",
    "Hamiltonian",
    "PauliTerm",
    "build_hamiltonian",
    "exact_expectation",
    "fidelity_to_gs",
    "ground_truth",
    "AggregateRow",
    "ExperimentConfig",
    "ExperimentResult",
    "MetricsRow",
    "aggregate",
    "load_config",
    "read_rows_csv",
    "run_experiment",
    "write_aggregate_csv",
    "write_rows_csv",
    "EnergyMeasurement",
    "ShotBudgetLedger",
    "analytic_energy_variance",
    "measure_energy",
    "measure_energy_gaussian",
    "measure_energy_infinite",
    "pooled_subspace_variance",
    "IterationRecord",
    "OptimizerState",
    "Strategy",
    "StrategyConfig",
    "initial_state",
    "regularization_strength",
    "run_optimization",
    "smo_step",
    "BiasEstimate",
    "GeneralTrigFit",
    "SnrRegime",
    "TrigFit",
    "bias_estimate",
    "bias_estimate_general",
    "evaluate",
    "evaluate_general",
    "fit_trig",
    "fit_trig_general",
    "minimizer",
    "propagate_offset",
    "shift_center_value",
    "__version__",
]
