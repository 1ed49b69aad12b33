"""Finite-shot energy estimation with per-Pauli binomial sampling.

Each non-identity Pauli term with expectation p is estimated from N single-shot
+-1 outcomes, i.e. a Binomial(N, (1+p)/2) count; identity terms contribute
their coefficient exactly.  The reported variance uses the unbiased +-1 sample
variance s^2 = (1 - phat^2) * N / (N - 1), so it needs N >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MeasurementModeError, ShotBudgetError
from .hamiltonians import Hamiltonian, exact_expectation

INFINITE_SHOTS = 0  # sentinel stored on infinite-shot measurements


@dataclass(frozen=True)
class EnergyMeasurement:
    """One energy evaluation with its estimated variance and shot cost."""

    value: float
    variance: float
    shots_per_pauli: int
    shots_total: int

    @property
    def is_infinite(self) -> bool:
        return self.shots_per_pauli == INFINITE_SHOTS


@dataclass(frozen=True)
class ShotBudgetLedger:
    """Running totals of shots spent and circuit energies evaluated."""

    cumulative_shots: int = 0
    cumulative_evaluations: int = 0

    def charged(self, measurement: EnergyMeasurement) -> "ShotBudgetLedger":
        return ShotBudgetLedger(
            self.cumulative_shots + measurement.shots_total,
            self.cumulative_evaluations + 1,
        )


def _check_shots(shots_per_pauli) -> int:
    if shots_per_pauli is None:
        raise ShotBudgetError("finite-shot measurement needs a shot count")
    shots = int(shots_per_pauli)
    if shots != shots_per_pauli or shots < 2:
        raise ShotBudgetError(
            f"shots_per_pauli must be an integer >= 2 (variance estimation), "
            f"got {shots_per_pauli!r}"
        )
    return shots


def analytic_energy_variance(
    hamiltonian: Hamiltonian, state: np.ndarray, shots_per_pauli: int
) -> float:
    """Exact sampling variance sum_k c_k^2 (1 - p_k^2) / N of the estimator."""
    shots = _check_shots(shots_per_pauli)
    coefs, _, _ = hamiltonian._string_action
    if coefs.size == 0:
        return 0.0
    p = np.clip(hamiltonian.term_expectations(state), -1.0, 1.0)
    return float(np.sum(coefs**2 * (1.0 - p**2)) / shots)


def measure_energy(
    hamiltonian: Hamiltonian,
    state: np.ndarray,
    shots_per_pauli: int,
    rng: np.random.Generator,
) -> EnergyMeasurement:
    """Sample every Pauli term with N shots and assemble the energy estimate."""
    shots = _check_shots(shots_per_pauli)
    coefs, _, _ = hamiltonian._string_action
    value = hamiltonian.identity_offset
    variance = 0.0
    if coefs.size:
        p = np.clip(hamiltonian.term_expectations(state), -1.0, 1.0)
        counts = rng.binomial(shots, (1.0 + p) / 2.0)
        p_hat = 2.0 * counts / shots - 1.0
        value += float(coefs @ p_hat)
        variance = float(np.sum(coefs**2 * (1.0 - p_hat**2)) / (shots - 1))
    return EnergyMeasurement(
        value=value,
        variance=variance,
        shots_per_pauli=shots,
        shots_total=shots * hamiltonian.n_terms,
    )


def measure_energy_infinite(
    hamiltonian: Hamiltonian, state: np.ndarray
) -> EnergyMeasurement:
    """Noiseless oracle evaluation; costs no shots."""
    return EnergyMeasurement(
        value=exact_expectation(hamiltonian, state),
        variance=0.0,
        shots_per_pauli=INFINITE_SHOTS,
        shots_total=0,
    )


def measure_energy_gaussian(
    hamiltonian: Hamiltonian,
    state: np.ndarray,
    shots_per_pauli: int,
    rng: np.random.Generator,
) -> EnergyMeasurement:
    """Gaussian surrogate: exact mean plus noise at the analytic variance.

    Used for oracle cross-checks; the variance field carries the analytic
    value rather than a sample estimate.
    """
    shots = _check_shots(shots_per_pauli)
    variance = analytic_energy_variance(hamiltonian, state, shots)
    value = exact_expectation(hamiltonian, state) + rng.normal(0.0, np.sqrt(variance))
    return EnergyMeasurement(
        value=value,
        variance=variance,
        shots_per_pauli=shots,
        shots_total=shots * hamiltonian.n_terms,
    )


def pooled_subspace_variance(
    first: EnergyMeasurement, second: EnergyMeasurement
) -> float:
    """Average the two shifted-point variances into one per-evaluation variance.

    The fit treats all three sampled energies as homoscedastic, so the two
    fresh measurements pool into a single variance estimate.
    """
    if first.is_infinite != second.is_infinite:
        raise MeasurementModeError(
            "cannot pool a finite-shot measurement with an infinite-shot one"
        )
    if not first.is_infinite and first.shots_per_pauli != second.shots_per_pauli:
        raise MeasurementModeError(
            f"cannot pool measurements at different shot counts "
            f"({first.shots_per_pauli} vs {second.shots_per_pauli})"
        )
    return (first.variance + second.variance) / 2.0
