"""Finite-shot sampling statistics and shot accounting."""

import math

import numpy as np
import pytest

from smovqe.errors import MeasurementModeError, ShotBudgetError
from smovqe.hamiltonians import build_hamiltonian, exact_expectation, ground_truth
from smovqe.measurement import (
    INFINITE_SHOTS,
    EnergyMeasurement,
    ShotBudgetLedger,
    analytic_energy_variance,
    measure_energy,
    measure_energy_gaussian,
    measure_energy_infinite,
    pooled_subspace_variance,
)

HAM = build_hamiltonian("tfim", 3, j=-1.0, h=-1.0)


def fixed_state():
    rng = np.random.default_rng(31)
    psi = rng.normal(size=HAM.dim) + 1j * rng.normal(size=HAM.dim)
    return psi / np.linalg.norm(psi)


def test_estimator_is_unbiased():
    psi = fixed_state()
    rng = np.random.default_rng(32)
    n = 20_000
    values = np.array(
        [measure_energy(HAM, psi, 16, rng).value for _ in range(n)]
    )
    exact = exact_expectation(HAM, psi)
    se = values.std(ddof=1) / math.sqrt(n)
    assert abs(values.mean() - exact) < 4 * se


def test_variance_halves_when_shots_double():
    psi = fixed_state()
    rng = np.random.default_rng(33)
    n = 20_000
    lo = np.array([measure_energy(HAM, psi, 50, rng).value for _ in range(n)])
    hi = np.array([measure_energy(HAM, psi, 100, rng).value for _ in range(n)])
    ratio = hi.var(ddof=1) / lo.var(ddof=1)
    assert ratio == pytest.approx(0.5, abs=0.05)


def test_variance_estimate_tracks_analytic_value():
    psi = fixed_state()
    rng = np.random.default_rng(34)
    n = 10_000
    estimates = np.array(
        [measure_energy(HAM, psi, 40, rng).variance for _ in range(n)]
    )
    analytic = analytic_energy_variance(HAM, psi, 40)
    assert estimates.mean() == pytest.approx(analytic, rel=0.03)
    # sampled values really scatter with that spread
    values = np.array([measure_energy(HAM, psi, 40, rng).value for _ in range(n)])
    assert values.var(ddof=1) == pytest.approx(analytic, rel=0.10)


def test_analytic_variance_closed_form():
    # single qubit, H = -Z, state |0>: p = 1 exactly, no sampling noise
    ham = build_hamiltonian("tfim", 1, j=-1.0, h=-1.0)
    psi = np.array([1.0, 0.0], dtype=complex)
    assert analytic_energy_variance(ham, psi, 100) == pytest.approx(0.0, abs=1e-14)
    plus = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2)
    # <Z> = 0 for |+>: variance = coef^2 * 1 / N
    assert analytic_energy_variance(ham, plus, 25) == pytest.approx(1 / 25)


def test_infinite_measurement_is_exact_and_free():
    psi = fixed_state()
    m = measure_energy_infinite(HAM, psi)
    assert m.value == exact_expectation(HAM, psi)
    assert m.variance == 0.0
    assert m.shots_total == 0
    assert m.shots_per_pauli == INFINITE_SHOTS
    assert m.is_infinite


def test_shot_count_validation():
    psi = fixed_state()
    rng = np.random.default_rng(35)
    with pytest.raises(ShotBudgetError):
        measure_energy(HAM, psi, 1, rng)
    with pytest.raises(ShotBudgetError):
        measure_energy(HAM, psi, None, rng)
    with pytest.raises(ShotBudgetError):
        analytic_energy_variance(HAM, psi, 0)


def test_shot_accounting():
    psi = fixed_state()
    rng = np.random.default_rng(36)
    m = measure_energy(HAM, psi, 70, rng)
    assert m.shots_total == 70 * HAM.n_terms
    ledger = ShotBudgetLedger().charged(m).charged(m)
    assert ledger.cumulative_shots == 2 * 70 * HAM.n_terms
    assert ledger.cumulative_evaluations == 2
    assert ShotBudgetLedger().cumulative_shots == 0


def test_gaussian_surrogate_reports_analytic_variance():
    psi = fixed_state()
    rng = np.random.default_rng(37)
    m = measure_energy_gaussian(HAM, psi, 80, rng)
    assert m.variance == analytic_energy_variance(HAM, psi, 80)
    n = 20_000
    values = np.array(
        [measure_energy_gaussian(HAM, psi, 80, rng).value for _ in range(n)]
    )
    assert values.mean() == pytest.approx(
        exact_expectation(HAM, psi), abs=4 * values.std() / math.sqrt(n)
    )
    assert values.var(ddof=1) == pytest.approx(m.variance, rel=0.05)


def test_pooling_arithmetic():
    a = EnergyMeasurement(0.0, 0.04, 100, 900)
    b = EnergyMeasurement(0.0, 0.02, 100, 900)
    assert pooled_subspace_variance(a, b) == pytest.approx(0.03)


def test_pooling_infinite_pair_is_zero():
    psi = fixed_state()
    a = measure_energy_infinite(HAM, psi)
    b = measure_energy_infinite(HAM, psi)
    assert pooled_subspace_variance(a, b) == 0.0


def test_pooling_mode_mismatch_rejected():
    psi = fixed_state()
    rng = np.random.default_rng(38)
    finite = measure_energy(HAM, psi, 10, rng)
    infinite = measure_energy_infinite(HAM, psi)
    with pytest.raises(MeasurementModeError):
        pooled_subspace_variance(finite, infinite)
    other = measure_energy(HAM, psi, 20, rng)
    with pytest.raises(MeasurementModeError):
        pooled_subspace_variance(finite, other)


def test_pool_matches_true_variance_on_average():
    psi = fixed_state()
    rng = np.random.default_rng(39)
    n = 10_000
    pools = np.array(
        [
            pooled_subspace_variance(
                measure_energy(HAM, psi, 30, rng),
                measure_energy(HAM, psi, 30, rng),
            )
            for _ in range(n)
        ]
    )
    assert pools.mean() == pytest.approx(
        analytic_energy_variance(HAM, psi, 30), rel=0.03
    )


def test_extreme_expectation_state_needs_no_clipping_crutch():
    # ground state of TFIM(2) has |<XX>| close to but not above 1
    ham = build_hamiltonian("tfim", 2, j=-1.0, h=-1.0)
    truth = ground_truth(ham)
    gs = truth.subspace_basis[:, 0]
    rng = np.random.default_rng(40)
    m = measure_energy(ham, gs, 5, rng)
    assert math.isfinite(m.value)
    assert m.variance >= 0.0
