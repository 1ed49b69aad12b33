"""Acceptance checklist: one test and one printed verdict line per criterion.

Every statistical criterion pins its ensemble size, seeds, and tolerance in
the test body, so the whole file is deterministic.  The two expensive
ensembles (the estimator-tracking grid and the strategy benchmark) are
module-scoped fixtures computed once.
"""

import math

import numpy as np
import pytest

from smovqe.ansatz import AnsatzSpec
from smovqe.hamiltonians import build_hamiltonian, ground_truth
from smovqe.harness import ExperimentConfig, run_experiment
from smovqe.measurement import measure_energy
from smovqe.optimizer import Strategy, StrategyConfig, run_optimization
from smovqe.trigfit import SQRT2, TWO_PI, fit_trig, propagate_offset
from smovqe.validation import (
    coefficient_covariance_checks,
    harmonic_bias_check,
    reuse_bias_check,
)

TFIM = {"j": -1.0, "h": -1.0}


def _verdict(name: str, passed: bool, detail: str) -> None:
    print(f"{name} {'PASS' if passed else 'FAIL'} — {detail}")
    assert passed, f"{name}: {detail}"


@pytest.fixture(scope="module")
def tracking_ensemble():
    """50-seed, 50-sweep grid used by the estimator-consistency criterion."""
    config = ExperimentConfig(
        model="tfim", n_qubits=5, n_layers=3, couplings=TFIM,
        shots_per_pauli=100, n_sweeps=50, seeds=tuple(range(50)),
        strategies=(Strategy.CORRECTED, Strategy.BIASED), record_every=40,
    )
    return run_experiment(config)


@pytest.fixture(scope="module")
def benchmark_ensemble():
    """80-seed, 100-sweep endpoint grid used by the strategy-ordering criterion."""
    config = ExperimentConfig(
        model="tfim", n_qubits=5, n_layers=3, couplings=TFIM,
        shots_per_pauli=100, n_sweeps=100, seeds=tuple(range(80)),
        strategies=(
            Strategy.REGULARIZED, Strategy.BIASED, Strategy.CORRECTED,
        ),
        record_every=4000,
    )
    return run_experiment(config)


def test_a01_noiseless_fit_recovers_curves_exactly():
    rng = np.random.default_rng(41)
    grid = np.linspace(0.0, TWO_PI, 1_000_000, endpoint=False)
    step = TWO_PI / grid.size
    cos_grid, sin_grid = np.cos(grid), np.sin(grid)
    buf = np.empty_like(grid)
    nodes = np.array([0.0, TWO_PI / 3.0, -TWO_PI / 3.0])
    worst_coef = 0.0
    worst_gap = 0.0
    for _ in range(1000):
        b = rng.uniform(-1.0, 1.0, size=3)
        samples = b[0] + SQRT2 * (b[1] * np.cos(nodes) + b[2] * np.sin(nodes))
        fit = fit_trig(samples[0], samples[1], samples[2], 0.0)
        worst_coef = max(
            worst_coef,
            abs(fit.b_const - b[0]), abs(fit.b_cos - b[1]),
            abs(fit.b_sin - b[2]),
        )
        # brute-force grid argmin of the same curve (constant term dropped)
        np.multiply(cos_grid, b[1], out=buf)
        buf += b[2] * sin_grid
        grid_min = grid[np.argmin(buf)]
        gap = abs(fit.theta_min - grid_min)
        worst_gap = max(worst_gap, min(gap, TWO_PI - gap))
    passed = worst_coef <= 1e-12 and worst_gap <= step * (1.0 + 1e-9)
    _verdict(
        "A1", passed,
        f"coefficient error {worst_coef:.2e} (<=1e-12), minimizer within "
        f"{worst_gap / step:.2f} grid steps (<=1)",
    )


def test_a02_fit_coefficient_noise_is_isotropic():
    checks = coefficient_covariance_checks(
        trials=100_000, sigma=0.1, seed=2024, var_rtol=0.03, cov_sigmas=3.0
    )
    _verdict(
        "A2", all(c.passed for c in checks),
        "; ".join(c.line() for c in checks if not c.passed) or
        "variances within 3% of sigma^2/3, covariances within 3 SE of 0",
    )


def test_a03_first_order_bias_matches_monte_carlo():
    checks = [
        reuse_bias_check(snr=10.0, trials=100_000, seed=8, rtol=0.10),
        reuse_bias_check(snr=20.0, trials=100_000, seed=9, rtol=0.10),
        reuse_bias_check(snr=5.0, trials=100_000, seed=10, rtol=0.30),
    ]
    detail = ", ".join(
        f"snr={c.name.split('=')[-1]}: {c.observed:.4f} vs {c.expected:.4f}"
        for c in checks
    )
    _verdict("A3", all(c.passed for c in checks), detail)


def test_a04_center_offset_propagates_linearly():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        f0, fp, fm = rng.uniform(-2.0, 2.0, size=3)
        delta = rng.uniform(-2.0, 2.0)
        base = fit_trig(f0, fp, fm, 0.04)
        moved = fit_trig(f0 + delta, fp, fm, 0.04)
        expected = propagate_offset(delta)
        observed = (
            moved.b_const - base.b_const,
            moved.b_cos - base.b_cos,
            moved.b_sin - base.b_sin,
        )
        analytic = (delta / 3.0, SQRT2 * delta / 3.0, 0.0)
        for got, want_a, want_b in zip(observed, expected, analytic):
            worst = max(worst, abs(got - want_a), abs(got - want_b))
    _verdict("A4", worst <= 1e-12, f"max propagation error {worst:.2e} (<=1e-12)")


def test_a05_two_harmonic_bias_has_the_quadratic_weight():
    check = harmonic_bias_check(trials=100_000, seed=99, rtol=0.15, snr=12.0)
    _verdict(
        "A5", check.passed,
        f"observed {check.observed:.5f} vs (1+4)-weighted {check.expected:.5f} "
        f"(rel 15%)",
    )


def test_a06_corrected_estimate_is_unbiased_at_convergence(tracking_ensemble):
    by_cell = {}
    for row in tracking_ensemble.rows:
        by_cell.setdefault((row.strategy, row.t), []).append(row.estimate_error)
    steps = 50 * 40
    final_ts = [steps - 40 * k for k in range(10)]
    z_scores = []
    for t in final_ts:
        errors = np.array(by_cell[("corrected", t)])
        se = errors.std(ddof=1) / math.sqrt(errors.size)
        z_scores.append(errors.mean() / se)
    corrected_final = float(np.mean(by_cell[("corrected", steps)]))
    biased_final = float(np.mean(by_cell[("biased", steps)]))
    max_z = max(abs(z) for z in z_scores)
    passed = (
        max_z <= 3.0
        and biased_final < 0.0
        and abs(biased_final) > 5.0 * abs(corrected_final)
    )
    _verdict(
        "A6", passed,
        f"corrected max |z| over final 10 sweeps {max_z:.2f} (<=3), biased "
        f"final mean {biased_final:.3f} vs corrected {corrected_final:.4f} "
        f"({abs(biased_final) / max(abs(corrected_final), 1e-12):.0f}x)",
    )


def test_a07_scheduled_offset_wins_and_plain_correction_loses(benchmark_ensemble):
    finals = {}
    for row in benchmark_ensemble.rows:
        if row.t == 4000:
            finals.setdefault(row.strategy, []).append(
                (row.delta_energy, row.delta_fidelity)
            )
    med = {
        s: (np.median([v[0] for v in vals]), np.median([v[1] for v in vals]))
        for s, vals in finals.items()
    }
    n_seeds = len(finals["biased"])
    de_ok = med["regularized"][0] < med["biased"][0] < med["corrected"][0]
    df_ok = med["regularized"][1] < med["biased"][1] < med["corrected"][1]
    passed = n_seeds >= 20 and de_ok and df_ok
    _verdict(
        "A7", passed,
        f"{n_seeds} seeds; median dE reg {med['regularized'][0]:.4f} < biased "
        f"{med['biased'][0]:.4f} < corrected {med['corrected'][0]:.4f}: {de_ok}; "
        f"median dF reg {med['regularized'][1]:.4f} < biased "
        f"{med['biased'][1]:.4f} < corrected {med['corrected'][1]:.4f}: {df_ok}",
    )


def test_a08_ground_truth_and_parameter_count():
    single = ground_truth(build_hamiltonian("tfim", 1, **TFIM))
    pair = ground_truth(build_hamiltonian("tfim", 2, **TFIM))
    d_benchmark = AnsatzSpec(5, 3).n_params
    passed = (
        single.energy == -1.0
        and abs(pair.energy - (-math.sqrt(5.0))) <= 1e-10
        and d_benchmark == 40
    )
    _verdict(
        "A8", passed,
        f"E(1 qubit)={single.energy}, E(2 qubits)={pair.energy:.12f} "
        f"(-sqrt 5), D(5,3)={d_benchmark}",
    )


def test_a09_noiseless_runs_descend_and_strategies_coincide():
    families = (
        ("tfim", TFIM), ("xx", {"j": -1.0}),
        ("xxz", {"j": -1.0, "delta": -0.5}), ("xxx", {"j": -1.0, "h": -1.0}),
    )
    worst_rise = -math.inf
    identical = True
    for model, couplings in families:
        ham = build_hamiltonian(model, 4, **couplings)
        truth = ground_truth(ham)
        ansatz = AnsatzSpec(4, 2)
        runs = [
            run_optimization(
                ham, ansatz, StrategyConfig(s), None, 20, 3, truth=truth
            )
            for s in Strategy
        ]
        energies = [r.true_energy for r in runs[0]]
        worst_rise = max(
            worst_rise, max(b - a for a, b in zip(energies, energies[1:]))
        )
        identical = identical and all(r == runs[0] for r in runs[1:])
    passed = worst_rise <= 0.0 and identical
    _verdict(
        "A9", passed,
        f"max energy increase {worst_rise:.1e} (<=0), all four strategies "
        f"bit-identical: {identical}",
    )


def test_a10_shot_budget_matches_the_closed_form():
    ham = build_hamiltonian("tfim", 3, **TFIM)
    ansatz = AnsatzSpec(3, 1)
    shots, sweeps, period = 10, 16, 32
    steps = sweeps * ansatz.n_params
    n_terms = len(ham.terms)
    totals = {}
    for strategy in Strategy:
        records = run_optimization(
            ham, ansatz,
            StrategyConfig(strategy, stabilize_every=period),
            shots, sweeps, 0,
        )
        totals[strategy] = records[-1].cumulative_shots
    base = (2 * steps + 1) * shots * n_terms
    extra = (steps // period) * shots * n_terms
    fraction = extra / totals[Strategy.STABILIZED]
    nominal = 1.0 / (2 * period + 1)
    passed = (
        totals[Strategy.BIASED] == base
        and totals[Strategy.CORRECTED] == base
        and totals[Strategy.REGULARIZED] == base
        and totals[Strategy.STABILIZED] == base + extra
        and abs(fraction - nominal) <= 0.01 * nominal
    )
    _verdict(
        "A10", passed,
        f"plain budget {totals[Strategy.BIASED]} == (2T+1)*shots*terms, "
        f"re-measuring adds {extra} (fraction {fraction:.5f} ~ "
        f"1/(2N+1)={nominal:.5f})",
    )


def test_a11_variance_halves_when_shots_double():
    ham = build_hamiltonian("tfim", 2, **TFIM)
    rng = np.random.default_rng(31)
    theta = rng.uniform(0.0, TWO_PI, size=AnsatzSpec(2, 1).n_params)
    state = AnsatzSpec(2, 1).engine.prepare(theta)
    trials = 100_000
    low = np.array([
        measure_energy(ham, state, 50, rng).value for _ in range(trials)
    ])
    high = np.array([
        measure_energy(ham, state, 100, rng).value for _ in range(trials)
    ])
    ratio = float(low.var(ddof=1) / high.var(ddof=1))
    passed = abs(ratio - 2.0) <= 0.05 * 2.0
    _verdict("A11", passed, f"variance ratio {ratio:.4f} within 2 +- 5%")
