"""Monte-Carlo checks of the fit-statistics and bias theory.

Each check pits a brute-force empirical quantity (sampled through the real
fit/measurement code paths) against an independent analytic prediction and
reports the comparison.  The same routines back the `validate` CLI subcommand
and the statistical acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonians import Hamiltonian, PauliTerm, exact_expectation
from .measurement import analytic_energy_variance, measure_energy
from .trigfit import (
    SQRT2,
    TWO_PI,
    fit_trig,
    fit_trig_general,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    observed: float
    expected: float
    tolerance: str

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict}  {self.name}: observed {self.observed:.6g}, "
            f"expected {self.expected:.6g} ({self.tolerance})"
        )


def _wrap(delta: np.ndarray) -> np.ndarray:
    """Wrap angle differences into (-pi, pi]."""
    return (delta + math.pi) % TWO_PI - math.pi


def _triple_fits(b_true, sigma, trials, rng):
    """Noisy 3-point fits of a fixed single-harmonic landscape."""
    b_const, b_cos, b_sin = b_true
    offsets = np.array([0.0, TWO_PI / 3.0, -TWO_PI / 3.0])
    clean = b_const + SQRT2 * (b_cos * np.cos(offsets) + b_sin * np.sin(offsets))
    noisy = clean + rng.normal(0.0, sigma, size=(trials, 3))
    return [fit_trig(row[0], row[1], row[2], sigma**2) for row in noisy]


def coefficient_covariance_checks(
    trials: int = 100_000,
    sigma: float = 0.1,
    seed: int = 2024,
    var_rtol: float = 0.03,
    cov_sigmas: float = 3.0,
) -> list[CheckResult]:
    """Coefficient noise is isotropic: V[b] = sigma^2/3, zero cross terms."""
    rng = np.random.default_rng(seed)
    fits = _triple_fits((0.4, 0.3, -0.2), sigma, trials, rng)
    coefs = np.array([[f.b_const, f.b_cos, f.b_sin] for f in fits])
    expected_var = sigma**2 / 3.0
    emp_cov = np.cov(coefs, rowvar=False)
    # standard error of an empirical covariance of two independent Gaussians
    cov_se = expected_var / math.sqrt(trials)
    results = []
    for idx, label in ((1, "V[b_cos]"), (2, "V[b_sin]")):
        observed = emp_cov[idx, idx]
        results.append(CheckResult(
            name=f"coefficient variance {label}",
            passed=abs(observed - expected_var) <= var_rtol * expected_var,
            observed=observed,
            expected=expected_var,
            tolerance=f"rel {var_rtol:.0%}",
        ))
    for i, j, label in ((0, 1, "cov[b_const,b_cos]"),
                        (0, 2, "cov[b_const,b_sin]"),
                        (1, 2, "cov[b_cos,b_sin]")):
        observed = emp_cov[i, j]
        results.append(CheckResult(
            name=f"coefficient independence {label}",
            passed=abs(observed) <= cov_sigmas * cov_se,
            observed=observed,
            expected=0.0,
            tolerance=f"within {cov_sigmas:.0f} SE ({cov_se:.2g})",
        ))
    return results


def reuse_bias_check(
    snr: float,
    trials: int = 100_000,
    seed: int = 77,
    rtol: float = 0.10,
) -> CheckResult:
    """Empirical E[f*(theta_hat) - f_hat(theta_hat)] vs 2 R / snr^2 at R = 1."""
    amplitude = 1.0
    sigma_b = amplitude / snr
    sigma = math.sqrt(3.0) * sigma_b
    b_true = (0.0, amplitude / SQRT2, 0.0)
    rng = np.random.default_rng(seed)
    fits = _triple_fits(b_true, sigma, trials, rng)
    diffs = np.empty(trials)
    for k, fit in enumerate(fits):
        true_at_min = b_true[0] + SQRT2 * b_true[1] * math.cos(fit.theta_min)
        diffs[k] = true_at_min - fit.f_min
    observed = float(diffs.mean())
    expected = 2.0 * amplitude / snr**2
    return CheckResult(
        name=f"first-order reuse bias at snr={snr:g}",
        passed=abs(observed - expected) <= rtol * expected,
        observed=observed,
        expected=expected,
        tolerance=f"rel {rtol:.0%}",
    )


def minimizer_distribution_checks(
    snr: float = 10.0,
    trials: int = 100_000,
    seed: int = 5150,
    var_rtol: float = 0.10,
    mean_sigmas: float = 4.0,
) -> list[CheckResult]:
    """theta_hat - theta* is mean-zero with variance 2/snr^2.

    The minimizer error is delta = (noise fit)'(theta*) / amplitude to first
    order, and the derivative of the noise fit at any point has variance
    2 sigma_b^2, so V[delta] = 2 sigma_b^2 / R^2 = 2 / snr^2 (this is also
    what makes the reuse bias come out as -2 R / snr^2).
    """
    amplitude = 1.0
    sigma_b = amplitude / snr
    sigma = math.sqrt(3.0) * sigma_b
    rng = np.random.default_rng(seed)
    fits = _triple_fits((0.0, amplitude / SQRT2, 0.0), sigma, trials, rng)
    true_min = math.pi
    delta = _wrap(np.array([f.theta_min for f in fits]) - true_min)
    amp = np.array([f.amplitude for f in fits])
    expected_var = 2.0 / snr**2
    mean_se = math.sqrt(expected_var / trials)
    results = [
        CheckResult(
            name=f"minimizer error mean at snr={snr:g}",
            passed=abs(float(delta.mean())) <= mean_sigmas * mean_se,
            observed=float(delta.mean()),
            expected=0.0,
            tolerance=f"within {mean_sigmas:.0f} SE ({mean_se:.2g})",
        ),
        CheckResult(
            name=f"minimizer error variance at snr={snr:g}",
            passed=abs(float(delta.var()) - expected_var)
            <= var_rtol * expected_var,
            observed=float(delta.var()),
            expected=expected_var,
            tolerance=f"rel {var_rtol:.0%}",
        ),
    ]
    # amplitude estimate stays within its own first-order inflation
    amp_se = float(amp.std(ddof=1)) / math.sqrt(trials)
    bound = 2.0 * amplitude / snr**2 + 4.0 * amp_se
    results.append(CheckResult(
        name=f"amplitude near-unbiasedness at snr={snr:g}",
        passed=abs(float(amp.mean()) - amplitude) <= bound,
        observed=float(amp.mean()),
        expected=amplitude,
        tolerance=f"within {bound:.2g}",
    ))
    return results


def harmonic_bias_check(
    trials: int = 100_000,
    seed: int = 99,
    rtol: float = 0.15,
    snr: float = 12.0,
) -> CheckResult:
    """Two-harmonic reuse bias matches -(2 sigma_b^2 / curvature) * (1 + 4).

    Landscape cos(x) - 0.2 cos(2x): global minimum at pi with curvature 1.8.
    theta_hat is found by dense grid search plus Newton refinement on each
    fitted curve, independently of the closed-form machinery.
    """
    n_harmonics = 2
    n_points = 2 * n_harmonics + 1
    cos_true = np.array([1.0, -0.2]) / SQRT2  # scaled-basis coefficients
    curvature = 1.0 - 4.0 * (-0.2)            # f''(pi) = A - 4B
    sigma_b = curvature / snr
    sigma = math.sqrt(n_points) * sigma_b

    grid_pts = TWO_PI * np.arange(n_points) / n_points
    orders = np.arange(1, n_harmonics + 1)
    clean = SQRT2 * cos_true @ np.cos(np.outer(orders, grid_pts))
    rng = np.random.default_rng(seed)

    def true_f(x):
        return SQRT2 * (cos_true[0] * np.cos(x) + cos_true[1] * np.cos(2 * x))

    search = np.linspace(0.0, TWO_PI, 2048, endpoint=False)
    design_cos = np.cos(np.outer(search, orders))  # (grid, N)
    design_sin = np.sin(np.outer(search, orders))

    diffs = np.empty(trials)
    chunk = 8192
    done = 0
    while done < trials:
        size = min(chunk, trials - done)
        noisy = clean + rng.normal(0.0, sigma, size=(size, n_points))
        fits = [fit_trig_general(row, n_harmonics, sigma**2) for row in noisy]
        ccs = np.array([f.cos_coefs for f in fits])  # (size, N)
        scs = np.array([f.sin_coefs for f in fits])
        consts = np.array([f.b_const for f in fits])
        curves = consts[:, None] + SQRT2 * (design_cos @ ccs.T + design_sin @ scs.T).T
        theta_hat = search[np.argmin(curves, axis=1)]
        for _ in range(4):  # Newton refinement of each fitted minimizer
            ph = np.outer(orders, theta_hat)  # (N, size)
            cos_ph, sin_ph = np.cos(ph), np.sin(ph)
            d1 = SQRT2 * np.einsum(
                "n,kn,nk->k", orders, scs, cos_ph
            ) - SQRT2 * np.einsum("n,kn,nk->k", orders, ccs, sin_ph)
            d2 = -SQRT2 * np.einsum(
                "n,kn,nk->k", orders**2, ccs, cos_ph
            ) - SQRT2 * np.einsum("n,kn,nk->k", orders**2, scs, sin_ph)
            theta_hat = theta_hat - d1 / d2
        ph = np.outer(orders, theta_hat)
        fitted_min = consts + SQRT2 * (
            np.einsum("kn,nk->k", ccs, np.cos(ph))
            + np.einsum("kn,nk->k", scs, np.sin(ph))
        )
        diffs[done:done + size] = true_f(theta_hat) - fitted_min
        done += size

    observed = float(diffs.mean())
    expected = 2.0 * sigma_b**2 / curvature * 5.0  # sum n^2 for N=2
    return CheckResult(
        name=f"two-harmonic reuse bias at snr={snr:g}",
        passed=abs(observed - expected) <= rtol * expected,
        observed=observed,
        expected=expected,
        tolerance=f"rel {rtol:.0%}",
    )


def _plus_state_hamiltonian() -> tuple[Hamiltonian, np.ndarray]:
    hamiltonian = Hamiltonian(1, [PauliTerm(-1.0, "Z")])
    state = np.array([1.0, 1.0], dtype=np.complex128) / math.sqrt(2.0)
    return hamiltonian, state


def measurement_variance_scaling_check(
    shots: int = 100,
    trials: int = 100_000,
    seed: int = 31,
    rtol: float = 0.05,
) -> CheckResult:
    """Doubling the shot count halves the empirical estimator variance."""
    hamiltonian, state = _plus_state_hamiltonian()
    rng = np.random.default_rng(seed)
    low = np.array([
        measure_energy(hamiltonian, state, shots, rng).value
        for _ in range(trials)
    ])
    high = np.array([
        measure_energy(hamiltonian, state, 2 * shots, rng).value
        for _ in range(trials)
    ])
    observed = float(low.var(ddof=1) / high.var(ddof=1))
    return CheckResult(
        name=f"variance halves from {shots} to {2 * shots} shots",
        passed=abs(observed - 2.0) <= rtol * 2.0 * 2.0,
        observed=observed,
        expected=2.0,
        tolerance=f"rel {rtol:.0%} on each variance",
    )


def measurement_unbiasedness_check(
    shots: int = 100,
    trials: int = 100_000,
    seed: int = 13,
    mean_sigmas: float = 4.0,
) -> CheckResult:
    """Sample mean of the estimator matches the exact energy within 4 SE."""
    hamiltonian, _ = _plus_state_hamiltonian()
    angle = 0.7
    state = np.array([math.cos(angle), math.sin(angle)], dtype=np.complex128)
    exact = exact_expectation(hamiltonian, state)
    rng = np.random.default_rng(seed)
    values = np.array([
        measure_energy(hamiltonian, state, shots, rng).value
        for _ in range(trials)
    ])
    se = math.sqrt(
        analytic_energy_variance(hamiltonian, state, shots) / trials
    )
    observed = float(values.mean())
    return CheckResult(
        name=f"measurement unbiasedness at {shots} shots",
        passed=abs(observed - exact) <= mean_sigmas * se,
        observed=observed,
        expected=exact,
        tolerance=f"within {mean_sigmas:.0f} SE ({se:.2g})",
    )


def run_validation(trials: int = 20_000, seed: int = 7) -> list[CheckResult]:
    """The full oracle suite at a configurable trial count."""
    results = []
    results += coefficient_covariance_checks(trials=trials, seed=seed)
    results.append(reuse_bias_check(snr=10.0, trials=trials, seed=seed + 1))
    results.append(
        reuse_bias_check(snr=20.0, trials=trials, seed=seed + 2, rtol=0.10)
    )
    results += minimizer_distribution_checks(trials=trials, seed=seed + 3)
    results.append(harmonic_bias_check(trials=trials, seed=seed + 4))
    results.append(
        measurement_variance_scaling_check(trials=min(trials, 50_000),
                                           seed=seed + 5)
    )
    results.append(
        measurement_unbiasedness_check(trials=min(trials, 50_000),
                                       seed=seed + 6)
    )
    return results
