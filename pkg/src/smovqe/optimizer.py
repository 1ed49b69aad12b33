"""Sequential minimal optimization sweeps with four carried-value strategies.

Each step measures the energy at the current parameter point shifted by
+-2pi/3 along one coordinate, reuses the previous step's carried estimate as
the center sample, fits the exact sinusoid, and jumps to its minimizer.  The
strategies differ only in how the center value is prepared and how the next
carried estimate is formed:

  biased       reuse the fitted minimum as-is (the original scheme)
  stabilized   as biased, but re-measure the energy every `stabilize_every`
               steps, trading extra shots for a bias reset
  corrected    add the first-order reuse bias back onto each fitted minimum,
               so the carried value estimates the true energy without offset
  regularized  correct like `corrected`, then deliberately lower the reused
               center sample by a scheduled amount r(t); the injected offset
               is stripped from the carried value exactly, so only the
               optimizer's notion of local curvature is inflated

Corrected values are stored already-corrected: reusing the stored value or
correcting at reuse time is the same arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .ansatz import AnsatzSpec, random_parameters
from .errors import InvalidSpecError, RunComplete
from .hamiltonians import GroundTruth, Hamiltonian, exact_expectation, fidelity_to_gs
from .measurement import (
    ShotBudgetLedger,
    measure_energy,
    measure_energy_infinite,
    pooled_subspace_variance,
)
from .trigfit import TWO_PI, TrigFit, evaluate, fit_trig, shift_center_value

SHIFT = TWO_PI / 3.0


class Strategy(enum.Enum):
    BIASED = "biased"
    STABILIZED = "stabilized"
    CORRECTED = "corrected"
    REGULARIZED = "regularized"


@dataclass(frozen=True)
class StrategyConfig:
    """A strategy plus its hyperparameters (unused ones are ignored)."""

    strategy: Strategy
    stabilize_every: int = 32   # re-measure period of the stabilized scheme
    tau: float = 2.0            # log-scale of the regularization schedule
    snr_threshold: float = 1.0  # below this the bias denominator is clamped

    def __post_init__(self):
        if self.stabilize_every < 1:
            raise InvalidSpecError(
                f"stabilize_every must be >= 1, got {self.stabilize_every}"
            )


@dataclass(frozen=True)
class OptimizerState:
    """Snapshot between steps; smo_step returns a fresh one."""

    theta: np.ndarray
    carried_estimate: float
    steps_done: int
    total_steps: int
    ledger: ShotBudgetLedger
    psi: np.ndarray = field(repr=False, compare=False, default=None)


@dataclass(frozen=True)
class IterationRecord:
    """Per-step trajectory entry.

    `carried_estimate` is the algorithm's reported energy estimate at the
    updated point; `true_energy` is the free classical oracle there.
    `fidelity` is filled only when ground truth is supplied (else nan).
    """

    t: int
    d: int
    carried_estimate: float
    true_energy: float
    regularization_r: float
    bias_correction_applied: float
    cumulative_shots: int
    fidelity: float = math.nan


def regularization_strength(
    step: int, total_steps: int, n_qubits: int, shots_per_pauli: int, tau: float
) -> float:
    """Scheduled center-sample offset r(t) of the regularized strategy.

    r(t) = e^tau / shots_per_pauli * sqrt(t / n_qubits) * (1 - exp(-2t/T)):
    zero at t=0, growing with the square root of the step index toward a
    shot-noise-scaled plateau, with the exponential factor suppressing the
    earliest steps of the run.
    """
    if step == 0:
        return 0.0
    if not 1 <= step <= total_steps:
        raise InvalidSpecError(
            f"step {step} outside the run's range [0, {total_steps}]"
        )
    if n_qubits < 1:
        raise InvalidSpecError(f"need at least one qubit, got {n_qubits}")
    if shots_per_pauli is None or shots_per_pauli < 1:
        raise InvalidSpecError(
            f"shots_per_pauli must be a positive integer, got {shots_per_pauli!r}"
        )
    return (
        math.exp(tau)
        / shots_per_pauli
        * math.sqrt(step / n_qubits)
        * (1.0 - math.exp(-2.0 * step / total_steps))
    )


def _spontaneous_correction(fit: TrigFit) -> float:
    """Amount added to f_min so the carried estimate stays unbiased.

    Uses the raw ratio 2*sigma_b^2/R-hat rather than the clamped
    bias_estimate: for a flat direction (true amplitude 0) the fitted
    amplitude is Rayleigh-distributed and E[2*sigma_b^2/R-hat] equals
    E[R-hat] exactly, so the unclamped ratio cancels the reuse bias even
    where the first-order formula itself breaks down.  Clamping here
    would systematically undercorrect and the deficit compounds through
    the value-reuse chain.  Discrete shot sampling can still produce
    R-hat = 0 exactly; that degenerate case falls back to sigma_b as the
    denominator.
    """
    if fit.sigma_b_sq == 0.0:
        return 0.0
    denom = fit.amplitude if fit.amplitude > 0.0 else math.sqrt(fit.sigma_b_sq)
    return 2.0 * fit.sigma_b_sq / denom


def smo_step(
    state: OptimizerState,
    hamiltonian: Hamiltonian,
    ansatz: AnsatzSpec,
    config: StrategyConfig,
    shots_per_pauli: int | None,
    rng: np.random.Generator,
    truth: GroundTruth | None = None,
) -> tuple[OptimizerState, IterationRecord]:
    """Optimize one coordinate (round-robin) and return the advanced state.

    shots_per_pauli=None selects the infinite-shot oracle; there all
    strategies coincide exactly (no noise means nothing to stabilize,
    correct, or regularize: r(t) -> 0 as the shot count grows).
    """
    if state.steps_done >= state.total_steps:
        raise RunComplete(
            f"all {state.total_steps} steps of this run have been taken"
        )
    engine = ansatz.engine
    infinite = shots_per_pauli is None
    d = state.steps_done % ansatz.n_params
    step_no = state.steps_done + 1

    theta = state.theta
    shifted = np.stack([theta, theta])
    shifted[0, d] = (theta[d] + SHIFT) % TWO_PI
    shifted[1, d] = (theta[d] - SHIFT) % TWO_PI
    states = engine.prepare_batch(shifted)
    if infinite:
        m_plus = measure_energy_infinite(hamiltonian, states[0])
        m_minus = measure_energy_infinite(hamiltonian, states[1])
    else:
        m_plus = measure_energy(hamiltonian, states[0], shots_per_pauli, rng)
        m_minus = measure_energy(hamiltonian, states[1], shots_per_pauli, rng)
    ledger = state.ledger.charged(m_plus).charged(m_minus)

    center = state.carried_estimate
    reg_r = 0.0
    if config.strategy is Strategy.STABILIZED and not infinite:
        if step_no % config.stabilize_every == 0:
            fresh = measure_energy(hamiltonian, state.psi, shots_per_pauli, rng)
            ledger = ledger.charged(fresh)
            center = fresh.value
    elif config.strategy is Strategy.REGULARIZED and not infinite:
        reg_r = regularization_strength(
            step_no, state.total_steps, ansatz.n_qubits, shots_per_pauli, config.tau
        )
        center = center - reg_r

    fit = fit_trig(
        center, m_plus.value, m_minus.value,
        pooled_subspace_variance(m_plus, m_minus),
    )
    new_theta = theta.copy()
    new_theta[d] = (theta[d] + fit.theta_min) % TWO_PI

    correction = 0.0
    if config.strategy is Strategy.CORRECTED:
        correction = _spontaneous_correction(fit)
        new_carried = fit.f_min + correction
    elif config.strategy is Strategy.REGULARIZED:
        # The injected offset damps the move (the argmin gravitates toward
        # the current point), so the new point is generally not the true
        # curve's minimizer.  The carried value must estimate the energy AT
        # the new point: evaluate the de-regularized curve at the chosen
        # angle.  The argmin acted on the inflated-amplitude curve, so the
        # spontaneous bias of that evaluation is -2 sigma_b^2 / R-hat_reg,
        # which the boosted amplitude keeps small and accurately estimable.
        correction = _spontaneous_correction(fit)
        if reg_r == 0.0:
            new_carried = fit.f_min + correction
        else:
            plain_fit = shift_center_value(fit, reg_r)
            new_carried = float(evaluate(plain_fit, fit.theta_min)) + correction
    else:
        new_carried = fit.f_min

    new_psi = engine.prepare(new_theta)
    true_energy = exact_expectation(hamiltonian, new_psi)
    fidelity = fidelity_to_gs(new_psi, truth) if truth is not None else math.nan

    record = IterationRecord(
        t=step_no,
        d=d,
        carried_estimate=new_carried,
        true_energy=true_energy,
        regularization_r=reg_r,
        bias_correction_applied=correction,
        cumulative_shots=ledger.cumulative_shots,
        fidelity=fidelity,
    )
    new_state = OptimizerState(
        theta=new_theta,
        carried_estimate=new_carried,
        steps_done=step_no,
        total_steps=state.total_steps,
        ledger=ledger,
        psi=new_psi,
    )
    return new_state, record


def initial_state(
    hamiltonian: Hamiltonian,
    ansatz: AnsatzSpec,
    shots_per_pauli: int | None,
    n_sweeps: int,
    rng: np.random.Generator,
) -> OptimizerState:
    """Draw uniform initial parameters and measure the starting energy."""
    if n_sweeps < 1:
        raise InvalidSpecError(f"need at least one sweep, got {n_sweeps}")
    if hamiltonian.n_qubits != ansatz.n_qubits:
        raise InvalidSpecError(
            f"ansatz spans {ansatz.n_qubits} qubits but the Hamiltonian "
            f"has {hamiltonian.n_qubits}"
        )
    theta = random_parameters(ansatz, rng)
    psi = ansatz.engine.prepare(theta)
    if shots_per_pauli is None:
        first = measure_energy_infinite(hamiltonian, psi)
    else:
        first = measure_energy(hamiltonian, psi, shots_per_pauli, rng)
    return OptimizerState(
        theta=theta,
        carried_estimate=first.value,
        steps_done=0,
        total_steps=ansatz.n_params * n_sweeps,
        ledger=ShotBudgetLedger().charged(first),
        psi=psi,
    )


def run_optimization(
    hamiltonian: Hamiltonian,
    ansatz: AnsatzSpec,
    config: StrategyConfig,
    shots_per_pauli: int | None,
    n_sweeps: int,
    seed: int,
    truth: GroundTruth | None = None,
) -> list[IterationRecord]:
    """Full run of n_sweeps round-robin sweeps; deterministic in `seed`."""
    rng = np.random.default_rng(seed)
    state = initial_state(hamiltonian, ansatz, shots_per_pauli, n_sweeps, rng)
    records = []
    for _ in range(state.total_steps):
        state, record = smo_step(
            state, hamiltonian, ansatz, config, shots_per_pauli, rng, truth
        )
        records.append(record)
    return records
