"""
Four carried-value strategies on one spin chain
===============================================

Runs the coordinate-descent optimizer on a 4-qubit transverse-field chain
with each strategy sharing the same seeds and shot budget per step, then
tabulates the trade each one makes: plain reuse drifts far below the true
energy, re-measuring buys the drift down with extra shots, and the two
correction schemes report honestly from the same budget.  Writes the full
per-iteration table to CSV for the plotting front end.
"""

from pathlib import Path

import numpy as np

from smovqe.harness import ExperimentConfig, run_experiment
from smovqe.optimizer import Strategy

config = ExperimentConfig(
    model="tfim",
    n_qubits=4,
    n_layers=2,
    couplings={"j": -1.0, "h": -1.0},
    shots_per_pauli=100,
    n_sweeps=30,
    seeds=tuple(range(12)),
    strategies=tuple(Strategy),
    record_every=24,  # one row per sweep
    output_dir=Path("demos/output/strategy_comparison"),
)
result = run_experiment(config)
print(f"wrote {result.rows_path} and {result.aggregate_path}\n")

# Final-sweep summary across seeds.  estimate_error shows whose reported
# energy can be trusted; delta_energy/delta_fidelity show who actually
# found the better state.
final_t = config.n_sweeps * config.ansatz().n_params
print(f"{'strategy':>12} {'est. error':>12} {'dEnergy':>10} {'dFidelity':>10} "
      f"{'shots':>12}")
for strategy in config.strategies:
    name = strategy.strategy.value
    cell = [r for r in result.rows if r.strategy == name and r.t == final_t]
    est = np.median([r.estimate_error for r in cell])
    de = np.median([r.delta_energy for r in cell])
    df = np.median([r.delta_fidelity for r in cell])
    shots = int(np.median([r.cumulative_shots for r in cell]))
    print(f"{name:>12} {est:>12.4f} {de:>10.4f} {df:>10.4f} {shots:>12}")

print("""
reading the table:
  biased      reports energies far below what the state delivers
  stabilized  pays extra shots to pin the estimate back down periodically
  corrected   unbiased reporting from the same budget as biased
  regularized corrected reporting plus a scheduled center offset that
              damps each move; its payoff shows up at larger problems
              and longer horizons (see the acceptance suite's 5-qubit,
              100-sweep grid), not at this desk-scale setting
""")
