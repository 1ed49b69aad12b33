"""Experiment driver: seed/strategy grids, metrics rows, CSV output.

Output files are byte-reproducible: fixed column order, fixed row order
(seeds outer, strategies inner, iterations ascending), floats printed with 17
significant digits.  Cells of the (seed, strategy) grid are independent runs
with their own generator seeded by the cell's seed, so results do not depend
on execution order or on the SMOVQE_WORKERS parallelism level.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .ansatz import AnsatzSpec
from .errors import ConfigError
from .hamiltonians import Hamiltonian, build_hamiltonian, ground_truth
from .optimizer import Strategy, StrategyConfig, run_optimization

ROWS_HEADER = (
    "seed,strategy,t,d,estimate,true_energy,delta_energy,delta_fidelity,"
    "estimate_error,regularization_r,cumulative_shots"
)

AGGREGATE_HEADER = (
    "strategy,t,n_seeds,"
    "delta_energy_mean,delta_energy_std,delta_energy_median,"
    "delta_fidelity_mean,delta_fidelity_std,delta_fidelity_median,"
    "estimate_error_mean,estimate_error_std,estimate_error_median,"
    "cumulative_shots_mean,"
    "model,n_qubits,n_layers,shots_per_pauli,n_sweeps"
)

WORKERS_ENV_VAR = "SMOVQE_WORKERS"

DEFAULT_COUPLINGS = {
    "tfim": {"j": -1.0, "h": -1.0},
    "xx": {"j": -1.0},
    "xxz": {"j": -1.0, "delta": -0.5},
    "xxx": {"j": -1.0, "h": -1.0},
}

_CONFIG_KEYS = {
    "model", "couplings", "n_qubits", "n_layers", "shots_per_pauli",
    "n_sweeps", "strategies", "seeds", "record_every", "gs_tolerance",
    "output_dir",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one experiment grid."""

    model: str = "tfim"
    couplings: dict = None
    n_qubits: int = 5
    n_layers: int = 3
    shots_per_pauli: int | None = 100
    n_sweeps: int = 200
    strategies: tuple[StrategyConfig, ...] = tuple(
        StrategyConfig(s) for s in Strategy
    )
    seeds: tuple[int, ...] = tuple(range(100))
    record_every: int = 1
    gs_tolerance: float = 1e-5
    output_dir: Path | None = None

    def __post_init__(self):
        if self.couplings is None:
            if self.model not in DEFAULT_COUPLINGS:
                raise ConfigError(f"model: unknown model {self.model!r}")
            object.__setattr__(self, "couplings", DEFAULT_COUPLINGS[self.model])
        if not self.seeds:
            raise ConfigError("seeds: must be non-empty")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError("seeds: must be pairwise distinct")
        if not self.strategies:
            raise ConfigError("strategies: must be non-empty")
        coerced = tuple(
            StrategyConfig(s) if isinstance(s, Strategy) else s
            for s in self.strategies
        )
        for entry in coerced:
            if not isinstance(entry, StrategyConfig):
                raise ConfigError(
                    f"strategies: expected Strategy or StrategyConfig, got {entry!r}"
                )
        object.__setattr__(self, "strategies", coerced)
        if self.record_every < 1:
            raise ConfigError(
                f"record_every: must be >= 1, got {self.record_every}"
            )
        if self.n_sweeps < 1:
            raise ConfigError(f"n_sweeps: must be >= 1, got {self.n_sweeps}")
        if self.shots_per_pauli is not None and self.shots_per_pauli < 2:
            raise ConfigError(
                f"shots_per_pauli: must be >= 2 or null, got {self.shots_per_pauli}"
            )

    def hamiltonian(self) -> Hamiltonian:
        return build_hamiltonian(self.model, self.n_qubits, **self.couplings)

    def ansatz(self) -> AnsatzSpec:
        return AnsatzSpec(self.n_qubits, self.n_layers)


@dataclass(frozen=True)
class MetricsRow:
    """One recorded iteration of one run, ready for CSV."""

    seed: int
    strategy: str
    t: int
    d: int
    estimate: float
    true_energy: float
    delta_energy: float
    delta_fidelity: float
    estimate_error: float
    regularization_r: float
    cumulative_shots: int


@dataclass(frozen=True)
class AggregateRow:
    """Cross-seed summary of one (strategy, iteration) cell."""

    strategy: str
    t: int
    n_seeds: int
    delta_energy_mean: float
    delta_energy_std: float
    delta_energy_median: float
    delta_fidelity_mean: float
    delta_fidelity_std: float
    delta_fidelity_median: float
    estimate_error_mean: float
    estimate_error_std: float
    estimate_error_median: float
    cumulative_shots_mean: float


@dataclass
class ExperimentResult:
    rows: list[MetricsRow]
    aggregates: list[AggregateRow]
    rows_path: Path | None = None
    aggregate_path: Path | None = None


def load_config(source) -> ExperimentConfig:
    """Build an ExperimentConfig from a JSON file path or a plain dict."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as err:
            raise ConfigError(f"config file {path} is not valid JSON: {err}")
    else:
        raw = dict(source)
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {sorted(unknown)}")

    kwargs = dict(raw)
    if "strategies" in kwargs:
        kwargs["strategies"] = tuple(
            _parse_strategy(entry) for entry in kwargs["strategies"]
        )
    if "seeds" in kwargs:
        kwargs["seeds"] = tuple(int(s) for s in kwargs["seeds"])
    if "output_dir" in kwargs and kwargs["output_dir"] is not None:
        kwargs["output_dir"] = Path(kwargs["output_dir"])
    try:
        return ExperimentConfig(**kwargs)
    except TypeError as err:
        raise ConfigError(str(err))


def _parse_strategy(entry) -> StrategyConfig:
    if isinstance(entry, str):
        entry = {"strategy": entry}
    entry = dict(entry)
    name = entry.pop("strategy", None)
    if name is None:
        raise ConfigError("strategies: each entry needs a 'strategy' name")
    try:
        strategy = Strategy(name)
    except ValueError:
        raise ConfigError(
            f"strategies: unknown strategy {name!r}; "
            f"expected one of {[s.value for s in Strategy]}"
        )
    allowed = {"stabilize_every", "tau", "snr_threshold"}
    unknown = set(entry) - allowed
    if unknown:
        raise ConfigError(f"strategies: unknown key(s) {sorted(unknown)}")
    return StrategyConfig(strategy, **entry)


def _records_to_rows(records, seed, strategy_name, gs_energy, record_every):
    total = records[-1].t if records else 0
    rows = []
    for rec in records:
        if rec.t % record_every != 0 and rec.t != total:
            continue
        rows.append(MetricsRow(
            seed=seed,
            strategy=strategy_name,
            t=rec.t,
            d=rec.d,
            estimate=rec.carried_estimate,
            true_energy=rec.true_energy,
            delta_energy=rec.true_energy - gs_energy,
            delta_fidelity=1.0 - rec.fidelity,
            estimate_error=rec.carried_estimate - rec.true_energy,
            regularization_r=rec.regularization_r,
            cumulative_shots=rec.cumulative_shots,
        ))
    return rows


def _run_cell(args) -> list[MetricsRow]:
    config, seed, strategy_cfg = args
    hamiltonian = config.hamiltonian()
    truth = ground_truth(hamiltonian, config.gs_tolerance)
    records = run_optimization(
        hamiltonian,
        config.ansatz(),
        strategy_cfg,
        config.shots_per_pauli,
        config.n_sweeps,
        seed,
        truth,
    )
    return _records_to_rows(
        records, seed, strategy_cfg.strategy.value, truth.energy,
        config.record_every,
    )


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV_VAR} must be an integer, got {raw!r}")
    return max(1, workers)


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run every (seed, strategy) cell and optionally write rows + aggregate."""
    cells = [
        (config, seed, strategy_cfg)
        for seed in config.seeds
        for strategy_cfg in config.strategies
    ]
    workers = worker_count()
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_cell = list(pool.map(_run_cell, cells))
    else:
        per_cell = [_run_cell(cell) for cell in cells]
    rows = [row for cell_rows in per_cell for row in cell_rows]
    aggregates = aggregate(rows)

    rows_path = aggregate_path = None
    if config.output_dir is not None:
        config.output_dir.mkdir(parents=True, exist_ok=True)
        rows_path = config.output_dir / "rows.csv"
        aggregate_path = config.output_dir / "aggregate.csv"
        write_rows_csv(rows, rows_path)
        write_aggregate_csv(aggregates, config, aggregate_path)
    return ExperimentResult(rows, aggregates, rows_path, aggregate_path)


def _std(values: np.ndarray) -> float:
    # Sample std; a single seed has no spread by convention.
    if values.size < 2:
        return 0.0
    return float(np.std(values, ddof=1))


def aggregate(rows: list[MetricsRow]) -> list[AggregateRow]:
    """Per-(strategy, t) mean/std/median across seeds.

    Strategy blocks keep their first-appearance order; t ascends inside each.
    """
    if not rows:
        raise ConfigError("aggregate: no rows to aggregate")
    groups: dict[tuple[str, int], list[MetricsRow]] = {}
    strategy_order: list[str] = []
    for row in rows:
        if row.strategy not in strategy_order:
            strategy_order.append(row.strategy)
        groups.setdefault((row.strategy, row.t), []).append(row)

    out = []
    for strategy in strategy_order:
        ts = sorted(t for (s, t) in groups if s == strategy)
        for t in ts:
            cell = groups[(strategy, t)]
            de = np.array([r.delta_energy for r in cell])
            df = np.array([r.delta_fidelity for r in cell])
            ee = np.array([r.estimate_error for r in cell])
            shots = np.array([r.cumulative_shots for r in cell], dtype=float)
            out.append(AggregateRow(
                strategy=strategy,
                t=t,
                n_seeds=len(cell),
                delta_energy_mean=float(de.mean()),
                delta_energy_std=_std(de),
                delta_energy_median=float(np.median(de)),
                delta_fidelity_mean=float(df.mean()),
                delta_fidelity_std=_std(df),
                delta_fidelity_median=float(np.median(df)),
                estimate_error_mean=float(ee.mean()),
                estimate_error_std=_std(ee),
                estimate_error_median=float(np.median(ee)),
                cumulative_shots_mean=float(shots.mean()),
            ))
    return out


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def write_rows_csv(rows: list[MetricsRow], path: Path) -> None:
    path = Path(path)
    with path.open("w", newline="") as handle:
        handle.write(ROWS_HEADER + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        for r in rows:
            writer.writerow([
                r.seed, r.strategy, r.t, r.d,
                _fmt(r.estimate), _fmt(r.true_energy), _fmt(r.delta_energy),
                _fmt(r.delta_fidelity), _fmt(r.estimate_error),
                _fmt(r.regularization_r), r.cumulative_shots,
            ])


def read_rows_csv(path: Path) -> list[MetricsRow]:
    path = Path(path)
    with path.open(newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != ROWS_HEADER.split(","):
            raise ConfigError(f"unexpected rows header in {path}: {header}")
        rows = []
        for rec in reader:
            rows.append(MetricsRow(
                seed=int(rec[0]), strategy=rec[1], t=int(rec[2]), d=int(rec[3]),
                estimate=float(rec[4]), true_energy=float(rec[5]),
                delta_energy=float(rec[6]), delta_fidelity=float(rec[7]),
                estimate_error=float(rec[8]), regularization_r=float(rec[9]),
                cumulative_shots=int(rec[10]),
            ))
    return rows


def write_aggregate_csv(
    aggregates: list[AggregateRow], config: ExperimentConfig, path: Path
) -> None:
    shots = config.shots_per_pauli if config.shots_per_pauli is not None else 0
    path = Path(path)
    with path.open("w", newline="") as handle:
        handle.write(AGGREGATE_HEADER + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        for a in aggregates:
            writer.writerow([
                a.strategy, a.t, a.n_seeds,
                _fmt(a.delta_energy_mean), _fmt(a.delta_energy_std),
                _fmt(a.delta_energy_median),
                _fmt(a.delta_fidelity_mean), _fmt(a.delta_fidelity_std),
                _fmt(a.delta_fidelity_median),
                _fmt(a.estimate_error_mean), _fmt(a.estimate_error_std),
                _fmt(a.estimate_error_median),
                _fmt(a.cumulative_shots_mean),
                config.model, config.n_qubits, config.n_layers,
                shots, config.n_sweeps,
            ])
