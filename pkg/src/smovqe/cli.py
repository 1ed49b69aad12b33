"""Command-line front end: run / sweep / validate / gs."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .errors import SmoVqeError
from .harness import (
    DEFAULT_COUPLINGS,
    ExperimentConfig,
    load_config,
    run_experiment,
    write_aggregate_csv,
    write_rows_csv,
)
from .hamiltonians import build_hamiltonian, ground_truth
from .optimizer import Strategy, StrategyConfig
from .validation import run_validation


def _parse_seeds(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(part) for part in text.split(","))


def _parse_shots(text: str):
    if text.lower() in ("inf", "infinite", "none", "null"):
        return None
    return int(text)


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _parse_strategies(text: str) -> tuple[StrategyConfig, ...]:
    return tuple(StrategyConfig(Strategy(name)) for name in text.split(","))


def _config_from_args(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    overrides = {}
    if args.output_dir is not None:
        overrides["output_dir"] = Path(args.output_dir)
    if args.seeds is not None:
        overrides["seeds"] = _parse_seeds(args.seeds)
    if args.shots is not None:
        overrides["shots_per_pauli"] = _parse_shots(args.shots)
    if args.sweeps is not None:
        overrides["n_sweeps"] = args.sweeps
    if args.record_every is not None:
        overrides["record_every"] = args.record_every
    if args.model is not None:
        overrides["model"] = args.model
        overrides["couplings"] = None
    if args.qubits is not None:
        overrides["n_qubits"] = args.qubits
    if args.layers is not None:
        overrides["n_layers"] = args.layers
    return dataclasses.replace(config, **overrides) if overrides else config


def _cmd_run(args) -> int:
    config = _config_from_args(args)
    result = run_experiment(config)
    print(f"{len(result.rows)} rows across {len(config.seeds)} seed(s) and "
          f"{len(config.strategies)} strateg(ies)")
    if result.rows_path is not None:
        print(f"rows:      {result.rows_path}")
        print(f"aggregate: {result.aggregate_path}")
    return 0


def _cmd_sweep(args) -> int:
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    base = load_config(args.config) if args.config else ExperimentConfig()
    strategies = (
        _parse_strategies(args.strategies) if args.strategies
        else (StrategyConfig(Strategy.BIASED), StrategyConfig(Strategy.REGULARIZED))
    )
    seeds = _parse_seeds(args.seeds) if args.seeds else base.seeds
    n_sweeps = args.sweeps if args.sweeps is not None else base.n_sweeps
    written = []
    for n_qubits in _parse_int_list(args.qubits):
        for n_layers in _parse_int_list(args.layers):
            for shots in _parse_int_list(args.shots):
                config = dataclasses.replace(
                    base,
                    model=args.model,
                    couplings=None if args.model != base.model else base.couplings,
                    n_qubits=n_qubits,
                    n_layers=n_layers,
                    shots_per_pauli=shots,
                    n_sweeps=n_sweeps,
                    seeds=seeds,
                    strategies=strategies,
                    record_every=args.record_every,
                    output_dir=None,
                )
                result = run_experiment(config)
                stem = f"{args.model}_q{n_qubits}_l{n_layers}_s{shots}"
                agg_path = out_dir / f"aggregate_{stem}.csv"
                write_aggregate_csv(result.aggregates, config, agg_path)
                if args.write_rows:
                    write_rows_csv(result.rows, out_dir / f"rows_{stem}.csv")
                written.append(agg_path)
                print(f"wrote {agg_path}")
    print(f"{len(written)} aggregate file(s) in {out_dir}")
    return 0


def _cmd_validate(args) -> int:
    results = run_validation(trials=args.trials, seed=args.seed)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _cmd_gs(args) -> int:
    couplings = dict(DEFAULT_COUPLINGS[args.model])
    for name in ("j", "h", "delta"):
        value = getattr(args, name)
        if value is not None:
            if name not in couplings:
                raise SmoVqeError(
                    f"model {args.model!r} does not take coupling {name!r}"
                )
            couplings[name] = value
    hamiltonian = build_hamiltonian(args.model, args.qubits, **couplings)
    truth = ground_truth(hamiltonian, args.tolerance)
    print(f"{truth.energy:.17g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smovqe",
        description="Sequential minimal optimization of VQEs under shot noise",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one experiment grid")
    run_p.add_argument("--config", help="JSON config file")
    run_p.add_argument("--output-dir", help="directory for rows/aggregate CSVs")
    run_p.add_argument("--seeds", help="e.g. 0..99 or 0,1,2")
    run_p.add_argument("--shots", help="shots per Pauli term, or 'inf'")
    run_p.add_argument("--sweeps", type=int, help="number of full sweeps")
    run_p.add_argument("--record-every", type=int,
                       help="record every k-th iteration (final always kept)")
    run_p.add_argument("--model", choices=sorted(DEFAULT_COUPLINGS))
    run_p.add_argument("--qubits", type=int)
    run_p.add_argument("--layers", type=int)
    run_p.set_defaults(func=_cmd_run)

    sweep_p = sub.add_parser("sweep", help="grid over sizes and shot counts")
    sweep_p.add_argument("--output-dir", required=True)
    sweep_p.add_argument("--config", help="base JSON config file")
    sweep_p.add_argument("--model", default="tfim",
                         choices=sorted(DEFAULT_COUPLINGS))
    sweep_p.add_argument("--qubits", default="5,7,10", help="comma list")
    sweep_p.add_argument("--layers", default="3", help="comma list")
    sweep_p.add_argument("--shots", default="50,100,150,200", help="comma list")
    sweep_p.add_argument("--sweeps", type=int)
    sweep_p.add_argument("--seeds", help="e.g. 0..99")
    sweep_p.add_argument("--strategies", help="comma list of strategy names")
    sweep_p.add_argument("--record-every", type=int, default=1)
    sweep_p.add_argument("--write-rows", action="store_true")
    sweep_p.set_defaults(func=_cmd_sweep)

    val_p = sub.add_parser("validate", help="Monte-Carlo bias-oracle suite")
    val_p.add_argument("--trials", type=int, default=20_000)
    val_p.add_argument("--seed", type=int, default=7)
    val_p.set_defaults(func=_cmd_validate)

    gs_p = sub.add_parser("gs", help="exact ground-state energy")
    gs_p.add_argument("--model", required=True, choices=sorted(DEFAULT_COUPLINGS))
    gs_p.add_argument("--qubits", type=int, required=True)
    gs_p.add_argument("--j", type=float)
    gs_p.add_argument("--h", type=float)
    gs_p.add_argument("--delta", type=float)
    gs_p.add_argument("--tolerance", type=float, default=1e-5)
    gs_p.set_defaults(func=_cmd_gs)
    return parser


def cli_main(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    try:
        return args.func(args)
    except SmoVqeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
