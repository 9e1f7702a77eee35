"""Command-line front end: `cogcell run <experiment>` and `cogcell decide`."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import cliio, simulate
from .cliio import ConfigFileError, RunManifest
from .config import ConfigError, MEASUREMENT_MODES, SystemConfig
from .geometry import region_areas

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_IO = 4

_EXPERIMENT_ALIASES = {name.replace("_", "-"): name for name in cliio.EXPERIMENTS}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cogcell",
        description="Coexistence simulator for a cognitive small cell inside a macro cell.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML config file (defaults used when omitted)")
    common.add_argument("--seed", type=int, help="master RNG seed override")
    common.add_argument("--d1", type=float, help="MBS to small-cell distance in km")
    common.add_argument(
        "--mode", choices=MEASUREMENT_MODES, help="SNR measurement mode override"
    )

    run_p = sub.add_parser("run", parents=[common], help="run an experiment sweep")
    run_p.add_argument(
        "experiment",
        help="one of: " + ", ".join(sorted(_EXPERIMENT_ALIASES) | set(cliio.EXPERIMENTS)),
    )
    run_p.add_argument("--out", help="output directory (default from config)")
    run_p.add_argument("--trials", type=int, help="trials per sweep point")

    sub.add_parser("decide", parents=[common], help="one learn-then-design decision")
    return parser


def _load(args) -> tuple[SystemConfig, RunManifest]:
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigFileError(f"cannot read config {args.config}: {exc}") from exc
        cfg, manifest = cliio.parse_config(text)
    else:
        cfg, manifest = SystemConfig(), RunManifest()
    if args.seed is not None:
        manifest = replace(manifest, seed=int(args.seed))
    if args.d1 is not None:
        manifest = replace(manifest, d1_km=float(args.d1))
    if args.mode is not None:
        cfg = replace(cfg, measurement_mode=args.mode)
    if getattr(args, "trials", None) is not None:
        manifest = replace(manifest, n_trials=int(args.trials))
    if getattr(args, "out", None) is not None:
        manifest = replace(manifest, output_dir=args.out)
    return cfg, manifest


def _emit(reports, out_dir: Path, name: str, eta: float, kinds) -> None:
    csv_path = out_dir / f"{name}.csv"
    cliio.emit_report_csv(reports, csv_path)
    print(f"wrote {csv_path}")
    for kind in kinds:
        script = cliio.emit_plot_script(csv_path, kind, eta=eta)
        print(f"wrote {script}")


def _seed_of(cfg: SystemConfig, manifest: RunManifest) -> int:
    return cfg.rng_seed if manifest.seed is None else manifest.seed


def _cmd_run(args) -> int:
    cfg, manifest = _load(args)
    experiment = _EXPERIMENT_ALIASES.get(args.experiment, args.experiment)
    if experiment not in cliio.EXPERIMENTS:
        raise ConfigFileError(
            f"unknown experiment {args.experiment!r}; choose from {cliio.EXPERIMENTS}"
        )
    out_dir = Path(manifest.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    seed = _seed_of(cfg, manifest)
    eta = cfg.ip_constraint_eta

    if experiment == "ap_ip_vs_d1":
        reports = simulate.run_sweep(cfg, manifest.d1_grid_km, manifest.n_trials, seed=seed)
        _emit(reports, out_dir, experiment, eta, ("ap_vs_d1", "ip_vs_d1"))
    elif experiment == "ap_ip_vs_blocks":
        for blocks in manifest.blocks_grid:
            reports = simulate.run_blocks_sweep(
                cfg, blocks, manifest.d1_grid_km, manifest.n_trials, seed=seed
            )
            _emit(
                reports, out_dir, f"{experiment}_i{blocks}", eta,
                ("ap_vs_blocks", "ip_vs_blocks"),
            )
    elif experiment == "ap_vs_target_snr":
        for d1_km in manifest.snr_sweep_d1_km:
            reports = simulate.run_target_snr_sweep(
                cfg, d1_km, manifest.target_snr_grid_db, manifest.n_trials, seed=seed
            )
            _emit(
                reports, out_dir, f"{experiment}_d1_{d1_km:g}", eta,
                ("ap_vs_target_snr",),
            )
    elif experiment == "imperfect_gamma_t":
        reports = simulate.run_imperfect_target_sweep(
            cfg, manifest.d1_grid_km, manifest.n_trials,
            clpc_low_db=manifest.clpc_low_db, clpc_high_db=manifest.clpc_high_db,
            seed=seed,
        )
        _emit(
            reports, out_dir, experiment, eta,
            ("ap_imperfect_target", "ip_imperfect_target"),
        )
    else:  # single_decision
        return _cmd_decide(args)
    return EXIT_OK


def _cmd_decide(args) -> int:
    cfg, manifest = _load(args)
    seed = _seed_of(cfg, manifest)
    rng = np.random.default_rng(seed)
    outcome = simulate.run_trial(rng, cfg, manifest.d1_km)
    case = outcome.scenario_case
    areas = region_areas(case.scenario, manifest.d1_km, cfg)
    print(f"d1_km: {manifest.d1_km:.10g}")
    print(f"seed: {seed}")
    print(f"scenario: {case.scenario.name}")
    print(f"case: {case.case.name}")
    print(f"inner_boundary_slot: {case.inner_index.count}")
    print(f"outer_boundary_slot: {case.outer_index.count}")
    print(f"region_area_km2: {areas.region_km2:.10g}")
    print(f"interference_area_km2: {areas.interference_km2:.10g}")
    print(f"access_prob: {outcome.access_prob:.10g}")
    print(f"mu_in_interference_region: {str(outcome.mu_in_interference_region).lower()}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_decide(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports and exits
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    raise SystemExit(main())
