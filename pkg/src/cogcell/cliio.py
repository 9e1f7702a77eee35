"""Config-file parsing, CSV result tables and plot-script emission."""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field

import yaml

from .apdesign import CaseTag
from .config import ConfigError, SystemConfig
from .simulate import SimReport

EXPERIMENTS = (
    "ap_ip_vs_d1",
    "ap_ip_vs_blocks",
    "ap_vs_target_snr",
    "imperfect_gamma_t",
    "single_decision",
)

CSV_BASE_HEADER = (
    "sweep_param",
    "empirical_ap",
    "stderr_ap",
    "empirical_ip",
    "stderr_ip",
    "n_trials",
    "seed",
)

FIGURE_KINDS = {
    "ap_vs_d1": dict(y="empirical_ap", yerr="stderr_ap", xlabel="d1 (km)", ylabel="AP", eta_line=False),
    "ip_vs_d1": dict(y="empirical_ip", yerr="stderr_ip", xlabel="d1 (km)", ylabel="IP", eta_line=True),
    "ap_vs_blocks": dict(y="empirical_ap", yerr="stderr_ap", xlabel="d1 (km)", ylabel="AP", eta_line=False),
    "ip_vs_blocks": dict(y="empirical_ip", yerr="stderr_ip", xlabel="d1 (km)", ylabel="IP", eta_line=True),
    "ap_vs_target_snr": dict(y="empirical_ap", yerr="stderr_ap", xlabel="target SNR (dB)", ylabel="AP", eta_line=False),
    "ap_imperfect_target": dict(y="empirical_ap", yerr="stderr_ap", xlabel="d1 (km)", ylabel="AP", eta_line=False),
    "ip_imperfect_target": dict(y="empirical_ip", yerr="stderr_ip", xlabel="d1 (km)", ylabel="IP", eta_line=True),
}


class ConfigFileError(ConfigError):
    """Config document failed to parse or validate."""


@dataclass(frozen=True)
class RunManifest:
    """Resolved run settings: which experiment, where to write, what grids."""

    experiment: str = "ap_ip_vs_d1"
    output_dir: str = "results"
    seed: int | None = None
    n_trials: int = 10_000
    d1_grid_km: tuple[float, ...] = field(
        default_factory=lambda: tuple(round(0.04 + 0.04 * i, 4) for i in range(15))
    )
    blocks_grid: tuple[int, ...] = (50, 100)
    target_snr_grid_db: tuple[float, ...] = field(
        default_factory=lambda: tuple(float(v) for v in range(10, 31, 2))
    )
    snr_sweep_d1_km: tuple[float, ...] = (0.1, 0.25, 0.4)
    clpc_low_db: float = 17.0
    clpc_high_db: float = 23.0
    d1_km: float = 0.25

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigFileError(
                f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}"
            )
        if self.n_trials < 1:
            raise ConfigFileError("trials must be >= 1")
        if not self.d1_grid_km:
            raise ConfigFileError("d1 grid must be non-empty")
        if self.clpc_low_db > self.clpc_high_db:
            raise ConfigFileError("gamma_t_low_db must not exceed gamma_t_high_db")


def _expand_grid(raw, name):
    """Accept an explicit list or a {start, stop, step} mapping."""
    if isinstance(raw, dict):
        try:
            start, stop, step = float(raw["start"]), float(raw["stop"]), float(raw["step"])
        except KeyError as exc:
            raise ConfigFileError(f"{name}: grid mapping needs start/stop/step") from exc
        if step <= 0.0 or stop < start:
            raise ConfigFileError(f"{name}: need step > 0 and stop >= start")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + i * step, 10) for i in range(count))
    if isinstance(raw, (list, tuple)):
        return tuple(float(v) for v in raw)
    raise ConfigFileError(f"{name}: expected a list or a start/stop/step mapping")


_SYSTEM_KEYS = {
    "macro_radius_km": float,
    "small_radius_km": float,
    "min_distance_km": float,
    "target_snr_db": float,
    "ip_constraint_eta": float,
    "shadow_sigma_db": float,
    "blocks": int,
    "subblocks": int,
    "measurement_mode": str,
    "samples_per_subblock": int,
    "rng_seed": int,
}


def parse_config(text: str) -> tuple[SystemConfig, RunManifest]:
    """Parse a YAML config document; omitted keys fall back to the defaults.

    Layout: a `system` mapping for physical/protocol constants (noise power is
    given as `noise_power_dbm`) and a `run` mapping for the experiment plan.
    An empty document yields the full default configuration.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}" if mark is not None else ""
        raise ConfigFileError(f"config parse error{where}: {exc}") from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigFileError("config document must be a mapping")
    unknown = set(doc) - {"system", "run"}
    if unknown:
        raise ConfigFileError(f"unknown top-level config sections: {sorted(unknown)}")

    sys_raw = doc.get("system") or {}
    if not isinstance(sys_raw, dict):
        raise ConfigFileError("'system' must be a mapping")
    kwargs = {}
    for key, value in sys_raw.items():
        if key == "noise_power_dbm":
            kwargs["noise_power_mw"] = 10.0 ** (float(value) / 10.0)
        elif key == "noise_power_mw":
            kwargs["noise_power_mw"] = float(value)
        elif key in _SYSTEM_KEYS:
            kwargs[key] = _SYSTEM_KEYS[key](value)
        else:
            raise ConfigFileError(f"unknown system key {key!r}")
    try:
        cfg = SystemConfig(**kwargs)
    except ConfigError as exc:
        raise ConfigFileError(f"invalid system config: {exc}") from exc

    run_raw = doc.get("run") or {}
    if not isinstance(run_raw, dict):
        raise ConfigFileError("'run' must be a mapping")
    manifest_kwargs = {}
    for key, value in run_raw.items():
        if key == "experiment":
            manifest_kwargs["experiment"] = str(value)
        elif key == "output_dir":
            manifest_kwargs["output_dir"] = str(value)
        elif key == "seed":
            manifest_kwargs["seed"] = int(value)
        elif key == "trials":
            manifest_kwargs["n_trials"] = int(value)
        elif key == "d1_grid_km":
            manifest_kwargs["d1_grid_km"] = _expand_grid(value, key)
        elif key == "blocks_grid":
            manifest_kwargs["blocks_grid"] = tuple(int(v) for v in value)
        elif key == "target_snr_grid_db":
            manifest_kwargs["target_snr_grid_db"] = _expand_grid(value, key)
        elif key == "snr_sweep_d1_km":
            manifest_kwargs["snr_sweep_d1_km"] = _expand_grid(value, key)
        elif key == "gamma_t_low_db":
            manifest_kwargs["clpc_low_db"] = float(value)
        elif key == "gamma_t_high_db":
            manifest_kwargs["clpc_high_db"] = float(value)
        elif key == "d1_km":
            manifest_kwargs["d1_km"] = float(value)
        else:
            raise ConfigFileError(f"unknown run key {key!r}")
    manifest = RunManifest(**manifest_kwargs)
    return cfg, manifest


def config_to_yaml(cfg: SystemConfig, manifest: RunManifest) -> str:
    """Serialize back to the on-disk layout; parse(serialize(x)) is idempotent."""
    sys_map = asdict(cfg)
    noise_mw = sys_map.pop("noise_power_mw")
    sys_map["noise_power_dbm"] = 10.0 * math.log10(noise_mw)
    run_map = {
        "experiment": manifest.experiment,
        "output_dir": manifest.output_dir,
        "seed": manifest.seed,
        "trials": manifest.n_trials,
        "d1_grid_km": list(manifest.d1_grid_km),
        "blocks_grid": list(manifest.blocks_grid),
        "target_snr_grid_db": list(manifest.target_snr_grid_db),
        "snr_sweep_d1_km": list(manifest.snr_sweep_d1_km),
        "gamma_t_low_db": manifest.clpc_low_db,
        "gamma_t_high_db": manifest.clpc_high_db,
        "d1_km": manifest.d1_km,
    }
    if run_map["seed"] is None:
        del run_map["seed"]
    return yaml.safe_dump({"system": sys_map, "run": run_map}, sort_keys=False)


def _fmt(value: float) -> str:
    return format(float(value), ".10g")


def emit_report_csv(reports: list[SimReport], path) -> None:
    """Write one sweep's reports as CSV, one case-count column per observed case.

    Floats carry 10 significant digits, so a parse-back recovers them exactly
    at that precision; rows follow the grid order.
    """
    if not reports:
        raise ValueError("no reports to write")
    observed = [
        tag for tag in CaseTag
        if any(r.case_counts[tag.value - 1] > 0 for r in reports)
    ]
    header = list(CSV_BASE_HEADER) + [f"case_{tag.name}" for tag in observed]
    lines = [",".join(header)]
    for r in reports:
        row = [
            _fmt(r.sweep_value),
            _fmt(r.empirical_ap),
            _fmt(r.stderr_ap),
            _fmt(r.empirical_ip),
            _fmt(r.stderr_ip),
            str(r.n_trials),
            str(r.seed),
        ]
        row += [str(r.case_counts[tag.value - 1]) for tag in observed]
        lines.append(",".join(row))
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report CSV {path}: {exc}") from exc


def read_report_csv(path) -> dict[str, list[float]]:
    """Parse a report CSV back into columns (floats where applicable)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise OSError(f"cannot read report CSV {path}: {exc}") from exc
    header = lines[0].split(",")
    columns: dict[str, list[float]] = {name: [] for name in header}
    for line in lines[1:]:
        for name, cell in zip(header, line.split(",")):
            columns[name].append(float(cell))
    return columns


_PLOT_TEMPLATE = '''"""Plot {kind} from {csv_name} (auto-generated)."""

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent
CSV_PATH = HERE / {csv_name!r}

with open(CSV_PATH, "r", encoding="utf-8") as fh:
    rows = list(csv.DictReader(fh))

x = [float(row["sweep_param"]) for row in rows]
y = [float(row[{y_col!r}]) for row in rows]
err = [float(row[{yerr_col!r}]) for row in rows]

fig, ax = plt.subplots(figsize=(6, 4))
ax.errorbar(x, y, yerr=err, marker="o", capsize=2, label={ylabel!r})
{eta_block}ax.set_xlabel({xlabel!r})
ax.set_ylabel({ylabel!r})
ax.grid(True, alpha=0.4)
ax.legend(loc="best")
fig.tight_layout()
out = HERE / "{stem}.png"
fig.savefig(out, dpi=150)
print(f"wrote {{out}}")
'''


def emit_plot_script(csv_path, figure_kind: str, eta: float = 0.01, out_path=None) -> str:
    """Write a self-contained matplotlib script rendering one figure kind.

    The script references the CSV by name relative to its own directory and
    draws the interference budget as a horizontal line on IP figures.
    """
    if figure_kind not in FIGURE_KINDS:
        raise ValueError(f"unknown figure kind {figure_kind!r}; choose from {sorted(FIGURE_KINDS)}")
    csv_path = os.fspath(csv_path)
    if not os.path.exists(csv_path):
        raise FileNotFoundError(f"CSV not found: {csv_path}")
    spec = FIGURE_KINDS[figure_kind]
    stem = f"plot_{figure_kind}_{os.path.splitext(os.path.basename(csv_path))[0]}"
    if out_path is None:
        out_path = os.path.join(os.path.dirname(csv_path), stem + ".py")
    eta_block = (
        f'ax.axhline({eta!r}, color="red", linestyle="--", label="eta = {eta:g}")\n'
        if spec["eta_line"]
        else ""
    )
    script = _PLOT_TEMPLATE.format(
        kind=figure_kind,
        csv_name=os.path.basename(csv_path),
        y_col=spec["y"],
        yerr_col=spec["yerr"],
        xlabel=spec["xlabel"],
        ylabel=spec["ylabel"],
        eta_block=eta_block,
        stem=stem,
    )
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(script)
    except OSError as exc:
        raise OSError(f"cannot write plot script {out_path}: {exc}") from exc
    return out_path
