"""Named scenario runners: grid evaluation, CSV tables, run metadata.

Each scenario turns an :class:`~intraphoton.config.ExperimentConfig`
into a :class:`ScenarioOutput`: a fixed-order column table plus summary
statistics and enough metadata to re-run bit-identically (canonical
config text and its SHA-256, seed, generator name, library versions).
Timestamps exist only in the metadata, never in the CSV, so re-running
with the same config and seed gives a byte-identical CSV body.

CSV column orders
-----------------
hom-dip        delay_fs, expected_counts[, sampled_counts]
fringes        beta2_deg, normalized_theory[, normalized_sampled]
chsh-theta     theta_deg, s_theory[, s_estimate, s_std_dev]
chsh-vs-delay  delay_fs, epsilon, s_theory[, s_estimate, s_std_dev]
headline       seed, s_estimate, s_std_dev

Bracketed sampled columns are dropped in noiseless mode (the headline
scenario keeps its shape and reports the exact S with zero std_dev).
The count columns use the state pipeline
``apply_visibility(postselected_state(delay_fs, dip, kind), V)`` so the
dip model, Bell kind and visibility act together in every scenario.
"""

from __future__ import annotations

import csv
import hashlib
import json
import platform
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import scipy

from .chsh import chsh_s, standard_angles
from .config import ConfigError, ConfigIssue, ExperimentConfig, SCENARIO_NAMES, config_to_toml
from .counting import (
    estimate_s,
    fringe_scan,
    hom_scan,
    sample_chsh_counts,
    visibility,
)
from .rng import GENERATOR_NAME
from .source import epsilon_of_delay, postselected_state
from .states import apply_visibility


@dataclass(frozen=True)
class ScenarioOutput:
    scenario: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    summary: dict
    metadata: dict


def _state_at_delay(config: ExperimentConfig, delay_fs: float) -> np.ndarray:
    rho = postselected_state(delay_fs, config.dip_model, config.bell_kind)
    return apply_visibility(rho, config.visibility)


def _run_hom_dip(config, noiseless):
    scan = config.scan
    grid = np.linspace(scan["delay_min_fs"], scan["delay_max_fs"], scan["steps"])
    theory = hom_scan(grid, config.dip_model, config.rate_model, scan["hom_visibility"], seed=None)
    columns = ("delay_fs", "expected_counts")
    if noiseless:
        rows = tuple((float(t), float(c)) for t, c in theory)
    else:
        sampled = hom_scan(grid, config.dip_model, config.rate_model, scan["hom_visibility"], seed=config.seed)
        columns += ("sampled_counts",)
        rows = tuple((float(t), float(c), int(s)) for (t, c), (_, s) in zip(theory, sampled))
    expected = theory[:, 1]
    summary = {
        "min_expected_counts": float(expected.min()),
        "min_delay_fs": float(grid[int(np.argmin(expected))]),
        "plateau_expected_counts": float(expected.max()),
    }
    return columns, rows, summary


def _run_fringes(config, noiseless):
    scan = config.scan
    grid_deg = np.linspace(scan["beta2_min_deg"], scan["beta2_max_deg"], scan["steps"])
    grid = np.deg2rad(grid_deg)
    beta1 = np.deg2rad(scan["beta1_deg"])
    rho = _state_at_delay(config, scan["delay_fs"])
    theory = fringe_scan(rho, beta1, grid, config.rate_model, seed=None)
    columns = ("beta2_deg", "normalized_theory")
    summary = {"visibility_theory": visibility(theory)}
    if noiseless:
        rows = tuple((float(d), float(c)) for d, (_, c) in zip(grid_deg, theory))
    else:
        sampled = fringe_scan(rho, beta1, grid, config.rate_model, seed=config.seed)
        columns += ("normalized_sampled",)
        rows = tuple(
            (float(d), float(c), float(s)) for d, (_, c), (_, s) in zip(grid_deg, theory, sampled)
        )
        summary["visibility_sampled"] = visibility(sampled)
    return columns, rows, summary


def _run_chsh_theta(config, noiseless):
    scan = config.scan
    thetas_deg = np.linspace(scan["theta_min_deg"], scan["theta_max_deg"], scan["steps"])
    rho = _state_at_delay(config, scan["delay_fs"])
    columns = ("theta_deg", "s_theory")
    if not noiseless:
        columns += ("s_estimate", "s_std_dev")
    rows = []
    for k, theta_deg in enumerate(thetas_deg):
        angles = standard_angles(np.deg2rad(theta_deg))
        s_theory = chsh_s(rho, angles).s_value
        if noiseless:
            rows.append((float(theta_deg), float(s_theory)))
        else:
            counts = sample_chsh_counts(rho, angles, config.rate_model, config.seed, base_stream=16 * k)
            est = estimate_s(counts, angles)
            rows.append((float(theta_deg), float(s_theory), float(est.value), float(est.std_dev)))
    theory = np.array([r[1] for r in rows])
    summary = {
        "max_s_theory": float(theory.max()),
        "theta_at_max_deg": float(thetas_deg[int(np.argmax(theory))]),
    }
    if not noiseless:
        summary["max_s_estimate"] = float(max(r[2] for r in rows))
    return columns, tuple(rows), summary


def _run_chsh_vs_delay(config, noiseless):
    scan = config.scan
    delays = np.linspace(scan["delay_min_fs"], scan["delay_max_fs"], scan["steps"])
    angles = standard_angles(np.deg2rad(scan["theta_deg"]))
    columns = ("delay_fs", "epsilon", "s_theory")
    if not noiseless:
        columns += ("s_estimate", "s_std_dev")
    rows = []
    for k, delay in enumerate(delays):
        eps = epsilon_of_delay(delay, config.dip_model)
        rho = _state_at_delay(config, delay)
        s_theory = chsh_s(rho, angles).s_value
        if noiseless:
            rows.append((float(delay), float(eps), float(s_theory)))
        else:
            counts = sample_chsh_counts(rho, angles, config.rate_model, config.seed, base_stream=16 * k)
            est = estimate_s(counts, angles)
            rows.append((float(delay), float(eps), float(s_theory), float(est.value), float(est.std_dev)))
    summary = {"s_theory_first": float(rows[0][2]), "s_theory_last": float(rows[-1][2])}
    below = [r[0] for r in rows if r[2] < 2.0]
    if below:
        summary["first_delay_below_2_fs"] = float(below[0])
    return columns, tuple(rows), summary


def _run_headline(config, noiseless):
    scan = config.scan
    angles = standard_angles(np.deg2rad(scan["theta_deg"]))
    rho = _state_at_delay(config, scan["delay_fs"])
    s_exact = chsh_s(rho, angles).s_value
    rows = []
    for k in range(scan["n_seeds"]):
        seed = config.seed + k
        if noiseless:
            rows.append((seed, float(s_exact), 0.0))
        else:
            est = estimate_s(sample_chsh_counts(rho, angles, config.rate_model, seed), angles)
            rows.append((seed, float(est.value), float(est.std_dev)))
    values = np.array([r[1] for r in rows])
    summary = {
        "mean_s": float(values.mean()),
        "std_s": float(values.std(ddof=1)) if len(values) > 1 else 0.0,
        "mean_reported_std_dev": float(np.mean([r[2] for r in rows])),
        "s_exact": float(s_exact),
    }
    return ("seed", "s_estimate", "s_std_dev"), tuple(rows), summary


_RUNNERS = {
    "hom-dip": _run_hom_dip,
    "fringes": _run_fringes,
    "chsh-theta": _run_chsh_theta,
    "chsh-vs-delay": _run_chsh_vs_delay,
    "headline": _run_headline,
}


def run_scenario(name: str, config: ExperimentConfig, noiseless: bool = False) -> ScenarioOutput:
    """Run one named scenario and return its table, summary and metadata."""
    if name not in SCENARIO_NAMES:
        raise ValueError(f"unknown scenario {name!r}; expected one of {list(SCENARIO_NAMES)}")
    if config.scenario != name:
        raise ConfigError(
            [
                ConfigIssue(
                    "structure",
                    f"config is for scenario {config.scenario!r}, not {name!r}",
                    field="experiment.scenario",
                )
            ]
        )
    columns, rows, summary = _RUNNERS[name](config, noiseless)
    config_toml = config_to_toml(config)
    from intraphoton import __version__

    metadata = {
        "scenario": name,
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "seed": config.seed,
        "noiseless": noiseless,
        "generator": GENERATOR_NAME,
        "config_toml": config_toml,
        "config_sha256": hashlib.sha256(config_toml.encode()).hexdigest(),
        "columns": list(columns),
        "summary": summary,
        "versions": {
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "intraphoton": __version__,
        },
    }
    return ScenarioOutput(
        scenario=name, columns=columns, rows=rows, summary=summary, metadata=metadata
    )


def _format_cell(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    # repr round-trips doubles exactly, so rerun bodies are byte-identical
    return repr(float(value))


def write_outputs(output: ScenarioOutput, out_dir) -> tuple[Path, Path]:
    """Write ``<scenario>.csv`` and ``<scenario>_meta.json`` under ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{output.scenario}.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(output.columns)
        for row in output.rows:
            writer.writerow([_format_cell(cell) for cell in row])
    meta_path = out_dir / f"{output.scenario}_meta.json"
    meta_path.write_text(json.dumps(output.metadata, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return csv_path, meta_path
