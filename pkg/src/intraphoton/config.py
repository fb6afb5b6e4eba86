"""Experiment configs: TOML parsing, validation, and serialization.

A config file has four tables:

``[experiment]``
    ``scenario`` (one of ``SCENARIO_NAMES``), ``bell_kind``,
    ``visibility`` in [0, 1], integer ``seed``.
``[rate_model]``
    ``pair_rate``, ``accidental_rate``, ``integration_time``.
``[dip_model]``
    ``variant`` plus that variant's parameters (see
    :func:`intraphoton.source.dip_model_from_config`).
``[scan]``
    scenario-specific knobs and grids; the required keys per scenario
    are in ``SCAN_KEYS``.  Angles are degrees, delays femtoseconds.

:func:`validate_config` reports every problem it can find instead of
stopping at the first; :func:`parse_config` raises :class:`ConfigError`
carrying the same issue list.  :func:`config_to_toml` emits a canonical
form that parses back to an equal config, so configs can be embedded in
run metadata and replayed.
"""

from __future__ import annotations

import math
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .counting import RateModel
from .source import DipModel, dip_model_from_config, dip_model_to_config
from .states import BellKind

SCENARIO_NAMES = ("hom-dip", "fringes", "chsh-theta", "chsh-vs-delay", "headline")

# required [scan] keys per scenario: name -> (kind, extra constraint)
# kind "int" requires a TOML integer; "number" accepts int or float
SCAN_KEYS = {
    "hom-dip": {
        "delay_min_fs": ("number", "nonnegative"),
        "delay_max_fs": ("number", "nonnegative"),
        "steps": ("int", "steps"),
        "hom_visibility": ("number", "unit"),
    },
    "fringes": {
        "beta1_deg": ("number", None),
        "beta2_min_deg": ("number", None),
        "beta2_max_deg": ("number", None),
        "steps": ("int", "steps"),
        "delay_fs": ("number", "nonnegative"),
    },
    "chsh-theta": {
        "theta_min_deg": ("number", None),
        "theta_max_deg": ("number", None),
        "steps": ("int", "steps"),
        "delay_fs": ("number", "nonnegative"),
    },
    "chsh-vs-delay": {
        "theta_deg": ("number", None),
        "delay_min_fs": ("number", "nonnegative"),
        "delay_max_fs": ("number", "nonnegative"),
        "steps": ("int", "steps"),
    },
    "headline": {
        "theta_deg": ("number", None),
        "n_seeds": ("int", "seeds"),
        "delay_fs": ("number", "nonnegative"),
    },
}


@dataclass(frozen=True)
class ConfigIssue:
    """One validation finding.

    ``kind`` is "parse" (TOML syntax), "structure" (missing/unknown
    keys, wrong types) or "range" (value outside its documented range).
    ``line``/``column`` are set for parse errors when the decoder
    reports them.
    """

    kind: str
    message: str
    field: str | None = None
    line: int | None = None
    column: int | None = None


@dataclass(frozen=True)
class ConfigReport:
    path: str
    ok: bool
    issues: tuple[ConfigIssue, ...] = ()

    def to_dict(self) -> dict:
        return {"path": self.path, "ok": self.ok, "issues": [asdict(i) for i in self.issues]}


class ConfigError(ValueError):
    """Raised when a config fails to parse or validate."""

    def __init__(self, issues):
        self.issues = tuple(issues)
        super().__init__("; ".join(i.message for i in self.issues) or "invalid config")


@dataclass(frozen=True)
class ExperimentConfig:
    """One scenario run, fully specified.

    ``scan`` keeps the scenario table exactly as parsed (ints stay
    ints), so serialize -> parse is the identity.
    """

    scenario: str
    bell_kind: BellKind
    visibility: float
    seed: int
    rate_model: RateModel
    dip_model: DipModel
    scan: dict = field(default_factory=dict)


_PARSE_POSITION = re.compile(r"line (\d+), column (\d+)")


def _parse_issue(exc: Exception) -> ConfigIssue:
    message = str(exc)
    found = _PARSE_POSITION.search(message)
    line = int(found.group(1)) if found else None
    column = int(found.group(2)) if found else None
    return ConfigIssue(kind="parse", message=message, line=line, column=column)


def _check_number(issues, table, data, name, constraint, kind="number"):
    where = f"{table}.{name}"
    if name not in data:
        issues.append(ConfigIssue("structure", f"missing required key {where}", field=where))
        return None
    value = data[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        issues.append(ConfigIssue("structure", f"{where} must be a number, got {value!r}", field=where))
        return None
    if kind == "int" and not isinstance(value, int):
        issues.append(ConfigIssue("structure", f"{where} must be an integer, got {value!r}", field=where))
        return None
    if not math.isfinite(value):
        issues.append(ConfigIssue("range", f"{where} must be finite, got {value!r}", field=where))
        return None
    if constraint == "nonnegative" and value < 0:
        issues.append(ConfigIssue("range", f"{where} must be >= 0, got {value!r}", field=where))
        return None
    if constraint == "unit" and not 0.0 <= value <= 1.0:
        issues.append(ConfigIssue("range", f"{where} must be in [0, 1], got {value!r}", field=where))
        return None
    if constraint == "steps" and value < 2:
        issues.append(ConfigIssue("range", f"{where} must be >= 2, got {value!r}", field=where))
        return None
    if constraint == "seeds" and value < 1:
        issues.append(ConfigIssue("range", f"{where} must be >= 1, got {value!r}", field=where))
        return None
    return value


def _collect_issues(raw: dict) -> list[ConfigIssue]:
    issues: list[ConfigIssue] = []

    unknown_tables = set(raw) - {"experiment", "rate_model", "dip_model", "scan"}
    for name in sorted(unknown_tables):
        issues.append(ConfigIssue("structure", f"unknown table [{name}]", field=name))
    for name in ("experiment", "rate_model", "dip_model", "scan"):
        if name not in raw:
            issues.append(ConfigIssue("structure", f"missing table [{name}]", field=name))
        elif not isinstance(raw[name], dict):
            issues.append(ConfigIssue("structure", f"[{name}] must be a table", field=name))
    if any(i.kind == "structure" and i.field in ("experiment", "rate_model", "dip_model", "scan") for i in issues):
        return issues

    experiment = raw["experiment"]
    scenario = experiment.get("scenario")
    if scenario is None:
        issues.append(ConfigIssue("structure", "missing required key experiment.scenario", field="experiment.scenario"))
    elif scenario not in SCENARIO_NAMES:
        issues.append(
            ConfigIssue(
                "range",
                f"experiment.scenario must be one of {list(SCENARIO_NAMES)}, got {scenario!r}",
                field="experiment.scenario",
            )
        )
        scenario = None

    kind = experiment.get("bell_kind")
    if kind is None:
        issues.append(ConfigIssue("structure", "missing required key experiment.bell_kind", field="experiment.bell_kind"))
    else:
        try:
            BellKind(kind)
        except ValueError:
            issues.append(
                ConfigIssue(
                    "range",
                    f"experiment.bell_kind must be one of {[k.value for k in BellKind]}, got {kind!r}",
                    field="experiment.bell_kind",
                )
            )

    _check_number(issues, "experiment", experiment, "visibility", "unit")
    _check_number(issues, "experiment", experiment, "seed", None, kind="int")
    unknown = set(experiment) - {"scenario", "bell_kind", "visibility", "seed"}
    for name in sorted(unknown):
        issues.append(ConfigIssue("structure", f"unknown key experiment.{name}", field=f"experiment.{name}"))

    rates = raw["rate_model"]
    for name in ("pair_rate", "accidental_rate", "integration_time"):
        _check_number(issues, "rate_model", rates, name, "nonnegative")
    unknown = set(rates) - {"pair_rate", "accidental_rate", "integration_time"}
    for name in sorted(unknown):
        issues.append(ConfigIssue("structure", f"unknown key rate_model.{name}", field=f"rate_model.{name}"))

    try:
        dip_model_from_config(raw["dip_model"])
    except (ValueError, TypeError) as exc:
        issues.append(ConfigIssue("range", f"dip_model: {exc}", field="dip_model"))

    if scenario is not None:
        schema = SCAN_KEYS[scenario]
        scan = raw["scan"]
        for name, (value_kind, constraint) in schema.items():
            _check_number(issues, "scan", scan, name, constraint, kind=value_kind)
        unknown = set(scan) - set(schema)
        for name in sorted(unknown):
            issues.append(
                ConfigIssue(
                    "structure",
                    f"unknown key scan.{name} for scenario {scenario!r}",
                    field=f"scan.{name}",
                )
            )
        lo, hi = _scan_bounds(scenario)
        if lo in scan and hi in scan and all(isinstance(scan.get(k), (int, float)) for k in (lo, hi)):
            if not scan[lo] < scan[hi]:
                issues.append(
                    ConfigIssue(
                        "range",
                        f"scan.{lo} must be < scan.{hi} ({scan[lo]!r} >= {scan[hi]!r})",
                        field=f"scan.{lo}",
                    )
                )

    return issues


def _scan_bounds(scenario: str) -> tuple[str, str]:
    if scenario == "fringes":
        return "beta2_min_deg", "beta2_max_deg"
    if scenario == "chsh-theta":
        return "theta_min_deg", "theta_max_deg"
    if scenario == "headline":
        return "", ""
    return "delay_min_fs", "delay_max_fs"


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a TOML config document."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([_parse_issue(exc)]) from exc
    issues = _collect_issues(raw)
    if issues:
        raise ConfigError(issues)
    experiment = raw["experiment"]
    return ExperimentConfig(
        scenario=experiment["scenario"],
        bell_kind=BellKind(experiment["bell_kind"]),
        visibility=float(experiment["visibility"]),
        seed=experiment["seed"],
        rate_model=RateModel(**raw["rate_model"]),
        dip_model=dip_model_from_config(raw["dip_model"]),
        scan=dict(raw["scan"]),
    )


def load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def validate_config(path) -> ConfigReport:
    """Validate a config file without running anything.

    Collects every parse, structure and range issue found; never raises
    for config content (only for unreadable files).
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        return ConfigReport(path=str(path), ok=False, issues=(_parse_issue(exc),))
    issues = tuple(_collect_issues(raw))
    return ConfigReport(path=str(path), ok=not issues, issues=issues)


def _toml_scalar(value) -> str:
    if isinstance(value, bool):
        raise TypeError("booleans are not used in experiment configs")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot serialize non-finite value {value!r}")
        return repr(value)
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_scalar(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__} to TOML")


def config_to_toml(config: ExperimentConfig) -> str:
    """Canonical TOML form; ``parse_config`` of the result equals ``config``."""
    lines = [
        "[experiment]",
        f"scenario = {_toml_scalar(config.scenario)}",
        f"bell_kind = {_toml_scalar(config.bell_kind.value)}",
        f"visibility = {_toml_scalar(float(config.visibility))}",
        f"seed = {_toml_scalar(config.seed)}",
        "",
        "[rate_model]",
        f"pair_rate = {_toml_scalar(config.rate_model.pair_rate)}",
        f"accidental_rate = {_toml_scalar(config.rate_model.accidental_rate)}",
        f"integration_time = {_toml_scalar(config.rate_model.integration_time)}",
        "",
        "[dip_model]",
    ]
    for key, value in dip_model_to_config(config.dip_model).items():
        lines.append(f"{key} = {_toml_scalar(value)}")
    lines.append("")
    lines.append("[scan]")
    for key in SCAN_KEYS[config.scenario]:
        lines.append(f"{key} = {_toml_scalar(config.scan[key])}")
    lines.append("")
    return "\n".join(lines)
