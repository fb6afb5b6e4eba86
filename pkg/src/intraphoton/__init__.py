"""Simulation of tunable single-photon polarization-OAM entanglement.

The library models a photon pair source whose temporal delay tunes the
entanglement between one photon's polarization and orbital angular
momentum, the wave-plate/q-plate optics that generate and analyze the
state, CHSH Bell tests on it, and the Poissonian counting statistics of
a real coincidence measurement.  The ``intraphoton`` command line runs
named scenarios from TOML configs and writes CSV curves.
"""

__version__ = "0.1.0"

from .chsh import (
    TSIRELSON_S,
    AnalyzerPair,
    ChshAngles,
    ChshResult,
    chsh_s,
    correlation,
    horodecki_smax,
    optimize_angles,
    standard_angles,
    theta_scan,
)
from .config import (
    SCAN_KEYS,
    SCENARIO_NAMES,
    ConfigError,
    ConfigIssue,
    ConfigReport,
    ExperimentConfig,
    config_to_toml,
    load_config,
    parse_config,
    validate_config,
)
from .counting import (
    OUTCOME_ORDER,
    CountRecord,
    EstimateWithError,
    RateModel,
    estimate_correlation,
    estimate_s,
    expected_rate,
    fringe_probability,
    fringe_scan,
    hom_expected_counts,
    hom_scan,
    joint_probability,
    sample_chsh_counts,
    sample_counts,
    sample_setting_counts,
    visibility,
)
from .elements import (
    analyzer_chain,
    analyzer_effective_operator,
    apply_qplate,
    generation_chain,
    hwp,
    oam_projector,
    pol_projector,
    qplate,
    qwp,
)
from .rng import GENERATOR_NAME, POISSON_INVERSION_LIMIT, CountStream
from .scenarios import ScenarioOutput, run_scenario, write_outputs
from .source import (
    BBO_810,
    QUARTZ_810,
    DipModel,
    GaussianDip,
    InterpolatedDip,
    MaterialDispersion,
    TriangularDip,
    calibrate_gaussian,
    compensation_delay,
    dip_model_from_config,
    dip_model_to_config,
    epsilon_of_delay,
    gvm,
    postselected_state,
)
from .states import (
    BellKind,
    PhysicalityReport,
    apply_visibility,
    bell_state,
    concurrence,
    mixed_bell_state,
    purity,
    validate_physical,
)

__all__ = [
    "__version__",
    "TSIRELSON_S",
    "AnalyzerPair",
    "ChshAngles",
    "ChshResult",
    "chsh_s",
    "correlation",
    "horodecki_smax",
    "optimize_angles",
    "standard_angles",
    "theta_scan",
    "SCAN_KEYS",
    "SCENARIO_NAMES",
    "ConfigError",
    "ConfigIssue",
    "ConfigReport",
    "ExperimentConfig",
    "config_to_toml",
    "load_config",
    "parse_config",
    "validate_config",
    "OUTCOME_ORDER",
    "CountRecord",
    "EstimateWithError",
    "RateModel",
    "estimate_correlation",
    "estimate_s",
    "expected_rate",
    "fringe_probability",
    "fringe_scan",
    "hom_expected_counts",
    "hom_scan",
    "joint_probability",
    "sample_chsh_counts",
    "sample_counts",
    "sample_setting_counts",
    "visibility",
    "analyzer_chain",
    "analyzer_effective_operator",
    "apply_qplate",
    "generation_chain",
    "hwp",
    "oam_projector",
    "pol_projector",
    "qplate",
    "qwp",
    "GENERATOR_NAME",
    "POISSON_INVERSION_LIMIT",
    "CountStream",
    "ScenarioOutput",
    "run_scenario",
    "write_outputs",
    "BBO_810",
    "QUARTZ_810",
    "DipModel",
    "GaussianDip",
    "InterpolatedDip",
    "MaterialDispersion",
    "TriangularDip",
    "calibrate_gaussian",
    "compensation_delay",
    "dip_model_from_config",
    "dip_model_to_config",
    "epsilon_of_delay",
    "gvm",
    "postselected_state",
    "BellKind",
    "PhysicalityReport",
    "apply_visibility",
    "bell_state",
    "concurrence",
    "mixed_bell_state",
    "purity",
    "validate_physical",
]
