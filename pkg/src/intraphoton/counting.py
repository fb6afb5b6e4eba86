"""Monte Carlo photon counting for the two-qubit analyzers.

This layer turns exact projection probabilities into Poissonian
coincidence counts (with a flat accidental background, no subtraction),
and estimates correlators and the CHSH S from those counts with
first-order error propagation, Var(N) = N.

Angle conventions
-----------------
The CHSH functions project with ``pol_projector(a)`` and
``oam_projector(b)`` as-is.  The fringe functions use the interference
knob convention instead: a pure Psi- input gives counts proportional to
sin^2(beta1 - beta2), so beta1 = beta2 sits on the null.  Internally
that is ``oam_projector(pi/2 - beta2)``; the two b-axes are offset by
pi/2.

Stream layout
-------------
Everything random is drawn from :class:`~intraphoton.rng.CountStream`.
A CHSH run with one seed uses stream ``4 * setting_index +
outcome_index`` with settings ordered as in ``ChshAngles.settings()``
and outcomes ordered as in ``OUTCOME_ORDER``, so each of the sixteen
counters gets an independent, reproducible stream.  Scan functions use
the grid index as the stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .chsh import AnalyzerPair, ChshAngles
from .elements import oam_projector, pol_projector
from .rng import CountStream
from .source import DipModel, epsilon_of_delay
from .states import _as_physical

# outcome labels: first letter is the polarization port, second the OAM
# port; "m" means the analyzer rotated by pi/2 (orthogonal projection)
OUTCOME_ORDER = ("pp", "mm", "pm", "mp")

_OUTCOME_SHIFTS = {
    "pp": (0.0, 0.0),
    "mm": (np.pi / 2, np.pi / 2),
    "pm": (0.0, np.pi / 2),
    "mp": (np.pi / 2, 0.0),
}


@dataclass(frozen=True)
class RateModel:
    """Count rates for one detector pair.

    ``pair_rate`` is the coincidence rate at unit projection
    probability, ``accidental_rate`` a flat background that is added to
    every counter (never subtracted), both in counts/s.
    """

    pair_rate: float
    accidental_rate: float
    integration_time: float

    def __post_init__(self):
        for name in ("pair_rate", "accidental_rate", "integration_time"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class CountRecord:
    """One Poisson draw from one counter."""

    counts: int
    integration_time: float
    seed: int | None = None
    setting: AnalyzerPair | None = None

    def __post_init__(self):
        if int(self.counts) != self.counts or self.counts < 0:
            raise ValueError(f"counts must be a nonnegative integer, got {self.counts!r}")
        object.__setattr__(self, "counts", int(self.counts))
        time = float(self.integration_time)
        if not math.isfinite(time) or time < 0.0:
            raise ValueError(f"integration_time must be finite and >= 0, got {time!r}")
        object.__setattr__(self, "integration_time", time)


@dataclass(frozen=True)
class EstimateWithError:
    value: float
    std_dev: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("estimate value must be finite")
        if not (math.isfinite(self.std_dev) and self.std_dev >= 0.0):
            raise ValueError("std_dev must be finite and >= 0")


SettingCounts = tuple[CountRecord, CountRecord, CountRecord, CountRecord]

_Count = Union[int, CountRecord]


def _count_value(n: _Count) -> int:
    counts = n.counts if isinstance(n, CountRecord) else n
    if int(counts) != counts or counts < 0:
        raise ValueError(f"counts must be a nonnegative integer, got {counts!r}")
    return int(counts)


def joint_probability(rho: np.ndarray, pair: AnalyzerPair) -> float:
    """Probability of a joint click at polarizer angle a, OAM angle b."""
    rho = _as_physical(rho)
    proj = np.kron(pol_projector(pair.a), oam_projector(pair.b))
    p = float(np.trace(rho @ proj).real)
    if p < -1e-9 or p > 1.0 + 1e-9:
        raise ValueError(f"projection probability {p!r} outside [0, 1]")
    return min(max(p, 0.0), 1.0)


def expected_rate(rho: np.ndarray, pair: AnalyzerPair, model: RateModel) -> float:
    """Mean coincidence rate in counts/s, accidentals included."""
    return model.pair_rate * joint_probability(rho, pair) + model.accidental_rate


def sample_counts(
    rate: float,
    time: float,
    seed: int,
    stream: int = 0,
    setting: AnalyzerPair | None = None,
) -> CountRecord:
    """Draw one Poisson count with mean rate * time."""
    rate = float(rate)
    time = float(time)
    if not math.isfinite(rate) or rate < 0.0:
        raise ValueError(f"rate must be finite and >= 0, got {rate!r}")
    if not math.isfinite(time) or time < 0.0:
        raise ValueError(f"time must be finite and >= 0, got {time!r}")
    counts = CountStream(seed, stream).poisson(rate * time)
    return CountRecord(counts=counts, integration_time=time, seed=seed, setting=setting)


def sample_setting_counts(
    rho: np.ndarray,
    pair: AnalyzerPair,
    model: RateModel,
    seed: int,
    base_stream: int = 0,
) -> SettingCounts:
    """Sample the four outcome counters for one nominal setting.

    Outcomes come back in ``OUTCOME_ORDER`` and draw from streams
    ``base_stream + 0 .. base_stream + 3``.
    """
    records = []
    for j, name in enumerate(OUTCOME_ORDER):
        da, db = _OUTCOME_SHIFTS[name]
        shifted = AnalyzerPair(pair.a + da, pair.b + db)
        rate = expected_rate(rho, shifted, model)
        records.append(
            sample_counts(rate, model.integration_time, seed, stream=base_stream + j, setting=shifted)
        )
    return tuple(records)


def sample_chsh_counts(
    rho: np.ndarray,
    angles: ChshAngles,
    model: RateModel,
    seed: int,
    base_stream: int = 0,
) -> tuple[SettingCounts, SettingCounts, SettingCounts, SettingCounts]:
    """Sample all sixteen counters of one CHSH run.

    Streams ``base_stream .. base_stream + 15`` are used; grid scans
    pass ``base_stream = 16 * row`` to keep rows independent.
    """
    return tuple(
        sample_setting_counts(rho, pair, model, seed, base_stream=base_stream + 4 * i)
        for i, pair in enumerate(angles.settings())
    )


def estimate_correlation(n_pp: _Count, n_mm: _Count, n_pm: _Count, n_mp: _Count) -> EstimateWithError:
    """Correlation estimate (N_pp + N_mm - N_pm - N_mp) / N_total.

    The error bar propagates Var(N) = N through the ratio, which gives
    Var(E) = 4 * P * M / T^3 with P = N_pp + N_mm, M = N_pm + N_mp and
    T = P + M.
    """
    plus = _count_value(n_pp) + _count_value(n_mm)
    minus = _count_value(n_pm) + _count_value(n_mp)
    total = plus + minus
    if total <= 0:
        raise ValueError("cannot estimate a correlation from zero total counts")
    value = (plus - minus) / total
    variance = 4.0 * plus * minus / total**3
    return EstimateWithError(value=value, std_dev=math.sqrt(variance))


def estimate_s(
    counts: Sequence[SettingCounts],
    angles: ChshAngles,
) -> EstimateWithError:
    """CHSH S estimate from sixteen counters.

    ``counts`` holds one ``OUTCOME_ORDER`` quadruple per entry of
    ``angles.settings()``; S = E11 - E12 + E21 + E22 and the variances
    of the four estimates add.
    """
    if len(counts) != 4:
        raise ValueError(f"need counts for exactly 4 settings, got {len(counts)}")
    settings = angles.settings()
    estimates = []
    for pair, quad in zip(settings, counts):
        if len(quad) != 4:
            raise ValueError(f"need 4 outcome counters per setting, got {len(quad)}")
        for name, record in zip(OUTCOME_ORDER, quad):
            if isinstance(record, CountRecord) and record.setting is not None:
                da, db = _OUTCOME_SHIFTS[name]
                expected = AnalyzerPair(pair.a + da, pair.b + db)
                if abs(record.setting.a - expected.a) > 1e-9 or abs(record.setting.b - expected.b) > 1e-9:
                    raise ValueError(
                        f"counter for outcome {name!r} was recorded at {record.setting}, "
                        f"expected {expected} from the given angles"
                    )
        estimates.append(estimate_correlation(*quad))
    e11, e12, e21, e22 = estimates
    value = e11.value - e12.value + e21.value + e22.value
    variance = sum(e.std_dev**2 for e in estimates)
    return EstimateWithError(value=value, std_dev=math.sqrt(variance))


def fringe_probability(rho: np.ndarray, beta1: float, beta2: float) -> float:
    """Exact joint probability at fringe knobs (beta1, beta2).

    Follows the interference convention (module docstring): for pure
    Psi- this is sin^2(beta1 - beta2) / 2.
    """
    return joint_probability(rho, AnalyzerPair(beta1, np.pi / 2 - beta2))


def fringe_scan(
    rho: np.ndarray,
    beta1: float,
    beta2_grid: Sequence[float],
    model: RateModel,
    seed: int | None = None,
) -> np.ndarray:
    """Fringe curve: rows of (beta2, counts normalized to the maximum).

    With ``seed=None`` the counts are exact expectations; otherwise each
    grid point draws from its own stream (the grid index).
    """
    beta2_grid = np.asarray(beta2_grid, dtype=float)
    if beta2_grid.ndim != 1 or beta2_grid.size == 0:
        raise ValueError("beta2_grid must be a nonempty 1-d grid")
    counts = np.empty_like(beta2_grid)
    for k, beta2 in enumerate(beta2_grid):
        rate = model.pair_rate * fringe_probability(rho, beta1, beta2) + model.accidental_rate
        if seed is None:
            counts[k] = rate * model.integration_time
        else:
            counts[k] = sample_counts(rate, model.integration_time, seed, stream=k).counts
    peak = counts.max()
    if peak > 0.0:
        counts = counts / peak
    return np.column_stack((beta2_grid, counts))


def hom_expected_counts(
    tau_fs: float,
    dip: DipModel,
    rates: RateModel,
    hom_visibility: float = 1.0,
) -> float:
    """Mean coincidence counts at interferometer delay tau_fs."""
    hom_visibility = float(hom_visibility)
    if not 0.0 <= hom_visibility <= 1.0:
        raise ValueError(f"hom_visibility must be in [0, 1], got {hom_visibility!r}")
    eps = epsilon_of_delay(tau_fs, dip)
    rate = rates.pair_rate * (1.0 - hom_visibility * eps) + rates.accidental_rate
    return rate * rates.integration_time


def hom_scan(
    tau_grid_fs: Sequence[float],
    dip: DipModel,
    rates: RateModel,
    hom_visibility: float = 1.0,
    seed: int | None = None,
) -> np.ndarray:
    """Coincidence dip: rows of (tau_fs, counts).

    The mean count at each delay is pair_rate * (1 - hom_visibility *
    epsilon(tau)) + accidentals, times the integration time; the dip
    bottom sits at tau = 0.  ``seed=None`` returns exact expectations.
    """
    tau_grid_fs = np.asarray(tau_grid_fs, dtype=float)
    if tau_grid_fs.ndim != 1 or tau_grid_fs.size == 0:
        raise ValueError("tau_grid_fs must be a nonempty 1-d grid")
    counts = np.empty_like(tau_grid_fs)
    for k, tau in enumerate(tau_grid_fs):
        mean = hom_expected_counts(tau, dip, rates, hom_visibility)
        if seed is None:
            counts[k] = mean
        else:
            counts[k] = CountStream(seed, stream=k).poisson(mean)
    return np.column_stack((tau_grid_fs, counts))


def visibility(curve: np.ndarray) -> float:
    """(max - min) / (max + min) of a count curve.

    Accepts either a 1-d array of counts or a 2-column scan (the count
    column is used).
    """
    curve = np.asarray(curve, dtype=float)
    if curve.ndim == 2 and curve.shape[1] == 2:
        curve = curve[:, 1]
    if curve.ndim != 1 or curve.size == 0:
        raise ValueError("curve must be a nonempty 1-d array or 2-column scan")
    high = float(curve.max())
    low = float(curve.min())
    if high + low <= 0.0:
        raise ValueError("visibility is undefined for an all-zero curve")
    return (high - low) / (high + low)
