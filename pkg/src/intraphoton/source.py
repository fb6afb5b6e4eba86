"""Walk-off delays and the delay-to-entanglement calibration.

In a type-I down-conversion crystal the photon pair is created at an
unknown depth, so the ordinary/extraordinary group-velocity mismatch (GVM)
smears the pair's relative delay over [0, D*L]; birefringent compensation
plates of the right length re-centre that window on zero.  The residual
delay tau controls how much of the postselected single-photon state keeps
its Bell coherence: a dip model maps tau (fs) to a weight eps in [0, 1],
and :func:`postselected_state` turns that weight into the density matrix.

Units: group velocities in m/s, GVM in fs/mm, lengths in mm, delays in fs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
import scipy.optimize

from .states import BellKind, mixed_bell_state

__all__ = [
    "MaterialDispersion",
    "GaussianDip",
    "TriangularDip",
    "InterpolatedDip",
    "DipModel",
    "BBO_810",
    "QUARTZ_810",
    "gvm",
    "compensation_delay",
    "epsilon_of_delay",
    "calibrate_gaussian",
    "postselected_state",
    "dip_model_to_config",
    "dip_model_from_config",
]

_FS_PER_MM_FROM_S_PER_M = 1e12  # (1 s / 1 m) expressed in fs/mm


@dataclass(frozen=True)
class MaterialDispersion:
    """Ordinary/extraordinary group velocities of a birefringent crystal, m/s."""

    vg_ordinary: float
    vg_extraordinary: float

    def __post_init__(self) -> None:
        for name in ("vg_ordinary", "vg_extraordinary"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be a positive velocity, got {v!r}")


# group velocities at the degenerate down-conversion wavelength (810 nm)
BBO_810 = MaterialDispersion(vg_ordinary=1.7816e8, vg_extraordinary=1.8439e8)
QUARTZ_810 = MaterialDispersion(vg_ordinary=1.9305e8, vg_extraordinary=1.9187e8)


def gvm(material: MaterialDispersion) -> float:
    """Group-velocity mismatch (1/vg_o - 1/vg_e) in fs/mm.

    Positive when the ordinary wave is the slower one; BBO at 810 nm gives
    about +189.6 fs/mm, quartz about -31.8 fs/mm.
    """
    per_meter = 1.0 / material.vg_ordinary - 1.0 / material.vg_extraordinary
    return per_meter * _FS_PER_MM_FROM_S_PER_M


def compensation_delay(gvm_fs_per_mm: float, crystal_length_mm: float) -> float:
    """Delay D*L/2 (fs) to compensate for a pair born mid-crystal on average.

    Args:
        gvm_fs_per_mm: group-velocity mismatch of the generation crystal.
        crystal_length_mm: crystal length, > 0.
    """
    length = float(crystal_length_mm)
    if not (math.isfinite(length) and length > 0.0):
        raise ValueError(f"crystal length must be positive, got {length!r}")
    return float(gvm_fs_per_mm) * length / 2.0


@dataclass(frozen=True)
class GaussianDip:
    """eps(tau) = exp(-tau^2 / (2 sigma^2)); ``fit_residual`` is set by the fitter."""

    sigma_fs: float
    fit_residual: float | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma_fs) and self.sigma_fs > 0.0):
            raise ValueError(f"sigma_fs must be positive, got {self.sigma_fs!r}")


@dataclass(frozen=True)
class TriangularDip:
    """eps(tau) = max(0, 1 - |tau| / half_width)."""

    half_width_fs: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.half_width_fs) and self.half_width_fs > 0.0):
            raise ValueError(f"half_width_fs must be positive, got {self.half_width_fs!r}")


@dataclass(frozen=True)
class InterpolatedDip:
    """Piecewise-linear eps(|tau|) through measured (delay_fs, eps) points.

    Points must be sorted by delay, with delays nonnegative and distinct and
    eps in [0, 1] non-increasing; beyond the last point the last value holds.
    The curve is even in tau.
    """

    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        pts = tuple((float(d), float(e)) for d, e in self.points)
        if len(pts) < 2:
            raise ValueError("need at least two calibration points")
        delays = [d for d, _ in pts]
        values = [e for _, e in pts]
        if any(not math.isfinite(d) or d < 0.0 for d in delays):
            raise ValueError("delays must be finite and nonnegative")
        if any(b <= a for a, b in zip(delays, delays[1:])):
            raise ValueError("delays must be strictly increasing")
        if any(not 0.0 <= e <= 1.0 for e in values):
            raise ValueError("eps values must lie in [0, 1]")
        if any(b > a for a, b in zip(values, values[1:])):
            raise ValueError("eps must be non-increasing with delay")
        object.__setattr__(self, "points", pts)


DipModel = Union[GaussianDip, TriangularDip, InterpolatedDip]


def epsilon_of_delay(tau_fs: float, model: DipModel) -> float:
    """Bell weight eps in [0, 1] at relative delay ``tau_fs``.

    Even in tau and non-increasing in |tau| for every model variant.
    """
    tau = float(tau_fs)
    if not math.isfinite(tau):
        raise ValueError(f"delay must be finite, got {tau!r}")
    if isinstance(model, GaussianDip):
        eps = math.exp(-(tau * tau) / (2.0 * model.sigma_fs * model.sigma_fs))
    elif isinstance(model, TriangularDip):
        eps = max(0.0, 1.0 - abs(tau) / model.half_width_fs)
    elif isinstance(model, InterpolatedDip):
        delays = [d for d, _ in model.points]
        values = [e for _, e in model.points]
        eps = float(np.interp(abs(tau), delays, values))
    else:
        raise TypeError(f"unknown dip model {type(model).__name__}")
    return min(1.0, max(0.0, eps))


def calibrate_gaussian(points) -> GaussianDip:
    """Least-squares Gaussian width for measured (delay_fs, eps) points.

    Minimizes sum_i (exp(-d_i^2 / (2 sigma^2)) - eps_i)^2 over sigma with a
    deterministic log-spaced bracket scan followed by bounded refinement.
    The best residual norm is reported on the returned model.

    Raises:
        ValueError: fewer than two points, duplicate delays, or eps
            outside [0, 1].
    """
    pts = [(float(d), float(e)) for d, e in points]
    if len(pts) < 2:
        raise ValueError("need at least two calibration points")
    delays = np.array([d for d, _ in pts])
    values = np.array([e for _, e in pts])
    if len(set(delays.tolist())) != len(pts):
        raise ValueError("calibration delays must be distinct")
    if np.any(~np.isfinite(delays)) or np.any(~np.isfinite(values)):
        raise ValueError("calibration points must be finite")
    if np.any((values < 0.0) | (values > 1.0)):
        raise ValueError("eps values must lie in [0, 1]")

    def sum_sq(sigma: float) -> float:
        resid = np.exp(-(delays**2) / (2.0 * sigma * sigma)) - values
        return float(np.dot(resid, resid))

    grid = np.geomspace(1.0, 1e5, 600)
    best = int(np.argmin([sum_sq(s) for s in grid]))
    lo = grid[max(0, best - 1)]
    hi = grid[min(len(grid) - 1, best + 1)]
    res = scipy.optimize.minimize_scalar(
        sum_sq, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10}
    )
    sigma = float(res.x)
    return GaussianDip(sigma_fs=sigma, fit_residual=math.sqrt(sum_sq(sigma)))


def postselected_state(tau_fs: float, model: DipModel, kind: BellKind) -> np.ndarray:
    """Density matrix of the postselected photon at relative delay ``tau_fs``.

    ``mixed_bell_state(epsilon_of_delay(tau_fs, model), kind)``; at zero
    delay a calibrated model gives the pure Bell state, far out on the
    delay axis the fully dephased mixture.
    """
    return mixed_bell_state(epsilon_of_delay(tau_fs, model), kind)


def dip_model_to_config(model: DipModel) -> dict:
    """Serialize a dip model to a plain config mapping (variant + parameters)."""
    if isinstance(model, GaussianDip):
        return {"variant": "gaussian", "sigma_fs": model.sigma_fs}
    if isinstance(model, TriangularDip):
        return {"variant": "triangular", "half_width_fs": model.half_width_fs}
    if isinstance(model, InterpolatedDip):
        return {"variant": "interpolated", "points": [list(p) for p in model.points]}
    raise TypeError(f"unknown dip model {type(model).__name__}")


def dip_model_from_config(mapping) -> DipModel:
    """Inverse of :func:`dip_model_to_config`.

    Raises:
        ValueError: unknown variant, missing or extra keys, or parameters
            that fail the model's own validation.
    """
    data = dict(mapping)
    variant = data.pop("variant", None)
    if variant == "gaussian":
        expected = {"sigma_fs"}
        builder = lambda: GaussianDip(sigma_fs=float(data["sigma_fs"]))  # noqa: E731
    elif variant == "triangular":
        expected = {"half_width_fs"}
        builder = lambda: TriangularDip(half_width_fs=float(data["half_width_fs"]))  # noqa: E731
    elif variant == "interpolated":
        expected = {"points"}
        builder = lambda: InterpolatedDip(  # noqa: E731
            points=tuple((float(d), float(e)) for d, e in data["points"])
        )
    else:
        raise ValueError(f"unknown dip model variant {variant!r}")
    if set(data) != expected:
        raise ValueError(
            f"dip model variant {variant!r} takes keys {sorted(expected)}, got {sorted(data)}"
        )
    return builder()
