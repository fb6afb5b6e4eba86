"""CHSH statistics for the polarization/OAM qubit pair.

Analyzers are real-plane projections: polarization at angle a onto
cos a|H> + sin a|V>, OAM at angle b onto cos b|m=-1> + sin b|m=+1>.  The
dichotomic observables are A(a) = P(a) - P(a + pi/2) and likewise B(b),
so E(a, b) = Tr[rho (A x B)].  For ``mixed_bell_state(eps, PSI_PLUS)``
this evaluates to cos2a cos2b + eps sin2a sin2b, and the standard angle
set a1=0, b1=theta, a2=2 theta, b2=3 theta gives

    S(theta) = 3 cos 2 theta - cos 6 theta      (eps = 1)
    S(pi/8)  = sqrt(2) (1 + eps)                (any eps)

The angle-free ceiling over all (not just real-plane) measurements is the
Horodecki bound 2 sqrt(M), M the sum of the two largest eigenvalues of
T^T T; the mixed-Bell family attains it with real-plane settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .elements import oam_projector, pol_projector
from .states import PAULI_X, PAULI_Y, PAULI_Z, _as_physical

__all__ = [
    "AnalyzerPair",
    "ChshAngles",
    "ChshResult",
    "TSIRELSON_S",
    "standard_angles",
    "correlation",
    "chsh_s",
    "theta_scan",
    "horodecki_smax",
    "optimize_angles",
]

TSIRELSON_S = 2.0 * math.sqrt(2.0)


def _check_angle(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class AnalyzerPair:
    """One joint analyzer setting: polarization angle ``a``, OAM angle ``b`` (rad)."""

    a: float
    b: float

    def __post_init__(self) -> None:
        _check_angle(self.a, "a")
        _check_angle(self.b, "b")


@dataclass(frozen=True)
class ChshAngles:
    """The four CHSH analyzer angles (radians)."""

    a1: float
    a2: float
    b1: float
    b2: float

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "b1", "b2"):
            _check_angle(getattr(self, name), name)

    def settings(self) -> tuple[AnalyzerPair, AnalyzerPair, AnalyzerPair, AnalyzerPair]:
        """The four joint settings in the fixed order (a1b1, a1b2, a2b1, a2b2)."""
        return (
            AnalyzerPair(self.a1, self.b1),
            AnalyzerPair(self.a1, self.b2),
            AnalyzerPair(self.a2, self.b1),
            AnalyzerPair(self.a2, self.b2),
        )


@dataclass(frozen=True)
class ChshResult:
    """S value with its four correlators, ordered (a1b1, a1b2, a2b1, a2b2)."""

    s_value: float
    terms: tuple[float, float, float, float]


def standard_angles(theta: float) -> ChshAngles:
    """The one-parameter angle family a1=0, b1=theta, a2=2 theta, b2=3 theta.

    At theta = pi/8 these are the Tsirelson-point settings
    (0, pi/8, pi/4, 3 pi/8).
    """
    theta = _check_angle(theta, "theta")
    return ChshAngles(a1=0.0, a2=2.0 * theta, b1=theta, b2=3.0 * theta)


def _observable(projector, angle: float) -> np.ndarray:
    return projector(angle) - projector(angle + np.pi / 2.0)


def correlation(rho: np.ndarray, pair: AnalyzerPair) -> float:
    """Joint correlator E(a, b) = Tr[rho (A(a) x B(b))], in [-1, 1]."""
    rho = _as_physical(rho)
    ab = np.kron(_observable(pol_projector, pair.a), _observable(oam_projector, pair.b))
    return float(np.trace(rho @ ab).real)


def chsh_s(rho: np.ndarray, angles: ChshAngles) -> ChshResult:
    """S = E(a1,b1) - E(a1,b2) + E(a2,b1) + E(a2,b2)."""
    e11, e12, e21, e22 = (correlation(rho, pair) for pair in angles.settings())
    return ChshResult(s_value=e11 - e12 + e21 + e22, terms=(e11, e12, e21, e22))


def theta_scan(rho: np.ndarray, thetas) -> np.ndarray:
    """S over a grid of theta values at the standard angle set."""
    return np.array([chsh_s(rho, standard_angles(t)).s_value for t in np.asarray(thetas)])


def horodecki_smax(rho: np.ndarray) -> float:
    """Largest CHSH S any projective measurements can reach on ``rho``.

    2 sqrt(M) with M the sum of the two largest eigenvalues of T^T T,
    where T_ij = Tr[rho (sigma_i x sigma_j)].  For
    ``mixed_bell_state(eps, kind)`` this is 2 sqrt(1 + eps^2).
    """
    rho = _as_physical(rho)
    paulis = (PAULI_X, PAULI_Y, PAULI_Z)
    t = np.array(
        [[np.trace(rho @ np.kron(si, sj)).real for sj in paulis] for si in paulis]
    )
    eigs = np.sort(np.linalg.eigvalsh(t.T @ t))
    return float(2.0 * math.sqrt(max(0.0, eigs[-1] + eigs[-2])))


def _real_plane_kernel(rho: np.ndarray) -> np.ndarray:
    """2x2 matrix K with E(a, b) = (cos2a, sin2a) K (cos2b, sin2b)^T."""
    k = np.empty((2, 2))
    for i, si in enumerate((PAULI_Z, PAULI_X)):
        for j, sj in enumerate((PAULI_Z, PAULI_X)):
            k[i, j] = np.trace(rho @ np.kron(si, sj)).real
    return k


def optimize_angles(rho: np.ndarray, n_starts_per_axis: int = 3) -> tuple[ChshAngles, float]:
    """Maximize S over real-plane analyzer angles in [0, pi)^4.

    Deterministic multi-start search: an ``n_starts_per_axis``^4 lattice of
    starting points (81 for the default 3) refined with Nelder-Mead on
    the closed-form objective, best result kept.  Returns the best angles
    (wrapped into [0, pi)) and the S value recomputed through
    :func:`chsh_s` at those angles.

    For the mixed-Bell family the real-plane optimum attains the
    :func:`horodecki_smax` bound 2 sqrt(1 + eps^2).
    """
    rho = _as_physical(rho)
    if n_starts_per_axis < 2:
        raise ValueError("need at least 2 starts per axis")
    k = _real_plane_kernel(rho)

    def neg_s(x: np.ndarray) -> float:
        ca1, sa1 = math.cos(2 * x[0]), math.sin(2 * x[0])
        ca2, sa2 = math.cos(2 * x[1]), math.sin(2 * x[1])
        cb1, sb1 = math.cos(2 * x[2]), math.sin(2 * x[2])
        cb2, sb2 = math.cos(2 * x[3]), math.sin(2 * x[3])
        e11 = ca1 * (k[0, 0] * cb1 + k[0, 1] * sb1) + sa1 * (k[1, 0] * cb1 + k[1, 1] * sb1)
        e12 = ca1 * (k[0, 0] * cb2 + k[0, 1] * sb2) + sa1 * (k[1, 0] * cb2 + k[1, 1] * sb2)
        e21 = ca2 * (k[0, 0] * cb1 + k[0, 1] * sb1) + sa2 * (k[1, 0] * cb1 + k[1, 1] * sb1)
        e22 = ca2 * (k[0, 0] * cb2 + k[0, 1] * sb2) + sa2 * (k[1, 0] * cb2 + k[1, 1] * sb2)
        return -(e11 - e12 + e21 + e22)

    offsets = np.pi * (np.arange(n_starts_per_axis) + 0.5) / n_starts_per_axis
    best_x, best_val = None, math.inf
    for ia1 in offsets:
        for ia2 in offsets:
            for ib1 in offsets:
                for ib2 in offsets:
                    res = scipy.optimize.minimize(
                        neg_s,
                        np.array([ia1, ia2, ib1, ib2]),
                        method="Nelder-Mead",
                        options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000},
                    )
                    if res.fun < best_val:
                        best_val, best_x = res.fun, res.x
    wrapped = np.mod(best_x, np.pi)
    angles = ChshAngles(a1=wrapped[0], a2=wrapped[1], b1=wrapped[2], b2=wrapped[3])
    return angles, chsh_s(rho, angles).s_value
