"""Two-qubit states carried by a single photon.

One photon encodes a polarization qubit (|H>, |V>) and an orbital angular
momentum qubit (m = -1, m = +1).  Joint kets and density matrices use the
fixed product ordering

    index 0: |H, m=-1>
    index 1: |H, m=+1>
    index 2: |V, m=-1>
    index 3: |V, m=+1>

i.e. ``kron(polarization, oam)``.  This ordering makes the Psi+ Bell state
block-diagonal-correlated, so the polarization/OAM correlator comes out as
``cos 2a cos 2b + eps sin 2a sin 2b`` (see :mod:`intraphoton.chsh`).

The central object is the postselected single-photon state

    rho(eps) = eps |B><B| + (1 - eps)/2 (|u><u| + |v><v|)

with |B> a Bell state and |u>, |v> the two product states it superposes.
The mixing weight eps is set by a temporal walk-off delay (see
:mod:`intraphoton.source`); eps = 1 is the pure Bell state, eps = 0 the
fully dephased classical mixture.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BellKind",
    "PhysicalityReport",
    "bell_state",
    "mixed_bell_state",
    "purity",
    "concurrence",
    "apply_visibility",
    "validate_physical",
]

DIM = 4

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# spin flip for the Wootters concurrence, sigma_y x sigma_y (a real matrix)
_SPIN_FLIP = np.kron(PAULI_Y, PAULI_Y).real


class BellKind(enum.Enum):
    """The four Bell states of the polarization/OAM qubit pair."""

    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"


# amplitudes in the (H-1, H+1, V-1, V+1) ordering
_BELL_AMPLITUDES = {
    BellKind.PSI_PLUS: np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0),
    BellKind.PSI_MINUS: np.array([1.0, 0.0, 0.0, -1.0]) / np.sqrt(2.0),
    BellKind.PHI_PLUS: np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0),
    BellKind.PHI_MINUS: np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0),
}

# basis indices carrying the dephased remainder of the mixed state: the two
# product states superposed by the Bell state of that kind
_MIXTURE_DIAGONAL = {
    BellKind.PSI_PLUS: (0, 3),
    BellKind.PSI_MINUS: (0, 3),
    BellKind.PHI_PLUS: (1, 2),
    BellKind.PHI_MINUS: (1, 2),
}


@dataclass(frozen=True)
class PhysicalityReport:
    """Result of the density-matrix sanity check.

    ``failures`` names the violated invariants, drawn from ``"hermitian"``,
    ``"unit_trace"`` and ``"positive"``; the numeric fields carry the
    measured deviations regardless of pass/fail.
    """

    is_physical: bool
    failures: tuple[str, ...]
    hermiticity_error: float
    trace_error: float
    min_eigenvalue: float


def bell_state(kind: BellKind) -> np.ndarray:
    """Return the Bell state ``kind`` as a normalized 4-component ket.

    Psi+- = (|H,m=-1> +- |V,m=+1>)/sqrt(2) and
    Phi+- = (|H,m=+1> +- |V,m=-1>)/sqrt(2).
    """
    kind = BellKind(kind)
    return _BELL_AMPLITUDES[kind].astype(complex)


def mixed_bell_state(epsilon: float, kind: BellKind) -> np.ndarray:
    """Postselected state with Bell weight ``epsilon``.

    Returns ``eps |B><B| + (1-eps)/2 (|u><u| + |v><v|)`` where |u>, |v> are
    the product states superposed by ``bell_state(kind)``.  For the Psi
    kinds these are |H,m=-1> and |V,m=+1>, for the Phi kinds |H,m=+1> and
    |V,m=-1>.

    Args:
        epsilon: Bell weight in [0, 1].  1 gives the pure Bell projector,
            0 the fully dephased diagonal mixture.
        kind: which Bell state anchors the family.

    Raises:
        ValueError: if epsilon lies outside [0, 1] or is not finite.
    """
    epsilon = float(epsilon)
    if not np.isfinite(epsilon) or not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon!r}")
    kind = BellKind(kind)
    psi = bell_state(kind)
    rho = epsilon * np.outer(psi, psi.conj())
    i, j = _MIXTURE_DIAGONAL[kind]
    rho[i, i] += (1.0 - epsilon) / 2.0
    rho[j, j] += (1.0 - epsilon) / 2.0
    return rho


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2); 1 for pure states, 1/4 for the maximally mixed state.

    For ``mixed_bell_state(eps, kind)`` this equals (1 + eps^2)/2.
    """
    rho = _as_physical(rho)
    return float(np.trace(rho @ rho).real)


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Computed from the square roots of the eigenvalues of
    ``rho (Y x Y) rho* (Y x Y)`` sorted descending:
    C = max(0, l1 - l2 - l3 - l4).  For ``mixed_bell_state(eps, kind)``
    the concurrence equals eps for every kind.
    """
    rho = _as_physical(rho)
    flipped = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    lams = np.linalg.eigvals(rho @ flipped)
    # eigenvalues are nonnegative reals up to round-off
    lams = np.sqrt(np.clip(lams.real, 0.0, None))
    lams = np.sort(lams)[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


def apply_visibility(rho: np.ndarray, visibility: float) -> np.ndarray:
    """Blend ``rho`` with white noise: V rho + (1 - V) I/4.

    Models the combined effect of accidental coincidences and imperfect
    alignment as an isotropic depolarizing channel.  Every polarization/OAM
    correlator, and hence the CHSH S, scales by exactly V.
    """
    visibility = float(visibility)
    if not np.isfinite(visibility) or not 0.0 <= visibility <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {visibility!r}")
    rho = _as_physical(rho)
    return visibility * rho + (1.0 - visibility) * np.eye(DIM, dtype=complex) / DIM


def validate_physical(
    rho: np.ndarray,
    hermiticity_tol: float = 1e-10,
    trace_tol: float = 1e-12,
    eigenvalue_tol: float = 1e-10,
) -> PhysicalityReport:
    """Check that ``rho`` is a density matrix and report what failed.

    Passes iff rho is Hermitian within ``hermiticity_tol``, has unit trace
    within ``trace_tol``, and has eigenvalues >= -``eigenvalue_tol``.

    Raises:
        ValueError: if the input is not a 4x4 matrix at all.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise ValueError(f"expected a {DIM}x{DIM} density matrix, got shape {rho.shape}")

    herm_err = float(np.max(np.abs(rho - rho.conj().T)))
    trace_err = float(abs(np.trace(rho) - 1.0))
    min_eig = float(np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)))

    failures: list[str] = []
    if herm_err > hermiticity_tol:
        failures.append("hermitian")
    if trace_err > trace_tol:
        failures.append("unit_trace")
    if min_eig < -eigenvalue_tol:
        failures.append("positive")
    return PhysicalityReport(
        is_physical=not failures,
        failures=tuple(failures),
        hermiticity_error=herm_err,
        trace_error=trace_err,
        min_eigenvalue=min_eig,
    )


def _as_physical(rho: np.ndarray) -> np.ndarray:
    """Coerce to complex ndarray, raising if it is not a physical state."""
    rho = np.asarray(rho, dtype=complex)
    report = validate_physical(rho)
    if not report.is_physical:
        raise ValueError(
            "density matrix is not physical (failed: "
            + ", ".join(report.failures)
            + f"; hermiticity_error={report.hermiticity_error:.3g}, "
            + f"trace_error={report.trace_error:.3g}, "
            + f"min_eigenvalue={report.min_eigenvalue:.3g})"
        )
    return rho
