"""Waveplates, the q-plate, and projection analyzers.

Polarization kets are (H, V) amplitude pairs.  Circular states follow the
convention |R> = (|H> - i|V>)/sqrt(2), |L> = (|H> + i|V>)/sqrt(2), so
``qwp(pi/4)`` maps |H> to |R| up to a global phase.

The generation space is the 6-dimensional product of polarization with the
OAM triplet m in (-1, 0, +1), ordered ``kron(pol, oam)``:

    0: |H,m=-1>  1: |H,m=0>  2: |H,m=+1>
    3: |V,m=-1>  4: |V,m=0>  5: |V,m=+1>

A tuned q-plate (charge 1/2) swaps handedness while shifting m by one unit:
|R,m> -> -i |L,m-1> and |L,m> -> +i |R,m+1>.  The +-i phases come from the
plate's axis orientation (45 degrees here); with them the three-element
generation chain QWP(45) -> q-plate -> QWP(45) maps |H> -> |H,m=-1> and
|V> -> |V,m=+1> with no relative phase, so superpositions of H and V come
out as the matching Bell superpositions exactly.

Joint two-qubit kets returned by :func:`generation_chain` drop the emptied
m=0 sector and use the 4-dimensional ordering of :mod:`intraphoton.states`.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "hwp",
    "qwp",
    "qplate",
    "apply_qplate",
    "generation_chain",
    "pol_projector",
    "oam_projector",
    "analyzer_chain",
    "analyzer_effective_operator",
]

_M_TRIPLET = (-1, 0, 1)

# columns map circular amplitudes (c_R, c_L) to (H, V)
_CIRC_TO_HV = np.array([[1.0, 1.0], [-1.0j, 1.0j]]) / np.sqrt(2.0)


def _check_angle(theta: float) -> float:
    theta = float(theta)
    if not np.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    return theta


def _rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def hwp(theta: float) -> np.ndarray:
    """Jones matrix of a half-wave plate with fast axis at ``theta``.

    [[cos 2t, sin 2t], [sin 2t, -cos 2t]]; hwp(0) = diag(1, -1), and
    hwp(pi/4) swaps H and V.
    """
    theta = _check_angle(theta)
    c, s = np.cos(2.0 * theta), np.sin(2.0 * theta)
    return np.array([[c, s], [s, -c]], dtype=complex)


def qwp(theta: float) -> np.ndarray:
    """Jones matrix of a quarter-wave plate with fast axis at ``theta``.

    R(t) diag(1, i) R(-t); qwp(0) = diag(1, i), and qwp(pi/4)|H> is |R>
    up to a global phase.  Two passes compose to hwp(theta).
    """
    theta = _check_angle(theta)
    rot = _rotation(theta)
    return rot @ np.diag([1.0, 1.0j]) @ rot.conj().T


def _qplate_circular(ms: tuple[int, ...]) -> np.ndarray:
    """q-plate unitary on the (R, L) x ms product basis.

    States whose image would leave ``ms`` are kept in place so the matrix
    stays unitary; physical inputs never populate them.
    """
    n = len(ms)
    dim = 2 * n
    index = {m: k for k, m in enumerate(ms)}
    u = np.zeros((dim, dim), dtype=complex)
    leftovers_in, leftovers_out = [], []
    for k, m in enumerate(ms):
        col_r, col_l = k, n + k
        if m - 1 in index:
            u[n + index[m - 1], col_r] = -1.0j  # |R,m> -> -i|L,m-1>
        else:
            leftovers_in.append(col_r)
        if m + 1 in index:
            u[index[m + 1], col_l] = 1.0j  # |L,m> -> +i|R,m+1>
        else:
            leftovers_in.append(col_l)
    filled_rows = {i for i, j in zip(*np.nonzero(u))}
    leftovers_out = [r for r in range(dim) if r not in filled_rows]
    for col, row in zip(leftovers_in, leftovers_out):
        u[row, col] = 1.0
    return u


def _pol_basis_to_hv(u_circular: np.ndarray, n_modes: int) -> np.ndarray:
    b = np.kron(_CIRC_TO_HV, np.eye(n_modes))
    return b @ u_circular @ b.conj().T


_QPLATE_GEN = _pol_basis_to_hv(_qplate_circular(_M_TRIPLET), 3)
# wider internal space for the analysis stage, m in (-2 .. +2)
_QPLATE_WIDE = _pol_basis_to_hv(_qplate_circular((-2, -1, 0, 1, 2)), 5)

# inputs on these states would leave the modeled m range
_FORBIDDEN_GEN = (
    np.kron(_CIRC_TO_HV[:, 0], np.eye(3)[0]),  # |R, m=-1>
    np.kron(_CIRC_TO_HV[:, 1], np.eye(3)[2]),  # |L, m=+1>
)


def qplate() -> np.ndarray:
    """Unitary of the tuned q-plate on the 6-dim generation space.

    Acts as |R,m> -> -i|L,m-1> and |L,m> -> +i|R,m+1>.  The two states
    whose image would leave m in (-1, 0, +1) (namely |R,m=-1> and
    |L,m=+1>) are mapped onto each other only to keep the matrix unitary;
    use :func:`apply_qplate` to apply the plate with that sector guarded.
    """
    return _QPLATE_GEN.copy()


def apply_qplate(state: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Apply the q-plate to a 6-component generation-space ket.

    Raises:
        ValueError: if the input carries amplitude on |R,m=-1> or
            |L,m=+1>, whose images fall outside the modeled m range.
    """
    state = np.asarray(state, dtype=complex)
    if state.shape != (6,):
        raise ValueError(f"expected a 6-component generation-space ket, got shape {state.shape}")
    leak = sum(abs(np.vdot(f, state)) ** 2 for f in _FORBIDDEN_GEN)
    if leak > atol:
        raise ValueError(
            "q-plate image leaves the modeled OAM range "
            f"(amplitude {leak:.3g} on |R,m=-1> / |L,m=+1>)"
        )
    return _QPLATE_GEN @ state


def generation_chain(pol_in: np.ndarray) -> np.ndarray:
    """Map an input polarization ket through QWP(45) -> q-plate -> QWP(45).

    The chain entangles polarization with OAM: |H> -> |H,m=-1> and
    |V> -> |V,m=+1> exactly, so (|H>+|V>)/sqrt2 comes out as the Psi+
    Bell state and (|H>-|V>)/sqrt2 as Psi-.  Returns the joint two-qubit
    ket in the 4-dim ordering of :mod:`intraphoton.states`; the m=0
    sector is empty by construction and is dropped.

    Raises:
        ValueError: if ``pol_in`` is not a normalized 2-component ket.
    """
    pol_in = np.asarray(pol_in, dtype=complex)
    if pol_in.shape != (2,):
        raise ValueError(f"expected a 2-component polarization ket, got shape {pol_in.shape}")
    if abs(np.linalg.norm(pol_in) - 1.0) > 1e-12:
        raise ValueError("input polarization ket must be normalized")
    quarter = qwp(np.pi / 4.0)
    m0 = np.eye(3)[1]
    state = np.kron(quarter @ pol_in, m0)
    state = apply_qplate(state)
    state = np.kron(quarter, np.eye(3)) @ state
    # keep (H,-1), (H,+1), (V,-1), (V,+1); indices 1 and 4 are the m=0 slots
    return state[[0, 2, 3, 5]]


def pol_projector(a: float) -> np.ndarray:
    """Rank-1 projector onto cos(a)|H> + sin(a)|V>."""
    a = _check_angle(a)
    ket = np.array([np.cos(a), np.sin(a)], dtype=complex)
    return np.outer(ket, ket.conj())


def oam_projector(b: float) -> np.ndarray:
    """Rank-1 projector onto cos(b)|m=-1> + sin(b)|m=+1>.

    The cosine sits on |m=-1> so that joint correlators with
    :func:`pol_projector` take the form cos2a cos2b + eps sin2a sin2b for
    the Psi+ family.  Fringe scans address the orthogonal convention; see
    :func:`intraphoton.counting.fringe_scan`.
    """
    b = _check_angle(b)
    ket = np.array([np.cos(b), np.sin(b)], dtype=complex)
    return np.outer(ket, ket.conj())


def analyzer_effective_operator(b: float) -> np.ndarray:
    """Effective OAM-qubit POVM element of the five-element analyzer.

    Composes, on an internal pol x m in (-2..+2) space, the measurement
    chain a photon of fixed post-selection polarization |H> traverses:
    HWP at (b + pi/4)/2, QWP at 0 (linear -> circular), analysis q-plate,
    polarizer passing H, and the m=0 single-mode-fiber filter.  The result
    acts on the incoming OAM qubit (m=-1, m=+1) and equals
    (1/2) x ``oam_projector(b)``; the trace 1/2 is the chain's passage
    efficiency at ideal settings.
    """
    b = _check_angle(b)
    plates = qwp(0.0) @ hwp((b + np.pi / 4.0) / 2.0)
    chain = _QPLATE_WIDE @ np.kron(plates, np.eye(5))
    # polarizer passing H, then keep only the m=0 fiber mode
    keep = np.kron(pol_projector(0.0), np.diag([0.0, 0.0, 1.0, 0.0, 0.0]))
    chain = keep @ chain
    # inputs: |H> x |m=-1> (col 1) and |H> x |m=+1> (col 3)
    cols = chain[:, [1, 3]]
    return cols.conj().T @ cols


def analyzer_chain(b: float) -> np.ndarray:
    """Projector the analyzer chain induces on the incoming OAM qubit.

    The normalized version of :func:`analyzer_effective_operator`; equal to
    ``oam_projector(b)`` up to floating-point error.
    """
    eff = analyzer_effective_operator(b)
    return eff / np.trace(eff).real
