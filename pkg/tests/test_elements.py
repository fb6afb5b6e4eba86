"""Tests for waveplates, the q-plate, the generation chain, and analyzers."""

import numpy as np
import pytest
import sympy as sp

from intraphoton.elements import (
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
from intraphoton.states import BellKind, bell_state

RT2 = 1.0 / np.sqrt(2.0)

KET_H = np.array([1.0, 0.0], dtype=complex)
KET_V = np.array([0.0, 1.0], dtype=complex)
KET_R = np.array([1.0, -1.0j]) / np.sqrt(2.0)
KET_L = np.array([1.0, 1.0j]) / np.sqrt(2.0)

ANGLE_GRID = np.linspace(0.0, np.pi, 13)


def assert_equal_up_to_phase(actual, expected, atol=1e-12):
    """Align the global phase on the largest expected amplitude, then compare."""
    actual = np.asarray(actual, dtype=complex)
    expected = np.asarray(expected, dtype=complex)
    k = int(np.argmax(np.abs(expected)))
    assert abs(actual[k]) > atol, "no amplitude where one was expected"
    phase = expected[k] / actual[k]
    assert abs(abs(phase) - 1.0) < 1e-9, "states differ by more than a phase"
    np.testing.assert_allclose(actual * phase, expected, atol=atol)


def embed_gen(pol, m):
    """Ket |pol> x |m> in the 6-dim generation space."""
    mvec = np.zeros(3)
    mvec[m + 1] = 1.0
    return np.kron(pol, mvec)


class TestWaveplates:
    def test_hwp_at_zero(self):
        np.testing.assert_allclose(hwp(0.0), np.diag([1.0, -1.0]), atol=1e-15)

    def test_hwp_rotates_h_to_diagonal(self):
        np.testing.assert_allclose(hwp(np.pi / 8) @ KET_H, [RT2, RT2], atol=1e-15)

    def test_hwp_at_quarter_swaps(self):
        np.testing.assert_allclose(hwp(np.pi / 4) @ KET_H, KET_V, atol=1e-15)
        np.testing.assert_allclose(hwp(np.pi / 4) @ KET_V, KET_H, atol=1e-15)

    def test_qwp_at_zero(self):
        np.testing.assert_allclose(qwp(0.0), np.diag([1.0, 1.0j]), atol=1e-15)

    def test_qwp_makes_circular(self):
        assert_equal_up_to_phase(qwp(np.pi / 4) @ KET_H, KET_R)
        assert_equal_up_to_phase(qwp(np.pi / 4) @ KET_V, KET_L)

    @pytest.mark.parametrize("theta", ANGLE_GRID)
    def test_double_qwp_is_hwp(self, theta):
        composed = qwp(theta) @ qwp(theta)
        target = hwp(theta)
        # align on the largest entry of the target
        idx = np.unravel_index(np.argmax(np.abs(target)), target.shape)
        phase = target[idx] / composed[idx]
        np.testing.assert_allclose(composed * phase, target, atol=1e-12)

    @pytest.mark.parametrize("theta", ANGLE_GRID)
    def test_unitarity(self, theta):
        for u in (hwp(theta), qwp(theta)):
            np.testing.assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-12)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf")])
    def test_rejects_nonfinite_angle(self, bad):
        with pytest.raises(ValueError, match="finite"):
            hwp(bad)
        with pytest.raises(ValueError, match="finite"):
            qwp(bad)


class TestQplate:
    def test_unitary(self):
        u = qplate()
        np.testing.assert_allclose(u @ u.conj().T, np.eye(6), atol=1e-12)

    def test_r0_lowers(self):
        out = apply_qplate(embed_gen(KET_R, 0))
        assert_equal_up_to_phase(out, embed_gen(KET_L, -1))

    def test_l0_raises_m(self):
        out = apply_qplate(embed_gen(KET_L, 0))
        assert_equal_up_to_phase(out, embed_gen(KET_R, +1))

    def test_r_plus1_maps_to_l0(self):
        out = apply_qplate(embed_gen(KET_R, +1))
        assert_equal_up_to_phase(out, embed_gen(KET_L, 0))

    def test_l_minus1_maps_to_r0(self):
        out = apply_qplate(embed_gen(KET_L, -1))
        assert_equal_up_to_phase(out, embed_gen(KET_R, 0))

    def test_rejects_out_of_range_images(self):
        with pytest.raises(ValueError, match="modeled OAM range"):
            apply_qplate(embed_gen(KET_R, -1))
        with pytest.raises(ValueError, match="modeled OAM range"):
            apply_qplate(embed_gen(KET_L, +1))

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError, match="6-component"):
            apply_qplate(np.zeros(4))


class TestGenerationChain:
    def test_h_to_h_minus1(self):
        np.testing.assert_allclose(generation_chain(KET_H), [1, 0, 0, 0], atol=1e-12)

    def test_v_to_v_plus1(self):
        np.testing.assert_allclose(generation_chain(KET_V), [0, 0, 0, 1], atol=1e-12)

    def test_diagonal_makes_psi_plus(self):
        out = generation_chain((KET_H + KET_V) / np.sqrt(2.0))
        np.testing.assert_allclose(out, bell_state(BellKind.PSI_PLUS), atol=1e-12)

    def test_antidiagonal_makes_psi_minus(self):
        out = generation_chain((KET_H - KET_V) / np.sqrt(2.0))
        np.testing.assert_allclose(out, bell_state(BellKind.PSI_MINUS), atol=1e-12)

    def test_linearity_and_norm(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            pol = rng.normal(size=2) + 1j * rng.normal(size=2)
            pol /= np.linalg.norm(pol)
            out = generation_chain(pol)
            assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-12)
            expected = pol[0] * generation_chain(KET_H) + pol[1] * generation_chain(KET_V)
            np.testing.assert_allclose(out, expected, atol=1e-12)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            generation_chain(np.array([1.0, 1.0]))


class TestProjectors:
    def test_pol_projector_h(self):
        np.testing.assert_allclose(pol_projector(0.0), np.diag([1.0, 0.0]), atol=1e-15)

    def test_pol_projector_diagonal(self):
        np.testing.assert_allclose(
            pol_projector(np.pi / 4), np.full((2, 2), 0.5), atol=1e-15
        )

    def test_oam_projector_endpoints(self):
        np.testing.assert_allclose(oam_projector(0.0), np.diag([1.0, 0.0]), atol=1e-15)
        np.testing.assert_allclose(oam_projector(np.pi / 2), np.diag([0.0, 1.0]), atol=1e-12)

    @pytest.mark.parametrize("proj", [pol_projector, oam_projector])
    @pytest.mark.parametrize("angle", ANGLE_GRID)
    def test_projector_algebra(self, proj, angle):
        p = proj(angle)
        np.testing.assert_allclose(p, p.conj().T, atol=1e-12)  # Hermitian
        np.testing.assert_allclose(p @ p, p, atol=1e-12)  # idempotent
        assert np.trace(p).real == pytest.approx(1.0, abs=1e-12)  # rank 1
        np.testing.assert_allclose(p + proj(angle + np.pi / 2), np.eye(2), atol=1e-12)


def sympy_analyzer_effective(b_value: float) -> np.ndarray:
    """Symbolic composition of the five-element analyzer chain.

    Rebuilt from scratch in sympy: HWP((b+pi/4)/2), QWP(0), analysis
    q-plate on pol x m in (-2..+2), polarizer passing H, m=0 filter.
    """
    b = sp.Symbol("b", real=True)
    th = (b + sp.pi / 4) / 2
    hwp_s = sp.Matrix([[sp.cos(2 * th), sp.sin(2 * th)], [sp.sin(2 * th), -sp.cos(2 * th)]])
    qwp0 = sp.diag(1, sp.I)
    plates = qwp0 * hwp_s

    circ_to_hv = sp.Matrix([[1, 1], [-sp.I, sp.I]]) / sp.sqrt(2)
    ms = (-2, -1, 0, 1, 2)
    u_circ = sp.zeros(10, 10)
    for k, m in enumerate(ms):
        if m - 1 in ms:
            u_circ[5 + ms.index(m - 1), k] = -sp.I  # |R,m> -> -i|L,m-1>
        if m + 1 in ms:
            u_circ[ms.index(m + 1), 5 + k] = sp.I  # |L,m> -> +i|R,m+1>
    u_circ[0, 0] = 1  # |R,-2> frozen, never populated
    u_circ[9, 9] = 1  # |L,+2> frozen, never populated
    basis = sp.Matrix(sp.BlockDiagMatrix(*[circ_to_hv] * 1))  # 2x2
    conv = sp.Matrix(sp.kronecker_product(basis, sp.eye(5)))
    u_qplate = conv * u_circ * conv.H

    keep = sp.Matrix(
        sp.kronecker_product(sp.diag(1, 0), sp.diag(0, 0, 1, 0, 0))
    )
    chain = keep * u_qplate * sp.Matrix(sp.kronecker_product(plates, sp.eye(5)))
    cols = chain[:, 1].row_join(chain[:, 3])  # |H,m=-1> and |H,m=+1> inputs
    eff = sp.simplify(cols.H * cols)
    eff_num = eff.subs(b, sp.Float(b_value, 30))
    return np.array(eff_num.evalf(20), dtype=complex)


class TestAnalyzerChain:
    TWELVE_ANGLES = np.linspace(0.0, np.pi, 12, endpoint=False)

    @pytest.mark.parametrize("b", TWELVE_ANGLES)
    def test_proportional_to_oam_projector(self, b):
        eff = analyzer_effective_operator(b)
        np.testing.assert_allclose(eff, 0.5 * oam_projector(b), atol=1e-10)

    @pytest.mark.parametrize("b", TWELVE_ANGLES)
    def test_normalized_chain_equals_projector(self, b):
        np.testing.assert_allclose(analyzer_chain(b), oam_projector(b), atol=1e-10)

    def test_endpoint_selects_m_minus1(self):
        np.testing.assert_allclose(analyzer_chain(0.0), np.diag([1.0, 0.0]), atol=1e-12)

    def test_diagonal_angle(self):
        np.testing.assert_allclose(analyzer_chain(np.pi / 4), np.full((2, 2), 0.5), atol=1e-12)

    def test_passage_efficiency_is_half(self):
        for b in (0.0, 0.3, 1.1):
            assert np.trace(analyzer_effective_operator(b)).real == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("b", [0.0, np.pi / 7, np.pi / 3, 2.0])
    def test_matches_symbolic_oracle(self, b):
        np.testing.assert_allclose(
            analyzer_effective_operator(b), sympy_analyzer_effective(b), atol=1e-12
        )
