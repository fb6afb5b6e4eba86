"""Tests for walk-off arithmetic, dip models, and the Gaussian calibration."""

import math

import numpy as np
import pytest

from intraphoton.source import (
    BBO_810,
    QUARTZ_810,
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
from intraphoton.states import BellKind, concurrence, validate_physical

# measured dip calibration: (delay fs, eps)
CALIBRATION_POINTS = ((0.0, 1.0), (200.0, 0.8), (400.0, 0.32), (600.0, 0.03))


class TestGvm:
    def test_generation_crystal(self):
        assert gvm(BBO_810) == pytest.approx(189.6, abs=0.1)

    def test_compensation_crystal(self):
        assert gvm(QUARTZ_810) == pytest.approx(-31.8, abs=0.1)

    def test_sign_convention(self):
        # ordinary slower -> positive mismatch
        assert gvm(MaterialDispersion(1.0e8, 2.0e8)) > 0.0
        assert gvm(MaterialDispersion(2.0e8, 1.0e8)) < 0.0

    def test_rejects_nonpositive_velocity(self):
        with pytest.raises(ValueError, match="positive velocity"):
            MaterialDispersion(0.0, 1.8e8)
        with pytest.raises(ValueError, match="positive velocity"):
            MaterialDispersion(1.8e8, -1.0)


class TestCompensationDelay:
    def test_midpoint_average(self):
        assert compensation_delay(189.6, 2.0) == pytest.approx(189.6, abs=0.0)

    def test_scales_linearly(self):
        assert compensation_delay(100.0, 3.0) == pytest.approx(150.0, abs=1e-12)

    def test_quartz_length_consistency(self):
        # a 5.96 mm quartz path undoes the mid-crystal walk-off of 2 mm BBO
        length = 189.6 / 31.8
        assert length == pytest.approx(5.96, abs=0.01)
        assert compensation_delay(31.8, 2.0 * length) == pytest.approx(189.6, rel=1e-12)

    def test_rejects_nonpositive_length(self):
        with pytest.raises(ValueError, match="length"):
            compensation_delay(189.6, 0.0)


class TestDipModels:
    def test_gaussian_values(self):
        model = GaussianDip(sigma_fs=300.0)
        assert epsilon_of_delay(0.0, model) == pytest.approx(1.0, abs=1e-15)
        assert epsilon_of_delay(300.0, model) == pytest.approx(math.exp(-0.5), rel=1e-12)
        assert epsilon_of_delay(-300.0, model) == epsilon_of_delay(300.0, model)

    def test_triangular_values(self):
        model = TriangularDip(half_width_fs=500.0)
        assert epsilon_of_delay(0.0, model) == 1.0
        assert epsilon_of_delay(250.0, model) == pytest.approx(0.5, abs=1e-12)
        assert epsilon_of_delay(500.0, model) == 0.0
        assert epsilon_of_delay(900.0, model) == 0.0

    def test_interpolated_hits_calibration_points(self):
        model = InterpolatedDip(points=CALIBRATION_POINTS)
        for delay, eps in CALIBRATION_POINTS:
            assert epsilon_of_delay(delay, model) == pytest.approx(eps, abs=1e-15)
            assert epsilon_of_delay(-delay, model) == pytest.approx(eps, abs=1e-15)

    def test_interpolated_midpoints_and_tail(self):
        model = InterpolatedDip(points=CALIBRATION_POINTS)
        assert epsilon_of_delay(100.0, model) == pytest.approx(0.9, abs=1e-12)
        assert epsilon_of_delay(500.0, model) == pytest.approx(0.175, abs=1e-12)
        # beyond the last point the last value holds
        assert epsilon_of_delay(1500.0, model) == pytest.approx(0.03, abs=1e-15)

    @pytest.mark.parametrize(
        "model",
        [
            GaussianDip(sigma_fs=299.0),
            TriangularDip(half_width_fs=620.0),
            InterpolatedDip(points=CALIBRATION_POINTS),
        ],
    )
    def test_even_monotone_bounded(self, model):
        taus = np.linspace(0.0, 1200.0, 121)
        values = [epsilon_of_delay(t, model) for t in taus]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
        for t in taus[::10]:
            assert epsilon_of_delay(-t, model) == pytest.approx(
                epsilon_of_delay(t, model), abs=1e-15
            )

    def test_rejects_nonfinite_delay(self):
        with pytest.raises(ValueError, match="finite"):
            epsilon_of_delay(float("nan"), GaussianDip(300.0))

    def test_model_validation(self):
        with pytest.raises(ValueError, match="sigma_fs"):
            GaussianDip(sigma_fs=0.0)
        with pytest.raises(ValueError, match="half_width_fs"):
            TriangularDip(half_width_fs=-1.0)
        with pytest.raises(ValueError, match="two calibration points"):
            InterpolatedDip(points=((0.0, 1.0),))
        with pytest.raises(ValueError, match="strictly increasing"):
            InterpolatedDip(points=((0.0, 1.0), (0.0, 0.5)))
        with pytest.raises(ValueError, match="non-increasing"):
            InterpolatedDip(points=((0.0, 0.5), (100.0, 0.9)))
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            InterpolatedDip(points=((0.0, 1.2), (100.0, 0.5)))


class TestCalibrateGaussian:
    def test_two_point_closed_form(self):
        # exp(-200^2 / (2 s^2)) = 0.8  =>  s = 200 / sqrt(2 ln 1.25) = 299.38 fs
        model = calibrate_gaussian([(0.0, 1.0), (200.0, 0.8)])
        assert model.sigma_fs == pytest.approx(299.3800299861215, abs=0.5)
        assert model.fit_residual == pytest.approx(0.0, abs=1e-6)

    def test_four_point_fit_matches_grid_oracle(self):
        # independent 400k-point grid search gave sigma = 265.51, resid 0.0671
        model = calibrate_gaussian(CALIBRATION_POINTS)
        assert model.sigma_fs == pytest.approx(265.51, abs=0.05)
        assert model.fit_residual == pytest.approx(0.06707524803921008, abs=1e-6)

    def test_fit_beats_neighbors(self):
        model = calibrate_gaussian(CALIBRATION_POINTS)

        def sum_sq(sigma):
            d = np.array([p[0] for p in CALIBRATION_POINTS])
            e = np.array([p[1] for p in CALIBRATION_POINTS])
            return float(np.sum((np.exp(-(d**2) / (2 * sigma * sigma)) - e) ** 2))

        best = sum_sq(model.sigma_fs)
        assert best <= sum_sq(model.sigma_fs * 1.01)
        assert best <= sum_sq(model.sigma_fs * 0.99)

    def test_degenerate_inputs(self):
        with pytest.raises(ValueError, match="two calibration points"):
            calibrate_gaussian([(0.0, 1.0)])
        with pytest.raises(ValueError, match="distinct"):
            calibrate_gaussian([(100.0, 0.9), (100.0, 0.8)])


class TestPostselectedState:
    def test_zero_delay_is_pure_bell(self):
        model = InterpolatedDip(points=CALIBRATION_POINTS)
        rho = postselected_state(0.0, model, BellKind.PSI_MINUS)
        assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)

    def test_calibration_delays_set_concurrence(self):
        model = InterpolatedDip(points=CALIBRATION_POINTS)
        for delay, eps in CALIBRATION_POINTS:
            rho = postselected_state(delay, model, BellKind.PSI_PLUS)
            assert concurrence(rho) == pytest.approx(eps, abs=1e-12)
            assert validate_physical(rho).is_physical

    def test_far_delay_dephases(self):
        rho = postselected_state(5000.0, GaussianDip(300.0), BellKind.PSI_PLUS)
        assert concurrence(rho) == pytest.approx(0.0, abs=1e-12)


class TestDipModelConfig:
    @pytest.mark.parametrize(
        "model",
        [
            GaussianDip(sigma_fs=299.38),
            TriangularDip(half_width_fs=620.0),
            InterpolatedDip(points=CALIBRATION_POINTS),
        ],
    )
    def test_round_trip(self, model):
        assert dip_model_from_config(dip_model_to_config(model)) == model

    def test_unknown_variant(self):
        with pytest.raises(ValueError, match="variant"):
            dip_model_from_config({"variant": "lorentzian", "gamma": 1.0})

    def test_extra_keys_rejected(self):
        with pytest.raises(ValueError, match="takes keys"):
            dip_model_from_config({"variant": "gaussian", "sigma_fs": 1.0, "bogus": 2})
