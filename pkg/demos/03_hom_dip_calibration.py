"""
Two-photon interference dip and delay calibration
=================================================

Before the single photon reaches the analyzers it is postselected from a
photon pair, and the pair's relative delay controls how much coherence
survives.  Scanning that delay traces a coincidence dip; fitting the dip
yields the epsilon(delay) curve used everywhere else in the package.

Run with --plot to save the dip and the fitted epsilon curve as a PNG.
"""

import sys

import numpy as np

from intraphoton import (
    BBO_810,
    QUARTZ_810,
    BellKind,
    GaussianDip,
    RateModel,
    calibrate_gaussian,
    compensation_delay,
    concurrence,
    epsilon_of_delay,
    gvm,
    hom_scan,
    postselected_state,
)

# group-velocity mismatch decides how fast the pair walks apart
print("BBO group-velocity mismatch:    ", f"{gvm(BBO_810):8.2f} fs/mm")
print("quartz group-velocity mismatch: ", f"{gvm(QUARTZ_810):8.2f} fs/mm")

# a pair born mid-crystal needs half the full walk-off compensated
delay = compensation_delay(gvm(BBO_810), crystal_length_mm=2.0)
quartz_mm = delay / abs(gvm(QUARTZ_810))
print(f"compensation delay for 2 mm BBO: {delay:8.2f} fs")
print(f"quartz needed to undo it:        {quartz_mm:8.2f} mm")

# simulate a dip scan with Poisson noise, then fit a Gaussian to it
truth = GaussianDip(sigma_fs=180.0)
rates = RateModel(pair_rate=200.0, accidental_rate=0.5, integration_time=5.0)
taus = np.linspace(-600.0, 600.0, 49)
scan = hom_scan(taus, truth, rates, seed=42)

# the curve is even in tau, so calibrate on the nonnegative half
baseline = rates.pair_rate * rates.integration_time
points = []
for tau, counts in scan:
    if tau < 0.0:
        continue
    eps = 1.0 - counts / baseline
    points.append((tau, min(1.0, max(0.0, eps))))

fitted = calibrate_gaussian(points)
print()
print(f"true dip width:   sigma = {truth.sigma_fs:.2f} fs")
print(f"fitted dip width: sigma = {fitted.sigma_fs:.2f} fs "
      f"(residual {fitted.fit_residual:.3f})")

# the fitted curve feeds straight into the postselected state
print()
print(f"{'delay (fs)':>10} {'epsilon':>9} {'concurrence':>12}")
for tau in (0.0, 90.0, 180.0, 360.0, 540.0):
    eps = epsilon_of_delay(tau, fitted)
    rho = postselected_state(tau, fitted, BellKind.PSI_PLUS)
    print(f"{tau:10.1f} {eps:9.4f} {concurrence(rho):12.4f}")

if "--plot" in sys.argv[1:]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(scan[:, 0], scan[:, 1], ".", label="sampled counts")
    smooth = np.linspace(-600, 600, 400)
    expected = [
        rates.integration_time
        * (rates.pair_rate * (1 - epsilon_of_delay(t, truth)) + rates.accidental_rate)
        for t in smooth
    ]
    ax1.plot(smooth, expected, label="expected")
    ax1.set_xlabel("delay (fs)")
    ax1.set_ylabel("coincidences")
    ax1.set_title("Interference dip")
    ax1.legend()

    ax2.plot(smooth, [epsilon_of_delay(t, truth) for t in smooth], label="true")
    ax2.plot(smooth, [epsilon_of_delay(t, fitted) for t in smooth], "--", label="fitted")
    ax2.set_xlabel("delay (fs)")
    ax2.set_ylabel("epsilon")
    ax2.set_title("Calibrated coherence")
    ax2.legend()
    fig.tight_layout()
    fig.savefig("hom_dip.png", dpi=150)
    print("\nsaved hom_dip.png")
