"""Wave-particle transition maps of a d-path delayed-choice interferometer.

The control angle alpha steers the target photon between particle-like
behavior (alpha = 0: flat 1/d distribution over the output ports) and
wave-like behavior (alpha = pi: sharp multipath fringes).  Between the
poles the quantum-superposition readout and the classical-mixture
readout disagree: the quantum maps are asymmetric about theta = pi
because the wave and particle amplitudes interfere, and their relative
phase delta steers that interference from constructive to destructive.

Run:  python demos/wave_particle_transition.py
Writes SVG figures next to this script under demos/output/.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from multipath import InterferometerConfig, quantum_distribution, transition_surface

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

alphas = np.linspace(0, np.pi, 65)
thetas = np.linspace(0, 2 * np.pi, 65)

fig, axes = plt.subplots(2, 3, figsize=(12, 6.5), sharex=True, sharey=True)
for col, d in enumerate((2, 4, 8)):
    for row, case in enumerate(("classical", "quantum")):
        surf = transition_surface(d, alphas, thetas, delta=0.0, case=case)
        ax = axes[row, col]
        im = ax.pcolormesh(thetas, alphas, surf, shading="nearest",
                           vmin=0, vmax=1, cmap="viridis")
        ax.set_title(f"{case}, d={d}")
        if row == 1:
            ax.set_xlabel("theta")
        if col == 0:
            ax.set_ylabel("alpha")
fig.colorbar(im, ax=axes, label="port-0 probability", shrink=0.85)
fig.suptitle("port-0 wave-particle transition: classical mixture vs quantum superposition")
fig.savefig(OUT / "transition_maps.svg")
print(f"wrote {OUT / 'transition_maps.svg'}")

# the quantum map is asymmetric about theta = pi, the classical one is not
d = 4
q = transition_surface(d, alphas, thetas, 0.0, "quantum")
c = transition_surface(d, alphas, thetas, 0.0, "classical")
print(f"d={d}: max |I(theta) - I(2pi - theta)|  quantum   {np.abs(q - q[:, ::-1]).max():.3f}")
print(f"d={d}: max |I(theta) - I(2pi - theta)|  classical {np.abs(c - c[:, ::-1]).max():.2e}")

# delta steers the interference of wave and particle amplitudes
fig, axes = plt.subplots(1, 2, figsize=(10, 3.6))
for ax, d in zip(axes, (2, 4)):
    for delta in (0.0, np.pi / 2, -np.pi / 2):
        curve = [quantum_distribution(
            InterferometerConfig.standard(d, 3 * np.pi / 2, delta, theta=t))[0]
            for t in thetas]
        ax.plot(thetas, curve, label=f"delta = {delta:+.2f}")
    ax.set_xlabel("theta")
    ax.set_ylabel("port-0 probability")
    ax.set_title(f"d={d}, alpha = 3 pi / 2")
    ax.legend(fontsize=8)
fig.suptitle("steering the wave/particle interference with the control phase")
fig.tight_layout()
fig.savefig(OUT / "delta_steering.svg")
print(f"wrote {OUT / 'delta_steering.svg'}")
