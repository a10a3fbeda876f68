"""Vectorized parameter-grid evaluations used by the CLI and acceptance suite.

Everything here is a thin, fast layer over the closed-form delayed-choice
readouts: wave-particle transition surfaces over (alpha, theta) grids,
duality-relation sweeps over alpha, fringe sweeps over the ramp phase,
and the Pearson comparison between the classical and quantum transition
surfaces.
"""

from __future__ import annotations

import numpy as np

from .bsgen import balanced_splitter
from .metrics import (Compensation, DualityReport, DualitySource, SATURATION_TOL,
                      coherence_from_interference, distinguishability, l1_coherence,
                      measurement_state, pearson_distance)

TRANSITION_ALPHAS = np.linspace(0.0, np.pi, 65)
TRANSITION_THETAS = np.linspace(0.0, 2.0 * np.pi, 65)


def transition_distributions(d: int, alphas, thetas, delta: float = 0.0,
                             case: str = "quantum",
                             source_noise: float = 0.0) -> np.ndarray:
    """Port distributions on an (alpha, theta) grid, shape (A, T, d).

    Quantum case: heralded upper-row readout, renormalized per grid point.
    Classical case: per-port upper+lower sums.  The ramp
    theta_k = k (theta - pi) is used throughout; ``source_noise`` is the
    Werner mixing weight of the photon-pair source.
    """
    alphas = np.asarray(alphas, dtype=float)
    thetas = np.asarray(thetas, dtype=float)
    if not 0.0 <= source_noise <= 1.0:
        raise ValueError("source_noise must be in [0, 1]")
    h = balanced_splitter(d).entries
    k = np.arange(d)
    # p[t, m] = exp(i k m (theta_t - pi)) / sqrt(d)
    p = np.exp(1j * np.outer(thetas - np.pi, k)) / np.sqrt(d)
    w = p @ h.T
    mix = (np.abs(p) ** 2 + np.abs(w) ** 2) / 8.0  # white-noise part per row
    out = np.empty((alphas.size, thetas.size, d))
    for ia, alpha in enumerate(alphas):
        c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
        if case == "quantum":
            amp = c * p - 1j * np.exp(1j * delta) * s * w
            inten = (1 - source_noise) * 0.25 * np.abs(amp) ** 2 + source_noise * mix
            out[ia] = inten / inten.sum(axis=1, keepdims=True)
        elif case == "classical":
            inten = (1 - source_noise) * 0.5 * (c * c * np.abs(p) ** 2
                                                + s * s * np.abs(w) ** 2) \
                + 2.0 * source_noise * mix
            out[ia] = inten / inten.sum(axis=1, keepdims=True)
        else:
            raise ValueError(f"unknown case {case!r}")
    return out


def transition_surface(d: int, alphas=None, thetas=None, delta: float = 0.0,
                       case: str = "quantum", port: int = 0) -> np.ndarray:
    """Single-port transition probability surface, shape (A, T)."""
    alphas = TRANSITION_ALPHAS if alphas is None else alphas
    thetas = TRANSITION_THETAS if thetas is None else thetas
    return transition_distributions(d, alphas, thetas, delta, case)[:, :, port]


def classical_quantum_pearson(d: int, alphas=None, thetas=None,
                              delta: float = 0.0, port: int = 0) -> float:
    """Pearson distance between the classical and quantum transition surfaces."""
    x = transition_surface(d, alphas, thetas, delta, "classical", port)
    y = transition_surface(d, alphas, thetas, delta, "quantum", port)
    return pearson_distance(x.ravel(), y.ravel())


def duality_sweep(d: int, alphas, delta: float, case: str,
                  from_fringe: bool = True,
                  compensation: Compensation = Compensation.ANALYTIC) -> list[DualityReport]:
    """Duality report per alpha value, fringe-derived visibility included."""
    reports = []
    for alpha in np.asarray(alphas, dtype=float):
        rho = measurement_state(d, alpha, delta, case)
        c = l1_coherence(rho, normalized=True)
        dist = distinguishability(rho)
        if from_fringe:
            vis, _ = coherence_from_interference(d, alpha, delta, case, compensation)
            source = DualitySource.FROM_FRINGE
        else:
            vis, source = c, DualitySource.FROM_DENSITY_MATRIX
        gap = 1.0 - c ** 2 - dist ** 2
        reports.append(DualityReport(d, c, vis, dist, gap,
                                     abs(c ** 2 + dist ** 2 - 1.0) < SATURATION_TOL,
                                     source))
    return reports
