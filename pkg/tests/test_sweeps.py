import numpy as np
import pytest

from multipath.delayed_choice import (InterferometerConfig,
                                      classical_distribution,
                                      quantum_distribution)
from multipath.metrics import DualitySource
from multipath.sweeps import (classical_quantum_pearson, duality_sweep,
                              transition_distributions, transition_surface)


@pytest.mark.parametrize("case", ["quantum", "classical"])
@pytest.mark.parametrize("noise", [0.0, 0.4])
def test_transition_grid_matches_pointwise_closed_form(case, noise):
    alphas = np.array([0.0, 0.7, 2.9, 4.4])
    thetas = np.array([0.4, np.pi, 5.2])
    grid = transition_distributions(4, alphas, thetas, 0.3, case, noise)
    for ia, alpha in enumerate(alphas):
        for it, theta in enumerate(thetas):
            cfg = InterferometerConfig.standard(4, alpha, 0.3, theta=theta,
                                                source_noise=noise)
            ref = (quantum_distribution(cfg) if case == "quantum"
                   else classical_distribution(cfg)).probabilities
            assert np.abs(grid[ia, it] - ref).max() < 1e-12


def test_transition_grid_rows_normalized():
    grid = transition_distributions(8, np.linspace(0, np.pi, 7),
                                    np.linspace(0, 2 * np.pi, 9))
    assert np.abs(grid.sum(axis=2) - 1.0).max() < 1e-12


def test_transition_surface_is_port_slice():
    alphas = np.linspace(0, np.pi, 5)
    thetas = np.linspace(0, 2 * np.pi, 5)
    full = transition_distributions(4, alphas, thetas)
    surf = transition_surface(4, alphas, thetas, port=2)
    assert np.array_equal(surf, full[:, :, 2])


def test_transition_rejects_bad_noise():
    with pytest.raises(ValueError):
        transition_distributions(4, [0.1], [0.1], source_noise=1.5)


def test_pearson_decreases_with_dimension():
    d2 = classical_quantum_pearson(2)
    d4 = classical_quantum_pearson(4)
    assert d2 > d4 > 0


def test_duality_sweep_reports():
    alphas = np.linspace(0, 2 * np.pi, 5, endpoint=False)
    reports = duality_sweep(4, alphas, 0.0, "quantum")
    assert len(reports) == 5
    assert all(r.saturated for r in reports)
    assert all(r.source is DualitySource.FROM_FRINGE for r in reports)
    fast = duality_sweep(4, alphas, 0.0, "classical", from_fringe=False)
    assert all(r.source is DualitySource.FROM_DENSITY_MATRIX for r in fast)
    assert all(abs(r.visibility - r.coherence) < 1e-12 for r in fast)
