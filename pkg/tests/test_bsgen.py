import numpy as np
import pytest

from multipath.bsgen import (BSKind, BeamsplitterSpec, PhaseArray,
                             balanced_splitter, fourier, hadamard,
                             linear_ramp, phase_operator, wrap_angle)


def test_hadamard_d2_entries():
    h = hadamard(2).entries
    assert np.allclose(h, np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    assert abs(h[1, 1] + 1 / np.sqrt(2)) < 1e-15


def test_hadamard_d4_entry_from_bitwise_rule():
    # index pair (3, 3): 3 & 3 = 0b11 has two set bits -> sign +1
    assert abs(hadamard(4).entries[3, 3] - 0.5) < 1e-15


def test_hadamard_is_involution():
    for d in (2, 4, 8, 16):
        h = hadamard(d).entries
        assert np.abs(h @ h - np.eye(d)).max() < 1e-12


def test_hadamard_rejects_non_power_of_two():
    for d in (0, 1, 3, 6, 12):
        with pytest.raises(ValueError):
            hadamard(d)


def test_fourier_d2_matches_hadamard():
    assert np.allclose(fourier(2).entries, hadamard(2).entries, atol=1e-15)


def test_fourier_d3_entry():
    expect = np.exp(4j * np.pi / 3) / np.sqrt(3)
    assert abs(fourier(3).entries[1, 2] - expect) < 1e-15


def test_fourier_unitary():
    for d in (2, 3, 5, 7, 9):
        f = fourier(d).entries
        assert np.abs(f @ f.conj().T - np.eye(d)).max() < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7, 8])
def test_balanced_magnitudes_and_uniform_border(d):
    m = balanced_splitter(d).entries
    assert np.abs(np.abs(m) ** 2 - 1.0 / d).max() < 1e-12
    assert np.abs(m[0, :] - 1.0 / np.sqrt(d)).max() < 1e-12
    assert np.abs(m[:, 0] - 1.0 / np.sqrt(d)).max() < 1e-12


def test_balanced_kind_selection():
    assert np.allclose(balanced_splitter(8).entries, hadamard(8).entries)
    assert np.allclose(balanced_splitter(6).entries, fourier(6).entries)


def test_phase_operator_zero_is_identity():
    assert np.allclose(phase_operator(PhaseArray.zeros(5)).entries, np.eye(5))


def test_phase_operator_flat_ramp_is_identity():
    assert np.allclose(phase_operator(linear_ramp(4, np.pi)).entries, np.eye(4))


def test_phase_operator_pi():
    op = phase_operator(PhaseArray(np.array([0.0, np.pi])))
    assert np.allclose(op.entries, np.diag([1.0, -1.0]))


def test_linear_ramp_values():
    assert np.allclose(linear_ramp(4, np.pi).phases, np.zeros(4))
    ramp = linear_ramp(2, 0.0)
    # theta_1 = -pi, canonically represented as +pi (same phase factor)
    assert np.allclose(np.exp(1j * ramp.phases), [1.0, -1.0])
    assert ramp.phases[1] == np.pi


def test_linear_ramp_wrapping():
    # theta_7 = 7 pi / 2 wraps into (-pi, pi] as -pi/2
    ramp = linear_ramp(8, 3 * np.pi / 2)
    assert abs(ramp.phases[7] + np.pi / 2) < 1e-12


def test_wrap_angle_canonical_interval():
    rng = np.random.default_rng(5)
    x = rng.uniform(-50, 50, size=200)
    w = wrap_angle(x)
    assert np.all((w > -np.pi) & (w <= np.pi))
    assert np.abs(np.exp(1j * w) - np.exp(1j * x)).max() < 1e-9


def test_wrap_angle_idempotent_bitwise():
    rng = np.random.default_rng(6)
    w = wrap_angle(rng.uniform(-50, 50, size=200))
    assert np.array_equal(wrap_angle(w), w)
    assert wrap_angle(np.pi) == np.pi
    assert wrap_angle(-np.pi) == np.pi


def test_beamsplitter_spec_validation():
    with pytest.raises(ValueError):
        BeamsplitterSpec(BSKind.HADAMARD, 6)
    with pytest.raises(ValueError):
        BeamsplitterSpec(BSKind.CUSTOM, 4)
    spec = BeamsplitterSpec.balanced(4)
    assert spec.kind is BSKind.HADAMARD
    assert BeamsplitterSpec.balanced(5).kind is BSKind.FOURIER


def test_custom_spec_roundtrip():
    u = fourier(3)
    spec = BeamsplitterSpec(BSKind.CUSTOM, 3, custom=u)
    assert np.allclose(spec.unitary().entries, u.entries)
