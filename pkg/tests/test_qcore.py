import numpy as np
import pytest
from scipy.stats import unitary_group

from multipath.delayed_choice import control_rotation
from multipath.qcore import (DensityMatrix, StateVector, Unitary, apply,
                             bell_state, partial_trace, state_fidelity,
                             tensor, werner_state)


def haar(d, seed):
    return Unitary(unitary_group.rvs(d, random_state=seed))


def random_state(d, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return StateVector(v / np.linalg.norm(v))


def test_apply_identity():
    s = random_state(4, 0)
    out = apply(Unitary.identity(4), s)
    assert np.allclose(out.amplitudes, s.amplitudes, atol=1e-15)


def test_apply_hadamard_on_basis():
    h2 = Unitary(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    out = apply(h2, StateVector.basis(2, 0))
    assert np.allclose(out.amplitudes, np.array([1, 1]) / np.sqrt(2), atol=1e-15)


def test_apply_hadamard_involution():
    from multipath.bsgen import hadamard
    h4 = hadamard(4)
    s = StateVector.basis(4, 0)
    back = apply(h4, apply(h4, s))
    assert np.abs(back.amplitudes - s.amplitudes).max() < 1e-12


def test_apply_preserves_norm():
    for seed in range(20):
        d = 2 + seed % 7
        out = apply(haar(d, seed), random_state(d, 100 + seed))
        assert abs(out.norm() - 1.0) < 1e-12


def test_apply_then_adjoint_is_identity():
    for seed in range(10):
        u = haar(5, seed)
        s = random_state(5, 50 + seed)
        back = apply(u.adjoint(), apply(u, s))
        assert np.abs(back.amplitudes - s.amplitudes).max() < 1e-12


def test_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        apply(Unitary.identity(3), StateVector.basis(2, 0))


def test_tensor_basis_states():
    out = tensor(StateVector.basis(2, 0), StateVector.basis(2, 0))
    assert np.allclose(out.amplitudes, [1, 0, 0, 0])


def test_tensor_identity_matrices():
    out = tensor(Unitary.identity(2), Unitary.identity(2))
    assert np.allclose(out.entries, np.eye(4))


def test_tensor_control_major_ordering():
    # first factor is the slow index: |1> (x) |0> lands at flat index 1*3+0
    out = tensor(StateVector.basis(2, 1), StateVector.basis(3, 0))
    assert out.amplitudes[3] == 1.0


def test_bell_built_from_tensors_is_normalized():
    amps = (tensor(StateVector.basis(2, 0), StateVector.basis(2, 0)).amplitudes
            + tensor(StateVector.basis(2, 1), StateVector.basis(2, 1)).amplitudes)
    bell = StateVector(amps / np.sqrt(2))
    assert abs(bell.norm() - 1.0) < 1e-15
    assert np.allclose(bell.amplitudes, bell_state().amplitudes)


def test_partial_trace_product_state():
    a = random_state(2, 1)
    b = random_state(3, 2)
    joint = tensor(a, b).density()
    reduced = partial_trace(joint, (2, 3), keep=1)
    assert np.abs(reduced.entries - b.density().entries).max() < 1e-12
    assert abs(np.trace(reduced.entries).real - 1.0) < 1e-12


def test_partial_trace_bell_is_maximally_mixed():
    rho = bell_state().density()
    for keep in (0, 1):
        red = partial_trace(rho, (2, 2), keep)
        assert np.abs(red.entries - np.eye(2) / 2).max() < 1e-12


def test_partial_trace_rotated_state_gives_even_mixture():
    # At alpha = pi/2 the traced-out control leaves the balanced
    # wave/particle mixture; the cross terms cancel between the two
    # control branches.  Built entrywise from the full 2 x d state.
    d = 4
    from multipath.bsgen import hadamard, linear_ramp
    theta = np.exp(1j * linear_ramp(d, 1.3).phases)
    p = theta * hadamard(d).entries[:, 0]
    w = hadamard(d).entries @ p
    joint = np.kron(np.array([1.0, 0.0]), p)  # |0>_C |P>
    joint = joint + np.kron(np.array([0.0, 1.0]), w)  # + |1>_C |W>
    joint = joint / np.sqrt(2)
    rot = np.kron(control_rotation(np.pi / 2, 0.7), np.eye(d))
    full = DensityMatrix(np.outer(rot @ joint, (rot @ joint).conj()))
    reduced = partial_trace(full, (2, d), keep=1)
    expected = (np.outer(p, p.conj()) + np.outer(w, w.conj())) / 2.0
    assert np.abs(reduced.entries - expected).max() < 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        partial_trace(bell_state().density(), (3, 2), 0)


def test_state_fidelity_pure_projector():
    s = random_state(5, 3)
    assert abs(state_fidelity(s.density(), s) - 1.0) < 1e-12


def test_state_fidelity_orthogonal():
    rho = StateVector.basis(4, 1).density()
    assert state_fidelity(rho, StateVector.basis(4, 2)) < 1e-15


def test_state_fidelity_werner():
    # independent closed form: F = (1 + 3p)/4
    assert abs(state_fidelity(werner_state(0.9), bell_state()) - 0.925) < 1e-12
    for p in (0.0, 0.3, 1.0):
        expect = (1 + 3 * p) / 4
        assert abs(state_fidelity(werner_state(p), bell_state()) - expect) < 1e-12


def test_density_matrix_invariants_from_ket():
    for seed in range(10):
        rho = random_state(6, seed).density()
        assert abs(np.trace(rho.entries).real - 1.0) < 1e-9
        assert np.abs(rho.entries - rho.entries.conj().T).max() < 1e-9
        assert rho.eigenvalues().min() > -1e-9


def test_density_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[1.0, 0.5], [0.0, 0.0]]))  # not Hermitian
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))  # negative eigenvalue


def test_state_vector_norm_check():
    with pytest.raises(ValueError):
        StateVector(np.array([1.0, 1.0]))
    # explicitly marked intermediates are allowed
    s = StateVector(np.array([1.0, 1.0]), unnormalized=True)
    assert abs(s.normalized().norm() - 1.0) < 1e-15


def test_unitary_rejects_non_unitary():
    with pytest.raises(ValueError):
        Unitary(np.array([[1.0, 0.0], [0.0, 2.0]]))


def test_werner_weight_validation():
    with pytest.raises(ValueError):
        werner_state(1.2)
