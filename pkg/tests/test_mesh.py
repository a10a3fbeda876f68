import dataclasses

import numpy as np
import pytest
from scipy.linalg import block_diag
from scipy.stats import unitary_group

from multipath.bsgen import PhaseArray, fourier, hadamard
from multipath.mesh import (MZIMesh, MZINode, block_paths, compile_unitary,
                            evaluate, fix_global_phase,
                            frobenius_distance_mod_phase, mesh_from_json,
                            mesh_to_json)
from multipath.qcore import Unitary


def test_compile_identity_is_trivial():
    mesh = compile_unitary(Unitary.identity(5))
    assert len(mesh.nodes) == 0  # every nulling target already vanishes
    assert np.allclose(evaluate(mesh), np.eye(5), atol=1e-15)


def test_compile_hadamard_d2_single_node():
    h = hadamard(2)
    mesh = compile_unitary(h)
    assert len(mesh.nodes) == 1
    assert frobenius_distance_mod_phase(evaluate(mesh), h.entries) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 8, 16])
def test_compile_haar_roundtrip(d):
    for k in range(10):
        u = unitary_group.rvs(d, random_state=500 + 17 * d + k)
        mesh = compile_unitary(Unitary(u))
        assert len(mesh.nodes) == d * (d - 1) // 2
        assert frobenius_distance_mod_phase(evaluate(mesh), u) < 1e-9


def test_compile_block_diagonal_needs_fewer_nodes():
    u1 = unitary_group.rvs(2, random_state=1)
    u2 = unitary_group.rvs(2, random_state=2)
    mesh = compile_unitary(Unitary(block_diag(u1, u2)))
    assert len(mesh.nodes) < 4 * 3 // 2
    assert frobenius_distance_mod_phase(evaluate(mesh),
                                        block_diag(u1, u2)) < 1e-12


def test_compile_rejects_non_unitary():
    with pytest.raises(ValueError):
        compile_unitary(Unitary(np.ones((2, 2))))


def test_evaluate_empty_mesh_is_identity():
    mesh = MZIMesh(3, (), PhaseArray.zeros(3))
    assert np.allclose(evaluate(mesh), np.eye(3))


def test_evaluate_fourier_roundtrip():
    f = fourier(4)
    mesh = compile_unitary(f)
    assert frobenius_distance_mod_phase(evaluate(mesh), f.entries) < 1e-9


def test_evaluate_unitary_when_ideal():
    u = unitary_group.rvs(6, random_state=3)
    transfer = evaluate(compile_unitary(Unitary(u)))
    Unitary(transfer)  # passes the unitarity invariant


def test_node_visibility_sets_fringe_contrast():
    # characterize the node at its 50:50 point with balanced coherent
    # input and the external phase swept; contrast must equal v
    for v in (0.99, 0.9, 0.5):
        vin = np.array([1.0, 1.0]) / np.sqrt(2)
        intensities = []
        for phi in np.linspace(-np.pi, np.pi, 721):
            node = MZINode((0, 1), np.pi / 2, phi, visibility=v)
            mesh = MZIMesh(2, (node,), PhaseArray.zeros(2))
            intensities.append(abs((evaluate(mesh) @ vin)[0]) ** 2)
        lo, hi = min(intensities), max(intensities)
        assert abs((hi - lo) / (hi + lo) - v) < 1e-6


def test_visibility_monotone_power_loss():
    u = unitary_group.rvs(4, random_state=9)
    mesh = compile_unitary(Unitary(u))
    powers = []
    for v in (1.0, 0.98, 0.9, 0.7):
        nodes = tuple(dataclasses.replace(n, visibility=v) for n in mesh.nodes)
        lossy = dataclasses.replace(mesh, nodes=nodes)
        powers.append(np.sum(np.abs(evaluate(lossy)) ** 2))
    assert all(a >= b - 1e-12 for a, b in zip(powers, powers[1:]))


def test_block_paths_exact():
    mesh = compile_unitary(hadamard(4))
    blocked = block_paths(mesh, [False, True, False, False], 0.0)
    t = evaluate(blocked)
    assert np.abs(t[:, 1]).max() == 0.0
    # other columns untouched
    full = evaluate(mesh)
    assert np.abs(t[:, [0, 2, 3]] - full[:, [0, 2, 3]]).max() < 1e-15


def test_block_paths_noop_mask():
    mesh = compile_unitary(hadamard(4))
    same = block_paths(mesh, [False] * 4, 0.0)
    assert np.abs(evaluate(same) - evaluate(mesh)).max() < 1e-15


def test_block_paths_leakage_intensity():
    mesh = compile_unitary(hadamard(4))
    blocked = block_paths(mesh, [False, True, False, False], 0.004)
    t = evaluate(blocked)
    residual = np.sum(np.abs(t[:, 1]) ** 2)
    assert abs(residual - 0.004) < 1e-9


def test_block_paths_leak_phase():
    mesh = compile_unitary(hadamard(4))
    ph = np.array([0.0, 1.1, 0.0, 0.0])
    blocked = block_paths(mesh, [False, True, False, False], 0.01, leak_phases=ph)
    t = evaluate(blocked)
    expect = evaluate(mesh)[:, 1] * np.sqrt(0.01) * np.exp(1.1j)
    assert np.abs(t[:, 1] - expect).max() < 1e-12


def test_block_paths_power_monotone():
    mesh = compile_unitary(hadamard(4))
    p_full = np.sum(np.abs(evaluate(mesh)) ** 2)
    p_blocked = np.sum(np.abs(evaluate(block_paths(mesh, [True, False, False, False], 0.0))) ** 2)
    assert p_blocked <= p_full + 1e-12


def test_block_paths_validation():
    mesh = compile_unitary(hadamard(4))
    with pytest.raises(ValueError):
        block_paths(mesh, [True] * 4, 0.0)
    with pytest.raises(ValueError):
        block_paths(mesh, [True, False], 0.0)
    with pytest.raises(ValueError):
        block_paths(mesh, [True, False, False, False], 1.5)


def test_node_validation():
    with pytest.raises(ValueError):
        MZINode((0, 2), 0.0, 0.0)
    with pytest.raises(ValueError):
        MZINode((0, 1), 0.0, 0.0, visibility=1.2)


def test_mesh_validation():
    with pytest.raises(ValueError):
        MZIMesh(2, (MZINode((1, 2), 0.0, 0.0),), PhaseArray.zeros(2))
    with pytest.raises(ValueError):  # too many nodes for a triangle
        MZIMesh(2, tuple(MZINode((0, 1), 0.0, 0.0) for _ in range(2)),
                PhaseArray.zeros(2))


def test_serialization_bit_exact_roundtrip():
    u = unitary_group.rvs(5, random_state=21)
    mesh = block_paths(compile_unitary(Unitary(u)),
                       [False, True, False, False, True], 0.003,
                       leak_phases=np.array([0, 0.3, 0, 0, -2.2]))
    back = mesh_from_json(mesh_to_json(mesh))
    assert back.d == mesh.d
    assert back.nodes == mesh.nodes  # scalar dataclasses compare exactly
    assert np.array_equal(back.output_phases.phases, mesh.output_phases.phases)
    assert np.array_equal(back.input_scalings, mesh.input_scalings)
    # and twice more for stability of the serialized text itself
    assert mesh_to_json(back) == mesh_to_json(mesh)


def test_fix_global_phase():
    u = unitary_group.rvs(3, random_state=4)
    fixed = fix_global_phase(u * np.exp(0.7j))
    assert abs(fixed[0, 0].imag) < 1e-12
    assert fixed[0, 0].real >= 0
    assert frobenius_distance_mod_phase(fixed, u) < 1e-12


def test_frobenius_distance_mod_phase():
    u = unitary_group.rvs(4, random_state=8)
    assert frobenius_distance_mod_phase(u, u * np.exp(1.23j)) < 1e-12
    v = unitary_group.rvs(4, random_state=9)
    d1 = frobenius_distance_mod_phase(u, v)
    d2 = frobenius_distance_mod_phase(v, u)
    assert abs(d1 - d2) < 1e-12 and d1 > 0.1
