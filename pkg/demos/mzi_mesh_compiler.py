"""Compiling d-mode unitaries onto a triangular MZI mesh.

Any d x d unitary factors into at most d(d-1)/2 reconfigurable 2-path
MZIs on adjacent modes plus output phases.  This demo compiles balanced
splitters and Haar-random unitaries, checks the reconstruction error,
shows what finite MZI visibility does to the transfer matrix, and blocks
a path the way the hardware does it (routing the light away, with a
small leakage left over).
"""

import dataclasses
import pathlib

import numpy as np
from scipy.stats import unitary_group

from multipath import (Unitary, block_paths, compile_unitary, evaluate,
                       fourier, frobenius_distance_mod_phase, hadamard,
                       mesh_from_json, mesh_to_json)

for label, u in (("hadamard(8)", hadamard(8)), ("fourier(5)", fourier(5))):
    mesh = compile_unitary(u)
    err = frobenius_distance_mod_phase(evaluate(mesh), u.entries)
    print(f"{label}: {len(mesh.nodes)} nodes, reconstruction error {err:.2e}")

errors = []
for k in range(50):
    u = unitary_group.rvs(8, random_state=k)
    errors.append(frobenius_distance_mod_phase(evaluate(compile_unitary(Unitary(u))), u))
print(f"50 Haar-random d=8 unitaries: worst error {max(errors):.2e}")

# hardware visibility: scaled cross coupling makes the mesh subunitary
mesh = compile_unitary(hadamard(4))
for v in (1.0, 0.991, 0.95):
    nodes = tuple(dataclasses.replace(n, visibility=v) for n in mesh.nodes)
    t = evaluate(dataclasses.replace(mesh, nodes=nodes))
    power = np.sum(np.abs(t) ** 2) / 4
    print(f"visibility {v}: mean transmitted power {power:.4f}")

# blocking path 2 of the splitter, with 0.4% leakage
blocked = block_paths(mesh, [False, False, True, False], leakage=0.004)
t = evaluate(blocked)
print(f"blocked column intensity: {np.sum(np.abs(t[:, 2]) ** 2):.4f} (target 0.004)")

# the mesh document round-trips bit-exactly
doc = mesh_to_json(blocked)
assert mesh_to_json(mesh_from_json(doc)) == doc
out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)
(out / "hadamard4_blocked.mesh.json").write_text(doc + "\n")
print(f"wrote {out / 'hadamard4_blocked.mesh.json'}")
