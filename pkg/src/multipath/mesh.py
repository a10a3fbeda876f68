"""Triangular MZI-mesh compilation of d x d unitaries.

Any d-mode unitary factors into d(d-1)/2 two-mode blocks on adjacent
mode pairs plus a column of output phases (the nested-2-BS construction
of multiport splitters).  The compiler here uses the triangular (Reck)
ordering: it nulls the below-diagonal entries row by row from the bottom
with right-multiplied Givens-type blocks, so the mesh reads

    U = D . T_L . ... . T_2 . T_1          (T_1 hits the input first)

with D the output phase screen.

Node convention: a node with internal phase psi and external phase phi on
modes (i, i+1) applies

    [[e^{i phi} cos(psi/2),        -gamma sin(psi/2)],
     [e^{i phi} gamma sin(psi/2),   cos(psi/2)      ]]

where gamma = tan(asin(v)/2) scales the cross coupling for hardware
visibility v (gamma = 1 when v = 1).  psi = 0 is the bar state.  The
gamma correction makes the node's simulated classical fringe contrast
equal exactly v when the node is characterized at the 50:50 point; a
plain linear scaling gamma = v would distort the contrast.  With v < 1
the transfer matrix is subunitary (the missing power is scattered out of
the computational modes).

Path blocking ("switching off" the MZI feeding a path) is modeled as a
per-input amplitude scale: a blocked input transmits sqrt(epsilon) times
an arbitrary leakage phase into its nominal path, the rest going to an
implicit dump port.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .bsgen import PhaseArray
from .qcore import Unitary

COMPILE_TOL = 1e-12


@dataclass(frozen=True)
class MZINode:
    """One reconfigurable 2-path MZI acting on adjacent modes."""

    mode_pair: tuple[int, int]
    internal_phase: float
    external_phase: float
    visibility: float = 1.0

    def __post_init__(self):
        i, j = self.mode_pair
        if j != i + 1 or i < 0:
            raise ValueError(f"mode pair must be adjacent (i, i+1), got {self.mode_pair}")
        if not 0.0 <= self.visibility <= 1.0:
            raise ValueError(f"visibility must be in [0, 1], got {self.visibility}")

    def matrix(self) -> np.ndarray:
        """2x2 transfer matrix of this node (cross terms visibility-scaled)."""
        theta = self.internal_phase / 2.0
        gamma = tan_half_asin(self.visibility)
        ph = np.exp(1j * self.external_phase)
        c, s = np.cos(theta), np.sin(theta)
        return np.array([[ph * c, -gamma * s], [ph * gamma * s, c]])


def tan_half_asin(v: float) -> float:
    """Cross-coupling scale gamma with fringe contrast exactly v."""
    return np.tan(np.arcsin(v) / 2.0) if v < 1.0 else 1.0


@dataclass(frozen=True)
class MZIMesh:
    """Ordered node list realizing a d x d transfer matrix.

    ``input_scalings`` (complex amplitude per input mode) carries path
    blocking; None means all-open.
    """

    d: int
    nodes: tuple[MZINode, ...]
    output_phases: PhaseArray
    input_scalings: np.ndarray | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("mesh dimension must be >= 1")
        nodes = tuple(self.nodes)
        if len(nodes) > self.d * (self.d - 1) // 2:
            raise ValueError("triangular mesh cannot exceed d(d-1)/2 nodes")
        for node in nodes:
            if node.mode_pair[1] >= self.d:
                raise ValueError(f"node {node.mode_pair} outside [0, {self.d})")
        object.__setattr__(self, "nodes", nodes)
        if self.output_phases.d != self.d:
            raise ValueError("output phase count must equal d")
        if self.input_scalings is not None:
            s = np.asarray(self.input_scalings, dtype=complex).ravel()
            if s.size != self.d:
                raise ValueError("input scaling count must equal d")
            if np.abs(s).max() > 1.0 + 1e-12:
                raise ValueError("input scalings cannot exceed unit amplitude")
            s.setflags(write=False)
            object.__setattr__(self, "input_scalings", s)


def compile_unitary(u: Unitary) -> MZIMesh:
    """Triangular decomposition of a unitary into an MZI mesh.

    Nodes where the entry to null already vanishes are omitted, so
    block-diagonal inputs compile to fewer than d(d-1)/2 nodes and the
    identity compiles to an empty mesh.  The reconstruction
    ``evaluate(compile_unitary(u)) == u`` is exact to rounding (no
    global-phase ambiguity is introduced).
    """
    m = np.array(u.entries, dtype=complex)
    d = m.shape[0]
    nodes: list[MZINode] = []
    for i in range(d - 1, 0, -1):
        for j in range(0, i):
            a = m[i, j]
            if abs(a) <= COMPILE_TOL:
                continue
            b = m[i, j + 1]
            phi = float(np.angle(a) - np.angle(b)) if abs(b) > 0 else float(np.angle(a))
            theta = float(np.arctan2(abs(a), abs(b)))
            c, s = np.cos(theta), np.sin(theta)
            t_inv = np.array([[np.exp(-1j * phi) * c, np.exp(-1j * phi) * s], [-s, c]])
            m[:, j:j + 2] = m[:, j:j + 2] @ t_inv
            nodes.append(MZINode((j, j + 1), 2.0 * theta, phi))
    return MZIMesh(d, tuple(nodes), PhaseArray(np.angle(np.diag(m))))


def evaluate(mesh: MZIMesh) -> np.ndarray:
    """Transfer matrix of a mesh: output phases after the node chain.

    Unitary when every visibility is 1 and nothing is blocked; subunitary
    otherwise.  An empty mesh is the identity.
    """
    m = np.eye(mesh.d, dtype=complex)
    if mesh.input_scalings is not None:
        m = m * mesh.input_scalings[None, :]
    for node in mesh.nodes:
        i, j = node.mode_pair
        m[[i, j], :] = node.matrix() @ m[[i, j], :]
    return np.exp(1j * mesh.output_phases.phases)[:, None] * m


def block_paths(
    mesh: MZIMesh,
    mask,
    leakage: float = 0.0,
    leak_phases=None,
) -> MZIMesh:
    """Route blocked inputs to (implicit) dump ports.

    ``mask[i]`` True blocks input path i, leaving residual intensity
    ``leakage`` in the nominal path with an optional per-path leakage
    phase (imperfect MZI switch-off has no phase control, so callers that
    model hardware pass random phases).  leakage = 0 blocks exactly.
    """
    mask = np.asarray(mask, dtype=bool).ravel()
    if mask.size != mesh.d:
        raise ValueError("mask length must equal mesh dimension")
    if mask.all():
        raise ValueError("cannot block every path")
    if not 0.0 <= leakage <= 1.0:
        raise ValueError("leakage intensity must be in [0, 1]")
    if leak_phases is None:
        leak_phases = np.zeros(mesh.d)
    else:
        leak_phases = np.asarray(leak_phases, dtype=float).ravel()
        if leak_phases.size != mesh.d:
            raise ValueError("leak phase count must equal mesh dimension")
    scale = np.where(mask, np.sqrt(leakage) * np.exp(1j * leak_phases), 1.0 + 0j)
    base = mesh.input_scalings if mesh.input_scalings is not None else np.ones(mesh.d)
    return replace(mesh, input_scalings=base * scale)


# ---------------------------------------------------------------------------
# comparisons modulo global phase
# ---------------------------------------------------------------------------

def fix_global_phase(m: np.ndarray) -> np.ndarray:
    """Canonical representative: entry (0, 0) made real nonnegative.

    Falls back to the largest-magnitude entry if (0, 0) is (numerically)
    zero; interferometers are insensitive to the quotient either way.
    """
    m = np.asarray(m, dtype=complex)
    pivot = m[0, 0]
    if abs(pivot) < 1e-12:
        pivot = m.ravel()[np.argmax(np.abs(m))]
    return m * np.exp(-1j * np.angle(pivot))


def frobenius_distance_mod_phase(a: np.ndarray, b: np.ndarray) -> float:
    """min over phases of ||a - e^{i phi} b||_F.

    The minimizing phase is the argument of the Frobenius overlap; the
    difference is then formed entrywise (subtracting the norms instead
    would cancel catastrophically for nearly equal matrices).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    overlap = complex(np.sum(a.conj() * b))
    phase = np.exp(-1j * np.angle(overlap)) if overlap != 0 else 1.0
    return float(np.linalg.norm(a - phase * b))


# ---------------------------------------------------------------------------
# serialization (bit-exact round trip)
# ---------------------------------------------------------------------------

def mesh_to_json(mesh: MZIMesh) -> str:
    doc = {
        "d": mesh.d,
        "nodes": [
            {
                "modes": list(node.mode_pair),
                "internal_phase": node.internal_phase,
                "external_phase": node.external_phase,
                "visibility": node.visibility,
            }
            for node in mesh.nodes
        ],
        "output_phases": mesh.output_phases.phases.tolist(),
        "input_scalings": None
        if mesh.input_scalings is None
        else {
            "real": mesh.input_scalings.real.tolist(),
            "imag": mesh.input_scalings.imag.tolist(),
        },
    }
    return json.dumps(doc, indent=2)


def mesh_from_json(text: str) -> MZIMesh:
    doc = json.loads(text)
    nodes = tuple(
        MZINode(
            (int(n["modes"][0]), int(n["modes"][1])),
            float(n["internal_phase"]),
            float(n["external_phase"]),
            float(n["visibility"]),
        )
        for n in doc["nodes"]
    )
    scal = doc.get("input_scalings")
    scalings = None
    if scal is not None:
        scalings = np.array(scal["real"], dtype=float) + 1j * np.array(scal["imag"], dtype=float)
    return MZIMesh(int(doc["d"]), nodes, PhaseArray(np.array(doc["output_phases"])), scalings)
