"""Dense complex linear algebra and quantum-state containers.

Everything downstream (beamsplitter generation, the delayed-choice
pipeline, duality metrics) works with the three value types defined
here: :class:`StateVector`, :class:`DensityMatrix` and :class:`Unitary`.
All of them are immutable wrappers around small dense ``numpy`` arrays;
operations are pure functions, so values can be shared freely across
threads and parameter sweeps.

Index-ordering convention used throughout the package: in any composite
system built with :func:`tensor`, the *first* factor is the slow index
(for control/target systems the control qubit always comes first).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Validation tolerance for constructed objects; post-operation drift is
# held to 1e-12 by the tests.  Matrices here are tiny (dim <= ~64), so
# rounding stays far below these bounds.
ATOL_VALIDATE = 1e-9


def _as_complex_matrix(entries, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-D complex array (the bare ComplexMatrix check)."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"{name} must be a 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector over labeled modes.

    ``labels`` are free-form mode identifiers (defaults to "0".."d-1").
    Set ``unnormalized=True`` only for explicitly intermediate values;
    otherwise the norm is checked at construction.
    """

    amplitudes: np.ndarray
    labels: tuple[str, ...] | None = None
    unnormalized: bool = False

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if amps.size < 1:
            raise ValueError("state must have at least one mode")
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValueError("state amplitudes contain non-finite entries")
        if not self.unnormalized:
            norm2 = float(np.vdot(amps, amps).real)
            if abs(norm2 - 1.0) > ATOL_VALIDATE:
                raise ValueError(f"state is not normalized: |psi|^2 = {norm2!r}")
        object.__setattr__(self, "amplitudes", _freeze(amps))
        labels = self.labels
        if labels is None:
            labels = tuple(str(k) for k in range(amps.size))
        else:
            labels = tuple(labels)
            if len(labels) != amps.size:
                raise ValueError("label count does not match dimension")
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n, self.labels)

    def density(self) -> "DensityMatrix":
        """|psi><psi| as a DensityMatrix (requires unit norm)."""
        psi = self.normalized().amplitudes
        return DensityMatrix(np.outer(psi, psi.conj()))

    @staticmethod
    def basis(dim: int, index: int, labels: tuple[str, ...] | None = None) -> "StateVector":
        if not 0 <= index < dim:
            raise ValueError(f"basis index {index} out of range for dim {dim}")
        amps = np.zeros(dim, dtype=np.complex128)
        amps[index] = 1.0
        return StateVector(amps, labels)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite complex matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = _as_complex_matrix(self.entries, "density matrix")
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got {m.shape}")
        if np.abs(m - m.conj().T).max() > ATOL_VALIDATE:
            raise ValueError("density matrix is not Hermitian")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > ATOL_VALIDATE:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        # PSD check via a Hermitian eigensolver; tiny negative rounding allowed.
        if float(np.linalg.eigvalsh(m).min()) < -ATOL_VALIDATE:
            raise ValueError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "entries", _freeze(m))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.entries)).copy()

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)


@dataclass(frozen=True)
class Unitary:
    """Complex matrix with U^dag U = I within 1e-9 (Frobenius)."""

    entries: np.ndarray

    def __post_init__(self):
        m = _as_complex_matrix(self.entries, "unitary")
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"unitary must be square, got {m.shape}")
        defect = np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]))
        if defect > ATOL_VALIDATE:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        object.__setattr__(self, "entries", _freeze(m))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> "Unitary":
        return Unitary(self.entries.conj().T)

    @staticmethod
    def identity(dim: int) -> "Unitary":
        return Unitary(np.eye(dim))


def apply(u: Unitary, s: StateVector) -> StateVector:
    """Evolve a state: returns u @ s (norm preserved to machine precision)."""
    if u.dim != s.dim:
        raise ValueError(f"dimension mismatch: unitary {u.dim}, state {s.dim}")
    return StateVector(u.entries @ s.amplitudes, s.labels, unnormalized=s.unnormalized)


def tensor(a, b):
    """Kronecker product of two states or two unitaries.

    The first operand is the slow index (control-major ordering), i.e.
    ``tensor(control, target)`` places the control on the outer index.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        labels = tuple(f"{la},{lb}" for la in a.labels for lb in b.labels)
        return StateVector(
            np.kron(a.amplitudes, b.amplitudes),
            labels,
            unnormalized=a.unnormalized or b.unnormalized,
        )
    if isinstance(a, Unitary) and isinstance(b, Unitary):
        return Unitary(np.kron(a.entries, b.entries))
    raise TypeError("tensor expects two StateVectors or two Unitaries")


def partial_trace(rho: DensityMatrix, subsystem_dims: tuple[int, int], keep: int) -> DensityMatrix:
    """Trace out one factor of a bipartite density matrix.

    ``subsystem_dims = (da, db)`` with da the slow (first) factor;
    ``keep`` is 0 to keep the first subsystem, 1 to keep the second.
    """
    da, db = subsystem_dims
    if da * db != rho.dim:
        raise ValueError(f"subsystem dims {subsystem_dims} do not factor dim {rho.dim}")
    if keep not in (0, 1):
        raise ValueError("keep must be 0 (first subsystem) or 1 (second)")
    r = rho.entries.reshape(da, db, da, db)
    if keep == 0:
        reduced = np.einsum("ikjk->ij", r)
    else:
        reduced = np.einsum("kikj->ij", r)
    return DensityMatrix(reduced)


def state_fidelity(rho: DensityMatrix, phi: StateVector) -> float:
    """Fidelity of a mixed state against a pure target: <phi| rho |phi>."""
    if rho.dim != phi.dim:
        raise ValueError(f"dimension mismatch: rho {rho.dim}, state {phi.dim}")
    val = complex(np.vdot(phi.amplitudes, rho.entries @ phi.amplitudes))
    if abs(val.imag) > 1e-12:
        raise ValueError(f"fidelity came out non-real: {val!r}")
    return float(np.clip(val.real, 0.0, 1.0))


def bell_state() -> StateVector:
    """Maximally entangled two-qubit state (|00> + |11>)/sqrt(2)."""
    return StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), ("00", "01", "10", "11"))


def werner_state(p: float) -> DensityMatrix:
    """Bell state mixed with white noise: p |Bell><Bell| + (1-p) I/4.

    ``p`` is the Bell-state weight; fidelity against the Bell state is
    (1 + 3p)/4.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner weight must be in [0, 1], got {p}")
    bell = bell_state().density().entries
    return DensityMatrix(p * bell + (1.0 - p) * np.eye(4) / 4.0)
