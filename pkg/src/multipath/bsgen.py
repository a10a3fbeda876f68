"""Balanced d-mode beamsplitters and the d-path phase screen.

Two balanced splitter families are provided: the generalized Hadamard
(real, symmetric, involutory; defined for power-of-two d via the bitwise
dot product of mode indices) and the discrete Fourier matrix (any d >= 2).
Both have every entry of modulus 1/sqrt(d), and both have a uniform first
row and column, which is what the port-0 fringe analysis relies on.

For d not a power of two the package defaults to the Fourier matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .qcore import Unitary


def wrap_angle(x):
    """Wrap angle(s) to the canonical interval (-pi, pi]."""
    w = np.mod(np.asarray(x, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    w = np.where(w == -np.pi, np.pi, w)
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(w)
    return w


def hadamard(d: int) -> Unitary:
    """Generalized Hadamard: entry (i, j) = (-1)^(i.j) / sqrt(d).

    i.j is the bitwise dot product of the binary representations of the
    mode indices, so d must be a power of two.
    """
    if d < 2 or d & (d - 1) != 0:
        raise ValueError(f"Hadamard dimension must be a power of two >= 2, got {d}")
    idx = np.arange(d)
    parity = np.bitwise_count(idx[:, None] & idx[None, :]) & 1
    return Unitary(((-1.0) ** parity) / np.sqrt(d))


def fourier(d: int) -> Unitary:
    """Discrete Fourier splitter: entry (j, k) = exp(2*pi*i*j*k/d) / sqrt(d)."""
    if d < 2:
        raise ValueError(f"Fourier dimension must be >= 2, got {d}")
    j = np.arange(d)
    return Unitary(np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d))


def balanced_splitter(d: int) -> Unitary:
    """Default balanced d-BS: Hadamard when d is a power of two, else Fourier."""
    if d >= 2 and d & (d - 1) == 0:
        return hadamard(d)
    return fourier(d)


class BSKind(Enum):
    HADAMARD = "hadamard"
    FOURIER = "fourier"
    CUSTOM = "custom"


@dataclass(frozen=True)
class BeamsplitterSpec:
    """Which d-mode splitter a beamsplitter slot holds."""

    kind: BSKind
    dim: int
    custom: Unitary | None = None

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"beamsplitter dimension must be >= 2, got {self.dim}")
        if self.kind is BSKind.HADAMARD and self.dim & (self.dim - 1) != 0:
            raise ValueError("Hadamard kind requires a power-of-two dimension")
        if self.kind is BSKind.CUSTOM:
            if self.custom is None:
                raise ValueError("custom kind requires an explicit unitary")
            if self.custom.dim != self.dim:
                raise ValueError("custom unitary dimension mismatch")
        elif self.custom is not None:
            raise ValueError("custom unitary only allowed with kind=CUSTOM")

    def unitary(self) -> Unitary:
        if self.kind is BSKind.HADAMARD:
            return hadamard(self.dim)
        if self.kind is BSKind.FOURIER:
            return fourier(self.dim)
        return self.custom

    @staticmethod
    def balanced(d: int) -> "BeamsplitterSpec":
        """Default balanced spec for dimension d (Hadamard if d = 2^n)."""
        kind = BSKind.HADAMARD if d >= 2 and d & (d - 1) == 0 else BSKind.FOURIER
        return BeamsplitterSpec(kind, d)


@dataclass(frozen=True)
class PhaseArray:
    """Per-path phases theta_k, k = 0..d-1, canonically wrapped to (-pi, pi].

    Arbitrary input values are accepted; wrapping happens once here, never
    silently inside later arithmetic, so comparisons are reproducible.
    """

    phases: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.phases, dtype=float).ravel()
        if p.size < 1:
            raise ValueError("phase array must have at least one entry")
        if not np.all(np.isfinite(p)):
            raise ValueError("phase array contains non-finite entries")
        p = wrap_angle(p)
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)

    @property
    def d(self) -> int:
        return self.phases.size

    @staticmethod
    def zeros(d: int) -> "PhaseArray":
        return PhaseArray(np.zeros(d))


def linear_ramp(d: int, theta: float) -> PhaseArray:
    """Linear phase ramp theta_k = k (theta - pi), the sweep used for fringes."""
    if d < 2:
        raise ValueError(f"ramp needs d >= 2, got {d}")
    return PhaseArray(np.arange(d) * (theta - np.pi))


def phase_operator(p: PhaseArray) -> Unitary:
    """Diagonal phase screen diag(exp(i*theta_0), ..., exp(i*theta_{d-1}))."""
    return Unitary(np.diag(np.exp(1j * p.phases)))
