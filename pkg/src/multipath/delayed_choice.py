"""Quantum-controlled d-path delayed-choice pipeline.

The simulated apparatus: an entangled photon-pair source feeds a control
qubit and a target photon; the target traverses a d-path interferometer
(balanced d-BS1, a per-path phase screen) and then evolves through either
the open "particle" process or the closed "wave" process (d-BS2 present),
with the choice coherently entangled with the control qubit; a d-mode
eraser (one 2-BS per output port) removes the which-process information;
detection happens on 2d ports, d "upper" (D_0..D_{d-1}) and d "lower"
(D_0'..D_{d-1}').

Two reductions of the final state are the workhorses:

* quantum superposition: herald the control on |1>, keep the upper ports,
  renormalize over them.  Port probabilities carry the wave/particle cross
  term and depend on the control phase delta.
* classical mixture: herald the control on |1>, sum the upper and lower
  counts per port.  The cross term cancels exactly and delta drops out.

Both reductions are available twice over: as closed-form amplitude
expressions (:func:`quantum_distribution`, :func:`classical_distribution`)
and from an explicit joint control (x) 2d-mode density-matrix simulation
(:func:`simulate_full`).  Their agreement to 1e-10 is the package's
central oracle-equivalence property.

Conventions (asserted in the tests):

* control qubit is the slow tensor index;
* the eraser 2-BS is (1, i; i, 1)/sqrt(2) with the particle branch on the
  first input and the upper detector on the first output;
* the control rotation maps the Bell state to
  [|0>(sin(a/2)|P> + e^{i d} cos(a/2)|W>)
   + |1>(cos(a/2)|P> - e^{i d} sin(a/2)|W>)] / sqrt(2).

Source imperfection is modeled as Werner mixing only: the Bell state is
replaced by (1 - p) |Bell><Bell| + p I/4 with ``source_noise = p``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bsgen import BeamsplitterSpec, PhaseArray, linear_ramp
from .qcore import DensityMatrix, StateVector, bell_state

MAX_BLOCKING_LEAKAGE = 0.05


@dataclass(frozen=True)
class ControlSetting:
    """Control-photon rotation: alpha steers the wave/particle amplitudes,
    delta their relative phase.  Any real values are accepted."""

    alpha: float
    delta: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and np.isfinite(self.delta)):
            raise ValueError("control angles must be finite")


@dataclass(frozen=True)
class InterferometerConfig:
    """Full description of one experiment configuration."""

    d: int
    bs1: BeamsplitterSpec
    bs2: BeamsplitterSpec
    phases: PhaseArray
    control: ControlSetting
    source_noise: float = 0.0
    blocking: tuple[bool, ...] | None = None
    blocking_leakage: float = 0.0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"need at least two paths, got d={self.d}")
        if not (self.bs1.dim == self.bs2.dim == self.d == self.phases.d):
            raise ValueError("beamsplitter/phase dimensions do not match d")
        if not 0.0 <= self.source_noise <= 1.0:
            raise ValueError("source_noise must be in [0, 1]")
        if self.blocking is not None:
            blocking = tuple(bool(b) for b in self.blocking)
            if len(blocking) != self.d:
                raise ValueError("blocking mask length must equal d")
            object.__setattr__(self, "blocking", blocking)
        if not 0.0 <= self.blocking_leakage <= MAX_BLOCKING_LEAKAGE:
            raise ValueError(
                f"blocking leakage {self.blocking_leakage} outside supported range "
                f"[0, {MAX_BLOCKING_LEAKAGE}]"
            )

    @staticmethod
    def standard(
        d: int,
        alpha: float,
        delta: float = 0.0,
        theta: float | None = None,
        phases: PhaseArray | None = None,
        source_noise: float = 0.0,
        blocking: tuple[bool, ...] | None = None,
        blocking_leakage: float = 0.0,
    ) -> "InterferometerConfig":
        """Balanced interferometer with the usual linear phase ramp.

        ``theta`` parametrizes the ramp theta_k = k (theta - pi); passing
        ``phases`` overrides it.  Defaults to the flat ramp (theta = pi).
        """
        if phases is None:
            phases = linear_ramp(d, np.pi if theta is None else theta)
        elif theta is not None:
            raise ValueError("pass either theta or phases, not both")
        bs = BeamsplitterSpec.balanced(d)
        return InterferometerConfig(
            d, bs, bs, phases, ControlSetting(alpha, delta),
            source_noise, blocking, blocking_leakage,
        )

    def with_phases(self, phases: PhaseArray) -> "InterferometerConfig":
        return dataclasses.replace(self, phases=phases)

    def blocked_amplitudes(self) -> np.ndarray:
        """Per-path transmission amplitudes of the blocking stage."""
        t = np.ones(self.d)
        if self.blocking is not None:
            t[np.asarray(self.blocking, dtype=bool)] = np.sqrt(self.blocking_leakage)
        return t


class Herald(Enum):
    CONTROL1 = "control1"
    CONTROL0 = "control0"
    TRACE_OUT = "trace_out"


class PortMode(Enum):
    UPPER_ONLY = "upper_only"
    UPPER_AND_LOWER = "upper_and_lower"


@dataclass(frozen=True)
class PortDistribution:
    """Probability distribution over the d output ports.

    ``mode`` records which detectors the probabilities refer to: the d
    upper detectors alone (renormalized), or the per-port sum of the
    upper and lower detectors.
    """

    d: int
    probabilities: np.ndarray
    mode: PortMode

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float).ravel()
        if p.size != self.d:
            raise ValueError(f"expected {self.d} port probabilities, got {p.size}")
        if p.min() < -1e-12:
            raise ValueError("negative probability")
        total = p.sum()
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        p = np.clip(p, 0.0, None)
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    def __getitem__(self, m: int) -> float:
        return float(self.probabilities[m])


@dataclass(frozen=True)
class CountsRecord:
    """Seeded Poisson counts per port (emulated two-fold coincidences)."""

    counts: np.ndarray
    mean_total: float
    seed: int
    dark_rate: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64).ravel()
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def normalized(self) -> np.ndarray:
        """Empirical probabilities (counts / total)."""
        total = self.total
        if total == 0:
            raise ValueError("no counts recorded; cannot normalize")
        return self.counts / total


# ---------------------------------------------------------------------------
# branch amplitudes and closed-form intensities
# ---------------------------------------------------------------------------

def branch_vectors(cfg: InterferometerConfig) -> tuple[np.ndarray, np.ndarray]:
    """Particle- and wave-branch output amplitudes (blocking included).

    particle: BS1, phase screen, blocking stage, open output;
    wave:     the same followed by BS2.
    With no blocking both vectors are unit norm.
    """
    h1 = cfg.bs1.unitary().entries
    h2 = cfg.bs2.unitary().entries
    t = cfg.blocked_amplitudes()
    inner = t * np.exp(1j * cfg.phases.phases) * h1[:, 0]
    return inner, h2 @ inner


def wave_particle_states(cfg: InterferometerConfig) -> tuple[StateVector, StateVector]:
    """The pure particle |P> and wave |W> process states.

    |P> has amplitudes e^{i theta_m}/sqrt(d); |W> = BS2 |P>.  Undefined
    (and rejected) when any path is blocked.
    """
    if cfg.blocking is not None and any(cfg.blocking):
        raise ValueError("wave/particle states are undefined with blocked paths")
    p, w = branch_vectors(cfg)
    return StateVector(p), StateVector(w)


def _raw_intensities(cfg: InterferometerConfig, herald: Herald) -> tuple[np.ndarray, np.ndarray]:
    """Joint probabilities (per source pair) of the herald outcome and a
    click at each upper/lower port, from the closed-form amplitudes."""
    p, w = branch_vectors(cfg)
    c = np.cos(cfg.control.alpha / 2.0)
    s = np.sin(cfg.control.alpha / 2.0)
    ph = np.exp(1j * cfg.control.delta)
    noise = cfg.source_noise
    # White-noise part of the Werner source: no control-target coherence,
    # so upper and lower split evenly whatever the herald.
    mix = (noise / 8.0) * (np.abs(p) ** 2 + np.abs(w) ** 2)
    if herald is Herald.CONTROL1:
        amp_u = c * p - 1j * ph * s * w
        amp_l = 1j * c * p - ph * s * w
    elif herald is Herald.CONTROL0:
        amp_u = s * p + 1j * ph * c * w
        amp_l = 1j * s * p + ph * c * w
    else:
        u1, l1 = _raw_intensities(dataclasses.replace(cfg, source_noise=0.0), Herald.CONTROL1)
        u0, l0 = _raw_intensities(dataclasses.replace(cfg, source_noise=0.0), Herald.CONTROL0)
        return (1 - noise) * (u1 + u0) + 2 * mix, (1 - noise) * (l1 + l0) + 2 * mix
    upper = (1 - noise) * 0.25 * np.abs(amp_u) ** 2 + mix
    lower = (1 - noise) * 0.25 * np.abs(amp_l) ** 2 + mix
    return upper, lower


def heralded_intensities(cfg: InterferometerConfig, herald: Herald = Herald.CONTROL1):
    """Raw (unnormalized) joint click probabilities, upper and lower rows.

    These are absolute probabilities per generated pair; with blocking the
    total is below the no-blocking value.  The Sorkin analysis and the
    single-path-open protocol consume these raw values.
    """
    return _raw_intensities(cfg, herald)


def quantum_distribution(cfg: InterferometerConfig) -> PortDistribution:
    """Wave-particle-superposition distribution over the d upper ports.

    Herald on control |1>, keep the upper eraser outputs and renormalize
    over them (the normalization of two-fold coincidences over d ports).
    The amplitudes are evaluated in generic matrix form for every phase
    setting, so the removable theta -> pi singularity of the ramp-form
    expression never arises.
    """
    upper, _ = _raw_intensities(cfg, Herald.CONTROL1)
    return PortDistribution(cfg.d, upper / upper.sum(), PortMode.UPPER_ONLY)


def classical_distribution(cfg: InterferometerConfig) -> PortDistribution:
    """Wave-particle classical-mixture distribution, per-port sums.

    Herald on control |1> and add the upper and lower counts of each port:
    the wave/particle cross terms cancel, leaving
    cos^2(a/2) |P_m|^2 + sin^2(a/2) |W_m|^2, independent of delta.
    """
    upper, lower = _raw_intensities(cfg, Herald.CONTROL1)
    tot = upper + lower
    return PortDistribution(cfg.d, tot / tot.sum(), PortMode.UPPER_AND_LOWER)


def eraser_state(cfg: InterferometerConfig) -> StateVector:
    """Pure 2d-mode state after the eraser, heralded on control |1>.

    Upper amplitudes are proportional to cos(a/2)|P> - i e^{i d} sin(a/2)|W>,
    lower to i cos(a/2)|P> - e^{i d} sin(a/2)|W>; the returned vector is
    normalized.  Requires a noiseless source (the heralded state is not
    pure otherwise).
    """
    if cfg.source_noise != 0.0:
        raise ValueError("eraser_state requires source_noise = 0 (pure state)")
    p, w = branch_vectors(cfg)
    c = np.cos(cfg.control.alpha / 2.0)
    s = np.sin(cfg.control.alpha / 2.0)
    ph = np.exp(1j * cfg.control.delta)
    amps = np.concatenate([c * p - 1j * ph * s * w, 1j * c * p - ph * s * w]) / np.sqrt(2.0)
    labels = tuple(f"D{m}" for m in range(cfg.d)) + tuple(f"D{m}'" for m in range(cfg.d))
    return StateVector(amps / np.linalg.norm(amps), labels)


# ---------------------------------------------------------------------------
# explicit joint-state simulation
# ---------------------------------------------------------------------------

def control_rotation(alpha: float, delta: float) -> np.ndarray:
    """SU(2) element applied to the control photon.

    Chosen so the Bell state evolves to
    [|0>(s|P> + e^{i d} c|W>) + |1>(c|P> - e^{i d} s|W>)]/sqrt(2)
    with c = cos(alpha/2), s = sin(alpha/2).
    """
    c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    ph = np.exp(1j * delta)
    return np.array([[s, ph * c], [c, -ph * s]])


def eraser_unitary(d: int) -> np.ndarray:
    """2d-mode eraser: one (1, i; i, 1)/sqrt(2) splitter per port pair.

    Bundle layout [A_0..A_{d-1}, B_0..B_{d-1}] (particle branch first) maps
    to [U_0..U_{d-1}, L_0..L_{d-1}].
    """
    eye = np.eye(d)
    return np.block([[eye, 1j * eye], [1j * eye, eye]]) / np.sqrt(2.0)


def _joint_density(cfg: InterferometerConfig) -> np.ndarray:
    """Raw control (x) 2d-mode density matrix just before detection.

    Builds the Werner source explicitly, embeds the target qubit into the
    two process bundles (layout [A_0..A_{d-1}, B_0..B_{d-1}], control as
    the slow index), applies the per-bundle evolution, the control
    rotation and the eraser.  With blocking the matrix is subnormalized:
    the missing trace is the population routed to the blocking dumps.
    """
    d = cfg.d
    rho_src = (1 - cfg.source_noise) * bell_state().density().entries \
        + cfg.source_noise * np.eye(4) / 4.0
    # Embed the target qubit: |0>_T -> input of bundle A, |1>_T -> bundle B.
    v_t = np.zeros((2 * d, 2), dtype=complex)
    v_t[0, 0] = 1.0
    v_t[d, 1] = 1.0
    embed = np.kron(np.eye(2), v_t)
    rho = embed @ rho_src @ embed.conj().T

    h1 = cfg.bs1.unitary().entries
    h2 = cfg.bs2.unitary().entries
    theta = np.diag(np.exp(1j * cfg.phases.phases))
    block = np.diag(cfg.blocked_amplitudes().astype(complex))
    u_p = block @ theta @ h1
    u_w = h2 @ block @ theta @ h1
    bundle = np.zeros((2 * d, 2 * d), dtype=complex)
    bundle[:d, :d] = u_p
    bundle[d:, d:] = u_w
    evo = eraser_unitary(d) @ bundle
    full = np.kron(control_rotation(cfg.control.alpha, cfg.control.delta), evo)
    return full @ rho @ full.conj().T


def joint_state(cfg: InterferometerConfig) -> DensityMatrix:
    """Full joint state before detection, as a validated DensityMatrix.

    Only defined without blocking (blocked photons leave the recorded
    modes, so the in-mode state would be subnormalized).
    """
    if cfg.blocking is not None and any(cfg.blocking):
        raise ValueError("joint_state requires an unblocked interferometer")
    return DensityMatrix(_joint_density(cfg))


def simulate_full(
    cfg: InterferometerConfig,
    herald: Herald = Herald.CONTROL1,
    detection: PortMode | None = None,
) -> PortDistribution:
    """Port distribution from the explicit joint-state simulation.

    ``herald`` selects the reduction of the control qubit: projection on
    |1> or |0>, or tracing it out.  ``detection`` defaults to the upper
    row for the heralded cases (the quantum-superposition readout) and to
    per-port upper+lower sums for TRACE_OUT; pass it explicitly to force
    either readout.  Note the classical-mixture distribution is the
    heralded readout with both rows summed, not the traced-out one: the
    trace over the control averages the |1> and |0> branches and is
    alpha-independent.
    """
    d = cfg.d
    rho = _joint_density(cfg)
    if herald is Herald.TRACE_OUT:
        diag = np.real(np.diag(rho[: 2 * d, : 2 * d]) + np.diag(rho[2 * d:, 2 * d:]))
        if detection is None:
            detection = PortMode.UPPER_AND_LOWER
    else:
        blk = 2 * d if herald is Herald.CONTROL1 else 0
        diag = np.real(np.diag(rho[blk: blk + 2 * d, blk: blk + 2 * d]))
        if detection is None:
            detection = PortMode.UPPER_ONLY
    if detection is PortMode.UPPER_ONLY:
        probs = diag[:d]
    else:
        probs = diag[:d] + diag[d:]
    return PortDistribution(d, probs / probs.sum(), detection)


# ---------------------------------------------------------------------------
# counting statistics and the single-path-open protocol
# ---------------------------------------------------------------------------

def sample_counts(
    dist: PortDistribution | np.ndarray,
    mean_total: float,
    seed: int,
    dark_rate: float = 0.0,
) -> CountsRecord:
    """Independent Poisson draw per port with mean mean_total * p_i.

    Emulates two-fold coincidence counting with photon Poissonian
    statistics; ``dark_rate`` adds a per-port mean of spurious counts.
    Deterministic for a fixed seed.
    """
    if mean_total <= 0:
        raise ValueError("mean_total must be positive")
    if dark_rate < 0:
        raise ValueError("dark_rate must be nonnegative")
    p = dist.probabilities if isinstance(dist, PortDistribution) else np.asarray(dist, float)
    rng = np.random.default_rng(seed)
    counts = rng.poisson(mean_total * p + dark_rate)
    return CountsRecord(counts, mean_total, seed, dark_rate)


def single_path_probabilities(
    cfg: InterferometerConfig,
    port: int = 0,
    herald: Herald = Herald.CONTROL1,
) -> np.ndarray:
    """Operational diagonal of the measurement-frame state.

    For each path i, run the interferometer with only path i open (exact
    blocking elsewhere), record the heralded upper-row probability at the
    fixed measurement ``port``, and normalize across the d runs.  These
    normalized values reproduce the diagonal elements rho_ii of the
    wave-particle measurement state for that port.
    """
    d = cfg.d
    if not 0 <= port < d:
        raise ValueError(f"port {port} out of range")
    raw = np.empty(d)
    for i in range(d):
        mask = tuple(k != i for k in range(d))
        sub = dataclasses.replace(cfg, blocking=mask, blocking_leakage=0.0)
        upper, _ = _raw_intensities(sub, herald)
        raw[i] = upper[port]
    total = raw.sum()
    if total <= 0:
        raise ValueError("no transmission in any single-path run")
    return raw / total
